#include "skg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "skg/corpus.hpp"

namespace skg {

namespace {

std::map<std::vector<std::string>, int> ngram_counts(const std::vector<std::string>& tokens,
                                                     std::size_t n) {
    std::map<std::vector<std::string>, int> counts;
    if (tokens.size() < n) return counts;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        std::vector<std::string> gram(tokens.begin() + i, tokens.begin() + i + n);
        ++counts[gram];
    }
    return counts;
}

}  // namespace

double bleu(const std::string& candidate, const std::string& reference, const BleuConfig& cfg) {
    const auto cand = tokenize(candidate);
    const auto ref = tokenize(reference);
    if (cand.empty() || ref.empty()) return 0.0;

    std::vector<double> weights = cfg.weights;
    if (weights.empty()) weights.assign(cfg.max_n, 1.0 / static_cast<double>(cfg.max_n));

    double log_prec = 0.0;
    for (std::size_t n = 1; n <= cfg.max_n; ++n) {
        const auto cand_counts = ngram_counts(cand, n);
        // Orders longer than the candidate are undefined, not zero-precision;
        // skipping them keeps bleu(x, x) = 1 for short strings.
        if (cand_counts.empty()) continue;
        const auto ref_counts = ngram_counts(ref, n);
        double matched = 0.0, total = 0.0;
        for (const auto& [gram, c] : cand_counts) {
            total += c;
            auto it = ref_counts.find(gram);
            if (it != ref_counts.end()) matched += std::min(c, it->second);
        }
        if (matched == 0.0) return 0.0;
        log_prec += weights[n - 1] * std::log(matched / total);
    }

    const double brevity =
        std::min(1.0 - static_cast<double>(cand.size()) / static_cast<double>(ref.size()), 0.0);
    return std::exp(brevity + log_prec);
}

double detection_failure_probability(double dep, double delta_i, double delta_all, double freq) {
    if (!(dep > 0.0 && dep <= 1.0))
        throw std::invalid_argument("detection_failure_probability: dep must be in (0,1]");
    if (delta_i <= 0 || delta_all <= 0 || freq <= 0)
        throw std::invalid_argument("detection_failure_probability: arguments must be positive");
    return 1.0 - std::pow(dep, (delta_i / delta_all) * freq);
}

std::size_t decryption_bit_length(std::size_t keyspace_bits, std::size_t delta, double sigma) {
    if (sigma <= 0) throw std::invalid_argument("decryption_bit_length: sigma must be positive");
    const double noise_term = std::ceil(std::log2(6.0 * sigma));
    const double rhs = static_cast<double>(delta) + noise_term;
    return static_cast<std::size_t>(std::max(static_cast<double>(keyspace_bits), rhs));
}

}  // namespace skg

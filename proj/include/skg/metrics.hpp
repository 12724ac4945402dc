#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace skg {

struct BleuConfig {
    std::size_t max_n = 4;
    std::vector<double> weights;  // defaults to uniform 1/max_n
};

// Sentence BLEU with clipped n-gram precisions and brevity penalty; any zero
// precision (or empty candidate) scores 0.
double bleu(const std::string& candidate, const std::string& reference,
            const BleuConfig& cfg = {});

// P_fail = 1 - dep^((delta_i/delta_all) * freq)
double detection_failure_probability(double dep, double delta_i, double delta_all, double freq);

// L_eps = max(keyspace_bits, delta + ceil(log2(6*sigma)))
std::size_t decryption_bit_length(std::size_t keyspace_bits, std::size_t delta, double sigma);

}  // namespace skg

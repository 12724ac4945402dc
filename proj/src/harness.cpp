#include "skg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "skg/cipher.hpp"
#include "skg/corpus.hpp"
#include "skg/errors.hpp"
#include "skg/metrics.hpp"
#include "skg/recovery.hpp"
#include "skg/topics.hpp"

namespace skg {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss(s);
    while (std::getline(ss, cur, ',')) {
        const auto b = cur.find_first_not_of(" \t");
        const auto e = cur.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
    }
    return out;
}

}  // namespace

std::uint64_t split_seed(std::uint64_t master, std::uint64_t snr_index, std::uint64_t trial) {
    return mix64(mix64(master ^ mix64(snr_index + 1)) ^ mix64((trial + 1) * 0x632BE59BD9B4E019ULL));
}

void ExperimentConfig::validate() const {
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (snr_sweep.empty()) throw ConfigError("snr_sweep must be non-empty");
    if (kb_path.empty()) throw ConfigError("kb_path is required");
    if (key_path.empty()) throw ConfigError("key_path is required");
    if (pairs_path.empty() && corpus_path.empty())
        throw ConfigError("either pairs_path or corpus_path is required");
    if (per_packet_x < 1) throw ConfigError("per_packet_x must be >= 1");
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    ExperimentConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + " missing '='");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r\"");
            const auto e = s.find_last_not_of(" \t\r\"");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "kb_path") cfg.kb_path = value;
            else if (key == "key_path") cfg.key_path = value;
            else if (key == "pairs_path") cfg.pairs_path = value;
            else if (key == "corpus_path") cfg.corpus_path = value;
            else if (key == "output_path") cfg.output_path = value;
            else if (key == "trials") cfg.trials = std::stoul(value);
            else if (key == "master_seed") cfg.master_seed = std::stoull(value);
            else if (key == "per_packet_x") cfg.per_packet_x = std::stoul(value);
            else if (key == "fading_variance") cfg.fading_variance = std::stod(value);
            else if (key == "dep") cfg.dep = std::stod(value);
            else if (key == "detect_freq") cfg.detect_freq = std::stod(value);
            else if (key == "covert_factor") cfg.covert_factor = std::stod(value);
            else if (key == "threads") cfg.threads = std::stoul(value);
            else if (key == "fading") {
                if (value == "none") cfg.fading = Fading::None;
                else if (value == "rayleigh") cfg.fading = Fading::Rayleigh;
                else throw ConfigError("unknown fading mode: " + value);
            } else if (key == "csi") {
                if (value == "perfect") cfg.csi = Csi::Perfect;
                else if (value == "none") cfg.csi = Csi::None;
                else throw ConfigError("unknown csi mode: " + value);
            } else if (key == "snr_sweep") {
                cfg.snr_sweep.clear();
                for (const auto& v : split_list(value)) cfg.snr_sweep.push_back(std::stod(v));
            } else if (key == "strategies") {
                cfg.strategies.clear();
                for (const auto& v : split_list(value)) {
                    if (v == "no_key") cfg.strategies.push_back(AdversaryStrategy::NoKey);
                    else if (v == "random_key") cfg.strategies.push_back(AdversaryStrategy::RandomKey);
                    else if (v == "diagonal_only")
                        cfg.strategies.push_back(AdversaryStrategy::DiagonalOnly);
                    else throw ConfigError("unknown strategy: " + v);
                }
            } else {
                throw ConfigError("unknown config key '" + key + "' at line " +
                                  std::to_string(lineno));
            }
        } catch (const std::invalid_argument&) {
            throw ConfigError("bad value for '" + key + "' at line " + std::to_string(lineno));
        }
    }
    cfg.validate();
    return cfg;
}

namespace {

struct FrameJob {
    KnowledgeGraph graph;
    std::string reference;       // realize(G_sent, kb)
    std::string source_text;     // original text for the second BLEU column
    std::size_t raw_bits = 0;
};

// Builds the per-frame payloads once; transmission is repeated per (snr, trial).
std::vector<FrameJob> build_jobs(const ExperimentConfig& cfg, const KnowledgeBase& kb) {
    std::vector<FrameJob> jobs;
    if (!cfg.pairs_path.empty()) {
        for (const auto& pair : load_reference_pairs(cfg.pairs_path)) {
            FrameJob job;
            job.graph.triples = pair.triples;
            job.graph.canonicalize();
            job.reference = realize(job.graph, kb);
            job.source_text = pair.reference_text;
            job.raw_bits = pair.reference_text.size() * 8;
            jobs.push_back(std::move(job));
        }
        return jobs;
    }

    Corpus corpus = load_corpus(cfg.corpus_path);
    PreprocessConfig pre;
    pre.seed = cfg.master_seed;
    pre.num_topics = std::max<std::size_t>(2, std::min<std::size_t>(10, corpus.vocab_size() / 4));
    pre.k_clusters = std::min<std::size_t>(3, corpus.num_sentences());
    pre.gibbs_sweeps = 200;
    AnnotatedCorpus annotated = preprocess(corpus, pre);

    // Weak supervision from the KB: token runs matching entity aliases are entities.
    std::vector<std::pair<std::vector<std::string>, std::vector<Label>>> labeled;
    for (const auto& [d, s] : corpus.sentence_index()) {
        const auto& sent = corpus.documents[d].sentences[s];
        if (sent.empty()) continue;
        std::vector<std::string> tokens;
        for (TokenId id : sent) tokens.push_back(corpus.token(id));
        std::vector<Label> labels(tokens.size(), Label::Outside);
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            // Greedy longest alias match up to 4 tokens.
            for (std::size_t len = std::min<std::size_t>(4, tokens.size() - i); len >= 1; --len) {
                std::string span = tokens[i];
                for (std::size_t j = 1; j < len; ++j) span += " " + tokens[i + j];
                if (kb.resolve(span)) {
                    labels[i] = Label::BEnt;
                    for (std::size_t j = 1; j < len; ++j) labels[i + j] = Label::IEnt;
                    i += len - 1;
                    break;
                }
            }
        }
        labeled.emplace_back(std::move(tokens), std::move(labels));
    }
    TaggerModel tagger = tagger_train(labeled, 10, 0.1, 1e-4, cfg.master_seed);
    EmbeddingTable embeddings = build_embeddings(corpus, 2, 0);

    FrameJob job;
    job.graph = extract(annotated, tagger, embeddings, kb, 20);
    job.reference = realize(job.graph, kb);
    std::string raw;
    for (const auto& doc : corpus.documents) raw += doc.raw_text;
    job.source_text = raw;
    job.raw_bits = raw.size() * 8;
    jobs.push_back(std::move(job));
    return jobs;
}

struct TrialOutcome {
    double bleu_legit_sum = 0;
    double bleu_legit_src_sum = 0;
    std::vector<double> bleu_adv_sum;  // per strategy
    double symbol_errors = 0;
    double symbols_total = 0;
    std::size_t frame_drops = 0;
    double kg_bits_sum = 0;
    double raw_bits_sum = 0;
};

TrialOutcome run_trial(const ExperimentConfig& cfg, const KnowledgeBase& kb, const ChaosKey& key,
                       const std::vector<FrameJob>& jobs, double snr_db, std::uint64_t trial_seed) {
    TrialOutcome out;
    out.bleu_adv_sum.assign(cfg.strategies.size(), 0.0);

    for (std::size_t fi = 0; fi < jobs.size(); ++fi) {
        const FrameJob& job = jobs[fi];
        const BitStream bits = serialize_kg(job.graph);
        const auto symbols = qpsk_modulate(bits);
        const SymbolFrame frame = packetize(symbols, 1, symbols.size(), cfg.per_packet_x);
        const Keystream ks =
            generate_keystream(key, frame.total_symbols(), frame.num_packets());
        const CipherText ct = encrypt(frame, ks, key.amplitude_offset);

        ChannelConfig chan;
        chan.snr_db = snr_db;
        chan.fading = cfg.fading;
        chan.fading_variance = cfg.fading_variance;
        chan.csi = cfg.csi;
        chan.seed = mix64(trial_seed ^ mix64(fi + 1));
        const TransmitResult tx = transmit(ct.frames.flatten(false), chan);

        out.kg_bits_sum += static_cast<double>(bits.bits.size());
        out.raw_bits_sum += static_cast<double>(job.raw_bits);

        // Legitimate receiver.
        bool dropped = false;
        try {
            const auto eq = equalize(tx.received, tx.h, chan.csi);
            CipherText rx_ct = ct;
            for (std::size_t p = 0; p < rx_ct.frames.num_packets(); ++p)
                for (std::size_t i = 0; i < cfg.per_packet_x; ++i)
                    rx_ct.frames.packets[p][i] = eq[p * cfg.per_packet_x + i];
            const SymbolFrame decrypted = decrypt(rx_ct, ks, key.amplitude_offset);
            const auto rx_symbols = decrypted.flatten(true);
            const BitStream rx_bits = qpsk_demodulate(rx_symbols);

            for (std::size_t i = 0; i < symbols.size(); ++i) {
                const bool err = rx_bits.bits[2 * i] != bits.bits[2 * i] ||
                                 rx_bits.bits[2 * i + 1] != bits.bits[2 * i + 1];
                out.symbol_errors += err ? 1.0 : 0.0;
            }
            out.symbols_total += static_cast<double>(symbols.size());

            const DecodeResult decoded = deserialize_kg(rx_bits);
            std::string recovered;
            if (decoded.ok) recovered = realize(decoded.graph, kb);
            out.bleu_legit_sum += bleu(recovered, job.reference);
            out.bleu_legit_src_sum += bleu(recovered, job.source_text);
        } catch (const DeepFadeError&) {
            dropped = true;
            ++out.frame_drops;
            out.symbols_total += static_cast<double>(symbols.size());
            out.symbol_errors += static_cast<double>(symbols.size());
        }
        (void)dropped;

        for (std::size_t si = 0; si < cfg.strategies.size(); ++si) {
            const auto res = eavesdrop(tx.received, tx.h, ct.frames, cfg.strategies[si],
                                       key.amplitude_offset, mix64(trial_seed ^ (si + 101)));
            out.bleu_adv_sum[si] += bleu(res.text, job.reference);
        }
    }
    return out;
}

}  // namespace

ExperimentReport run_pipeline(const ExperimentConfig& cfg) {
    cfg.validate();
    const KnowledgeBase kb = load_kb(cfg.kb_path);
    const ChaosKey key = load_key(cfg.key_path);
    const std::vector<FrameJob> jobs = build_jobs(cfg, kb);
    if (jobs.empty()) throw ConfigError("no frames to transmit");

    struct Task {
        std::size_t snr_index, trial;
    };
    std::vector<Task> tasks;
    for (std::size_t si = 0; si < cfg.snr_sweep.size(); ++si)
        for (std::size_t t = 0; t < cfg.trials; ++t) tasks.push_back({si, t});

    std::vector<TrialOutcome> outcomes(tasks.size());
    std::atomic<std::size_t> next{0};
    const std::size_t nthreads =
        cfg.threads > 0 ? cfg.threads
                        : std::max<std::size_t>(1, std::thread::hardware_concurrency());
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            const auto [si, t] = tasks[i];
            outcomes[i] = run_trial(cfg, kb, key, jobs, cfg.snr_sweep[si],
                                    split_seed(cfg.master_seed, si, t));
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    const double nframes = static_cast<double>(jobs.size());
    ExperimentReport report;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const auto& o = outcomes[i];
        const double snr = cfg.snr_sweep[tasks[i].snr_index];
        const double sigma = std::sqrt(std::pow(10.0, -snr / 10.0));
        const double ratio =
            o.raw_bits_sum > 0 ? o.kg_bits_sum / o.raw_bits_sum : 0.0;
        for (std::size_t si = 0; si < cfg.strategies.size(); ++si) {
            ReportRow row;
            row.snr_db = snr;
            row.trial = tasks[i].trial;
            row.strategy = strategy_name(cfg.strategies[si]);
            row.bleu_legitimate = o.bleu_legit_sum / nframes;
            row.bleu_legitimate_vs_source = o.bleu_legit_src_sum / nframes;
            row.bleu_eavesdropper = o.bleu_adv_sum[si] / nframes;
            row.symbol_error_rate =
                o.symbols_total > 0 ? o.symbol_errors / o.symbols_total : 0.0;
            row.frame_drops = o.frame_drops;
            row.decryption_bits = decryption_bit_length(keyspace_bits(3), 128, sigma);
            row.compression_ratio = ratio;
            row.dfp = detection_failure_probability(
                cfg.dep, o.kg_bits_sum, o.raw_bits_sum * cfg.covert_factor, cfg.detect_freq);
            report.rows.push_back(std::move(row));
        }
    }
    std::sort(report.rows.begin(), report.rows.end(), [](const ReportRow& a, const ReportRow& b) {
        return std::tie(a.snr_db, a.trial, a.strategy) < std::tie(b.snr_db, b.trial, b.strategy);
    });
    return report;
}

std::string ExperimentReport::to_csv() const {
    std::ostringstream out;
    out << "snr_db,trial,strategy,bleu_legitimate,bleu_legitimate_vs_source,"
           "bleu_eavesdropper,symbol_error_rate,frame_drops,decryption_bits,"
           "compression_ratio,dfp\n";
    out.precision(10);
    for (const auto& r : rows) {
        out << r.snr_db << "," << r.trial << "," << r.strategy << "," << r.bleu_legitimate << ","
            << r.bleu_legitimate_vs_source << "," << r.bleu_eavesdropper << ","
            << r.symbol_error_rate << "," << r.frame_drops << "," << r.decryption_bits << ","
            << r.compression_ratio << "," << r.dfp << "\n";
    }
    return out.str();
}

std::vector<DfpRow> sweep_compression_dfp(const ExperimentConfig& cfg,
                                          const std::vector<double>& dep_sweep) {
    cfg.validate();
    const KnowledgeBase kb = load_kb(cfg.kb_path);
    const std::vector<FrameJob> jobs = build_jobs(cfg, kb);

    double kg_bits = 0, raw_bits = 0;
    for (const auto& job : jobs) {
        kg_bits += static_cast<double>(serialize_kg(job.graph).bits.size());
        raw_bits += static_cast<double>(job.raw_bits);
    }
    const double delta_all = raw_bits * cfg.covert_factor;

    std::vector<DfpRow> rows;
    for (double dep : dep_sweep.empty() ? std::vector<double>{cfg.dep} : dep_sweep) {
        DfpRow row;
        row.ratio = raw_bits > 0 ? kg_bits / raw_bits : 0.0;
        row.dep = dep;
        row.freq = cfg.detect_freq;
        row.kg_bits = kg_bits;
        row.raw_bits = raw_bits;
        row.pfail = detection_failure_probability(dep, kg_bits, delta_all, cfg.detect_freq);
        rows.push_back(row);
    }
    return rows;
}

std::string dfp_rows_to_csv(const std::vector<DfpRow>& rows) {
    std::ostringstream out;
    out << "ratio,dep,freq,kg_bits,raw_bits,pfail\n";
    out.precision(10);
    for (const auto& r : rows)
        out << r.ratio << "," << r.dep << "," << r.freq << "," << r.kg_bits << "," << r.raw_bits
            << "," << r.pfail << "\n";
    return out.str();
}

}  // namespace skg

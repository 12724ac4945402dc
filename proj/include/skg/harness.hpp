#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skg/adversary.hpp"
#include "skg/channel.hpp"
#include "skg/chaoskey.hpp"
#include "skg/kb.hpp"
#include "skg/kgraph.hpp"

namespace skg {

struct ExperimentConfig {
    std::string kb_path;
    std::string key_path;
    std::string pairs_path;   // reference-pair mode when set
    std::string corpus_path;  // full extraction mode otherwise
    std::vector<double> snr_sweep{5, 10, 15, 20, 25, 30};
    Fading fading = Fading::Rayleigh;
    double fading_variance = 1.0;
    Csi csi = Csi::Perfect;
    std::size_t trials = 20;
    std::uint64_t master_seed = 1;
    std::size_t per_packet_x = 64;
    std::vector<AdversaryStrategy> strategies{AdversaryStrategy::NoKey,
                                              AdversaryStrategy::RandomKey,
                                              AdversaryStrategy::DiagonalOnly};
    std::string output_path = "report.csv";
    // Detection-failure inputs (the paper provides no detector model).
    double dep = 0.5;
    double detect_freq = 1.0;
    double covert_factor = 1.0;
    std::size_t threads = 0;  // 0 = hardware concurrency

    void validate() const;
};

ExperimentConfig load_config(const std::string& path);

struct ReportRow {
    double snr_db = 0;
    std::size_t trial = 0;
    std::string strategy;
    double bleu_legitimate = 0;
    double bleu_legitimate_vs_source = 0;
    double bleu_eavesdropper = 0;
    double symbol_error_rate = 0;
    std::size_t frame_drops = 0;
    std::size_t decryption_bits = 0;
    double compression_ratio = 0;  // serialized KG bits / raw text bits
    double dfp = 0;
};

struct ExperimentReport {
    std::vector<ReportRow> rows;
    std::string to_csv() const;
};

// Deterministic seed-splitting rule: splitmix-style mix of (master, snr index, trial).
std::uint64_t split_seed(std::uint64_t master, std::uint64_t snr_index, std::uint64_t trial);

ExperimentReport run_pipeline(const ExperimentConfig& cfg);

struct DfpRow {
    double ratio = 0;
    double dep = 0;
    double freq = 0;
    double pfail = 0;
    double kg_bits = 0;
    double raw_bits = 0;
};

std::vector<DfpRow> sweep_compression_dfp(const ExperimentConfig& cfg,
                                          const std::vector<double>& dep_sweep);

std::string dfp_rows_to_csv(const std::vector<DfpRow>& rows);

}  // namespace skg

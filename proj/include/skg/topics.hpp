#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skg/corpus.hpp"

namespace skg {

/// Collapsed-Gibbs LDA model. Counts and assignments are kept so training is
/// resumable and the count-consistency invariants can be checked in tests.
struct LdaModel {
    std::size_t num_topics = 0;
    double doc_topic_prior = 0.1;   // phi
    double topic_word_prior = 0.01; // beta
    std::uint64_t rng_seed = 0;

    // assignments[d][i] is the topic of the i-th token of document d (documents flattened).
    std::vector<std::vector<int>> assignments;
    std::vector<std::vector<int>> n_dk; // doc x topic
    std::vector<std::vector<int>> n_kw; // topic x word
    std::vector<int> n_d;
    std::vector<int> n_k;

    std::vector<std::vector<double>> theta; // doc x topic
    std::vector<std::vector<double>> phi;   // topic x word

    bool counts_consistent() const;
    std::string to_json() const;
    static LdaModel from_json(const std::string& text);
};

struct ClusterResult {
    std::vector<std::vector<double>> centroids;
    std::vector<int> labels;
    std::vector<std::vector<std::size_t>> members;
    double inertia = 0.0;
};

struct AnnotatedCorpus {
    const Corpus* corpus = nullptr;
    std::vector<int> sentence_topics; // one cluster id per sentence, flattened order
};

struct PreprocessConfig {
    std::size_t num_topics = 10;
    std::size_t gibbs_sweeps = 500;
    std::size_t k_clusters = 3;
    std::size_t kmeans_max_iters = 100;
    double doc_topic_prior = 0.1;
    double topic_word_prior = 0.01;
    std::uint64_t seed = 1;
};

LdaModel lda_train(const Corpus& corpus, std::size_t num_topics, std::size_t iterations,
                   std::uint64_t seed, double doc_topic_prior = 0.1, double topic_word_prior = 0.01);

// Jensen-Shannon divergence with natural logarithm, in [0, ln 2].
double topic_distance_js(const std::vector<double>& theta1, const std::vector<double>& theta2);

// Topic-proportion vector for one token sequence via a fixed-phi fold-in pass.
std::vector<double> infer_topics(const LdaModel& model, const std::vector<TokenId>& tokens,
                                 std::size_t sweeps, std::uint64_t seed);

ClusterResult kmeans(const std::vector<std::vector<double>>& points, std::size_t k,
                     std::size_t max_iters, std::uint64_t seed);

ClusterResult cluster_sentences(const LdaModel& model, const Corpus& corpus, std::size_t k_clusters,
                                std::size_t max_iters, std::uint64_t seed);

AnnotatedCorpus preprocess(const Corpus& corpus, const PreprocessConfig& cfg);

}  // namespace skg

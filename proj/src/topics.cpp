#include "skg/topics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "json.hpp"
#include "skg/errors.hpp"

namespace skg {

namespace {

int sample_discrete(const std::vector<double>& weights, std::mt19937_64& rng) {
    double total = 0.0;
    for (double w : weights) total += w;
    std::uniform_real_distribution<double> unif(0.0, total);
    double u = unif(rng);
    double acc = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        acc += weights[k];
        if (u <= acc) return static_cast<int>(k);
    }
    return static_cast<int>(weights.size()) - 1;
}

}  // namespace

bool LdaModel::counts_consistent() const {
    for (std::size_t d = 0; d < n_dk.size(); ++d) {
        int sum = 0;
        for (int c : n_dk[d]) sum += c;
        if (sum != n_d[d]) return false;
    }
    for (std::size_t k = 0; k < n_kw.size(); ++k) {
        int sum = 0;
        for (int c : n_kw[k]) sum += c;
        if (sum != n_k[k]) return false;
    }
    return true;
}

LdaModel lda_train(const Corpus& corpus, std::size_t num_topics, std::size_t iterations,
                   std::uint64_t seed, double doc_topic_prior, double topic_word_prior) {
    if (corpus.documents.empty()) throw EmptyCorpusError("lda_train: empty corpus");
    if (num_topics < 2) throw std::invalid_argument("lda_train: num_topics must be >= 2");
    if (doc_topic_prior <= 0 || topic_word_prior <= 0)
        throw std::invalid_argument("lda_train: priors must be positive");

    const std::size_t D = corpus.documents.size();
    const std::size_t K = num_topics;
    const std::size_t V = corpus.vocab_size();

    LdaModel m;
    m.num_topics = K;
    m.doc_topic_prior = doc_topic_prior;
    m.topic_word_prior = topic_word_prior;
    m.rng_seed = seed;
    m.n_dk.assign(D, std::vector<int>(K, 0));
    m.n_kw.assign(K, std::vector<int>(V, 0));
    m.n_d.assign(D, 0);
    m.n_k.assign(K, 0);
    m.assignments.resize(D);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> topic_init(0, static_cast<int>(K) - 1);

    // Flatten tokens per document.
    std::vector<std::vector<TokenId>> doc_tokens(D);
    for (std::size_t d = 0; d < D; ++d)
        for (const auto& s : corpus.documents[d].sentences)
            doc_tokens[d].insert(doc_tokens[d].end(), s.begin(), s.end());

    for (std::size_t d = 0; d < D; ++d) {
        m.assignments[d].resize(doc_tokens[d].size());
        for (std::size_t i = 0; i < doc_tokens[d].size(); ++i) {
            int z = topic_init(rng);
            m.assignments[d][i] = z;
            ++m.n_dk[d][z];
            ++m.n_kw[z][doc_tokens[d][i]];
            ++m.n_d[d];
            ++m.n_k[z];
        }
    }

    std::vector<double> weights(K);
    const double phi = doc_topic_prior;
    const double beta = topic_word_prior;
    for (std::size_t sweep = 0; sweep < iterations; ++sweep) {
        for (std::size_t d = 0; d < D; ++d) {
            for (std::size_t i = 0; i < doc_tokens[d].size(); ++i) {
                const TokenId w = doc_tokens[d][i];
                const int z_old = m.assignments[d][i];
                --m.n_dk[d][z_old];
                --m.n_kw[z_old][w];
                --m.n_d[d];
                --m.n_k[z_old];
                for (std::size_t k = 0; k < K; ++k) {
                    weights[k] = (m.n_dk[d][k] + phi) / (m.n_d[d] + K * phi) *
                                 (m.n_kw[k][w] + beta) / (m.n_k[k] + V * beta);
                }
                const int z_new = sample_discrete(weights, rng);
                m.assignments[d][i] = z_new;
                ++m.n_dk[d][z_new];
                ++m.n_kw[z_new][w];
                ++m.n_d[d];
                ++m.n_k[z_new];
            }
        }
    }

    m.theta.assign(D, std::vector<double>(K, 0.0));
    for (std::size_t d = 0; d < D; ++d)
        for (std::size_t k = 0; k < K; ++k)
            m.theta[d][k] = (m.n_dk[d][k] + phi) / (m.n_d[d] + K * phi);
    m.phi.assign(K, std::vector<double>(V, 0.0));
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t w = 0; w < V; ++w)
            m.phi[k][w] = (m.n_kw[k][w] + beta) / (m.n_k[k] + V * beta);
    return m;
}

double topic_distance_js(const std::vector<double>& theta1, const std::vector<double>& theta2) {
    if (theta1.size() != theta2.size())
        throw std::invalid_argument("topic_distance_js: length mismatch");
    double s1 = 0, s2 = 0;
    for (double v : theta1) s1 += v;
    for (double v : theta2) s2 += v;
    if (std::abs(s1 - 1.0) > 1e-6 || std::abs(s2 - 1.0) > 1e-6)
        throw std::invalid_argument("topic_distance_js: input not normalized");
    double d = 0.0;
    for (std::size_t i = 0; i < theta1.size(); ++i) {
        const double mid = 0.5 * (theta1[i] + theta2[i]);
        if (theta1[i] > 0) d += 0.5 * theta1[i] * std::log(theta1[i] / mid);
        if (theta2[i] > 0) d += 0.5 * theta2[i] * std::log(theta2[i] / mid);
    }
    return d;
}

std::vector<double> infer_topics(const LdaModel& model, const std::vector<TokenId>& tokens,
                                 std::size_t sweeps, std::uint64_t seed) {
    const std::size_t K = model.num_topics;
    std::vector<double> theta(K, 1.0 / K);
    if (tokens.empty()) return theta;

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> topic_init(0, static_cast<int>(K) - 1);
    std::vector<int> z(tokens.size());
    std::vector<int> n_k(K, 0);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        z[i] = topic_init(rng);
        ++n_k[z[i]];
    }
    const double phi = model.doc_topic_prior;
    std::vector<double> weights(K);
    for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            --n_k[z[i]];
            for (std::size_t k = 0; k < K; ++k)
                weights[k] = (n_k[k] + phi) * model.phi[k][tokens[i]];
            z[i] = sample_discrete(weights, rng);
            ++n_k[z[i]];
        }
    }
    for (std::size_t k = 0; k < K; ++k)
        theta[k] = (n_k[k] + phi) / (tokens.size() + K * phi);
    return theta;
}

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double t = a[i] - b[i];
        d += t * t;
    }
    return d;
}

}  // namespace

ClusterResult kmeans(const std::vector<std::vector<double>>& points, std::size_t k,
                     std::size_t max_iters, std::uint64_t seed) {
    if (k < 1 || k > points.size())
        throw std::invalid_argument("kmeans: k must be in [1, #points]");
    const std::size_t n = points.size();
    const std::size_t dim = points[0].size();

    // Init: k distinct indices drawn uniformly without replacement.
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);

    ClusterResult res;
    res.centroids.reserve(k);
    for (std::size_t c = 0; c < k; ++c) res.centroids.push_back(points[order[c]]);
    res.labels.assign(n, -1);

    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c) {
                const double d = sq_dist(points[i], res.centroids[c]);
                if (d < best_d) {
                    best_d = d;
                    best = static_cast<int>(c);
                }
            }
            if (res.labels[i] != best) {
                res.labels[i] = best;
                changed = true;
            }
        }
        // Recompute centroids; empty clusters are re-seeded with the farthest point.
        std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            ++counts[res.labels[i]];
            for (std::size_t j = 0; j < dim; ++j) sums[res.labels[i]][j] += points[i][j];
        }
        bool reseeded = false;
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) {
                std::size_t far_i = 0;
                double far_d = -1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double d = sq_dist(points[i], res.centroids[res.labels[i]]);
                    if (d > far_d) {
                        far_d = d;
                        far_i = i;
                    }
                }
                res.centroids[c] = points[far_i];
                reseeded = true;
            } else {
                for (std::size_t j = 0; j < dim; ++j) res.centroids[c][j] = sums[c][j] / counts[c];
            }
        }
        if (!changed && !reseeded) break;
    }

    res.members.assign(k, {});
    res.inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        res.members[res.labels[i]].push_back(i);
        res.inertia += sq_dist(points[i], res.centroids[res.labels[i]]);
    }
    return res;
}

ClusterResult cluster_sentences(const LdaModel& model, const Corpus& corpus, std::size_t k_clusters,
                                std::size_t max_iters, std::uint64_t seed) {
    const auto idx = corpus.sentence_index();
    if (k_clusters > idx.size())
        throw std::invalid_argument("cluster_sentences: k exceeds sentence count");
    std::vector<std::vector<double>> vecs;
    vecs.reserve(idx.size());
    for (std::size_t s = 0; s < idx.size(); ++s) {
        const auto& sent = corpus.documents[idx[s].first].sentences[idx[s].second];
        vecs.push_back(infer_topics(model, sent, 20, seed + s));
    }
    return kmeans(vecs, k_clusters, max_iters, seed);
}

AnnotatedCorpus preprocess(const Corpus& corpus, const PreprocessConfig& cfg) {
    LdaModel model = lda_train(corpus, cfg.num_topics, cfg.gibbs_sweeps, cfg.seed,
                               cfg.doc_topic_prior, cfg.topic_word_prior);
    ClusterResult clusters =
        cluster_sentences(model, corpus, cfg.k_clusters, cfg.kmeans_max_iters, cfg.seed);
    AnnotatedCorpus out;
    out.corpus = &corpus;
    out.sentence_topics = clusters.labels;
    return out;
}

std::string LdaModel::to_json() const {
    nlohmann::json j;
    j["num_topics"] = num_topics;
    j["doc_topic_prior"] = doc_topic_prior;
    j["topic_word_prior"] = topic_word_prior;
    j["rng_seed"] = rng_seed;
    j["assignments"] = assignments;
    j["n_dk"] = n_dk;
    j["n_kw"] = n_kw;
    j["n_d"] = n_d;
    j["n_k"] = n_k;
    j["theta"] = theta;
    j["phi"] = phi;
    return j.dump();
}

LdaModel LdaModel::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    LdaModel m;
    m.num_topics = j.at("num_topics").get<std::size_t>();
    m.doc_topic_prior = j.at("doc_topic_prior").get<double>();
    m.topic_word_prior = j.at("topic_word_prior").get<double>();
    m.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    m.assignments = j.at("assignments").get<std::vector<std::vector<int>>>();
    m.n_dk = j.at("n_dk").get<std::vector<std::vector<int>>>();
    m.n_kw = j.at("n_kw").get<std::vector<std::vector<int>>>();
    m.n_d = j.at("n_d").get<std::vector<int>>();
    m.n_k = j.at("n_k").get<std::vector<int>>();
    m.theta = j.at("theta").get<std::vector<std::vector<double>>>();
    m.phi = j.at("phi").get<std::vector<std::vector<double>>>();
    return m;
}

}  // namespace skg

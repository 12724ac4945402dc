#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "skg/corpus.hpp"
#include "skg/kb.hpp"
#include "skg/topics.hpp"

namespace skg {

enum class Label : int { BEnt = 0, IEnt = 1, Outside = 2 };
constexpr std::size_t kNumLabels = 3;

const char* label_name(Label l);

/// Per-token log-linear tagger with context features.
class TaggerModel {
  public:
    // score[l] = v . features(tokens, pos, l); label probabilities are the softmax.
    std::array<double, kNumLabels> scores(const std::vector<std::string>& tokens,
                                          std::size_t pos) const;
    Label predict_one(const std::vector<std::string>& tokens, std::size_t pos) const;

    double weight(const std::string& feature, Label l) const;
    void add_weight(const std::string& feature, Label l, double delta);
    void scale_all(double factor);
    std::size_t num_weights() const { return weights_.size(); }

    static std::vector<std::string> features(const std::vector<std::string>& tokens,
                                             std::size_t pos);

  private:
    std::map<std::string, std::array<double, kNumLabels>> weights_;
};

TaggerModel tagger_train(
    const std::vector<std::pair<std::vector<std::string>, std::vector<Label>>>& labeled,
    std::size_t epochs, double learn_rate, double l2, std::uint64_t seed);

std::vector<Label> tagger_predict(const TaggerModel& model, const std::vector<std::string>& tokens);

// Contiguous B-ENT/I-ENT runs joined with single spaces.
std::vector<std::string> entity_spans(const std::vector<std::string>& tokens,
                                      const std::vector<Label>& labels);

struct Entity {
    std::string name;      // canonical if matched, surface form otherwise
    bool in_kb = false;
    std::size_t frequency = 1;
};

std::vector<Entity> align_entities(const std::vector<std::string>& spans, const KnowledgeBase& kb);

class EmbeddingTable {
  public:
    std::size_t dimension = 0;
    std::map<std::string, std::vector<double>> vectors;

    bool has(const std::string& w) const { return vectors.count(w) > 0; }
    const std::vector<double>& at(const std::string& w) const { return vectors.at(w); }
};

// Deterministic PPMI co-occurrence embeddings, optionally reduced by truncated SVD.
EmbeddingTable build_embeddings(const Corpus& corpus, std::size_t window, std::size_t dimension);

// Text format: one line per word, token then floats, space-separated.
EmbeddingTable load_embeddings(const std::string& path);

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b);

struct GraphEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    std::string label;
    double weight = 1.0;
};

struct RelationWordGraph {
    std::vector<std::string> nodes;
    std::vector<bool> node_in_kb;
    std::vector<std::size_t> node_freq;
    std::vector<GraphEdge> edges;

    std::size_t find_node(const std::string& name) const;
};

RelationWordGraph build_relation_graph(const std::vector<Entity>& entities,
                                       const EmbeddingTable& embeddings, const KnowledgeBase& kb,
                                       double sim_threshold);

// Frequency-personalized damped rank over the word graph; scores sum to 1.
std::map<std::string, double> pagerank(const RelationWordGraph& graph, double damping, double tol,
                                       std::size_t max_iters);

struct KnowledgeGraph {
    std::vector<std::array<std::string, 3>> triples;  // canonical order, deduplicated
    std::map<std::string, double> rank;

    void canonicalize();
    bool operator==(const KnowledgeGraph& other) const { return triples == other.triples; }
};

struct ExtractConfig {
    double sim_threshold = 0.5;
    double damping = 0.85;
    double pagerank_tol = 1e-10;
    std::size_t pagerank_max_iters = 1000;
    std::size_t top_k = 20;
};

KnowledgeGraph extract(const AnnotatedCorpus& annotated, const TaggerModel& tagger,
                       const EmbeddingTable& embeddings, const KnowledgeBase& kb,
                       std::size_t top_k, const ExtractConfig& cfg = {});

}  // namespace skg

#include "skg/kgraph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "skg/errors.hpp"

namespace skg {

const char* label_name(Label l) {
    switch (l) {
        case Label::BEnt: return "B-ENT";
        case Label::IEnt: return "I-ENT";
        default: return "O";
    }
}

namespace {

std::string to_lower(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool is_capitalized(const std::string& s) {
    return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

bool is_digit_token(const std::string& s) {
    if (s.empty()) return false;
    for (unsigned char c : s)
        if (!std::isdigit(c)) return false;
    return true;
}

}  // namespace

std::vector<std::string> TaggerModel::features(const std::vector<std::string>& tokens,
                                               std::size_t pos) {
    std::vector<std::string> f;
    f.reserve(7);
    f.push_back("bias");
    f.push_back("w=" + tokens[pos]);
    f.push_back("lw=" + to_lower(tokens[pos]));
    if (is_capitalized(tokens[pos])) f.push_back("cap");
    if (is_digit_token(tokens[pos])) f.push_back("dig");
    f.push_back(pos > 0 ? "p=" + tokens[pos - 1] : "p=<s>");
    f.push_back(pos + 1 < tokens.size() ? "n=" + tokens[pos + 1] : "n=</s>");
    return f;
}

std::array<double, kNumLabels> TaggerModel::scores(const std::vector<std::string>& tokens,
                                                   std::size_t pos) const {
    std::array<double, kNumLabels> s{0.0, 0.0, 0.0};
    for (const auto& feat : features(tokens, pos)) {
        auto it = weights_.find(feat);
        if (it == weights_.end()) continue;
        for (std::size_t l = 0; l < kNumLabels; ++l) s[l] += it->second[l];
    }
    return s;
}

Label TaggerModel::predict_one(const std::vector<std::string>& tokens, std::size_t pos) const {
    const auto s = scores(tokens, pos);
    // Ties break by fixed label order B-ENT < I-ENT < O.
    std::size_t best = 0;
    for (std::size_t l = 1; l < kNumLabels; ++l)
        if (s[l] > s[best]) best = l;
    return static_cast<Label>(best);
}

double TaggerModel::weight(const std::string& feature, Label l) const {
    auto it = weights_.find(feature);
    if (it == weights_.end()) return 0.0;
    return it->second[static_cast<int>(l)];
}

void TaggerModel::add_weight(const std::string& feature, Label l, double delta) {
    weights_[feature][static_cast<int>(l)] += delta;
}

void TaggerModel::scale_all(double factor) {
    for (auto& [_, w] : weights_)
        for (auto& v : w) v *= factor;
}

TaggerModel tagger_train(
    const std::vector<std::pair<std::vector<std::string>, std::vector<Label>>>& labeled,
    std::size_t epochs, double learn_rate, double l2, std::uint64_t seed) {
    if (labeled.empty()) throw std::invalid_argument("tagger_train: empty training set");
    for (const auto& [toks, labs] : labeled)
        if (toks.size() != labs.size())
            throw std::invalid_argument("tagger_train: misaligned sequence");

    TaggerModel model;
    std::vector<std::pair<std::size_t, std::size_t>> examples;  // (sequence, position)
    for (std::size_t s = 0; s < labeled.size(); ++s)
        for (std::size_t i = 0; i < labeled[s].first.size(); ++i) examples.emplace_back(s, i);

    std::mt19937_64 rng(seed);
    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
        std::shuffle(examples.begin(), examples.end(), rng);
        for (const auto& [s, i] : examples) {
            const auto& tokens = labeled[s].first;
            const Label gold = labeled[s].second[i];
            auto raw = model.scores(tokens, i);
            double maxv = *std::max_element(raw.begin(), raw.end());
            std::array<double, kNumLabels> p{};
            double z = 0.0;
            for (std::size_t l = 0; l < kNumLabels; ++l) {
                p[l] = std::exp(raw[l] - maxv);
                z += p[l];
            }
            for (auto& v : p) v /= z;
            if (l2 > 0) model.scale_all(1.0 - learn_rate * l2);
            for (const auto& feat : TaggerModel::features(tokens, i)) {
                for (std::size_t l = 0; l < kNumLabels; ++l) {
                    const double grad = (static_cast<int>(gold) == static_cast<int>(l) ? 1.0 : 0.0) - p[l];
                    model.add_weight(feat, static_cast<Label>(l), learn_rate * grad);
                }
            }
        }
    }
    return model;
}

std::vector<Label> tagger_predict(const TaggerModel& model, const std::vector<std::string>& tokens) {
    if (tokens.empty()) throw std::invalid_argument("tagger_predict: empty token sequence");
    std::vector<Label> out;
    out.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) out.push_back(model.predict_one(tokens, i));
    return out;
}

std::vector<std::string> entity_spans(const std::vector<std::string>& tokens,
                                      const std::vector<Label>& labels) {
    std::vector<std::string> spans;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            spans.push_back(cur);
            cur.clear();
        }
    };
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        switch (labels[i]) {
            case Label::BEnt:
                flush();
                cur = tokens[i];
                break;
            case Label::IEnt:
                if (cur.empty()) cur = tokens[i];
                else cur += " " + tokens[i];
                break;
            case Label::Outside:
                flush();
                break;
        }
    }
    flush();
    return spans;
}

std::vector<Entity> align_entities(const std::vector<std::string>& spans, const KnowledgeBase& kb) {
    std::vector<Entity> out;
    for (const auto& span : spans) {
        auto canonical = kb.resolve(span);
        Entity e;
        e.name = canonical.value_or(span);
        e.in_kb = canonical.has_value();
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const Entity& x) { return x.name == e.name; });
        if (it != out.end()) ++it->frequency;
        else out.push_back(e);
    }
    return out;
}

EmbeddingTable build_embeddings(const Corpus& corpus, std::size_t window, std::size_t dimension) {
    if (corpus.documents.empty()) throw EmptyCorpusError("build_embeddings: empty corpus");
    if (window < 1) throw std::invalid_argument("build_embeddings: window must be >= 1");
    const std::size_t V = corpus.vocab_size();
    if (dimension > V)
        throw std::invalid_argument("build_embeddings: dimension exceeds vocabulary size");

    std::vector<std::vector<double>> cooc(V, std::vector<double>(V, 0.0));
    double total = 0.0;
    std::vector<double> row_sum(V, 0.0);
    for (const auto& doc : corpus.documents) {
        for (const auto& sent : doc.sentences) {
            for (std::size_t i = 0; i < sent.size(); ++i) {
                const std::size_t hi = std::min(sent.size(), i + window + 1);
                for (std::size_t j = i + 1; j < hi; ++j) {
                    cooc[sent[i]][sent[j]] += 1.0;
                    cooc[sent[j]][sent[i]] += 1.0;
                    row_sum[sent[i]] += 1.0;
                    row_sum[sent[j]] += 1.0;
                    total += 2.0;
                }
            }
        }
    }

    Eigen::MatrixXd ppmi = Eigen::MatrixXd::Zero(V, V);
    for (std::size_t i = 0; i < V; ++i) {
        for (std::size_t j = 0; j < V; ++j) {
            if (cooc[i][j] <= 0 || row_sum[i] <= 0 || row_sum[j] <= 0) continue;
            const double pmi =
                std::log(cooc[i][j] * total / (row_sum[i] * row_sum[j]));
            if (pmi > 0) ppmi(i, j) = pmi;
        }
    }

    EmbeddingTable table;
    if (dimension == 0 || dimension == V) {
        table.dimension = V;
        for (std::size_t i = 0; i < V; ++i) {
            std::vector<double> row(V);
            for (std::size_t j = 0; j < V; ++j) row[j] = ppmi(i, j);
            table.vectors[corpus.token(static_cast<TokenId>(i))] = std::move(row);
        }
    } else {
        Eigen::BDCSVD<Eigen::MatrixXd> svd(ppmi, Eigen::ComputeThinU);
        Eigen::MatrixXd reduced =
            svd.matrixU().leftCols(dimension) *
            svd.singularValues().head(dimension).asDiagonal();
        table.dimension = dimension;
        for (std::size_t i = 0; i < V; ++i) {
            std::vector<double> row(dimension);
            for (std::size_t j = 0; j < dimension; ++j) row[j] = reduced(i, j);
            table.vectors[corpus.token(static_cast<TokenId>(i))] = std::move(row);
        }
    }
    return table;
}

EmbeddingTable load_embeddings(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open embedding file: " + path);
    EmbeddingTable table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string word;
        ss >> word;
        std::vector<double> vec;
        double v;
        while (ss >> v) vec.push_back(v);
        if (vec.empty()) throw ParseError("embedding line has no values", lineno);
        if (table.dimension == 0) table.dimension = vec.size();
        if (vec.size() != table.dimension)
            throw ParseError("inconsistent embedding dimension", lineno);
        table.vectors[word] = std::move(vec);
    }
    return table;
}

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("cosine_similarity: dimension mismatch");
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0 || nb == 0) throw ZeroVectorError("cosine_similarity: zero vector");
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::size_t RelationWordGraph::find_node(const std::string& name) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i] == name) return i;
    return nodes.size();
}

RelationWordGraph build_relation_graph(const std::vector<Entity>& entities,
                                       const EmbeddingTable& embeddings, const KnowledgeBase& kb,
                                       double sim_threshold) {
    if (entities.empty()) throw std::invalid_argument("build_relation_graph: empty entity set");

    RelationWordGraph g;
    auto add_node = [&](const std::string& name, bool in_kb, std::size_t freq) -> std::size_t {
        std::size_t i = g.find_node(name);
        if (i == g.nodes.size()) {
            g.nodes.push_back(name);
            g.node_in_kb.push_back(in_kb);
            g.node_freq.push_back(freq);
        }
        return i;
    };

    for (const auto& e : entities) add_node(e.name, e.in_kb, e.frequency);

    // One-hop KB expansion of matched entities.
    for (const auto& e : entities) {
        if (!e.in_kb) continue;
        for (const auto& [neighbor, _] : kb.one_hop(e.name)) add_node(neighbor, true, 1);
    }

    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        for (std::size_t j = 0; j < g.nodes.size(); ++j) {
            if (i == j) continue;
            if (g.node_in_kb[i] && g.node_in_kb[j]) {
                auto rel = kb.relation_between(g.nodes[i], g.nodes[j]);
                if (rel) {
                    if (i < j) g.edges.push_back({i, j, *rel, 1.0});
                    continue;
                }
            }
            if (i < j) {
                // Surface forms index the embedding table (canonical names carry underscores).
                const std::string wi = to_lower(surface_form(g.nodes[i]));
                const std::string wj = to_lower(surface_form(g.nodes[j]));
                if (embeddings.has(wi) && embeddings.has(wj)) {
                    double mu;
                    try {
                        mu = cosine_similarity(embeddings.at(wi), embeddings.at(wj));
                    } catch (const ZeroVectorError&) {
                        continue;
                    }
                    if (mu >= sim_threshold) g.edges.push_back({i, j, "related_to", mu});
                }
            }
        }
    }
    return g;
}

std::map<std::string, double> pagerank(const RelationWordGraph& graph, double damping, double tol,
                                       std::size_t max_iters) {
    if (graph.nodes.empty()) throw std::invalid_argument("pagerank: empty graph");
    if (damping <= 0 || damping >= 1) throw std::invalid_argument("pagerank: damping out of (0,1)");
    const std::size_t n = graph.nodes.size();

    double freq_total = 0.0;
    for (auto f : graph.node_freq) freq_total += static_cast<double>(f);
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = graph.node_freq[i] / freq_total;

    // Edges are treated as bidirectional for rank flow (word-graph convention).
    std::vector<double> out_weight(n, 0.0);
    struct Arc { std::size_t from, to; double w; };
    std::vector<Arc> arcs;
    for (const auto& e : graph.edges) {
        arcs.push_back({e.from, e.to, e.weight});
        arcs.push_back({e.to, e.from, e.weight});
        out_weight[e.from] += e.weight;
        out_weight[e.to] += e.weight;
    }

    std::vector<double> pr(p), next(n);
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        double dangling = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (out_weight[i] == 0.0) dangling += pr[i];
        for (std::size_t j = 0; j < n; ++j)
            next[j] = (1.0 - damping) * p[j] + damping * dangling * p[j];
        for (const auto& a : arcs) next[a.to] += damping * pr[a.from] * (a.w / out_weight[a.from]);
        double delta = 0.0;
        for (std::size_t j = 0; j < n; ++j) delta += std::abs(next[j] - pr[j]);
        pr.swap(next);
        if (delta < tol) {
            std::map<std::string, double> out;
            for (std::size_t i = 0; i < n; ++i) out[graph.nodes[i]] = pr[i];
            return out;
        }
    }
    throw ConvergenceError("pagerank did not converge in " + std::to_string(max_iters) +
                           " iterations");
}

void KnowledgeGraph::canonicalize() {
    std::sort(triples.begin(), triples.end());
    triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
}

KnowledgeGraph extract(const AnnotatedCorpus& annotated, const TaggerModel& tagger,
                       const EmbeddingTable& embeddings, const KnowledgeBase& kb,
                       std::size_t top_k, const ExtractConfig& cfg) {
    KnowledgeGraph result;
    const Corpus& corpus = *annotated.corpus;

    std::map<std::string, double> rank_acc;
    for (const auto& [d, s] : corpus.sentence_index()) {
        const auto& sent_ids = corpus.documents[d].sentences[s];
        if (sent_ids.empty()) continue;
        std::vector<std::string> tokens;
        tokens.reserve(sent_ids.size());
        for (TokenId id : sent_ids) tokens.push_back(corpus.token(id));

        const auto labels = tagger_predict(tagger, tokens);
        const auto spans = entity_spans(tokens, labels);
        if (spans.empty()) continue;
        const auto entities = align_entities(spans, kb);

        const auto graph = build_relation_graph(entities, embeddings, kb, cfg.sim_threshold);
        if (graph.edges.empty()) continue;
        const auto scores = pagerank(graph, cfg.damping, cfg.pagerank_tol, cfg.pagerank_max_iters);

        // Top-k nodes by score, ties by name.
        std::vector<std::pair<double, std::string>> ranked;
        for (const auto& [name, score] : scores) ranked.emplace_back(-score, name);
        std::sort(ranked.begin(), ranked.end());
        std::set<std::string> kept;
        for (std::size_t i = 0; i < ranked.size() && i < top_k; ++i) kept.insert(ranked[i].second);

        for (const auto& e : graph.edges) {
            if (kept.count(graph.nodes[e.from]) && kept.count(graph.nodes[e.to]))
                result.triples.push_back({graph.nodes[e.from], e.label, graph.nodes[e.to]});
        }
        for (const auto& [name, score] : scores) rank_acc[name] += score;
    }

    double total = 0.0;
    for (const auto& [_, v] : rank_acc) total += v;
    if (total > 0)
        for (auto& [_, v] : rank_acc) v /= total;
    result.rank = std::move(rank_acc);
    result.canonicalize();
    return result;
}

}  // namespace skg

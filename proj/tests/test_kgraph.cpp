#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "skg/corpus.hpp"
#include "skg/errors.hpp"
#include "skg/kb.hpp"
#include "skg/kgraph.hpp"

using namespace skg;

namespace {

using Seq = std::pair<std::vector<std::string>, std::vector<Label>>;

// Toy convention: every token starting with 'x' is an entity token (first of a
// run is B-ENT, the rest I-ENT), everything else is O.
Seq make_seq(const std::vector<std::string>& tokens) {
    std::vector<Label> labels;
    bool in_ent = false;
    for (const auto& t : tokens) {
        if (!t.empty() && t[0] == 'x') {
            labels.push_back(in_ent ? Label::IEnt : Label::BEnt);
            in_ent = true;
        } else {
            labels.push_back(Label::Outside);
            in_ent = false;
        }
    }
    return {tokens, labels};
}

// Dense-matrix power iteration oracle for the personalized damped rank. Builds
// the full Google matrix over bidirectional arcs and iterates independently of
// the production sparse implementation.
Eigen::VectorXd pagerank_oracle(const RelationWordGraph& g, double d, std::size_t iters) {
    const auto n = static_cast<Eigen::Index>(g.nodes.size());
    Eigen::VectorXd p(n);
    double ftot = 0;
    for (auto f : g.node_freq) ftot += static_cast<double>(f);
    for (Eigen::Index i = 0; i < n; ++i) p(i) = g.node_freq[i] / ftot;

    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);  // M(to, from)
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (const auto& e : g.edges) {
        out(static_cast<Eigen::Index>(e.from)) += e.weight;
        out(static_cast<Eigen::Index>(e.to)) += e.weight;
    }
    for (const auto& e : g.edges) {
        M(static_cast<Eigen::Index>(e.to), static_cast<Eigen::Index>(e.from)) +=
            e.weight / out(static_cast<Eigen::Index>(e.from));
        M(static_cast<Eigen::Index>(e.from), static_cast<Eigen::Index>(e.to)) +=
            e.weight / out(static_cast<Eigen::Index>(e.to));
    }
    for (Eigen::Index j = 0; j < n; ++j)
        if (out(j) == 0.0) M.col(j) = p;  // dangling column redistributes to p

    Eigen::VectorXd pr = p;
    for (std::size_t it = 0; it < iters; ++it) pr = (1.0 - d) * p + d * (M * pr);
    return pr;
}

}  // namespace

TEST_CASE("entity spans from label sequences") {
    std::vector<std::string> toks{"alan", "turing", "was", "born", "in", "london"};
    std::vector<Label> labs{Label::BEnt, Label::IEnt, Label::Outside,
                            Label::Outside, Label::Outside, Label::BEnt};
    auto spans = entity_spans(toks, labs);
    REQUIRE(spans.size() == 2);
    CHECK(spans[0] == "alan turing");
    CHECK(spans[1] == "london");

    // Orphan I-ENT starts a new span; adjacent B-ENT splits spans.
    auto spans2 = entity_spans({"a", "b", "c"}, {Label::IEnt, Label::BEnt, Label::BEnt});
    REQUIRE(spans2.size() == 3);
}

TEST_CASE("untrained model predicts B-ENT everywhere via the tie order") {
    TaggerModel empty;
    auto labels = tagger_predict(empty, {"one", "two"});
    CHECK(labels == std::vector<Label>{Label::BEnt, Label::BEnt});
}

TEST_CASE("tagger learns a separable toy pattern") {
    std::vector<Seq> train;
    for (const auto& s : std::vector<std::vector<std::string>>{
             {"the", "xalpha", "xbeta", "runs", "fast"},
             {"xgamma", "is", "near", "xdelta", "xepsilon"},
             {"we", "saw", "xalpha", "today"},
             {"xdelta", "xepsilon", "met", "xgamma"},
             {"nothing", "here", "at", "all"},
             {"the", "xbeta", "story"}})
        train.push_back(make_seq(s));
    TaggerModel m = tagger_train(train, 50, 0.1, 1e-4, 7);

    // Seen tokens in a fresh arrangement.
    auto pred = tagger_predict(m, {"we", "saw", "xdelta", "xepsilon", "fast"});
    CHECK(pred[0] == Label::Outside);
    CHECK(pred[1] == Label::Outside);
    CHECK(pred[2] == Label::BEnt);
    CHECK(pred[3] == Label::IEnt);
    CHECK(pred[4] == Label::Outside);
}

TEST_CASE("tagger training is deterministic and validates input") {
    std::vector<Seq> train{make_seq({"xone", "ok"})};
    TaggerModel a = tagger_train(train, 5, 0.1, 0.0, 3);
    TaggerModel b = tagger_train(train, 5, 0.1, 0.0, 3);
    CHECK(a.weight("w=xone", Label::BEnt) == b.weight("w=xone", Label::BEnt));
    CHECK(a.weight("bias", Label::Outside) == b.weight("bias", Label::Outside));

    CHECK_THROWS(tagger_train({}, 1, 0.1, 0.0, 1));
    CHECK_THROWS(tagger_train({{{"a", "b"}, {Label::Outside}}}, 1, 0.1, 0.0, 1));
}

TEST_CASE("align_entities resolves against the KB and counts repeats") {
    KnowledgeBase kb = load_kb(std::string(SKG_DATA_DIR) + "/kb.tsv");
    auto ents = align_entities({"alan turing", "london", "alan turing", "mystery"}, kb);
    REQUIRE(ents.size() == 3);
    CHECK(ents[0].name == "Alan_Turing");
    CHECK(ents[0].in_kb);
    CHECK(ents[0].frequency == 2);
    CHECK(ents[1].name == "London");
    CHECK(ents[2].name == "mystery");
    CHECK(!ents[2].in_kb);
    CHECK(ents[2].frequency == 1);
}

TEST_CASE("cosine similarity trivial values and zero-vector error") {
    CHECK(cosine_similarity({1, 0}, {1, 0}) == doctest::Approx(1.0));
    CHECK(cosine_similarity({1, 0}, {0, 1}) == doctest::Approx(0.0));
    CHECK(cosine_similarity({1, 0}, {-1, 0}) == doctest::Approx(-1.0));
    CHECK(cosine_similarity({3, 0}, {7, 0}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(cosine_similarity({0, 0}, {1, 0}), ZeroVectorError);
    CHECK_THROWS(cosine_similarity({1, 0}, {1, 0, 0}));
}

TEST_CASE("embeddings: two-token sentence gives the hand-computed ppmi entry") {
    Corpus c = corpus_from_text("alpha beta.");
    EmbeddingTable t = build_embeddings(c, 2, 0);
    REQUIRE(t.dimension == 2);
    // One symmetric co-occurrence: pmi(alpha,beta) = ln(1*2/(1*1)) = ln 2.
    const auto& va = t.at("alpha");
    CHECK(va[c.id("beta")] == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(va[c.id("alpha")] == doctest::Approx(0.0));
}

TEST_CASE("embeddings: words in disjoint sentences stay orthogonal") {
    Corpus c = corpus_from_text("cat dog cat dog. sun moon sun moon.");
    EmbeddingTable t = build_embeddings(c, 2, 0);
    CHECK(cosine_similarity(t.at("cat"), t.at("dog")) > 0.5);
    double dot = 0;
    for (std::size_t i = 0; i < t.dimension; ++i) dot += t.at("cat")[i] * t.at("moon")[i];
    CHECK(dot == doctest::Approx(0.0));
}

TEST_CASE("embeddings: truncated reduction keeps requested dimension") {
    Corpus c = corpus_from_text("a b c d. b c d e. c d e f.");
    EmbeddingTable t = build_embeddings(c, 2, 3);
    CHECK(t.dimension == 3);
    for (const auto& [w, v] : t.vectors) CHECK(v.size() == 3);
    CHECK_THROWS(build_embeddings(c, 2, 100));
    CHECK_THROWS(build_embeddings(c, 0, 0));
}

TEST_CASE("relation graph: KB pairs get labeled unit edges") {
    KnowledgeBase kb = load_kb(std::string(SKG_DATA_DIR) + "/kb.tsv");
    EmbeddingTable empty_emb;
    std::vector<Entity> ents{{"Alan_Turing", true, 1}, {"London", true, 1}};
    RelationWordGraph g = build_relation_graph(ents, empty_emb, kb, 0.5);
    // One-hop expansion pulls in Turing's and London's KB neighbours.
    CHECK(g.nodes.size() >= 2);
    bool found = false;
    for (const auto& e : g.edges) {
        if (g.nodes[e.from] == "Alan_Turing" && g.nodes[e.to] == "London") {
            CHECK(e.label == "born_in");
            CHECK(e.weight == doctest::Approx(1.0));
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("relation graph: similarity edges honour the threshold") {
    KnowledgeBase kb;  // empty: no entity is in the KB
    EmbeddingTable emb;
    emb.dimension = 2;
    emb.vectors["near one"] = {1.0, 0.1};
    emb.vectors["near two"] = {1.0, 0.0};
    emb.vectors["far off"] = {0.0, 1.0};
    std::vector<Entity> ents{{"near one", false, 1}, {"near two", false, 1}, {"far off", false, 1}};
    RelationWordGraph g = build_relation_graph(ents, emb, kb, 0.5);
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0].label == "related_to");
    CHECK(g.nodes[g.edges[0].from] == "near one");
    CHECK(g.nodes[g.edges[0].to] == "near two");
    CHECK(g.edges[0].weight == doctest::Approx(1.0 / std::sqrt(1.01)));

    RelationWordGraph g2 = build_relation_graph(ents, emb, kb, 0.9999);
    CHECK(g2.edges.empty());
}

TEST_CASE("pagerank: symmetric two-node graph splits evenly and sums to 1") {
    RelationWordGraph g;
    g.nodes = {"a", "b"};
    g.node_in_kb = {false, false};
    g.node_freq = {1, 1};
    g.edges = {{0, 1, "related_to", 1.0}};
    auto pr = pagerank(g, 0.85, 1e-12, 1000);
    CHECK(pr["a"] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(pr["b"] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("pagerank: isolated node keeps personalized mass") {
    RelationWordGraph g;
    g.nodes = {"solo"};
    g.node_in_kb = {false};
    g.node_freq = {4};
    auto pr = pagerank(g, 0.85, 1e-12, 100);
    CHECK(pr["solo"] == doctest::Approx(1.0));
}

TEST_CASE("pagerank matches a dense power-iteration oracle on a weighted chain") {
    RelationWordGraph g;
    g.nodes = {"a", "b", "c", "d"};
    g.node_in_kb = {true, false, false, true};
    g.node_freq = {3, 1, 1, 2};
    g.edges = {{0, 1, "r", 1.0}, {1, 2, "related_to", 0.6}, {2, 3, "r", 2.0}};
    auto pr = pagerank(g, 0.85, 1e-14, 10000);
    Eigen::VectorXd oracle = pagerank_oracle(g, 0.85, 1000);
    double sum = 0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        CHECK(pr[g.nodes[i]] ==
              doctest::Approx(oracle(static_cast<Eigen::Index>(i))).epsilon(1e-9));
        sum += pr[g.nodes[i]];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pagerank: dangling node with the rest connected, against oracle") {
    RelationWordGraph g;
    g.nodes = {"a", "b", "loner"};
    g.node_in_kb = {false, false, false};
    g.node_freq = {1, 1, 5};
    g.edges = {{0, 1, "related_to", 1.0}};
    auto pr = pagerank(g, 0.85, 1e-14, 10000);
    Eigen::VectorXd oracle = pagerank_oracle(g, 0.85, 2000);
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        CHECK(pr[g.nodes[i]] ==
              doctest::Approx(oracle(static_cast<Eigen::Index>(i))).epsilon(1e-9));
}

TEST_CASE("pagerank error paths") {
    RelationWordGraph g;
    g.nodes = {"a", "b"};
    g.node_in_kb = {false, false};
    g.node_freq = {1, 3};
    g.edges = {{0, 1, "related_to", 1.0}};
    CHECK_THROWS_AS(pagerank(g, 0.85, 1e-300, 2), ConvergenceError);
    CHECK_THROWS(pagerank(g, 1.5, 1e-10, 100));
    CHECK_THROWS(pagerank(RelationWordGraph{}, 0.85, 1e-10, 100));
}

TEST_CASE("extract: fixture corpus recovers KB triples end to end") {
    Corpus corpus = load_corpus(std::string(SKG_DATA_DIR) + "/corpus.txt");
    KnowledgeBase kb = load_kb(std::string(SKG_DATA_DIR) + "/kb.tsv");

    // Weak labels: greedy longest KB alias match over the lowercased tokens.
    std::vector<Seq> labeled;
    for (const auto& doc : corpus.documents) {
        for (const auto& sent : doc.sentences) {
            std::vector<std::string> toks;
            for (TokenId id : sent) toks.push_back(corpus.token(id));
            std::vector<Label> labs(toks.size(), Label::Outside);
            for (std::size_t i = 0; i < toks.size();) {
                std::size_t matched = 0;
                for (std::size_t len = std::min<std::size_t>(4, toks.size() - i); len >= 1; --len) {
                    std::string span = toks[i];
                    for (std::size_t j = 1; j < len; ++j) span += " " + toks[i + j];
                    if (kb.resolve(span)) {
                        labs[i] = Label::BEnt;
                        for (std::size_t j = 1; j < len; ++j) labs[i + j] = Label::IEnt;
                        matched = len;
                        break;
                    }
                }
                i += matched ? matched : 1;
            }
            labeled.push_back({toks, labs});
        }
    }
    TaggerModel tagger = tagger_train(labeled, 30, 0.1, 1e-4, 5);
    EmbeddingTable emb = build_embeddings(corpus, 2, 0);

    AnnotatedCorpus annotated;
    annotated.corpus = &corpus;
    annotated.sentence_topics.assign(corpus.num_sentences(), 0);

    KnowledgeGraph g = extract(annotated, tagger, emb, kb, 20);
    KnowledgeGraph g2 = extract(annotated, tagger, emb, kb, 20);
    CHECK(g == g2);

    auto has_triple = [&](const std::string& h, const std::string& r, const std::string& t) {
        for (const auto& tr : g.triples)
            if (tr[0] == h && tr[1] == r && tr[2] == t) return true;
        return false;
    };
    CHECK(has_triple("Alan_Turing", "born_in", "London"));
    CHECK(has_triple("Alan_Turing", "studied_at", "Cambridge"));
    CHECK(has_triple("Ada_Lovelace", "collaborated_with", "Charles_Babbage"));

    // Triples are canonical: sorted and unique.
    auto sorted = g.triples;
    std::sort(sorted.begin(), sorted.end());
    CHECK(g.triples == sorted);
    CHECK(std::adjacent_find(g.triples.begin(), g.triples.end()) == g.triples.end());

    // Rank scores normalize to 1.
    double total = 0;
    for (const auto& [_, v] : g.rank) total += v;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("extract: corpus without entities yields an empty graph") {
    Corpus corpus = corpus_from_text("just plain words here. more plain words follow.");
    KnowledgeBase kb;
    EmbeddingTable emb = build_embeddings(corpus, 2, 0);

    // Tagger trained to emit O for everything.
    std::vector<Seq> labeled{{{"just", "plain", "words"},
                              {Label::Outside, Label::Outside, Label::Outside}},
                             {{"more", "plain", "follow"},
                              {Label::Outside, Label::Outside, Label::Outside}}};
    TaggerModel tagger = tagger_train(labeled, 50, 0.5, 0.0, 1);

    AnnotatedCorpus annotated;
    annotated.corpus = &corpus;
    annotated.sentence_topics.assign(corpus.num_sentences(), 0);
    KnowledgeGraph g = extract(annotated, tagger, emb, kb, 20);
    CHECK(g.triples.empty());
    CHECK(g.rank.empty());
}

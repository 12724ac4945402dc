#include "skg/corpus.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "skg/errors.hpp"

namespace skg {

TokenId Corpus::intern(const std::string& tok) {
    auto it = token_to_id_.find(tok);
    if (it != token_to_id_.end()) return it->second;
    TokenId id = static_cast<TokenId>(id_to_token_.size());
    token_to_id_.emplace(tok, id);
    id_to_token_.push_back(tok);
    return id;
}

std::size_t Corpus::num_sentences() const {
    std::size_t n = 0;
    for (const auto& d : documents) n += d.sentences.size();
    return n;
}

std::vector<std::pair<std::size_t, std::size_t>> Corpus::sentence_index() const {
    std::vector<std::pair<std::size_t, std::size_t>> idx;
    for (std::size_t d = 0; d < documents.size(); ++d)
        for (std::size_t s = 0; s < documents[d].sentences.size(); ++s) idx.emplace_back(d, s);
    return idx;
}

namespace {

bool is_word_char(unsigned char c) {
    // Multi-byte UTF-8 continuation/lead bytes are kept as word characters.
    return std::isalnum(c) || c >= 0x80;
}

void flush_token(std::string& cur, std::vector<std::string>& out) {
    if (!cur.empty()) {
        out.push_back(cur);
        cur.clear();
    }
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (unsigned char c : text) {
        if (is_word_char(c)) {
            cur.push_back(static_cast<char>(std::tolower(c)));
        } else {
            flush_token(cur, out);
        }
    }
    flush_token(cur, out);
    return out;
}

std::vector<std::vector<std::string>> split_sentences(const std::string& text) {
    std::vector<std::vector<std::string>> out;
    std::string chunk;
    auto flush = [&] {
        auto toks = tokenize(chunk);
        if (!toks.empty()) out.push_back(std::move(toks));
        chunk.clear();
    };
    for (char c : text) {
        if (c == '.' || c == '!' || c == '?') {
            flush();
        } else {
            chunk.push_back(c);
        }
    }
    flush();
    return out;
}

Corpus corpus_from_text(const std::string& text) {
    Corpus corpus;
    std::vector<std::string> blocks;
    std::string block;
    std::istringstream in(text);
    std::string line;
    auto flush_block = [&] {
        if (block.find_first_not_of(" \t\r\n") != std::string::npos) blocks.push_back(block);
        block.clear();
    };
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            flush_block();
        } else {
            block += line;
            block += '\n';
        }
    }
    flush_block();

    if (blocks.empty()) throw EmptyCorpusError("corpus contains no documents");

    for (std::size_t b = 0; b < blocks.size(); ++b) {
        Document doc;
        doc.doc_id = static_cast<int>(b);
        doc.raw_text = blocks[b];
        for (const auto& sent : split_sentences(blocks[b])) {
            std::vector<TokenId> ids;
            ids.reserve(sent.size());
            for (const auto& tok : sent) ids.push_back(corpus.intern(tok));
            doc.sentences.push_back(std::move(ids));
        }
        corpus.documents.push_back(std::move(doc));
    }
    return corpus;
}

Corpus load_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open corpus file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return corpus_from_text(ss.str());
}

std::vector<ReferencePair> load_reference_pairs(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open reference-pair file: " + path);
    std::vector<ReferencePair> pairs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("triples") || !j.contains("text"))
            throw ParseError("malformed reference-pair line", lineno);
        ReferencePair p;
        try {
            for (const auto& t : j.at("triples")) {
                if (!t.is_array() || t.size() != 3) throw ParseError("triple is not [h,r,t]", lineno);
                p.triples.push_back({t[0].get<std::string>(), t[1].get<std::string>(), t[2].get<std::string>()});
            }
            p.reference_text = j.at("text").get<std::string>();
        } catch (const nlohmann::json::exception&) {
            throw ParseError("malformed reference-pair line", lineno);
        }
        if (p.triples.empty()) throw ParseError("empty triples array", lineno);
        pairs.push_back(std::move(p));
    }
    return pairs;
}

}  // namespace skg

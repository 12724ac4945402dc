#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace skg {

using TokenId = std::uint32_t;

struct Document {
    int doc_id = 0;
    std::vector<std::vector<TokenId>> sentences;
    std::string raw_text;

    std::size_t num_tokens() const {
        std::size_t n = 0;
        for (const auto& s : sentences) n += s.size();
        return n;
    }
};

/// Immutable tokenized corpus with a shared token <-> id vocabulary.
class Corpus {
  public:
    std::vector<Document> documents;

    std::size_t vocab_size() const { return id_to_token_.size(); }
    const std::string& token(TokenId id) const { return id_to_token_.at(id); }
    bool has_token(const std::string& tok) const { return token_to_id_.count(tok) > 0; }
    TokenId id(const std::string& tok) const { return token_to_id_.at(tok); }

    TokenId intern(const std::string& tok);

    std::size_t num_sentences() const;
    // Flattened view: sentence index -> (doc index, sentence-in-doc index).
    std::vector<std::pair<std::size_t, std::size_t>> sentence_index() const;

  private:
    std::unordered_map<std::string, TokenId> token_to_id_;
    std::vector<std::string> id_to_token_;
};

struct ReferencePair {
    std::vector<std::array<std::string, 3>> triples;
    std::string reference_text;
};

// Lowercasing word tokenizer: splits on whitespace/punctuation, drops punctuation.
std::vector<std::string> tokenize(const std::string& text);

// Sentence segmentation on [.!?], then tokenization of each sentence.
std::vector<std::vector<std::string>> split_sentences(const std::string& text);

Corpus load_corpus(const std::string& path);
Corpus corpus_from_text(const std::string& text);

std::vector<ReferencePair> load_reference_pairs(const std::string& path);

}  // namespace skg

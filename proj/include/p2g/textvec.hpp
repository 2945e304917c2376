#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace p2g {

using TokenList = std::vector<std::string>;

/// The frozen English stopword list (exactly 127 words, lowercase, sorted).
std::span<const std::string_view> stopwords();

/// Lowercase ASCII-alphanumeric tokens, split on non-alphanumeric runs,
/// minus the stopword list. Deterministic; "" yields [].
TokenList tokenize(std::string_view text);

/// Term dictionary over a document collection. Dimensions are assigned in
/// lexicographic term order, so the index does not depend on document order.
struct VectorIndex {
    std::vector<std::string> terms;               // dim -> term, sorted
    std::unordered_map<std::string, int> dims;    // term -> dim
    std::vector<int> doc_freq;                    // dim -> number of docs containing the term
    std::size_t corpus_size = 0;

    int dim_of(std::string_view term) const;      // -1 when out of vocabulary
};

/// Throws Error(empty_corpus) when docs is empty. Documents may be empty;
/// doc_freq counts documents, not occurrences.
VectorIndex build_index(std::span<const TokenList> docs);

/// Sparse vector: (dimension, weight) pairs sorted by dimension, zeros omitted.
struct SparseVector {
    std::vector<std::pair<int, double>> entries;

    double norm() const;
    bool empty() const { return entries.empty(); }
};

/// TF-IDF embedding: weight(w) = tf(w, tokens) * ln(corpus_size / doc_freq(w)).
/// Out-of-vocabulary tokens are ignored; the all-zero vector is legal.
SparseVector embed(const VectorIndex& index, const TokenList& tokens);

/// u.v / (|u||v|); 0 when either norm is 0.
double cosine_similarity(const SparseVector& u, const SparseVector& v);

/// Abstract text-embedding backend. The shipped implementation is the
/// deterministic TF-IDF one below; swapping in a different model only
/// requires honoring embed() and documenting the cosine range
/// (TF-IDF weights are nonnegative, so its cosines live in [0,1]).
class EmbeddingBackend {
public:
    virtual ~EmbeddingBackend() = default;
    virtual SparseVector embed_tokens(const TokenList& tokens) const = 0;

    SparseVector embed_text(std::string_view text) const { return embed_tokens(tokenize(text)); }
};

class TfidfBackend final : public EmbeddingBackend {
public:
    explicit TfidfBackend(VectorIndex index) : index_(std::move(index)) {}

    SparseVector embed_tokens(const TokenList& tokens) const override {
        return embed(index_, tokens);
    }

    const VectorIndex& index() const { return index_; }

private:
    VectorIndex index_;
};

/// tf(word, doc) * ln(corpus_size / doc_freq(word)); 0 for unknown words.
double tfidf_relevance(const std::string& word, const TokenList& doc, const VectorIndex& index);

/// Distinct terms of doc ranked by tfidf_relevance descending, ties broken
/// lexicographically ascending; zero-score terms excluded; at most k entries.
std::vector<std::pair<std::string, double>> top_keywords(const TokenList& doc,
                                                         const VectorIndex& index, int k);

struct KeywordContrast {
    std::vector<std::pair<std::string, double>> grouped_top;
    std::vector<std::pair<std::string, double>> ungrouped_top;
    std::vector<std::string> grouped_only;    // terms of grouped_top missing from ungrouped_top
    std::vector<std::string> ungrouped_only;  // and vice versa
};

/// Aggregate keyword ranking per collection (scores summed over the
/// collection's documents, index built over the union corpus, grouped docs
/// first), top-k each plus the set difference of the two rankings.
/// Throws Error(empty_corpus) when either collection is empty.
KeywordContrast keyword_contrast(std::span<const TokenList> grouped_docs,
                                 std::span<const TokenList> ungrouped_docs, int k);

/// Levenshtein distance with unit costs, computed on Unicode scalar values
/// (UTF-8 input; each malformed byte counts as one scalar).
std::size_t edit_distance(std::string_view a, std::string_view b);

/// Number of Unicode scalar values edit_distance would see in s.
std::size_t scalar_count(std::string_view s);

}  // namespace p2g

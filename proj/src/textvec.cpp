#include "p2g/textvec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_set>

#include "p2g/errors.hpp"

namespace p2g {

namespace {

bool is_token_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

char to_lower_ascii(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

const std::unordered_set<std::string_view>& stopword_set() {
    static const std::unordered_set<std::string_view> set(stopwords().begin(),
                                                          stopwords().end());
    return set;
}

// Decodes UTF-8 into scalar values; every malformed byte becomes one scalar.
std::vector<std::uint32_t> decode_utf8(std::string_view s) {
    std::vector<std::uint32_t> out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char b = static_cast<unsigned char>(s[i]);
        std::size_t extra = 0;
        std::uint32_t cp = 0;
        if (b < 0x80) {
            cp = b;
        } else if ((b & 0xE0) == 0xC0) {
            extra = 1;
            cp = b & 0x1F;
        } else if ((b & 0xF0) == 0xE0) {
            extra = 2;
            cp = b & 0x0F;
        } else if ((b & 0xF8) == 0xF0) {
            extra = 3;
            cp = b & 0x07;
        } else {
            out.push_back(b);
            ++i;
            continue;
        }
        if (i + extra >= s.size()) {
            // truncated sequence
            out.push_back(b);
            ++i;
            continue;
        }
        bool ok = true;
        for (std::size_t k = 1; k <= extra; ++k) {
            unsigned char cont = static_cast<unsigned char>(s[i + k]);
            if ((cont & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (cont & 0x3F);
        }
        if (!ok) {
            out.push_back(b);
            ++i;
        } else {
            out.push_back(cp);
            i += extra + 1;
        }
    }
    return out;
}

}  // namespace

TokenList tokenize(std::string_view text) {
    TokenList tokens;
    std::string current;
    auto flush = [&] {
        if (!current.empty() && stopword_set().count(current) == 0) tokens.push_back(current);
        current.clear();
    };
    for (char c : text) {
        if (is_token_char(c)) {
            current.push_back(to_lower_ascii(c));
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

int VectorIndex::dim_of(std::string_view term) const {
    auto it = dims.find(std::string(term));
    return it == dims.end() ? -1 : it->second;
}

VectorIndex build_index(std::span<const TokenList> docs) {
    if (docs.empty()) throw Error(Errc::empty_corpus, "build_index needs at least one document");
    std::map<std::string, int> df;  // sorted, so dims come out lexicographic
    for (const auto& doc : docs) {
        std::set<std::string_view> seen(doc.begin(), doc.end());
        for (auto term : seen) ++df[std::string(term)];
    }
    VectorIndex index;
    index.corpus_size = docs.size();
    index.terms.reserve(df.size());
    index.doc_freq.reserve(df.size());
    for (auto& [term, count] : df) {
        index.dims.emplace(term, static_cast<int>(index.terms.size()));
        index.terms.push_back(term);
        index.doc_freq.push_back(count);
    }
    return index;
}

double SparseVector::norm() const {
    double sum = 0.0;
    for (auto& [dim, w] : entries) sum += w * w;
    return std::sqrt(sum);
}

SparseVector embed(const VectorIndex& index, const TokenList& tokens) {
    std::map<int, int> tf;
    for (const auto& token : tokens) {
        int dim = index.dim_of(token);
        if (dim >= 0) ++tf[dim];
    }
    SparseVector v;
    v.entries.reserve(tf.size());
    for (auto& [dim, count] : tf) {
        double idf = std::log(static_cast<double>(index.corpus_size) /
                              static_cast<double>(index.doc_freq[dim]));
        double w = count * idf;
        if (w != 0.0) v.entries.emplace_back(dim, w);
    }
    return v;
}

double cosine_similarity(const SparseVector& u, const SparseVector& v) {
    double nu = u.norm(), nv = v.norm();
    if (nu == 0.0 || nv == 0.0) return 0.0;
    double dot = 0.0;
    auto it = u.entries.begin();
    auto jt = v.entries.begin();
    while (it != u.entries.end() && jt != v.entries.end()) {
        if (it->first < jt->first) {
            ++it;
        } else if (jt->first < it->first) {
            ++jt;
        } else {
            dot += it->second * jt->second;
            ++it;
            ++jt;
        }
    }
    return dot / (nu * nv);
}

double tfidf_relevance(const std::string& word, const TokenList& doc, const VectorIndex& index) {
    int dim = index.dim_of(word);
    if (dim < 0) return 0.0;
    long tf = std::count(doc.begin(), doc.end(), word);
    if (tf == 0) return 0.0;
    return static_cast<double>(tf) * std::log(static_cast<double>(index.corpus_size) /
                                              static_cast<double>(index.doc_freq[dim]));
}

namespace {

// Shared ranking rule: score descending, term ascending, zero scores dropped.
std::vector<std::pair<std::string, double>> rank_terms(
    std::map<std::string, double> scores, int k) {
    std::vector<std::pair<std::string, double>> ranked;
    ranked.reserve(scores.size());
    for (auto& [term, score] : scores)
        if (score != 0.0) ranked.emplace_back(term, score);
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (k >= 0 && ranked.size() > static_cast<std::size_t>(k)) ranked.resize(k);
    return ranked;
}

}  // namespace

std::vector<std::pair<std::string, double>> top_keywords(const TokenList& doc,
                                                         const VectorIndex& index, int k) {
    std::map<std::string, double> scores;
    for (const auto& token : doc)
        if (scores.count(token) == 0) scores[token] = tfidf_relevance(token, doc, index);
    return rank_terms(std::move(scores), k);
}

KeywordContrast keyword_contrast(std::span<const TokenList> grouped_docs,
                                 std::span<const TokenList> ungrouped_docs, int k) {
    if (grouped_docs.empty() || ungrouped_docs.empty())
        throw Error(Errc::empty_corpus, "keyword_contrast needs both collections non-empty");
    std::vector<TokenList> corpus;
    corpus.reserve(grouped_docs.size() + ungrouped_docs.size());
    corpus.insert(corpus.end(), grouped_docs.begin(), grouped_docs.end());
    corpus.insert(corpus.end(), ungrouped_docs.begin(), ungrouped_docs.end());
    VectorIndex index = build_index(corpus);

    auto aggregate = [&](std::span<const TokenList> docs) {
        std::map<std::string, double> scores;
        for (const auto& doc : docs) {
            std::set<std::string_view> seen(doc.begin(), doc.end());
            for (auto term : seen) scores[std::string(term)] += tfidf_relevance(std::string(term), doc, index);
        }
        return rank_terms(std::move(scores), k);
    };

    KeywordContrast contrast;
    contrast.grouped_top = aggregate(grouped_docs);
    contrast.ungrouped_top = aggregate(ungrouped_docs);

    auto names_of = [](const std::vector<std::pair<std::string, double>>& ranked) {
        std::set<std::string> names;
        for (auto& [term, score] : ranked) names.insert(term);
        return names;
    };
    auto grouped_names = names_of(contrast.grouped_top);
    auto ungrouped_names = names_of(contrast.ungrouped_top);
    for (auto& [term, score] : contrast.grouped_top)
        if (ungrouped_names.count(term) == 0) contrast.grouped_only.push_back(term);
    for (auto& [term, score] : contrast.ungrouped_top)
        if (grouped_names.count(term) == 0) contrast.ungrouped_only.push_back(term);
    return contrast;
}

std::size_t scalar_count(std::string_view s) {
    return decode_utf8(s).size();
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
    auto sa = decode_utf8(a);
    auto sb = decode_utf8(b);
    if (sa.empty()) return sb.size();
    if (sb.empty()) return sa.size();
    std::vector<std::size_t> prev(sb.size() + 1), curr(sb.size() + 1);
    for (std::size_t j = 0; j <= sb.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= sa.size(); ++i) {
        curr[0] = i;
        for (std::size_t j = 1; j <= sb.size(); ++j) {
            std::size_t sub = prev[j - 1] + (sa[i - 1] == sb[j - 1] ? 0 : 1);
            curr[j] = std::min({prev[j] + 1, curr[j - 1] + 1, sub});
        }
        std::swap(prev, curr);
    }
    return prev[sb.size()];
}

}  // namespace p2g

#include "p2g/topics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "p2g/errors.hpp"

namespace p2g {

namespace {

// Fixed 53-bit conversion; std::uniform_real_distribution is not portable
// across standard libraries, this is.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double next_double() {  // uniform in [0, 1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace

TopicModel fit_lda(std::span<const TokenList> docs, int k, double alpha, double beta,
                   int iterations, std::uint64_t seed) {
    if (k < 1) throw Error(Errc::bad_hyperparam, "topic count must be >= 1");
    if (alpha <= 0.0 || beta <= 0.0)
        throw Error(Errc::bad_hyperparam, "alpha and beta must be positive");
    if (iterations < 1) throw Error(Errc::bad_hyperparam, "iterations must be >= 1");

    // vocabulary in lexicographic order, as everywhere else
    std::map<std::string, int> dims;
    for (const auto& doc : docs)
        for (const auto& token : doc) dims.emplace(token, 0);
    std::size_t total_tokens = 0;
    for (const auto& doc : docs) total_tokens += doc.size();
    if (dims.empty() || total_tokens == 0)
        throw Error(Errc::empty_corpus, "LDA needs at least one token");
    TopicModel model;
    model.topic_count = k;
    model.seed = seed;
    model.alpha = alpha;
    model.beta = beta;
    model.vocabulary.reserve(dims.size());
    for (auto& [term, dim] : dims) {
        dim = static_cast<int>(model.vocabulary.size());
        model.vocabulary.push_back(term);
    }
    const int v = static_cast<int>(model.vocabulary.size());
    const std::size_t d = docs.size();

    std::vector<std::vector<int>> words(d);
    for (std::size_t i = 0; i < d; ++i) {
        words[i].reserve(docs[i].size());
        for (const auto& token : docs[i]) words[i].push_back(dims.at(token));
    }

    std::vector<std::vector<long>> doc_topic_counts(d, std::vector<long>(k, 0));
    std::vector<std::vector<long>> topic_word_counts(k, std::vector<long>(v, 0));
    std::vector<long> topic_totals(k, 0);
    model.assignments.resize(d);

    Rng rng(seed);
    for (std::size_t i = 0; i < d; ++i) {
        model.assignments[i].resize(words[i].size());
        for (std::size_t j = 0; j < words[i].size(); ++j) {
            int z = k == 1 ? 0 : std::min(k - 1, static_cast<int>(rng.next_double() * k));
            model.assignments[i][j] = z;
            ++doc_topic_counts[i][z];
            ++topic_word_counts[z][words[i][j]];
            ++topic_totals[z];
        }
    }

    // collapsed Gibbs sweeps; a no-op for k == 1
    if (k > 1) {
        std::vector<double> cumulative(k);
        for (int iter = 0; iter < iterations; ++iter) {
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < words[i].size(); ++j) {
                    int w = words[i][j];
                    int z = model.assignments[i][j];
                    --doc_topic_counts[i][z];
                    --topic_word_counts[z][w];
                    --topic_totals[z];

                    double sum = 0.0;
                    for (int t = 0; t < k; ++t) {
                        double p = (static_cast<double>(doc_topic_counts[i][t]) + alpha) *
                                   (static_cast<double>(topic_word_counts[t][w]) + beta) /
                                   (static_cast<double>(topic_totals[t]) +
                                    static_cast<double>(v) * beta);
                        sum += p;
                        cumulative[t] = sum;
                    }
                    double u = rng.next_double() * sum;
                    int picked = k - 1;
                    for (int t = 0; t < k; ++t) {
                        if (u < cumulative[t]) {
                            picked = t;
                            break;
                        }
                    }
                    model.assignments[i][j] = picked;
                    ++doc_topic_counts[i][picked];
                    ++topic_word_counts[picked][w];
                    ++topic_totals[picked];
                }
            }
        }
    }

    model.topic_word.assign(k, std::vector<double>(v, 0.0));
    for (int t = 0; t < k; ++t) {
        double denom = static_cast<double>(topic_totals[t]) + static_cast<double>(v) * beta;
        for (int w = 0; w < v; ++w)
            model.topic_word[t][w] =
                (static_cast<double>(topic_word_counts[t][w]) + beta) / denom;
    }
    model.doc_topic.assign(d, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < d; ++i) {
        double denom =
            static_cast<double>(words[i].size()) + static_cast<double>(k) * alpha;
        for (int t = 0; t < k; ++t)
            model.doc_topic[i][t] =
                (static_cast<double>(doc_topic_counts[i][t]) + alpha) / denom;
    }
    return model;
}

TopicModel fit_lda(std::span<const TokenList> docs, int k, const LdaSettings& settings) {
    double alpha = settings.alpha.value_or(50.0 / std::max(k, 1));
    return fit_lda(docs, k, alpha, settings.beta, settings.iterations, settings.seed);
}

std::vector<std::pair<std::string, double>> top_topic_words(const TopicModel& model, int topic,
                                                            int top_n) {
    std::vector<std::pair<std::string, double>> words;
    words.reserve(model.vocabulary.size());
    for (std::size_t w = 0; w < model.vocabulary.size(); ++w)
        words.emplace_back(model.vocabulary[w], model.topic_word[topic][w]);
    std::stable_sort(words.begin(), words.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (top_n >= 0 && words.size() > static_cast<std::size_t>(top_n)) words.resize(top_n);
    return words;
}

double coherence(const TopicModel& model, std::span<const TokenList> docs, int top_n) {
    std::vector<std::set<std::string>> doc_terms;
    doc_terms.reserve(docs.size());
    for (const auto& doc : docs) doc_terms.emplace_back(doc.begin(), doc.end());
    auto doc_count = [&](const std::string& a) {
        long n = 0;
        for (const auto& terms : doc_terms) n += terms.count(a) ? 1 : 0;
        return n;
    };
    auto co_count = [&](const std::string& a, const std::string& b) {
        long n = 0;
        for (const auto& terms : doc_terms) n += (terms.count(a) && terms.count(b)) ? 1 : 0;
        return n;
    };

    double total = 0.0;
    for (int t = 0; t < model.topic_count; ++t) {
        auto words = top_topic_words(model, t, top_n);
        double score = 0.0;
        for (std::size_t i = 1; i < words.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                long dj = doc_count(words[j].first);
                if (dj == 0) continue;  // word unseen in docs; nothing to measure
                long dij = co_count(words[i].first, words[j].first);
                score += std::log((static_cast<double>(dij) + 1.0) / static_cast<double>(dj));
            }
        }
        total += score;
    }
    return total / static_cast<double>(model.topic_count);
}

TopicScan select_topic_count(std::span<const TokenList> docs, int k_min, int k_max,
                             const LdaSettings& settings, int top_n) {
    if (k_min < 1 || k_min > k_max)
        throw Error(Errc::bad_hyperparam, "need 1 <= k_min <= k_max");
    TopicScan scan;
    double best_score = 0.0;
    for (int k = k_min; k <= k_max; ++k) {
        LdaSettings per_k = settings;
        per_k.seed = settings.seed + static_cast<std::uint64_t>(k);
        TopicModel model = fit_lda(docs, k, per_k);
        double score = coherence(model, docs, top_n);
        scan.scores.emplace_back(k, score);
        if (scan.best_k == 0 || score > best_score) {
            scan.best_k = k;
            best_score = score;
        }
    }
    return scan;
}

}  // namespace p2g

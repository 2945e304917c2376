#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "p2g/textvec.hpp"

namespace p2g {

/// LDA model fitted by collapsed Gibbs sampling. All randomness comes from
/// a seeded mt19937_64 consumed through fixed 53-bit double conversion, so
/// identical inputs produce bit-identical models on every platform.
struct TopicModel {
    int topic_count = 0;
    std::vector<std::string> vocabulary;           // dim -> term, sorted
    std::vector<std::vector<double>> topic_word;   // K rows, each sums to 1
    std::vector<std::vector<double>> doc_topic;    // one row per doc, sums to 1
    std::vector<std::vector<int>> assignments;     // per-doc per-token topic ids
    std::uint64_t seed = 0;
    double alpha = 0.0;
    double beta = 0.0;
};

/// Fits LDA with k topics. alpha/beta must be positive; docs must contain at
/// least one token overall. Distributions are estimated from the final
/// sampler state with alpha/beta smoothing. k == 1 assigns every token to
/// topic 0. Throws Error(empty_corpus), Error(bad_hyperparam).
TopicModel fit_lda(std::span<const TokenList> docs, int k, double alpha, double beta,
                   int iterations, std::uint64_t seed);

struct LdaSettings {
    std::optional<double> alpha;  // defaults to 50/k
    double beta = 0.01;
    int iterations = 1000;
    std::uint64_t seed = 0;
};

TopicModel fit_lda(std::span<const TokenList> docs, int k, const LdaSettings& settings);

/// UMass coherence averaged over topics. For each topic's top_n words
/// (probability descending, lexicographic tie-break), sums over ordered
/// pairs (w_i later-ranked, w_j earlier-ranked) ln((D(w_i,w_j)+1)/D(w_j)),
/// where D counts documents in docs. top_n == 1 gives 0.
double coherence(const TopicModel& model, std::span<const TokenList> docs, int top_n = 10);

struct TopicScan {
    int best_k = 0;
    std::vector<std::pair<int, double>> scores;  // (k, coherence) for every scanned k
};

/// Fits every k in [k_min, k_max] (per-k seed = settings.seed + k) and
/// returns the coherence argmax, ties broken by the smaller k.
TopicScan select_topic_count(std::span<const TokenList> docs, int k_min, int k_max,
                             const LdaSettings& settings = {}, int top_n = 10);

/// Top words of one topic: (term, probability), probability descending,
/// lexicographic tie-break, at most top_n entries.
std::vector<std::pair<std::string, double>> top_topic_words(const TopicModel& model, int topic,
                                                            int top_n);

}  // namespace p2g

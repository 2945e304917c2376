#include <doctest.h>

#include <cmath>
#include <random>

#include "p2g/errors.hpp"
#include "p2g/ingest.hpp"
#include "p2g/topics.hpp"
#include "test_support.hpp"

using namespace p2g;

namespace {

std::vector<TokenList> cluster_corpus() {
    // two clusters with disjoint vocabularies
    std::vector<TokenList> docs;
    for (int i = 0; i < 4; ++i) docs.push_back({"alpha", "beta", "gamma"});
    for (int i = 0; i < 4; ++i) docs.push_back({"delta", "epsilon", "zeta"});
    return docs;
}

bool rows_normalized(const TopicModel& model) {
    for (const auto& row : model.topic_word) {
        double sum = 0.0;
        for (double p : row) sum += p;
        if (std::fabs(sum - 1.0) > 1e-9) return false;
    }
    for (const auto& row : model.doc_topic) {
        double sum = 0.0;
        for (double p : row) sum += p;
        if (std::fabs(sum - 1.0) > 1e-9) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("k=1 assigns everything to topic zero with the smoothed unigram row") {
    std::vector<TokenList> docs = {{"apple", "apple", "pear"}, {"plum"}};
    auto model = fit_lda(docs, 1, 0.5, 0.01, 50, 9);
    for (const auto& doc : model.assignments)
        for (int z : doc) CHECK(z == 0);
    REQUIRE(model.vocabulary == std::vector<std::string>{"apple", "pear", "plum"});
    // (count + beta) / (total + V*beta), counts: apple 2, pear 1, plum 1
    double denom = 4.0 + 3.0 * 0.01;
    CHECK(model.topic_word[0][0] == doctest::Approx((2.0 + 0.01) / denom).epsilon(1e-12));
    CHECK(model.topic_word[0][1] == doctest::Approx((1.0 + 0.01) / denom).epsilon(1e-12));
    CHECK(rows_normalized(model));
}

TEST_CASE("identical inputs give bit-identical models") {
    auto docs = cluster_corpus();
    auto a = fit_lda(docs, 3, 0.5, 0.01, 200, 42);
    auto b = fit_lda(docs, 3, 0.5, 0.01, 200, 42);
    CHECK(a.assignments == b.assignments);
    CHECK(a.topic_word == b.topic_word);
    CHECK(a.doc_topic == b.doc_topic);
    auto c = fit_lda(docs, 3, 0.5, 0.01, 200, 43);
    CHECK(a.assignments != c.assignments);  // different seed, different chain
}

TEST_CASE("every fitted model is normalized with valid assignments") {
    std::mt19937_64 rng(67);
    static const std::vector<std::string> pool = {"red",  "green", "blue",  "cyan",
                                                  "teal", "gray",  "olive", "pink"};
    for (int round = 0; round < 20; ++round) {
        std::vector<TokenList> docs(1 + rng() % 6);
        bool any = false;
        for (auto& doc : docs) {
            std::size_t len = rng() % 8;
            for (std::size_t i = 0; i < len; ++i) doc.push_back(pool[rng() % pool.size()]);
            any = any || !doc.empty();
        }
        if (!any) continue;
        int k = 1 + static_cast<int>(rng() % 4);
        auto model = fit_lda(docs, k, 50.0 / k, 0.01, 30, rng());
        CHECK(rows_normalized(model));
        for (const auto& doc : model.assignments)
            for (int z : doc) {
                CHECK(z >= 0);
                CHECK(z < k);
            }
    }
}

TEST_CASE("hyperparameter and corpus validation") {
    std::vector<TokenList> docs = {{"word"}};
    CHECK_THROWS_AS(fit_lda(docs, 0, 0.5, 0.01, 10, 1), Error);
    CHECK_THROWS_AS(fit_lda(docs, 1, 0.0, 0.01, 10, 1), Error);
    CHECK_THROWS_AS(fit_lda(docs, 1, 0.5, -1.0, 10, 1), Error);
    CHECK_THROWS_AS(fit_lda(docs, 1, 0.5, 0.01, 0, 1), Error);
    std::vector<TokenList> empty_docs = {{}, {}};
    CHECK_THROWS_AS(fit_lda(empty_docs, 1, 0.5, 0.01, 10, 1), Error);
    try {
        fit_lda(empty_docs, 1, 0.5, 0.01, 10, 1);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::empty_corpus);
    }
}

TEST_CASE("coherence closed forms") {
    SUBCASE("top_n = 1 has no pairs") {
        std::vector<TokenList> docs = {{"alpha", "beta"}};
        auto model = fit_lda(docs, 1, 0.5, 0.01, 10, 1);
        CHECK(coherence(model, docs, 1) == 0.0);
    }
    SUBCASE("full co-occurrence gives ln(5/4)") {
        std::vector<TokenList> docs(4, TokenList{"alpha", "beta"});
        auto model = fit_lda(docs, 1, 0.5, 0.01, 10, 1);
        CHECK(coherence(model, docs, 2) == doctest::Approx(std::log(5.0 / 4.0)).epsilon(1e-12));
    }
    SUBCASE("never co-occurring gives ln(1/4)") {
        std::vector<TokenList> docs = {{"alpha", "alpha"}, {"alpha", "alpha"},
                                       {"alpha"},          {"alpha"},
                                       {"beta"},           {"beta"}};
        auto model = fit_lda(docs, 1, 0.5, 0.01, 10, 1);
        // top two words are alpha (count 6) then beta (count 2);
        // pair term ln((D(beta,alpha)+1)/D(alpha)) = ln(1/4)
        CHECK(coherence(model, docs, 2) == doctest::Approx(std::log(0.25)).epsilon(1e-12));
    }
}

TEST_CASE("select_topic_count contract") {
    auto docs = cluster_corpus();
    LdaSettings settings;
    settings.alpha = 0.5;
    settings.iterations = 300;
    settings.seed = 42;

    SUBCASE("degenerate scan returns its only k") {
        auto scan = select_topic_count(docs, 5, 5, settings, 3);
        CHECK(scan.best_k == 5);
        CHECK(scan.scores.size() == 1);
    }
    SUBCASE("two disjoint clusters select k = 2") {
        auto scan = select_topic_count(docs, 1, 4, settings, 3);
        CHECK(scan.scores.size() == 4);
        CHECK(scan.best_k == 2);
    }
    SUBCASE("scan length is always kmax - kmin + 1") {
        auto scan = select_topic_count(docs, 2, 6, settings, 3);
        CHECK(scan.scores.size() == 5);
        for (std::size_t i = 0; i < scan.scores.size(); ++i)
            CHECK(scan.scores[i].first == static_cast<int>(i) + 2);
    }
    SUBCASE("bad bounds are rejected") {
        CHECK_THROWS_AS(select_topic_count(docs, 3, 2, settings), Error);
        CHECK_THROWS_AS(select_topic_count(docs, 0, 2, settings), Error);
    }
}

TEST_CASE("fixture group descriptions, k=2, seed=42: frozen top words") {
    auto snapshot = load_snapshot(testsup::fixtures_dir() / "centosish_v1.json");
    std::vector<TokenList> docs;
    for (const auto& g : snapshot.groups) docs.push_back(tokenize(g.description));
    auto model = fit_lda(docs, 2, 25.0, 0.01, 500, 42);
    CHECK(rows_normalized(model));
    auto words0 = top_topic_words(model, 0, 3);
    auto words1 = top_topic_words(model, 1, 3);
    REQUIRE(words0.size() == 3);
    REQUIRE(words1.size() == 3);
    // frozen after the first verified run; normalization and determinism
    // are checked independently above. Topic 0 picks up the desktop-group
    // vocabulary, topic 1 the system/installation one.
    CHECK(words0[0].first == "desktop");
    CHECK(words0[1].first == "environment");
    CHECK(words0[2].first == "graphical");
    CHECK(words1[0].first == "system");
    CHECK(words1[1].first == "applications");
    CHECK(words1[2].first == "installation");
}

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "vennprob/ngram.hpp"
#include "vennprob/probmodel.hpp"
#include "vennprob/rng.hpp"

using namespace vennprob;

namespace {

NGramStats stats_from_text(const std::string& text) {
    std::istringstream in(text);
    return load_counts(in);
}

const char* kSmallCorpus =
    "#SENTENCES 1000\n"
    "w 600\n"
    "x 500\n"
    "y 400\n"
    "z 300\n"
    "w x 350\n"
    "w y 260\n"
    "w z 200\n"
    "x y 220\n"
    "x z 160\n"
    "y z 130\n";

// Builds a counts file for three words from sentence-level samples of a
// known joint distribution.
std::string corpus_from_joint(const JointDist8& dist, std::uint64_t n, std::uint64_t seed) {
    const CellCounts counts = sample_counts(dist, n, seed);
    std::uint64_t na = 0, nb = 0, nc = 0, nab = 0, nac = 0, nbc = 0;
    for (int idx = 0; idx < 8; ++idx) {
        const bool a = idx & 4, b = idx & 2, c = idx & 1;
        const std::uint64_t k = counts.counts[idx];
        if (a) na += k;
        if (b) nb += k;
        if (c) nc += k;
        if (a && b) nab += k;
        if (a && c) nac += k;
        if (b && c) nbc += k;
    }
    std::ostringstream out;
    out << "#SENTENCES " << n << "\n";
    out << "alpha " << na << "\nbeta " << nb << "\ngamma " << nc << "\n";
    out << "alpha beta " << nab << "\nalpha gamma " << nac << "\nbeta gamma " << nbc << "\n";
    return out.str();
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    auto ranks = [](const std::vector<double>& v) {
        std::vector<std::size_t> order(v.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < order.size(); ++i) r[order[i]] = static_cast<double>(i);
        return r;
    };
    const auto rx = ranks(x), ry = ranks(y);
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

TEST_CASE("load_counts parses the documented format") {
    const NGramStats stats = stats_from_text(
        "#SENTENCES 100\n"
        "# a comment line\n"
        "the 60\n"
        "cat 30\n"
        "the cat 25\n");
    CHECK(stats.total_sentences == 100);
    CHECK(stats.unigram_prob("the") == 0.6);
    CHECK(stats.unigram_prob("cat") == 0.3);
    CHECK(stats.bigram_prob("the", "cat") == 0.25);
    CHECK(stats.bigram_prob("cat", "the") == 0.25);  // unordered pair
    CHECK(stats.bigram_prob("the", "dog") == 0.0);
    CHECK(stats.warnings.empty());
}

TEST_CASE("load_counts clamps impossible pairs with a warning") {
    const NGramStats stats = stats_from_text(
        "#SENTENCES 100\n"
        "the 60\n"
        "cat 30\n"
        "the cat 45\n");
    CHECK(stats.bigram_prob("the", "cat") == 0.3);  // upper Frechet bound
    CHECK(stats.warnings.size() == 1);
}

TEST_CASE("load_counts error paths") {
    CHECK_THROWS_AS(stats_from_text("the 60\n"), ParseError);              // data before header
    CHECK_THROWS_AS(stats_from_text("# only comments\n"), ParseError);    // missing header
    CHECK_THROWS_AS(stats_from_text("#SENTENCES 10\nthe\n"), ParseError); // malformed line
    CHECK_THROWS_AS(stats_from_text("#SENTENCES 10\nthe cat dog 3\n"), ParseError);
    CHECK_THROWS_AS(stats_from_text("#SENTENCES 10\nthe abc\n"), ParseError);
    CHECK_THROWS_AS(stats_from_text("#SENTENCES 0\nthe 1\n"), std::domain_error);
    try {
        stats_from_text("#SENTENCES 10\nok 5\nbroken line here now\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
}

TEST_CASE("estimate_joint base cases") {
    const NGramStats stats = stats_from_text(kSmallCorpus);
    CHECK(estimate_joint({"w"}, stats).value == 0.6);
    CHECK(estimate_joint({"w", "x"}, stats).value == 0.35);
    CHECK_THROWS_AS(estimate_joint({"nope"}, stats), UnknownWord);
    CHECK_THROWS_AS(estimate_joint({}, stats), std::domain_error);
}

TEST_CASE("estimate_joint identical events return the shared probability") {
    const NGramStats stats = stats_from_text(
        "#SENTENCES 100\n"
        "a 40\nb 40\nc 40\n"
        "a b 40\na c 40\nb c 40\n");
    const JointEstimate est = estimate_joint({"a", "b", "c"}, stats);
    CHECK(est.value == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("estimate_joint with all-zero pairs is zero") {
    const NGramStats stats = stats_from_text(
        "#SENTENCES 100\n"
        "a 40\nb 40\nc 40\n");
    CHECK(estimate_joint({"a", "b", "c"}, stats).value == 0.0);
}

TEST_CASE("estimate_joint three-word value is bounded by its pair probabilities") {
    const NGramStats stats = stats_from_text(kSmallCorpus);
    const JointEstimate est = estimate_joint({"w", "x", "y"}, stats);
    CHECK(est.value >= 0.0);
    CHECK(est.value <= std::min({stats.bigram_prob("w", "x"), stats.bigram_prob("w", "y"),
                                 stats.bigram_prob("x", "y")}));
}

TEST_CASE("four-word reduction recurses through the prefix merge") {
    const NGramStats stats = stats_from_text(kSmallCorpus);
    const JointEstimate est = estimate_joint({"w", "x", "y", "z"}, stats);
    CHECK(est.value >= 0.0);
    CHECK(est.value <= estimate_joint({"w", "x", "y"}, stats).value + 1e-12);

    // the trace must contain the merged sub-subsets
    auto has = [&](const std::vector<std::string>& events) {
        for (const TraceEntry& entry : est.trace)
            if (entry.events == events) return true;
        return false;
    };
    CHECK(has({"w", "x"}));
    CHECK(has({"w", "x", "y"}));
    CHECK(has({"w", "x", "z"}));
    CHECK(has({"w", "x", "y", "z"}));
}

TEST_CASE("memoization does not change results") {
    const NGramStats stats = stats_from_text(kSmallCorpus);
    for (const std::vector<std::string> events :
         {std::vector<std::string>{"w", "x", "y"}, std::vector<std::string>{"w", "x", "y", "z"},
          std::vector<std::string>{"z", "y", "x", "w"}}) {
        const double with = estimate_joint(events, stats, false, true).value;
        const double without = estimate_joint(events, stats, false, false).value;
        CHECK(with == without);
    }
}

TEST_CASE("smoothing only touches unseen pairs") {
    const NGramStats stats = stats_from_text(
        "#SENTENCES 100\n"
        "a 40\nb 40\nc 40\n"
        "a b 20\n");
    CHECK(estimate_joint({"a", "b"}, stats, true).value == 0.2);
    const double unseen = estimate_joint({"b", "c"}, stats, true).value;
    CHECK(unseen > 0.0);
    CHECK(unseen <= 1.0 / 102.0);
    CHECK(estimate_joint({"b", "c"}, stats, false).value == 0.0);
}

TEST_CASE("score_sentence deduplicates and calibrates") {
    const NGramStats stats = stats_from_text(kSmallCorpus);
    SUBCASE("two-word passthrough") {
        const SentenceScore score = score_sentence({"w", "x"}, stats, 0.63);
        CHECK(score.raw_area == 0.35);
        CHECK(score.calibrated == doctest::Approx(0.63 * (0.35 + 0.35 * 0.35)).epsilon(1e-15));
    }
    SUBCASE("repeated word collapses to its unigram") {
        const SentenceScore score = score_sentence({"w", "w", "w"}, stats);
        CHECK(score.raw_area == 0.6);
    }
    SUBCASE("zero calibration") {
        const SentenceScore score = score_sentence({"w", "x", "y"}, stats, 0.0);
        CHECK(score.calibrated == 0.0);
        CHECK(score.raw_area > 0.0);
    }
    SUBCASE("negative k is rejected") {
        CHECK_THROWS_AS(score_sentence({"w"}, stats, -1.0), std::domain_error);
    }
}

TEST_CASE("markov_score follows the chain rule") {
    const NGramStats stats = stats_from_text(
        "#SENTENCES 100\n"
        "a 50\nb 30\nc 10\n"
        "a b 20\n");
    CHECK(markov_score({"a"}, stats) == 0.5);
    // P(a) * P(b|a) = 0.5 * (0.2 / 0.5)
    CHECK(markov_score({"a", "b"}, stats) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(markov_score({"a", "c"}, stats) == 0.0);  // unseen pair annihilates
    CHECK_THROWS_AS(markov_score({"a", "nope"}, stats), UnknownWord);
}

TEST_CASE("rank_sentences orders by calibrated score and isolates errors") {
    const NGramStats stats = stats_from_text(kSmallCorpus);
    const std::vector<std::vector<std::string>> sentences = {
        {"y", "z"},            // raw 0.13
        {"w", "x"},            // raw 0.35
        {"w", "nope"},         // unknown word
        {"w", "x"},            // duplicate of the second, tie
    };
    const auto ranked = rank_sentences(sentences, stats);
    REQUIRE(ranked.size() == 4);
    CHECK(ranked[0].input_index == 1);
    CHECK(ranked[1].input_index == 3);  // tie resolved by input order
    CHECK(ranked[2].input_index == 0);
    CHECK(!ranked[3].score.has_value());
    CHECK(ranked[3].input_index == 2);
    CHECK(ranked[3].error.find("nope") != std::string::npos);
    CHECK(ranked[0].markov.has_value());
}

TEST_CASE("calibration preserves the ranking induced by raw areas") {
    Rng rng(909);
    for (int trial = 0; trial < 10; ++trial) {
        const std::string corpus = corpus_from_joint(random_joint(5150 + trial), 5000, 60 + trial);
        const NGramStats stats = stats_from_text(corpus);
        const std::vector<std::vector<std::string>> sentences = {
            {"alpha"},          {"beta"},           {"gamma"},
            {"alpha", "beta"},  {"alpha", "gamma"}, {"beta", "gamma"},
            {"alpha", "beta", "gamma"}};
        std::vector<double> raw;
        for (const auto& s : sentences) raw.push_back(score_sentence(s, stats, 1.0).raw_area);
        auto argsort_desc = [](const std::vector<double>& v) {
            std::vector<std::size_t> order(v.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
            return order;
        };
        const auto raw_order = argsort_desc(raw);
        for (double k : {0.1, 0.63, 5.0}) {
            std::vector<double> cal;
            for (const auto& s : sentences) cal.push_back(score_sentence(s, stats, k).calibrated);
            CHECK(argsort_desc(cal) == raw_order);
        }
    }
}

TEST_CASE("synthetic corpus: estimates track the true subset probabilities") {
    // Average the rank correlation over several generated corpora; each
    // corpus compares estimated vs true probabilities of the 4 nontrivial
    // word subsets.
    double rho_sum = 0.0;
    int trials = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const JointDist8 dist = random_joint(777 + trial);
        const EstimatedStats truth = joint_to_marginals(dist);
        const std::string corpus = corpus_from_joint(dist, 20000, 31 + trial);
        const NGramStats stats = stats_from_text(corpus);
        std::vector<double> est, tru;
        est.push_back(estimate_joint({"alpha", "beta"}, stats).value);
        tru.push_back(truth.marginals.pAB);
        est.push_back(estimate_joint({"alpha", "gamma"}, stats).value);
        tru.push_back(truth.marginals.pAC);
        est.push_back(estimate_joint({"beta", "gamma"}, stats).value);
        tru.push_back(truth.marginals.pBC);
        try {
            const double v = estimate_joint({"alpha", "beta", "gamma"}, stats).value;
            est.push_back(v);
            tru.push_back(truth.pABC);
        } catch (const JointEstimationError&) {
        }
        if (est.size() < 4) continue;
        rho_sum += spearman(est, tru);
        ++trials;
    }
    REQUIRE(trials >= 15);
    CHECK(rho_sum / trials > 0.0);
}

#include <cmath>

#include "doctest.h"
#include "vennprob/probmodel.hpp"
#include "vennprob/rng.hpp"

using namespace vennprob;

TEST_CASE("random_joint draws valid simplex points") {
    for (std::uint64_t seed : {1ull, 2ull, 12345ull}) {
        const JointDist8 d = random_joint(seed);
        double sum = 0.0;
        for (double cell : d.cell_probs) {
            CHECK(cell >= 0.0);
            sum += cell;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK(random_joint(1).cell_probs != random_joint(2).cell_probs);
    CHECK(random_joint(7).cell_probs == random_joint(7).cell_probs);
}

TEST_CASE("random_joint cell means are symmetric") {
    double mean[8] = {0};
    const int reps = 100000;
    for (int i = 0; i < reps; ++i) {
        const JointDist8 d = random_joint(770000 + i);
        for (int c = 0; c < 8; ++c) mean[c] += d.cell_probs[c];
    }
    for (int c = 0; c < 8; ++c) CHECK(std::abs(mean[c] / reps - 0.125) < 0.005);
}

TEST_CASE("sample_counts conserves trials and hits point masses") {
    SUBCASE("point mass") {
        JointDist8 d;
        d.at(1, 1, 1) = 1.0;
        const CellCounts counts = sample_counts(d, 100, 1);
        CHECK(counts.counts[cell_index(1, 1, 1)] == 100);
        CHECK(counts.total == 100);
    }
    SUBCASE("conservation") {
        const JointDist8 d = random_joint(5);
        for (std::uint64_t n : {1ull, 17ull, 100000ull}) {
            const CellCounts counts = sample_counts(d, n, 9);
            std::uint64_t sum = 0;
            for (auto c : counts.counts) sum += c;
            CHECK(sum == n);
        }
    }
    SUBCASE("uniform cells stay in the binomial band") {
        JointDist8 d;
        d.cell_probs.fill(0.125);
        const CellCounts counts = sample_counts(d, 1000000, 31);
        const double sigma = std::sqrt(1000000 * 0.125 * 0.875);
        for (auto c : counts.counts)
            CHECK(std::abs(static_cast<double>(c) - 125000.0) <= 4.0 * sigma);
    }
    SUBCASE("n of zero is rejected") {
        CHECK_THROWS_AS(sample_counts(random_joint(1), 0, 1), std::domain_error);
    }
}

TEST_CASE("estimate_from_counts reproduces the five-row table") {
    // rows: (0,1,1), (1,0,1), (0,0,1), (1,1,0), (1,0,0)
    CellCounts counts;
    counts.counts[cell_index(0, 1, 1)] = 1;
    counts.counts[cell_index(1, 0, 1)] = 1;
    counts.counts[cell_index(0, 0, 1)] = 1;
    counts.counts[cell_index(1, 1, 0)] = 1;
    counts.counts[cell_index(1, 0, 0)] = 1;
    counts.total = 5;
    const EstimatedStats stats = estimate_from_counts(counts);
    CHECK(stats.marginals.pA == 0.6);
    CHECK(stats.marginals.pB == 0.4);
    CHECK(stats.marginals.pC == 0.6);
    CHECK(stats.marginals.pAB == 0.2);
    CHECK(stats.marginals.pAC == 0.2);
    CHECK(stats.marginals.pBC == 0.2);
    CHECK(stats.pABC == 0.0);
    CHECK(stats.pUnion == 1.0);
}

TEST_CASE("estimate_from_counts degenerate masses") {
    CellCounts all_in;
    all_in.counts[cell_index(1, 1, 1)] = 50;
    all_in.total = 50;
    const EstimatedStats s1 = estimate_from_counts(all_in);
    CHECK(s1.marginals.pA == 1.0);
    CHECK(s1.marginals.pBC == 1.0);
    CHECK(s1.pABC == 1.0);
    CHECK(s1.pUnion == 1.0);

    CellCounts all_out;
    all_out.counts[cell_index(0, 0, 0)] = 50;
    all_out.total = 50;
    const EstimatedStats s0 = estimate_from_counts(all_out);
    CHECK(s0.marginals.pA == 0.0);
    CHECK(s0.pABC == 0.0);
    CHECK(s0.pUnion == 0.0);

    CHECK_THROWS_AS(estimate_from_counts(CellCounts{}), std::domain_error);
}

TEST_CASE("joint_to_marginals on reference distributions") {
    SUBCASE("independent fair coins") {
        JointDist8 d;
        d.cell_probs.fill(0.125);
        const EstimatedStats s = joint_to_marginals(d);
        CHECK(s.marginals.pA == 0.5);
        CHECK(s.marginals.pAB == 0.25);
        CHECK(s.pABC == 0.125);
        CHECK(s.pUnion == 0.875);
    }
    SUBCASE("comonotone events") {
        JointDist8 d;
        d.at(1, 1, 1) = 0.2;
        d.at(0, 0, 0) = 0.8;
        const EstimatedStats s = joint_to_marginals(d);
        CHECK(s.marginals.pA == 0.2);
        CHECK(s.marginals.pAB == 0.2);
        CHECK(s.pABC == 0.2);
    }
}

TEST_CASE("estimates converge to the exact marginals like 1/sqrt(n)") {
    double err3 = 0.0, err5 = 0.0;
    const int dists = 40;
    for (int i = 0; i < dists; ++i) {
        const JointDist8 d = random_joint(60000 + i);
        const EstimatedStats exact = joint_to_marginals(d);
        auto max_err = [&](std::uint64_t n) {
            const EstimatedStats est = estimate_from_counts(sample_counts(d, n, 80000 + i));
            double e = 0.0;
            e = std::max(e, std::abs(est.marginals.pA - exact.marginals.pA));
            e = std::max(e, std::abs(est.marginals.pB - exact.marginals.pB));
            e = std::max(e, std::abs(est.marginals.pC - exact.marginals.pC));
            e = std::max(e, std::abs(est.marginals.pAB - exact.marginals.pAB));
            e = std::max(e, std::abs(est.marginals.pAC - exact.marginals.pAC));
            e = std::max(e, std::abs(est.marginals.pBC - exact.marginals.pBC));
            e = std::max(e, std::abs(est.pABC - exact.pABC));
            return e;
        };
        err3 += max_err(1000);
        err5 += max_err(100000);
    }
    // a 100x sample increase should shrink the error about 10x
    const double ratio = err3 / err5;
    CHECK(ratio > 5.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("inclusion-exclusion identity") {
    SUBCASE("exact on generated distributions") {
        for (int i = 0; i < 1000; ++i) {
            const JointDist8 d = random_joint(1000 + i);
            CHECK(std::abs(inclusion_exclusion_check(joint_to_marginals(d))) <= 1e-12);
        }
    }
    SUBCASE("exact on sampled counts") {
        for (int i = 0; i < 200; ++i) {
            const JointDist8 d = random_joint(2000 + i);
            const CellCounts counts = sample_counts(d, 10000, 3000 + i);
            CHECK(std::abs(inclusion_exclusion_check(estimate_from_counts(counts))) <= 1e-12);
        }
    }
    SUBCASE("linear in a pABC perturbation") {
        EstimatedStats s = joint_to_marginals(random_joint(4));
        s.pABC += 0.01;
        CHECK(inclusion_exclusion_check(s) == doctest::Approx(0.01).epsilon(1e-12));
    }
}

TEST_CASE("feasibility_check reports and clamps") {
    SUBCASE("upper Frechet") {
        const TripleMarginals m{0.5, 0.5, 0.5, 0.6, 0.2, 0.2};
        const FeasibilityReport rep = feasibility_check(m);
        CHECK(rep.violations.size() == 1);
        CHECK(rep.clamped.pAB == 0.5);
    }
    SUBCASE("lower Frechet") {
        const TripleMarginals m{0.9, 0.9, 0.9, 0.7, 0.85, 0.85};
        const FeasibilityReport rep = feasibility_check(m);
        CHECK(rep.violations.size() == 1);
        CHECK(rep.clamped.pAB == doctest::Approx(0.8).epsilon(1e-15));
    }
    SUBCASE("consistent marginals pass unchanged") {
        const TripleMarginals m{0.5, 0.4, 0.3, 0.2, 0.1, 0.12};
        const FeasibilityReport rep = feasibility_check(m);
        CHECK(rep.ok());
        CHECK(rep.clamped.pAB == m.pAB);
    }
    SUBCASE("estimates always pass") {
        for (int i = 0; i < 200; ++i) {
            const CellCounts counts = sample_counts(random_joint(500 + i), 1000, 600 + i);
            const EstimatedStats est = estimate_from_counts(counts);
            CHECK(feasibility_check(est.marginals).ok());
        }
    }
}

TEST_CASE("binomial sampler edge cases and determinism") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i)
        CHECK(binomial_sample(a, 1000000, 0.3) == binomial_sample(b, 1000000, 0.3));
    Rng rng(7);
    CHECK(binomial_sample(rng, 0, 0.5) == 0);
    CHECK(binomial_sample(rng, 100, 0.0) == 0);
    CHECK(binomial_sample(rng, 100, 1.0) == 100);
    CHECK_THROWS_AS(binomial_sample(rng, 10, 1.5), std::domain_error);
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t k = binomial_sample(rng, 50, 0.5);
        CHECK(k <= 50);
    }
}

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "vennprob/geometry.hpp"
#include "vennprob/oracle.hpp"

using namespace vennprob;

TEST_CASE("oracle is deterministic per seed") {
    const TripleConfig cfg = make_config(1, 1, 1, 1, 1, 1);
    const AreaEstimate a = triple_area_numeric(cfg, 100000, 99);
    const AreaEstimate b = triple_area_numeric(cfg, 100000, 99);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    CHECK(a.samples == b.samples);
    const AreaEstimate c = triple_area_numeric(cfg, 100000, 100);
    CHECK(a.mean != c.mean);
}

TEST_CASE("oracle exact zeros") {
    // pairwise disjoint discs: no point can hit all three
    const TripleConfig far = make_config(0.5, 0.5, 0.5, 2, 2, 2);
    const AreaEstimate est = triple_area_numeric(far, 10000, 3);
    CHECK(est.mean == 0.0);
    CHECK(est.std_error == 0.0);

    CHECK(lens_area_numeric(1.0, 1.0, 2.5, 10000, 3).mean == 0.0);
}

TEST_CASE("oracle matches closed forms within 3 sigma") {
    const double pi = std::numbers::pi;
    SUBCASE("identical unit discs") {
        const TripleConfig same = make_config(1, 1, 1, 0, 0, 0);
        const AreaEstimate est = triple_area_numeric(same, 1000000, 4);
        CHECK(std::abs(est.mean - pi) <= 3.0 * std::max(est.std_error, 1e-12));
    }
    SUBCASE("containment lens") {
        const AreaEstimate est = lens_area_numeric(1.0, 0.5, 0.1, 1000000, 5);
        CHECK(std::abs(est.mean - pi * 0.25) <= 3.0 * est.std_error);
    }
    SUBCASE("proper lens") {
        const AreaEstimate est = lens_area_numeric(1.0, 1.0, 1.0, 1000000, 6);
        CHECK(std::abs(est.mean - lens_area(1, 1, 1)) <= 3.0 * est.std_error);
    }
}

TEST_CASE("std_error shrinks like the square root of the sample count") {
    const TripleConfig cfg = make_config(1, 1, 1, 1, 1, 1);
    const AreaEstimate small = triple_area_numeric(cfg, 10000, 8);
    const AreaEstimate big = triple_area_numeric(cfg, 1000000, 8);
    const double ratio = small.std_error / big.std_error;
    CHECK(ratio > 5.0);   // ideal is 10 for a 100x increase
    CHECK(ratio < 20.0);
}

TEST_CASE("oracle rejects empty sampling") {
    const TripleConfig cfg = make_config(1, 1, 1, 1, 1, 1);
    CHECK_THROWS_AS(triple_area_numeric(cfg, 0, 1), std::domain_error);
}

#pragma once

#include <cstdint>

#include "vennprob/geometry.hpp"

namespace vennprob {

// Monte Carlo area estimate with its binomial standard error.
struct AreaEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

// Rejection sampling over the intersection of the discs' bounding boxes;
// a hit is a point inside all three discs. Deterministic per seed. An empty
// sampling box returns mean 0 exactly.
AreaEstimate triple_area_numeric(const TripleConfig& config, std::uint64_t samples,
                                 std::uint64_t seed);

// Same estimator over two discs; the independent check on the closed-form lens.
AreaEstimate lens_area_numeric(double r1, double r2, double d, std::uint64_t samples,
                               std::uint64_t seed);

}  // namespace vennprob

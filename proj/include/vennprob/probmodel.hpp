#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "vennprob/common.hpp"

namespace vennprob {

// Cells of the joint distribution over three binary events are indexed by
// the bitmask (a << 2) | (b << 1) | c, so cell 7 is "all three occur".
inline constexpr int cell_index(int a, int b, int c) { return (a << 2) | (b << 1) | c; }

// Full joint distribution over {0,1}^3; entries are nonnegative and sum to 1.
struct JointDist8 {
    std::array<double, 8> cell_probs{};

    double& at(int a, int b, int c) { return cell_probs[cell_index(a, b, c)]; }
    double at(int a, int b, int c) const { return cell_probs[cell_index(a, b, c)]; }
};

struct CellCounts {
    std::array<std::uint64_t, 8> counts{};
    std::uint64_t total = 0;
};

// The six knowns of the construction: single and pairwise probabilities.
struct TripleMarginals {
    double pA = 0.0, pB = 0.0, pC = 0.0;
    double pAB = 0.0, pAC = 0.0, pBC = 0.0;
};

struct EstimatedStats {
    TripleMarginals marginals;
    double pABC = 0.0;
    double pUnion = 0.0;
};

// Uniform draw from the 8-cell probability simplex (symmetric Dirichlet with
// unit concentration, via normalized exponential variates).
JointDist8 random_joint(std::uint64_t seed);

// Multinomial draw of n trials, realized as a chain of binomial draws so the
// cost is O(8) regardless of n.
CellCounts sample_counts(const JointDist8& dist, std::uint64_t n, std::uint64_t seed);

// Relative frequencies of the seven statistics plus the union.
EstimatedStats estimate_from_counts(const CellCounts& counts);

// Exact marginalization; the ground-truth analogue of estimate_from_counts.
EstimatedStats joint_to_marginals(const JointDist8& dist);

// pABC - (pUnion - pA - pB - pC + pAB + pBC + pAC); zero on any internally
// generated stats, exactly as a counting identity.
double inclusion_exclusion_check(const EstimatedStats& stats);

struct FeasibilityReport {
    std::vector<std::string> violations;
    TripleMarginals clamped;
    bool ok() const { return violations.empty(); }
};

// Diagnoses [0,1]-range and Frechet-bound violations and returns a projected
// copy; never throws and never mutates its input.
FeasibilityReport feasibility_check(const TripleMarginals& m);

}  // namespace vennprob

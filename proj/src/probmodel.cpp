#include "vennprob/probmodel.hpp"

#include <algorithm>
#include <cmath>

#include "vennprob/rng.hpp"

namespace vennprob {

JointDist8 random_joint(std::uint64_t seed) {
    Rng rng(seed);
    JointDist8 dist;
    double sum = 0.0;
    for (double& cell : dist.cell_probs) {
        cell = -std::log(rng.uniform01_pos());
        sum += cell;
    }
    if (sum <= 0.0) {
        dist.cell_probs.fill(0.125);
        return dist;
    }
    for (double& cell : dist.cell_probs) cell /= sum;
    return dist;
}

CellCounts sample_counts(const JointDist8& dist, std::uint64_t n, std::uint64_t seed) {
    if (n == 0) throw std::domain_error("sample_counts: n must be >= 1");
    Rng rng(seed);
    CellCounts out;
    out.total = n;
    std::uint64_t remaining = n;
    double rest = 1.0;
    for (int i = 0; i < 7 && remaining > 0; ++i) {
        double p = rest > 0.0 ? dist.cell_probs[i] / rest : 1.0;
        p = std::clamp(p, 0.0, 1.0);
        std::uint64_t k = binomial_sample(rng, remaining, p);
        out.counts[i] = k;
        remaining -= k;
        rest -= dist.cell_probs[i];
    }
    out.counts[7] += remaining;
    return out;
}

namespace {

template <typename Cell>
EstimatedStats stats_from_cells(const std::array<Cell, 8>& cells, double denom) {
    EstimatedStats s;
    double a = 0, b = 0, c = 0, ab = 0, ac = 0, bc = 0, abc = 0, uni = 0;
    for (int idx = 0; idx < 8; ++idx) {
        const double w = static_cast<double>(cells[idx]);
        const bool ia = idx & 4, ib = idx & 2, ic = idx & 1;
        if (ia) a += w;
        if (ib) b += w;
        if (ic) c += w;
        if (ia && ib) ab += w;
        if (ia && ic) ac += w;
        if (ib && ic) bc += w;
        if (ia && ib && ic) abc += w;
        if (ia || ib || ic) uni += w;
    }
    s.marginals = {a / denom, b / denom, c / denom, ab / denom, ac / denom, bc / denom};
    s.pABC = abc / denom;
    s.pUnion = uni / denom;
    return s;
}

}  // namespace

EstimatedStats estimate_from_counts(const CellCounts& counts) {
    if (counts.total == 0) throw std::domain_error("estimate_from_counts: empty counts");
    return stats_from_cells(counts.counts, static_cast<double>(counts.total));
}

EstimatedStats joint_to_marginals(const JointDist8& dist) {
    return stats_from_cells(dist.cell_probs, 1.0);
}

double inclusion_exclusion_check(const EstimatedStats& s) {
    const TripleMarginals& m = s.marginals;
    return s.pABC - (s.pUnion - m.pA - m.pB - m.pC + m.pAB + m.pBC + m.pAC);
}

namespace {

double clamp_single(const char* name, double p, std::vector<std::string>& out) {
    if (p < 0.0) {
        out.push_back(std::string(name) + " < 0");
        return 0.0;
    }
    if (p > 1.0) {
        out.push_back(std::string(name) + " > 1");
        return 1.0;
    }
    return p;
}

double clamp_pair(const char* name, double pxy, double px, double py,
                  std::vector<std::string>& out) {
    const double lo = std::max(0.0, px + py - 1.0);
    const double hi = std::min(px, py);
    if (pxy < lo) {
        out.push_back(std::string(name) + " below lower Frechet bound max(0, " +
                      std::to_string(px) + " + " + std::to_string(py) + " - 1)");
        return lo;
    }
    if (pxy > hi) {
        out.push_back(std::string(name) + " above upper Frechet bound min(" +
                      std::to_string(px) + ", " + std::to_string(py) + ")");
        return hi;
    }
    return pxy;
}

}  // namespace

FeasibilityReport feasibility_check(const TripleMarginals& m) {
    FeasibilityReport rep;
    rep.clamped.pA = clamp_single("pA", m.pA, rep.violations);
    rep.clamped.pB = clamp_single("pB", m.pB, rep.violations);
    rep.clamped.pC = clamp_single("pC", m.pC, rep.violations);
    rep.clamped.pAB = clamp_pair("pAB", m.pAB, rep.clamped.pA, rep.clamped.pB, rep.violations);
    rep.clamped.pAC = clamp_pair("pAC", m.pAC, rep.clamped.pA, rep.clamped.pC, rep.violations);
    rep.clamped.pBC = clamp_pair("pBC", m.pBC, rep.clamped.pB, rep.clamped.pC, rep.violations);
    return rep;
}

}  // namespace vennprob

#include "vennprob/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "vennprob/rng.hpp"

namespace vennprob {

namespace {

struct Disc {
    Point c;
    double r;
};

bool inside(const Disc& d, double x, double y) {
    const double dx = x - d.c.x, dy = y - d.c.y;
    return dx * dx + dy * dy <= d.r * d.r;
}

AreaEstimate sample_common_area(std::span<const Disc> discs, std::uint64_t samples,
                                std::uint64_t seed) {
    if (samples == 0) throw std::domain_error("area estimate needs at least one sample");
    for (const Disc& d : discs)
        if (!(d.r >= 0.0) || !std::isfinite(d.r))
            throw std::domain_error("radius must be a finite nonnegative number");

    // Tight sampling box: the intersection of the per-disc bounding boxes.
    double xlo = -1e300, xhi = 1e300, ylo = -1e300, yhi = 1e300;
    for (const Disc& d : discs) {
        xlo = std::max(xlo, d.c.x - d.r);
        xhi = std::min(xhi, d.c.x + d.r);
        ylo = std::max(ylo, d.c.y - d.r);
        yhi = std::min(yhi, d.c.y + d.r);
    }
    AreaEstimate est;
    est.samples = samples;
    const double w = xhi - xlo, h = yhi - ylo;
    if (!(w > 0.0) || !(h > 0.0)) return est;  // empty box: mean 0 exactly
    const double box_area = w * h;

    Rng rng(seed);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const double x = xlo + w * rng.uniform01();
        const double y = ylo + h * rng.uniform01();
        bool in = true;
        for (const Disc& d : discs)
            if (!inside(d, x, y)) {
                in = false;
                break;
            }
        if (in) ++hits;
    }
    const double n = static_cast<double>(samples);
    const double p = static_cast<double>(hits) / n;
    est.mean = box_area * p;
    est.std_error = box_area * std::sqrt(p * (1.0 - p) / n);
    return est;
}

}  // namespace

AreaEstimate triple_area_numeric(const TripleConfig& config, std::uint64_t samples,
                                 std::uint64_t seed) {
    const Disc discs[3] = {{config.centers[0], config.circles.radius_a},
                           {config.centers[1], config.circles.radius_b},
                           {config.centers[2], config.circles.radius_c}};
    return sample_common_area(discs, samples, seed);
}

AreaEstimate lens_area_numeric(double r1, double r2, double d, std::uint64_t samples,
                               std::uint64_t seed) {
    if (!(d >= 0.0) || !std::isfinite(d))
        throw std::domain_error("distance must be a finite nonnegative number");
    const Disc discs[2] = {{Point{0.0, 0.0}, r1}, {Point{d, 0.0}, r2}};
    return sample_common_area(discs, samples, seed);
}

}  // namespace vennprob

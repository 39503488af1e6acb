#include "vennprob/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vennprob {

double log_gamma(double x) {
    // Lanczos approximation, g = 7, 9 coefficients.
    static constexpr double kCoeff[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    if (x < 0.5) {
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
    }
    x -= 1.0;
    double a = kCoeff[0];
    for (int i = 1; i < 9; ++i) a += kCoeff[i] / (x + i);
    double t = x + 7.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (x + 0.5) * std::log(t) - t + std::log(a);
}

namespace {

std::uint64_t binomial_small_n(Rng& rng, std::uint64_t n, double q) {
    std::uint64_t k = 0;
    for (std::uint64_t i = 0; i < n; ++i)
        if (rng.uniform01() < q) ++k;
    return k;
}

// Count successes by skipping geometric runs of failures; expected cost n*q.
std::uint64_t binomial_waiting(Rng& rng, std::uint64_t n, double q) {
    const double log1mq = std::log1p(-q);  // q < 1 here
    std::uint64_t k = 0;
    std::uint64_t used = 0;
    while (true) {
        double failures = std::floor(std::log(rng.uniform01_pos()) / log1mq);
        if (failures > static_cast<double>(n - used) - 1.0) break;
        used += static_cast<std::uint64_t>(failures) + 1;
        ++k;
        if (used >= n) break;
    }
    return k;
}

// Envelope rejection with a Cauchy proposal (Numerical-Recipes style);
// exact distribution, O(1) expected draws. Requires n*q >= 10.
std::uint64_t binomial_reject(Rng& rng, std::uint64_t n, double q) {
    const double en = static_cast<double>(n);
    const double oldg = log_gamma(en + 1.0);
    const double pc = 1.0 - q;
    const double plog = std::log(q);
    const double pclog = std::log(pc);
    const double mean = en * q;
    const double sq = std::sqrt(2.0 * mean * pc);
    while (true) {
        double y, em;
        do {
            y = std::tan(std::numbers::pi * rng.uniform01());
            em = sq * y + mean;
        } while (em < 0.0 || em >= en + 1.0);
        em = std::floor(em);
        double t = 1.2 * sq * (1.0 + y * y) *
                   std::exp(oldg - log_gamma(em + 1.0) - log_gamma(en - em + 1.0) +
                            em * plog + (en - em) * pclog);
        if (rng.uniform01() <= t) return static_cast<std::uint64_t>(em);
    }
}

}  // namespace

std::uint64_t binomial_sample(Rng& rng, std::uint64_t n, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binomial_sample: p outside [0, 1]");
    if (n == 0 || p == 0.0) return 0;
    if (p == 1.0) return n;

    const bool flipped = p > 0.5;
    const double q = flipped ? 1.0 - p : p;

    std::uint64_t k;
    if (n < 64)
        k = binomial_small_n(rng, n, q);
    else if (static_cast<double>(n) * q < 10.0)
        k = binomial_waiting(rng, n, q);
    else
        k = binomial_reject(rng, n, q);

    return flipped ? n - k : k;
}

}  // namespace vennprob

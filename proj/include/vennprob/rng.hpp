#pragma once

#include <cstdint>
#include <random>

namespace vennprob {

// Deterministic uniform source. Every randomized routine in the library
// draws through this wrapper so that a run is a pure function of its seeds:
// raw 64-bit words are mapped to doubles by fixed arithmetic instead of
// std::uniform_real_distribution, whose output is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // uniform in [0, 1)
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // uniform in (0, 1]; safe to feed into log()
    double uniform01_pos() { return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
    std::mt19937_64 gen_;
};

// Exact binomial draw with O(1) expected cost for large n, so multinomial
// chains stay cheap at n = 1e8 trials. Small n falls back to Bernoulli
// summation, small n*p to geometric waiting times, everything else to an
// envelope rejection sampler.
std::uint64_t binomial_sample(Rng& rng, std::uint64_t n, double p);

// Lanczos log-gamma, used by the rejection sampler (avoids std::lgamma and
// its signgam global).
double log_gamma(double x);

}  // namespace vennprob

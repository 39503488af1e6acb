#pragma once

#include <stdexcept>
#include <string>

namespace vennprob {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Shape of the region common to the three discs.
//   Generic      - curvilinear triangle bounded by one arc of each circle
//   MultiArc     - bounded by four or more arcs (a pair contributes both
//                  of its crossing points); handled exactly, but outside
//                  the three-arc fast path
//   PairwiseLens - equals the full lens of one pair, inside the third disc
//   Contained    - equals the smallest disc, inside the other two
//   Empty        - no common area
//   Degenerate   - zero radius or all centers coincident; analytic limits
enum class ConfigClass { Generic, MultiArc, PairwiseLens, Contained, Empty, Degenerate };

const char* to_string(ConfigClass c);

// Requested lens area exceeds the largest one the two radii allow.
struct InfeasibleLens : std::domain_error {
    using std::domain_error::domain_error;
};

// Three center distances that cannot be realized in the plane.
struct ConfigurationInfeasible : std::domain_error {
    ConfigurationInfeasible(const std::string& msg, double r_, double s_, double t_)
        : std::domain_error(msg), r(r_), s(s_), t(t_) {}
    double r, s, t;
};

// The three-arc formulas were asked for on a configuration they do not cover.
struct NotGenericConfiguration : std::runtime_error {
    NotGenericConfiguration(const std::string& msg, ConfigClass detected_)
        : std::runtime_error(msg), detected(detected_) {}
    ConfigClass detected;
};

struct DegenerateDistance : std::domain_error {
    using std::domain_error::domain_error;
};

struct InsufficientData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownWord : std::runtime_error {
    explicit UnknownWord(const std::string& w)
        : std::runtime_error("unknown word: " + w), word(w) {}
    std::string word;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t line_)
        : std::runtime_error(msg + " (line " + std::to_string(line_) + ")"), line(line_) {}
    std::size_t line;
};

struct DataInconsistency : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace vennprob

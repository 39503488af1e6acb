#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vennprob/geometry.hpp"
#include "vennprob/probmodel.hpp"

namespace vennprob {

// One sweep entry: estimated statistics for a random joint distribution plus
// the central area solved from its marginals. When the geometry is
// infeasible for this copy, `area` is empty and `error_note` says why.
struct CopyRecord {
    std::uint64_t copy_index = 0;
    EstimatedStats stats;
    std::optional<CentralAreaBreakdown> area;
    std::string error_note;
};

struct ExperimentTable {
    std::vector<CopyRecord> records;
    std::uint64_t n_trials = 0;
    std::uint64_t copies = 0;
    std::uint64_t master_seed = 0;
    bool sorted_by_pabc = false;
};

struct FitResult {
    double k = 0.0;
    double rss = 0.0;
    double pearson_r = 0.0;
    double spearman_rho = 0.0;
    double residual_std = 0.0;
    std::uint64_t skipped_copies = 0;
};

// Per-copy seed splitting: the joint distribution of copy i is drawn with
// seed master_seed + i (so sweeps at different n share distributions), and
// its trial counts with (master_seed + i) xor kCountsSeedSalt. Results are
// a pure function of (copies, n_trials, master_seed) at any thread count.
inline constexpr std::uint64_t kCountsSeedSalt = 0x9e3779b97f4a7c15ull;

ExperimentTable run_experiment(std::uint64_t copies, std::uint64_t n_trials,
                               std::uint64_t master_seed, unsigned threads = 1);

// Stable sort by empirical pABC, ascending; ties keep copy order.
ExperimentTable sort_by_pabc(ExperimentTable table);

// Least squares for the one-parameter model p ~ k (S + S^2), in closed form,
// over records with a solved area. Also reports the S-vs-pABC correlations
// and the residual spread.
FitResult fit_k(const ExperimentTable& table);

// Exploration variant with independent coefficients p ~ k1 S + k2 S^2;
// not the calibration model, exposed behind a CLI flag only.
std::pair<double, double> fit_two_coefficient(const ExperimentTable& table);

// Rolling (sliding-window) standard deviation of S across the table sorted
// by pABC; each entry is (mean pABC of the window, std of S in the window).
std::vector<std::pair<double, double>> fluctuation_profile(const ExperimentTable& table,
                                                           std::size_t window);

double mean_rolling_std(const std::vector<std::pair<double, double>>& profile);

inline std::size_t default_window(std::uint64_t copies) {
    return std::max<std::size_t>(25, static_cast<std::size_t>(copies / 40));
}

// CSV schema: copy_index,pA,pB,pC,pAB,pAC,pBC,pABC,pUnion,S,config_class,error_note
// with floats at 17 significant digits; S and config_class are empty on
// infeasible copies.
void write_csv(const ExperimentTable& table, std::ostream& os);
ExperimentTable read_csv(std::istream& is);

}  // namespace vennprob

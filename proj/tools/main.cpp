// vennprob command-line tool: solve three-circle diagrams from probabilities,
// cross-check them against the sampling oracle, run experiment sweeps, re-fit
// calibration curves, and score sentences from co-occurrence counts.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "vennprob/experiment.hpp"
#include "vennprob/geometry.hpp"
#include "vennprob/ngram.hpp"
#include "vennprob/oracle.hpp"
#include "vennprob/probmodel.hpp"

namespace {

using nlohmann::json;
using namespace vennprob;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitIo = 3;
constexpr int kExitUnknownWord = 4;

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct SixProbs {
    double pa = 0, pb = 0, pc = 0, pab = 0, pac = 0, pbc = 0;

    void add_options(CLI::App* cmd) {
        cmd->add_option("--pa", pa, "P(A)")->required();
        cmd->add_option("--pb", pb, "P(B)")->required();
        cmd->add_option("--pc", pc, "P(C)")->required();
        cmd->add_option("--pab", pab, "P(AB)")->required();
        cmd->add_option("--pac", pac, "P(AC)")->required();
        cmd->add_option("--pbc", pbc, "P(BC)")->required();
    }

    // Returns validated marginals or exits with code 2 naming the violation.
    TripleMarginals validate() const {
        const std::pair<const char*, double> singles[] = {
            {"--pa", pa}, {"--pb", pb}, {"--pc", pc}, {"--pab", pab}, {"--pac", pac}, {"--pbc", pbc}};
        for (const auto& [name, v] : singles) {
            if (!(v >= 0.0 && v <= 1.0)) {
                std::cerr << "error: " << name << " = " << v << " is not a probability in [0, 1]\n";
                std::exit(kExitInfeasible);
            }
        }
        TripleMarginals m{pa, pb, pc, pab, pac, pbc};
        FeasibilityReport rep = feasibility_check(m);
        if (!rep.ok()) {
            for (const std::string& v : rep.violations) std::cerr << "error: " << v << "\n";
            std::exit(kExitInfeasible);
        }
        return m;
    }
};

json config_to_json(const TripleConfig& cfg, const CentralAreaBreakdown& bd) {
    json j;
    j["radii"] = {{"a", cfg.circles.radius_a}, {"b", cfg.circles.radius_b}, {"c", cfg.circles.radius_c}};
    j["distances"] = {{"ab", cfg.dist_ab}, {"ac", cfg.dist_ac}, {"bc", cfg.dist_bc}};
    j["centers"] = json::array();
    for (const Point& p : cfg.centers) j["centers"].push_back({p.x, p.y});
    j["config_class"] = to_string(bd.config_class);
    j["theta"] = {bd.theta1, bd.theta2, bd.theta3};
    j["segments"] = {bd.seg1, bd.seg2, bd.seg3};
    j["chord_triangle"] = bd.chord_triangle;
    j["S"] = bd.total;
    return j;
}

void print_config_text(const TripleConfig& cfg, const CentralAreaBreakdown& bd) {
    std::cout << "radii: a=" << g17(cfg.circles.radius_a) << " b=" << g17(cfg.circles.radius_b)
              << " c=" << g17(cfg.circles.radius_c) << "\n";
    std::cout << "distances: ab=" << g17(cfg.dist_ab) << " ac=" << g17(cfg.dist_ac)
              << " bc=" << g17(cfg.dist_bc) << "\n";
    std::cout << "centers:";
    for (const Point& p : cfg.centers) std::cout << " (" << g17(p.x) << ", " << g17(p.y) << ")";
    std::cout << "\n";
    std::cout << "class: " << to_string(bd.config_class) << "\n";
    std::cout << "theta: " << g17(bd.theta1) << " " << g17(bd.theta2) << " " << g17(bd.theta3)
              << "\n";
    std::cout << "segments: " << g17(bd.seg1) << " " << g17(bd.seg2) << " " << g17(bd.seg3)
              << "\n";
    std::cout << "chord_triangle: " << g17(bd.chord_triangle) << "\n";
    std::cout << "S: " << g17(bd.total) << "\n";
}

int cmd_solve(const SixProbs& probs, double tol, const std::string& format) {
    const TripleMarginals m = probs.validate();
    TripleConfig cfg;
    try {
        cfg = build_config(m, tol);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    }
    const CentralAreaBreakdown bd = triple_intersection_area(cfg);
    if (format == "json")
        std::cout << config_to_json(cfg, bd).dump(2) << "\n";
    else
        print_config_text(cfg, bd);
    return kExitOk;
}

int cmd_oracle(const SixProbs& probs, double tol, std::uint64_t samples, std::uint64_t seed,
               const std::string& format) {
    const TripleMarginals m = probs.validate();
    TripleConfig cfg;
    try {
        cfg = build_config(m, tol);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    }
    const CentralAreaBreakdown bd = triple_intersection_area(cfg);
    const AreaEstimate est = triple_area_numeric(cfg, samples, seed);
    const double gap = bd.total - est.mean;
    if (format == "json") {
        json j = config_to_json(cfg, bd);
        j["oracle"] = {{"mean", est.mean},
                       {"std_error", est.std_error},
                       {"samples", est.samples},
                       {"gap", gap}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "S_closed: " << g17(bd.total) << " (" << to_string(bd.config_class) << ")\n";
        std::cout << "S_oracle: " << g17(est.mean) << " +- " << g17(est.std_error) << " ("
                  << est.samples << " samples)\n";
        std::cout << "gap: " << g17(gap) << "\n";
    }
    return kExitOk;
}

void print_fit_summary(const ExperimentTable& table, std::size_t window) {
    std::uint64_t solved = 0;
    for (const CopyRecord& rec : table.records)
        if (rec.area) ++solved;
    std::cout << "copies=" << table.records.size() << " solved=" << solved << " skipped="
              << table.records.size() - solved << "\n";
    try {
        const FitResult fit = fit_k(table);
        std::cout << "fit: k=" << g17(fit.k) << " pearson=" << g17(fit.pearson_r)
                  << " spearman=" << g17(fit.spearman_rho)
                  << " residual_std=" << g17(fit.residual_std)
                  << " (library default calibration k = " << kDefaultCalibrationK << ")\n";
    } catch (const InsufficientData& e) {
        std::cout << "fit: not available (" << e.what() << ")\n";
    }
    try {
        const auto profile = fluctuation_profile(table, window);
        std::cout << "mean_rolling_std(window=" << window << ")=" << g17(mean_rolling_std(profile))
                  << "\n";
    } catch (const std::domain_error& e) {
        std::cout << "fluctuation profile: not available (" << e.what() << ")\n";
    }
}

int cmd_experiment(std::uint64_t copies, std::uint64_t n_trials, std::uint64_t seed,
                   const std::string& out_path, std::size_t window, unsigned threads,
                   bool two_coef) {
    ExperimentTable table = sort_by_pabc(run_experiment(copies, n_trials, seed, threads));
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output path: " << out_path << "\n";
        return kExitIo;
    }
    write_csv(table, out);
    out.flush();
    if (!out) {
        std::cerr << "error: failed writing CSV to " << out_path << "\n";
        return kExitIo;
    }
    if (window == 0) window = default_window(copies);
    print_fit_summary(table, window);
    if (two_coef) {
        try {
            const auto [k1, k2] = fit_two_coefficient(table);
            std::cout << "two-coefficient fit: k1=" << g17(k1) << " k2=" << g17(k2) << "\n";
        } catch (const InsufficientData& e) {
            std::cout << "two-coefficient fit: not available (" << e.what() << ")\n";
        }
    }
    return kExitOk;
}

int cmd_fit(const std::string& in_path, std::size_t window, bool two_coef) {
    std::ifstream in(in_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open CSV: " << in_path << "\n";
        return kExitIo;
    }
    ExperimentTable table;
    try {
        table = sort_by_pabc(read_csv(in));
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    if (window == 0) window = default_window(table.records.size());
    print_fit_summary(table, window);
    if (two_coef) {
        try {
            const auto [k1, k2] = fit_two_coefficient(table);
            std::cout << "two-coefficient fit: k1=" << g17(k1) << " k2=" << g17(k2) << "\n";
        } catch (const InsufficientData& e) {
            std::cout << "two-coefficient fit: not available (" << e.what() << ")\n";
        }
    }
    return kExitOk;
}

NGramStats load_stats_or_exit(const std::string& path) {
    try {
        NGramStats stats = load_counts_file(path);
        for (const std::string& w : stats.warnings) std::cerr << "warning: " << w << "\n";
        return stats;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::exit(kExitIo);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::exit(kExitInfeasible);
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::exit(kExitIo);
    }
}

json trace_to_json(const std::vector<TraceEntry>& trace) {
    json arr = json::array();
    for (const TraceEntry& entry : trace)
        arr.push_back({{"events", entry.events}, {"estimate", entry.estimate}});
    return arr;
}

int cmd_score(const std::string& counts_path, const std::vector<std::string>& words, double k,
              bool baseline, bool trace, bool smoothing, const std::string& format) {
    if (words.empty()) {
        std::cerr << "error: no sentence words given\n";
        return kExitInfeasible;
    }
    const NGramStats stats = load_stats_or_exit(counts_path);
    SentenceScore score;
    double markov = 0.0;
    try {
        score = score_sentence(words, stats, k, smoothing);
        if (baseline) markov = markov_score(words, stats);
    } catch (const UnknownWord& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnknownWord;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    }
    if (format == "json") {
        json j{{"raw_area", score.raw_area},
               {"calibrated", score.calibrated},
               {"k", score.k_used}};
        if (baseline) j["markov"] = markov;
        if (trace) j["trace"] = trace_to_json(score.reduction_trace);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "raw_area: " << g17(score.raw_area) << "\n";
        std::cout << "calibrated: " << g17(score.calibrated) << " (k=" << g17(score.k_used)
                  << ")\n";
        if (baseline) std::cout << "markov: " << g17(markov) << "\n";
        if (trace)
            for (const TraceEntry& entry : score.reduction_trace) {
                std::cout << "trace: {";
                for (std::size_t i = 0; i < entry.events.size(); ++i)
                    std::cout << (i ? " " : "") << entry.events[i];
                std::cout << "} -> " << g17(entry.estimate) << "\n";
            }
    }
    return kExitOk;
}

std::vector<std::string> split_words(const std::string& sentence) {
    std::istringstream ss(sentence);
    std::vector<std::string> words;
    std::string w;
    while (ss >> w) words.push_back(w);
    return words;
}

int cmd_rank(const std::string& counts_path, const std::vector<std::string>& sentence_args,
             double k, bool baseline, bool smoothing, const std::string& format) {
    const NGramStats stats = load_stats_or_exit(counts_path);
    std::vector<std::vector<std::string>> sentences;
    sentences.reserve(sentence_args.size());
    for (const std::string& s : sentence_args) sentences.push_back(split_words(s));
    const auto ranked = rank_sentences(sentences, stats, k, smoothing);
    if (format == "json") {
        json arr = json::array();
        for (const RankedSentence& r : ranked) {
            json j{{"input_index", r.input_index}, {"words", r.words}};
            if (r.score) {
                j["raw_area"] = r.score->raw_area;
                j["calibrated"] = r.score->calibrated;
                if (baseline && r.markov) j["markov"] = *r.markov;
            } else {
                j["error"] = r.error;
            }
            arr.push_back(j);
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        int place = 1;
        for (const RankedSentence& r : ranked) {
            std::ostringstream line;
            for (std::size_t i = 0; i < r.words.size(); ++i)
                line << (i ? " " : "") << r.words[i];
            if (r.score) {
                std::cout << place++ << ". [calibrated=" << g17(r.score->calibrated)
                          << " raw=" << g17(r.score->raw_area);
                if (baseline && r.markov) std::cout << " markov=" << g17(*r.markov);
                std::cout << "] " << line.str() << "\n";
            } else {
                std::cout << "-- [excluded: " << r.error << "] " << line.str() << "\n";
            }
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"joint-probability estimation from pairwise marginals via "
                 "area-proportional circle diagrams"};
    app.require_subcommand(1);
    app.fallthrough();  // accept --format after the subcommand as well

    std::string format = "text";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));

    // solve
    auto* solve = app.add_subcommand("solve", "solve the diagram and print the central area");
    SixProbs solve_probs;
    solve_probs.add_options(solve);
    double solve_tol = 1e-12;
    solve->add_option("--tol", solve_tol, "bisection area tolerance");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "cross-check the closed form against sampling");
    SixProbs oracle_probs;
    oracle_probs.add_options(oracle);
    double oracle_tol = 1e-12;
    std::uint64_t oracle_samples = 1000000, oracle_seed = 1;
    oracle->add_option("--tol", oracle_tol, "bisection area tolerance");
    oracle->add_option("--samples", oracle_samples, "sample count");
    oracle->add_option("--seed", oracle_seed, "sampling seed");

    // experiment
    auto* experiment = app.add_subcommand("experiment", "random sweep: estimate, solve, fit");
    std::uint64_t exp_copies = 1000, exp_n = 10000, exp_seed = 42;
    std::string exp_out;
    std::size_t exp_window = 0;
    unsigned exp_threads = 1;
    bool exp_two_coef = false;
    experiment->add_option("--copies", exp_copies, "number of random copies");
    experiment->add_option("--n", exp_n, "trials per copy");
    experiment->add_option("--seed", exp_seed, "master seed");
    experiment->add_option("--out", exp_out, "CSV output path")->required();
    experiment->add_option("--window", exp_window, "rolling window (0 = auto)");
    experiment->add_option("--threads", exp_threads, "worker threads");
    experiment->add_flag("--two-coef", exp_two_coef, "also fit independent S and S^2 coefficients");

    // fit
    auto* fit = app.add_subcommand("fit", "re-fit the calibration on an existing sweep CSV");
    std::string fit_in;
    std::size_t fit_window = 0;
    bool fit_two_coef = false;
    fit->add_option("--in", fit_in, "CSV produced by `experiment`")->required();
    fit->add_option("--window", fit_window, "rolling window (0 = auto)");
    fit->add_flag("--two-coef", fit_two_coef, "also fit independent S and S^2 coefficients");

    // score
    auto* score = app.add_subcommand("score", "score one sentence from a counts file");
    std::string score_counts;
    std::vector<std::string> score_words;
    double score_k = kDefaultCalibrationK;
    bool score_baseline = false, score_trace = false, score_smoothing = false;
    score->add_option("--counts", score_counts, "counts file")->required();
    score->add_option("--k", score_k, "calibration coefficient");
    score->add_flag("--baseline", score_baseline, "also print the Markov chain-rule baseline");
    score->add_flag("--trace", score_trace, "print the reduction trace");
    score->add_flag("--smoothing", score_smoothing, "add-one probability for unseen pairs");
    score->add_option("words", score_words, "sentence words");

    // rank
    auto* rank = app.add_subcommand("rank", "rank whole sentences by calibrated score");
    std::string rank_counts;
    std::vector<std::string> rank_sentence_args;
    double rank_k = kDefaultCalibrationK;
    bool rank_baseline = false, rank_smoothing = false;
    rank->add_option("--counts", rank_counts, "counts file")->required();
    rank->add_option("--k", rank_k, "calibration coefficient");
    rank->add_flag("--baseline", rank_baseline, "also print the Markov chain-rule baseline");
    rank->add_flag("--smoothing", rank_smoothing, "add-one probability for unseen pairs");
    rank->add_option("sentences", rank_sentence_args, "sentences (quote each one)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(solve_probs, solve_tol, format);
        if (oracle->parsed())
            return cmd_oracle(oracle_probs, oracle_tol, oracle_samples, oracle_seed, format);
        if (experiment->parsed())
            return cmd_experiment(exp_copies, exp_n, exp_seed, exp_out, exp_window, exp_threads,
                                  exp_two_coef);
        if (fit->parsed()) return cmd_fit(fit_in, fit_window, fit_two_coef);
        if (score->parsed())
            return cmd_score(score_counts, score_words, score_k, score_baseline, score_trace,
                             score_smoothing, format);
        if (rank->parsed())
            return cmd_rank(rank_counts, rank_sentence_args, rank_k, rank_baseline, rank_smoothing,
                            format);
    } catch (const UnknownWord& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnknownWord;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}

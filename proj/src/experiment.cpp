#include "vennprob/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

namespace vennprob {

namespace {

CopyRecord make_copy(std::uint64_t master_seed, std::uint64_t index, std::uint64_t n_trials) {
    CopyRecord rec;
    rec.copy_index = index;
    const JointDist8 dist = random_joint(master_seed + index);
    const CellCounts counts = sample_counts(dist, n_trials, (master_seed + index) ^ kCountsSeedSalt);
    rec.stats = estimate_from_counts(counts);
    try {
        const TripleConfig config = build_config(rec.stats.marginals);
        rec.area = triple_intersection_area(config);
    } catch (const std::exception& e) {
        rec.error_note = e.what();
    }
    return rec;
}

}  // namespace

ExperimentTable run_experiment(std::uint64_t copies, std::uint64_t n_trials,
                               std::uint64_t master_seed, unsigned threads) {
    if (copies == 0) throw std::domain_error("run_experiment: copies must be >= 1");
    if (n_trials == 0) throw std::domain_error("run_experiment: n_trials must be >= 1");
    ExperimentTable table;
    table.copies = copies;
    table.n_trials = n_trials;
    table.master_seed = master_seed;
    table.records.resize(copies);

    if (threads <= 1) {
        for (std::uint64_t i = 0; i < copies; ++i)
            table.records[i] = make_copy(master_seed, i, n_trials);
        return table;
    }

    // Copies are independent; workers fill disjoint slots, so the table is
    // identical to the serial result.
    const unsigned nw = std::min<std::uint64_t>(threads, copies);
    std::vector<std::thread> workers;
    workers.reserve(nw);
    for (unsigned w = 0; w < nw; ++w) {
        workers.emplace_back([&, w]() {
            for (std::uint64_t i = w; i < copies; i += nw)
                table.records[i] = make_copy(master_seed, i, n_trials);
        });
    }
    for (auto& t : workers) t.join();
    return table;
}

ExperimentTable sort_by_pabc(ExperimentTable table) {
    std::stable_sort(table.records.begin(), table.records.end(),
                     [](const CopyRecord& a, const CopyRecord& b) {
                         return a.stats.pABC < b.stats.pABC;
                     });
    table.sorted_by_pabc = true;
    return table;
}

FitResult fit_k(const ExperimentTable& table) {
    FitResult fit;
    std::vector<double> s, p;
    for (const CopyRecord& rec : table.records) {
        if (!rec.area) {
            ++fit.skipped_copies;
            continue;
        }
        s.push_back(rec.area->total);
        p.push_back(rec.stats.pABC);
    }
    if (s.size() < 2) throw InsufficientData("fit_k needs at least two solved copies");

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double u = s[i] + s[i] * s[i];
        num += p[i] * u;
        den += u * u;
    }
    if (den == 0.0) throw InsufficientData("fit_k: all central areas are zero");
    fit.k = num / den;

    double rss = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double res = p[i] - fit.k * (s[i] + s[i] * s[i]);
        rss += res * res;
    }
    fit.rss = rss;
    fit.residual_std = std::sqrt(rss / static_cast<double>(s.size() - 1));

    auto pearson = [](const std::vector<double>& x, const std::vector<double>& y) {
        const double n = static_cast<double>(x.size());
        const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
        const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
        double sxy = 0.0, sxx = 0.0, syy = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            sxy += (x[i] - mx) * (y[i] - my);
            sxx += (x[i] - mx) * (x[i] - mx);
            syy += (y[i] - my) * (y[i] - my);
        }
        if (sxx == 0.0 || syy == 0.0) return 0.0;
        return sxy / std::sqrt(sxx * syy);
    };
    auto ranks = [](const std::vector<double>& x) {
        std::vector<std::size_t> order(x.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
        std::vector<double> rank(x.size());
        std::size_t i = 0;
        while (i < order.size()) {
            std::size_t j = i;
            while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
            const double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
            for (std::size_t t = i; t <= j; ++t) rank[order[t]] = avg;
            i = j + 1;
        }
        return rank;
    };
    fit.pearson_r = pearson(s, p);
    fit.spearman_rho = pearson(ranks(s), ranks(p));
    return fit;
}

std::pair<double, double> fit_two_coefficient(const ExperimentTable& table) {
    // Normal equations for p ~ k1 S + k2 S^2.
    double s11 = 0.0, s12 = 0.0, s22 = 0.0, b1 = 0.0, b2 = 0.0;
    std::size_t m = 0;
    for (const CopyRecord& rec : table.records) {
        if (!rec.area) continue;
        const double S = rec.area->total, S2 = S * S, p = rec.stats.pABC;
        s11 += S * S;
        s12 += S * S2;
        s22 += S2 * S2;
        b1 += p * S;
        b2 += p * S2;
        ++m;
    }
    const double det = s11 * s22 - s12 * s12;
    if (m < 2 || det == 0.0) throw InsufficientData("two-coefficient fit is singular");
    return {(b1 * s22 - b2 * s12) / det, (s11 * b2 - s12 * b1) / det};
}

std::vector<std::pair<double, double>> fluctuation_profile(const ExperimentTable& table,
                                                           std::size_t window) {
    if (!table.sorted_by_pabc)
        throw std::domain_error("fluctuation_profile: table must be sorted by pABC first");
    std::vector<double> s, p;
    for (const CopyRecord& rec : table.records) {
        if (!rec.area) continue;
        s.push_back(rec.area->total);
        p.push_back(rec.stats.pABC);
    }
    if (window < 2 || window > s.size())
        throw std::domain_error("fluctuation_profile: window out of range");

    std::vector<std::pair<double, double>> profile;
    profile.reserve(s.size() - window + 1);
    for (std::size_t i = 0; i + window <= s.size(); ++i) {
        double mean_s = 0.0, mean_p = 0.0;
        for (std::size_t j = i; j < i + window; ++j) {
            mean_s += s[j];
            mean_p += p[j];
        }
        mean_s /= static_cast<double>(window);
        mean_p /= static_cast<double>(window);
        double var = 0.0;
        for (std::size_t j = i; j < i + window; ++j) var += (s[j] - mean_s) * (s[j] - mean_s);
        var /= static_cast<double>(window - 1);
        profile.emplace_back(mean_p, std::sqrt(var));
    }
    return profile;
}

double mean_rolling_std(const std::vector<std::pair<double, double>>& profile) {
    if (profile.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& [center, dev] : profile) sum += dev;
    return sum / static_cast<double>(profile.size());
}

namespace {

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

}  // namespace

void write_csv(const ExperimentTable& table, std::ostream& os) {
    os << "copy_index,pA,pB,pC,pAB,pAC,pBC,pABC,pUnion,S,config_class,error_note\n";
    for (const CopyRecord& rec : table.records) {
        const TripleMarginals& m = rec.stats.marginals;
        os << rec.copy_index << ',' << g17(m.pA) << ',' << g17(m.pB) << ',' << g17(m.pC) << ','
           << g17(m.pAB) << ',' << g17(m.pAC) << ',' << g17(m.pBC) << ',' << g17(rec.stats.pABC)
           << ',' << g17(rec.stats.pUnion) << ',';
        if (rec.area)
            os << g17(rec.area->total) << ',' << to_string(rec.area->config_class) << ',';
        else
            os << ",,";
        os << sanitize(rec.error_note) << '\n';
    }
}

ExperimentTable read_csv(std::istream& is) {
    ExperimentTable table;
    std::string line;
    if (!std::getline(is, line)) throw ParseError("empty CSV", 1);
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        fields.resize(12);
        try {
            CopyRecord rec;
            rec.copy_index = std::stoull(fields[0]);
            TripleMarginals& m = rec.stats.marginals;
            m.pA = std::stod(fields[1]);
            m.pB = std::stod(fields[2]);
            m.pC = std::stod(fields[3]);
            m.pAB = std::stod(fields[4]);
            m.pAC = std::stod(fields[5]);
            m.pBC = std::stod(fields[6]);
            rec.stats.pABC = std::stod(fields[7]);
            rec.stats.pUnion = std::stod(fields[8]);
            if (!fields[9].empty()) {
                CentralAreaBreakdown bd;
                bd.total = std::stod(fields[9]);
                for (ConfigClass c :
                     {ConfigClass::Generic, ConfigClass::MultiArc, ConfigClass::PairwiseLens,
                      ConfigClass::Contained, ConfigClass::Empty, ConfigClass::Degenerate})
                    if (fields[10] == to_string(c)) bd.config_class = c;
                rec.area = bd;
            }
            rec.error_note = fields[11];
            table.records.push_back(std::move(rec));
        } catch (const std::logic_error&) {  // stoull/stod failures
            throw ParseError("malformed CSV field", line_no);
        }
    }
    table.copies = table.records.size();
    return table;
}

}  // namespace vennprob

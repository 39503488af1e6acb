#include "vennprob/ngram.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "vennprob/geometry.hpp"
#include "vennprob/probmodel.hpp"

namespace vennprob {

namespace {

std::pair<std::string, std::string> pair_key(const std::string& a, const std::string& b) {
    return a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
}

std::string join_words(const std::vector<std::string>& words) {
    std::string out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) out += ' ';
        out += words[i];
    }
    return out;
}

}  // namespace

double NGramStats::unigram_prob(const std::string& w) const {
    auto it = unigram.find(w);
    if (it == unigram.end()) throw UnknownWord(w);
    return it->second;
}

double NGramStats::bigram_prob(const std::string& a, const std::string& b) const {
    auto it = bigram.find(pair_key(a, b));
    return it == bigram.end() ? 0.0 : it->second;
}

NGramStats load_counts(std::istream& in) {
    std::uint64_t total = 0;
    bool have_total = false;
    std::map<std::string, std::uint64_t> uni_counts;
    std::map<std::pair<std::string, std::string>, std::uint64_t> bi_counts;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::vector<std::string> tok;
        std::string t;
        while (ss >> t) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok[0] == "#SENTENCES") {
            if (have_total) throw ParseError("duplicate #SENTENCES header", line_no);
            if (tok.size() != 2) throw ParseError("#SENTENCES expects one count", line_no);
            try {
                total = std::stoull(tok[1]);
            } catch (const std::exception&) {
                throw ParseError("bad #SENTENCES count", line_no);
            }
            if (total == 0) throw std::domain_error("count file declares zero sentences");
            have_total = true;
            continue;
        }
        if (tok[0][0] == '#') continue;  // comment
        if (!have_total) throw ParseError("data before #SENTENCES header", line_no);

        std::uint64_t count = 0;
        try {
            count = std::stoull(tok.back());
        } catch (const std::exception&) {
            throw ParseError("bad count field", line_no);
        }
        if (tok.size() == 2)
            uni_counts[tok[0]] += count;
        else if (tok.size() == 3)
            bi_counts[pair_key(tok[0], tok[1])] += count;
        else
            throw ParseError("expected `word count` or `word word count`", line_no);
    }
    if (!have_total) throw ParseError("missing #SENTENCES header", line_no + 1);

    NGramStats stats;
    stats.total_sentences = total;
    const double n = static_cast<double>(total);
    for (const auto& [word, count] : uni_counts) {
        double p = static_cast<double>(count) / n;
        if (p > 1.0) {
            stats.warnings.push_back("unigram '" + word + "' count exceeds sentence total; clamped");
            p = 1.0;
        }
        stats.unigram[word] = p;
    }
    for (const auto& [key, count] : bi_counts) {
        double p = static_cast<double>(count) / n;
        auto ua = stats.unigram.find(key.first);
        auto ub = stats.unigram.find(key.second);
        const double pa = ua == stats.unigram.end() ? 0.0 : ua->second;
        const double pb = ub == stats.unigram.end() ? 0.0 : ub->second;
        const double lo = std::max(0.0, pa + pb - 1.0);
        const double hi = std::min(pa, pb);
        if (p < lo || p > hi) {
            stats.warnings.push_back("pair '" + key.first + " " + key.second +
                                     "' outside Frechet bounds; clamped");
            p = std::clamp(p, lo, hi);
        }
        stats.bigram[key] = p;
    }
    return stats;
}

NGramStats load_counts_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open counts file: " + path);
    return load_counts(in);
}

namespace {

class JointEstimator {
public:
    JointEstimator(const NGramStats& stats, bool smoothing, bool memoize)
        : stats_(stats), smoothing_(smoothing), memoize_(memoize) {}

    double estimate(const std::vector<std::string>& events) {
        const std::string key = join_words(events);
        if (memoize_) {
            auto hit = memo_.find(key);
            if (hit != memo_.end()) return hit->second;
        }
        const double value = compute(events);
        trace_.push_back({events, value});
        if (memoize_) memo_[key] = value;
        return value;
    }

    std::vector<TraceEntry> take_trace() { return std::move(trace_); }

private:
    double pair_prob(const std::string& a, const std::string& b) const {
        const double p = stats_.bigram_prob(a, b);
        if (p > 0.0 || !smoothing_) return p;
        // add-one on the co-occurrence Bernoulli for unseen pairs
        const double n = static_cast<double>(stats_.total_sentences);
        const double smoothed = 1.0 / (n + 2.0);
        return std::min({smoothed, stats_.unigram_prob(a), stats_.unigram_prob(b)});
    }

    double compute(const std::vector<std::string>& events) {
        const std::size_t m = events.size();
        if (m == 1) return stats_.unigram_prob(events[0]);
        if (m == 2) {
            stats_.unigram_prob(events[0]);  // unknown-word check
            stats_.unigram_prob(events[1]);
            return pair_prob(events[0], events[1]);
        }

        TripleMarginals marg;
        if (m == 3) {
            marg.pA = stats_.unigram_prob(events[0]);
            marg.pB = stats_.unigram_prob(events[1]);
            marg.pC = stats_.unigram_prob(events[2]);
            marg.pAB = pair_prob(events[0], events[1]);
            marg.pAC = pair_prob(events[0], events[2]);
            marg.pBC = pair_prob(events[1], events[2]);
        } else {
            // Merge the first m-2 words into one pseudo-event; the last two
            // words stay separate. All sub-joints are raw area estimates.
            std::vector<std::string> prefix(events.begin(), events.end() - 2);
            const std::string& y = events[m - 2];
            const std::string& z = events[m - 1];
            std::vector<std::string> prefix_y = prefix;
            prefix_y.push_back(y);
            std::vector<std::string> prefix_z = prefix;
            prefix_z.push_back(z);
            marg.pA = estimate(prefix);
            marg.pB = stats_.unigram_prob(y);
            marg.pC = stats_.unigram_prob(z);
            marg.pAB = estimate(prefix_y);
            marg.pAC = estimate(prefix_z);
            marg.pBC = pair_prob(y, z);
        }

        // Sub-estimates are approximations and may step outside the bounds;
        // project back before solving the diagram.
        const TripleMarginals clamped = feasibility_check(marg).clamped;
        try {
            const TripleConfig config = build_config(clamped);
            return triple_intersection_area(config).total;
        } catch (const std::exception& e) {
            throw JointEstimationError(std::string("joint estimate failed for {") +
                                           join_words(events) + "}: " + e.what(),
                                       events);
        }
    }

    const NGramStats& stats_;
    bool smoothing_;
    bool memoize_;
    std::unordered_map<std::string, double> memo_;
    std::vector<TraceEntry> trace_;
};

std::vector<std::string> distinct_in_order(const std::vector<std::string>& words) {
    std::vector<std::string> out;
    for (const std::string& w : words)
        if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
    return out;
}

}  // namespace

JointEstimate estimate_joint(const std::vector<std::string>& events, const NGramStats& stats,
                             bool smoothing, bool memoize) {
    if (events.empty()) throw std::domain_error("estimate_joint: need at least one event");
    JointEstimator est(stats, smoothing, memoize);
    JointEstimate out;
    out.value = est.estimate(distinct_in_order(events));
    out.trace = est.take_trace();
    return out;
}

SentenceScore score_sentence(const std::vector<std::string>& words, const NGramStats& stats,
                             double k, bool smoothing) {
    if (words.empty()) throw std::domain_error("score_sentence: empty sentence");
    if (!(k >= 0.0)) throw std::domain_error("score_sentence: k must be >= 0");
    JointEstimate joint = estimate_joint(words, stats, smoothing);
    SentenceScore score;
    score.raw_area = joint.value;
    score.calibrated = k * joint.value + k * joint.value * joint.value;
    score.k_used = k;
    score.reduction_trace = std::move(joint.trace);
    return score;
}

double markov_score(const std::vector<std::string>& words, const NGramStats& stats) {
    if (words.empty()) throw std::domain_error("markov_score: empty sentence");
    for (const std::string& w : words) stats.unigram_prob(w);  // validate up front
    double p = stats.unigram_prob(words[0]);
    for (std::size_t i = 0; i + 1 < words.size(); ++i) {
        const double joint = stats.bigram_prob(words[i], words[i + 1]);
        const double prior = stats.unigram_prob(words[i]);
        if (joint == 0.0) return 0.0;
        if (prior == 0.0)
            throw DataInconsistency("bigram mass on zero-probability word: " + words[i]);
        p *= joint / prior;
    }
    return p;
}

std::vector<RankedSentence> rank_sentences(const std::vector<std::vector<std::string>>& sentences,
                                           const NGramStats& stats, double k, bool smoothing) {
    std::vector<RankedSentence> ranked, failed;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        RankedSentence entry;
        entry.input_index = i;
        entry.words = sentences[i];
        try {
            entry.score = score_sentence(sentences[i], stats, k, smoothing);
            entry.markov = markov_score(sentences[i], stats);
            ranked.push_back(std::move(entry));
        } catch (const std::exception& e) {
            entry.error = e.what();
            failed.push_back(std::move(entry));
        }
    }
    auto key = [](const RankedSentence& r) { return r.score ? r.score->calibrated : -1.0; };
    std::stable_sort(ranked.begin(), ranked.end(),
                     [&](const RankedSentence& a, const RankedSentence& b) {
                         return key(a) > key(b);
                     });
    ranked.insert(ranked.end(), std::make_move_iterator(failed.begin()),
                  std::make_move_iterator(failed.end()));
    return ranked;
}

}  // namespace vennprob

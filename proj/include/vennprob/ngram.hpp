#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vennprob/common.hpp"

namespace vennprob {

// Sentence-level occurrence statistics. Events are "word appears in a
// sentence", so the pair probabilities are unordered co-occurrences rather
// than adjacency counts; word order only matters to the Markov baseline.
struct NGramStats {
    std::unordered_map<std::string, double> unigram;
    std::map<std::pair<std::string, std::string>, double> bigram;  // key sorted low/high
    std::uint64_t total_sentences = 0;
    std::vector<std::string> warnings;  // clamps applied while loading

    // Occurrence probability of one word; throws UnknownWord.
    double unigram_prob(const std::string& w) const;
    // Co-occurrence probability of an unordered pair; 0 when unseen.
    double bigram_prob(const std::string& a, const std::string& b) const;
};

// Count-file format (UTF-8, line oriented):
//   #SENTENCES <total>          header, required before any data line
//   <word> <count>              sentence-level unigram count
//   <word1> <word2> <count>     sentence-level co-occurrence count
//   # ...                       comment
// Duplicate entries accumulate. Probabilities are count/total; pair entries
// violating the Frechet bounds are clamped with a warning per entry.
NGramStats load_counts(std::istream& in);
NGramStats load_counts_file(const std::string& path);

struct TraceEntry {
    std::vector<std::string> events;
    double estimate = 0.0;
};

struct JointEstimate {
    double value = 0.0;
    std::vector<TraceEntry> trace;  // every evaluated subset, sub-estimates first
};

// Geometry infeasibility surfaced during a reduction, tagged with the
// offending event subset.
struct JointEstimationError : std::runtime_error {
    JointEstimationError(const std::string& msg, std::vector<std::string> events_)
        : std::runtime_error(msg), events(std::move(events_)) {}
    std::vector<std::string> events;
};

// Joint occurrence probability of a word set.
//   1 word  -> unigram; 2 words -> bigram;
//   3 words -> central area of the solved three-circle diagram;
//   m >= 4  -> the first m-2 words are merged into one pseudo-event and the
//              construction recurses: its pairwise joints are the (m-1)-word
//              estimates and the last pair's bigram. Sub-estimates propagate
//              raw (uncalibrated); memoization is keyed on the event subset.
// With `smoothing`, unseen pairs get an add-one probability instead of 0.
JointEstimate estimate_joint(const std::vector<std::string>& events, const NGramStats& stats,
                             bool smoothing = false, bool memoize = true);

inline constexpr double kDefaultCalibrationK = 0.63;

struct SentenceScore {
    double raw_area = 0.0;    // joint-probability estimate (an area)
    double calibrated = 0.0;  // k*raw + k*raw^2
    double k_used = kDefaultCalibrationK;
    std::vector<TraceEntry> reduction_trace;
};

// Scores the set of distinct words in the sentence (repeats collapse, since
// the events are occurrences) and applies the calibration on top.
SentenceScore score_sentence(const std::vector<std::string>& words, const NGramStats& stats,
                             double k = kDefaultCalibrationK, bool smoothing = false);

// Chain-rule baseline truncated to adjacent words:
// P(w1) * prod bigram(w_i, w_{i+1}) / unigram(w_i).
double markov_score(const std::vector<std::string>& words, const NGramStats& stats);

struct RankedSentence {
    std::size_t input_index = 0;
    std::vector<std::string> words;
    std::optional<SentenceScore> score;
    std::optional<double> markov;
    std::string error;  // nonempty when the sentence was excluded
};

// Descending by calibrated score, ties in input order; failed sentences are
// annotated and appended after the ranked ones.
std::vector<RankedSentence> rank_sentences(const std::vector<std::vector<std::string>>& sentences,
                                           const NGramStats& stats,
                                           double k = kDefaultCalibrationK,
                                           bool smoothing = false);

}  // namespace vennprob

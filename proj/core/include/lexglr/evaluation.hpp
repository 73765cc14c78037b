#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lexglr/gr.hpp"
#include "lexglr/stats.hpp"
#include "lexglr/tree.hpp"

namespace lexglr {

/// A constituent as a half-open token interval. The label is carried along but
/// ignored when spans are compared.
struct Span {
    std::uint32_t start = 0;
    std::uint32_t end = 0;
    std::string label;

    bool contains(const Span& other) const { return start <= other.start && other.end <= end; }
    bool crosses(const Span& other) const {
        return start < other.end && other.start < end && !contains(other) && !other.contains(*this);
    }
};

/// Spans of internal nodes covering at least 2 tokens, helper categories
/// excluded, sorted by (start, end). Duplicates are kept.
std::vector<Span> extract_brackets(const Tree& tree);

struct BracketCounts {
    std::size_t matched = 0;
    std::size_t test_total = 0;
    std::size_t gold_total = 0;
    std::size_t crossings = 0;

    double recall() const;
    double precision() const;
};

/// Unlabelled bracket comparison. Throws Error if the trees have different lengths.
BracketCounts bracket_scores(const Tree& test, const Tree& gold);

struct BracketReport {
    std::size_t sentences = 0;
    std::size_t matched = 0;
    std::size_t test_total = 0;
    std::size_t gold_total = 0;
    double recall = 0.0;
    double precision = 0.0;
    double mean_crossings = 0.0;
    double zero_crossings_pct = 0.0; // fraction of sentences in [0, 1]
};

/// Micro-averaged over sentences. Throws Error for an empty input.
BracketReport aggregate_brackets(std::span<const BracketCounts> sentences);

/// True if `test` matches `gold` exactly or names the direct parent of gold's
/// relation, heads and dependents are equal, and each type/initial slot is
/// equal or `_` on the test side.
bool gr_match(const GR& test, const GR& gold);

struct GRCounts {
    std::size_t matched = 0;
    std::size_t test_total = 0;
    std::size_t gold_total = 0;
    /// Matched test relations per relation type.
    std::map<GRType, std::size_t> correct_by_relation;

    /// Both ratios are 1 when the denominator is 0.
    double recall() const;
    double precision() const;
};

/// One-to-one assignment of test to gold relations with the most matches;
/// exact-name pairs are taken first.
GRCounts gr_scores(std::span<const GR> test, std::span<const GR> gold);

struct RelationCount {
    std::size_t returned = 0;
    std::size_t correct = 0;
    std::size_t gold = 0;
};

struct GRReport {
    std::size_t sentences = 0;
    std::size_t matched = 0;
    std::size_t test_total = 0;
    std::size_t gold_total = 0;
    double recall = 0.0;
    double precision = 0.0;
    std::map<GRType, RelationCount> by_relation;
    std::vector<double> sentence_recall;
    std::vector<double> sentence_precision;
};

/// Scores aligned sentence-by-sentence. Throws Error on count mismatch, naming
/// the first unmatched index.
GRReport evaluate_grs(std::span<const std::vector<GR>> test, std::span<const std::vector<GR>> gold);

struct RelationHistogram {
    std::map<GRType, std::size_t> counts;
    std::size_t total = 0;
    std::size_t sentences = 0;
    double mean_per_sentence = 0.0;
};

RelationHistogram relation_histogram(std::span<const std::vector<GR>> sentences);

} // namespace lexglr

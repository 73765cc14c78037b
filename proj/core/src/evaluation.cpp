#include "lexglr/evaluation.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <tuple>

#include "lexglr/error.hpp"
#include "lexglr/grammar.hpp"

namespace lexglr {

namespace {

std::uint32_t collect_spans(const Tree& node, std::uint32_t start, std::vector<Span>& out) {
    if (node.is_leaf()) {
        return start + 1;
    }
    auto end = start;
    for (const auto& child : node.children) {
        end = collect_spans(child, end, out);
    }
    if (end - start >= 2 && !is_helper_label(node.label)) {
        out.push_back({start, end, node.label});
    }
    return end;
}

bool span_less(const Span& a, const Span& b) {
    return std::tie(a.start, a.end) < std::tie(b.start, b.end);
}

double ratio(std::size_t num, std::size_t den) {
    return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den);
}

bool slot_matches(const std::optional<std::string>& test, const std::optional<std::string>& gold) {
    return !test || test == gold;
}

} // namespace

std::vector<Span> extract_brackets(const Tree& tree) {
    std::vector<Span> out;
    collect_spans(tree, 0, out);
    std::stable_sort(out.begin(), out.end(), span_less);
    return out;
}

double BracketCounts::recall() const {
    return ratio(matched, gold_total);
}

double BracketCounts::precision() const {
    return ratio(matched, test_total);
}

BracketCounts bracket_scores(const Tree& test, const Tree& gold) {
    const auto test_len = leaf_count(test);
    const auto gold_len = leaf_count(gold);
    if (test_len != gold_len) {
        throw Error("test tree has " + std::to_string(test_len) + " tokens but gold tree has " +
                    std::to_string(gold_len));
    }
    const auto t = extract_brackets(test);
    const auto g = extract_brackets(gold);
    BracketCounts counts;
    counts.test_total = t.size();
    counts.gold_total = g.size();
    // Both lists are sorted by (start, end), so a merge gives the multiset intersection.
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < t.size() && j < g.size()) {
        if (span_less(t[i], g[j])) {
            ++i;
        } else if (span_less(g[j], t[i])) {
            ++j;
        } else {
            ++counts.matched;
            ++i;
            ++j;
        }
    }
    for (const auto& s : t) {
        if (std::any_of(g.begin(), g.end(), [&](const Span& gs) { return s.crosses(gs); })) {
            ++counts.crossings;
        }
    }
    return counts;
}

BracketReport aggregate_brackets(std::span<const BracketCounts> sentences) {
    if (sentences.empty()) {
        throw Error("bracket aggregation needs at least one sentence");
    }
    BracketReport report;
    std::size_t crossings = 0;
    std::size_t zero = 0;
    for (const auto& s : sentences) {
        report.matched += s.matched;
        report.test_total += s.test_total;
        report.gold_total += s.gold_total;
        crossings += s.crossings;
        zero += s.crossings == 0 ? 1 : 0;
    }
    report.sentences = sentences.size();
    report.recall = ratio(report.matched, report.gold_total);
    report.precision = ratio(report.matched, report.test_total);
    report.mean_crossings = static_cast<double>(crossings) / static_cast<double>(sentences.size());
    report.zero_crossings_pct = static_cast<double>(zero) / static_cast<double>(sentences.size());
    return report;
}

bool gr_match(const GR& test, const GR& gold) {
    if (test.relation != gold.relation && !gr_is_parent(test.relation, gold.relation)) {
        return false;
    }
    return test.head == gold.head && test.dependent == gold.dependent && slot_matches(test.type, gold.type) &&
           slot_matches(test.initial, gold.initial);
}

double GRCounts::recall() const {
    return ratio(matched, gold_total);
}

double GRCounts::precision() const {
    return ratio(matched, test_total);
}

GRCounts gr_scores(std::span<const GR> test, std::span<const GR> gold) {
    GRCounts counts;
    counts.test_total = test.size();
    counts.gold_total = gold.size();
    std::vector<std::vector<std::size_t>> edges(test.size());
    for (std::size_t i = 0; i < test.size(); ++i) {
        for (std::size_t j = 0; j < gold.size(); ++j) {
            if (gr_match(test[i], gold[j])) {
                edges[i].push_back(j);
            }
        }
    }
    constexpr auto kFree = static_cast<std::size_t>(-1);
    std::vector<std::size_t> gold_owner(gold.size(), kFree);
    std::vector<std::size_t> test_partner(test.size(), kFree);

    // Exact-name pairs first.
    for (std::size_t i = 0; i < test.size(); ++i) {
        for (const auto j : edges[i]) {
            if (gold_owner[j] == kFree && test[i].relation == gold[j].relation) {
                gold_owner[j] = i;
                test_partner[i] = j;
                break;
            }
        }
    }
    // Augmenting paths raise the matching to maximum cardinality.
    std::vector<bool> visited;
    std::function<bool(std::size_t)> augment = [&](std::size_t i) {
        for (const auto j : edges[i]) {
            if (visited[j]) {
                continue;
            }
            visited[j] = true;
            if (gold_owner[j] == kFree || augment(gold_owner[j])) {
                gold_owner[j] = i;
                test_partner[i] = j;
                return true;
            }
        }
        return false;
    };
    for (std::size_t i = 0; i < test.size(); ++i) {
        if (test_partner[i] == kFree) {
            visited.assign(gold.size(), false);
            augment(i);
        }
    }
    for (std::size_t i = 0; i < test.size(); ++i) {
        if (test_partner[i] != kFree) {
            ++counts.matched;
            ++counts.correct_by_relation[test[i].relation];
        }
    }
    return counts;
}

GRReport evaluate_grs(std::span<const std::vector<GR>> test, std::span<const std::vector<GR>> gold) {
    if (test.size() != gold.size()) {
        throw Error("test has " + std::to_string(test.size()) + " sentences but gold has " +
                    std::to_string(gold.size()) + "; first unaligned index is " +
                    std::to_string(std::min(test.size(), gold.size())));
    }
    GRReport report;
    report.sentences = test.size();
    for (std::size_t s = 0; s < test.size(); ++s) {
        const auto counts = gr_scores(test[s], gold[s]);
        report.matched += counts.matched;
        report.test_total += counts.test_total;
        report.gold_total += counts.gold_total;
        report.sentence_recall.push_back(counts.recall());
        report.sentence_precision.push_back(counts.precision());
        for (const auto& gr : test[s]) {
            ++report.by_relation[gr.relation].returned;
        }
        for (const auto& gr : gold[s]) {
            ++report.by_relation[gr.relation].gold;
        }
        for (const auto& [rel, n] : counts.correct_by_relation) {
            report.by_relation[rel].correct += n;
        }
    }
    report.recall = ratio(report.matched, report.gold_total);
    report.precision = ratio(report.matched, report.test_total);
    return report;
}

RelationHistogram relation_histogram(std::span<const std::vector<GR>> sentences) {
    RelationHistogram h;
    h.sentences = sentences.size();
    for (const auto& s : sentences) {
        for (const auto& gr : s) {
            ++h.counts[gr.relation];
            ++h.total;
        }
    }
    h.mean_per_sentence = sentences.empty() ? 0.0 : static_cast<double>(h.total) / static_cast<double>(h.sentences);
    return h;
}

} // namespace lexglr

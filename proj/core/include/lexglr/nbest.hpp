#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "lexglr/action_model.hpp"
#include "lexglr/derivation.hpp"
#include "lexglr/forest.hpp"
#include "lexglr/lr_table.hpp"

namespace lexglr {

struct ScoredDerivation {
    Derivation derivation;
    double logprob = 0.0;
};

/// Extra non-negative cost charged when the search reduces by `rule` whose
/// daughters are `daughters`. Used to fold lexical scores into the search.
using ReduceCost = std::function<double(RuleId rule, std::span<const ForestItem> daughters)>;

/// Completed derivations from a best-first search over LR configurations.
/// `cost` is the search cost: -logprob plus any ReduceCost contributions.
struct SearchResult {
    std::vector<TraceStep> trace;
    double cost = 0.0;
};

/// The cheapest `n` derivations of `forest`, plus every further derivation whose
/// cost ties the n-th within `tie_epsilon`. Ordered by cost.
std::vector<SearchResult> search_derivations(const Forest& forest, const LRTable& table, const ActionModel& model,
                                             std::size_t n, const ReduceCost& extra = {},
                                             double tie_epsilon = 1e-9);

/// The min(n, total) most probable derivations, by descending log-probability.
/// Equal scores are ordered by the action trace (shift < reduce, lower rule first).
/// Throws ModelMismatchError if `model` was not trained on `table`.
std::vector<ScoredDerivation> unpack_n_best(const Forest& forest, const LRTable& table, const ActionModel& model,
                                            std::size_t n);

/// Trace order used to break score ties.
bool trace_less(std::span<const TraceStep> a, std::span<const TraceStep> b);

} // namespace lexglr

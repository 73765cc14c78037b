#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lexglr/lr_table.hpp"
#include "lexglr/tree.hpp"

namespace lexglr {

/// A derivation tree over a normalized grammar. Token leaves have rule < 0
/// and cover [start, start + 1).
struct DerivNode {
    std::int32_t rule = -1;
    std::uint32_t start = 0;
    std::uint32_t end = 0;
    std::vector<DerivNode> children;

    bool is_token() const noexcept { return rule < 0; }

    static DerivNode token(std::uint32_t position) { return {-1, position, position + 1, {}}; }

    friend bool operator==(const DerivNode&, const DerivNode&) = default;
    /// Lexicographic on (rule, start, end, children).
    friend std::strong_ordering operator<=>(const DerivNode& a, const DerivNode& b);
};

/// One LR transition: in `state`, seeing `lookahead`, the parser took `action`.
struct TraceStep {
    StateId state = 0;
    SymbolId lookahead = 0;
    Action action;

    friend bool operator==(const TraceStep&, const TraceStep&) = default;
    friend auto operator<=>(const TraceStep&, const TraceStep&) = default;
};

struct Derivation {
    DerivNode tree;
    std::vector<TraceStep> trace;
};

/// The unique LR action sequence that builds `tree` (shifts and reductions in
/// post-order, then accept). Throws DerivationError if the table cannot produce it.
std::vector<TraceStep> compute_trace(const DerivNode& tree, std::span<const SymbolId> tokens, const LRTable& table);

/// Rebuilds the tree by executing `trace`. Throws DerivationError on an invalid trace.
DerivNode replay_trace(std::span<const TraceStep> trace, std::span<const SymbolId> tokens, const LRTable& table);

Derivation make_derivation(DerivNode tree, std::span<const SymbolId> tokens, const LRTable& table);

/// Token index of the lexical head, following head daughters down.
std::uint32_t head_token(const DerivNode& node, const Grammar& grammar);

/// Follows 1-based daughter indices from `node`; nullptr if a step is missing.
const DerivNode* follow_path(const DerivNode& node, std::span<const std::size_t> path);

/// Surface tree: helper nodes spliced out, leaves as `(tag word)`.
/// `words` may be empty, in which case leaves carry their tag as the word.
Tree to_tree(const DerivNode& tree, const LRTable& table, std::span<const SymbolId> tokens,
             std::span<const std::string> words);

} // namespace lexglr

#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "lexglr/derivation.hpp"
#include "lexglr/lr_table.hpp"
#include "lexglr/tree.hpp"

namespace lexglr {

struct ForestItem {
    enum class Kind : std::uint8_t { Token, Node };

    Kind kind = Kind::Token;
    std::uint32_t index = 0; // token position or node id

    static ForestItem token(std::uint32_t position) { return {Kind::Token, position}; }
    static ForestItem node(std::uint32_t id) { return {Kind::Node, id}; }
    bool is_token() const noexcept { return kind == Kind::Token; }

    friend bool operator==(const ForestItem&, const ForestItem&) = default;
    friend auto operator<=>(const ForestItem&, const ForestItem&) = default;
};

struct PackedAlternative {
    RuleId rule = 0;
    std::vector<ForestItem> daughters;

    friend bool operator==(const PackedAlternative&, const PackedAlternative&) = default;
    friend auto operator<=>(const PackedAlternative&, const PackedAlternative&) = default;
};

/// All analyses of one category over one span.
struct ForestNode {
    SymbolId symbol = 0;
    std::uint32_t start = 0;
    std::uint32_t end = 0;
    std::vector<PackedAlternative> alternatives;
};

/// A packed parse forest: one node per (category, span), alternatives as
/// daughter sequences that tile the node's span.
class Forest {
public:
    Forest() = default;
    explicit Forest(std::vector<SymbolId> tokens) : tokens_(std::move(tokens)) {}

    std::span<const SymbolId> tokens() const noexcept { return tokens_; }
    std::size_t num_tokens() const noexcept { return tokens_.size(); }
    std::size_t num_nodes() const noexcept { return nodes_.size(); }
    bool empty() const noexcept { return !root_.has_value(); }
    std::optional<std::uint32_t> root() const noexcept { return root_; }
    const ForestNode& node(std::uint32_t id) const { return nodes_.at(id); }

    std::optional<std::uint32_t> find(SymbolId symbol, std::uint32_t start, std::uint32_t end) const;
    std::pair<std::uint32_t, std::uint32_t> span(ForestItem item) const;
    bool has_alternative(std::uint32_t node, RuleId rule, std::span<const ForestItem> daughters) const;

    std::uint32_t intern(SymbolId symbol, std::uint32_t start, std::uint32_t end);
    /// Returns false if the alternative was already present.
    bool add_alternative(std::uint32_t node, RuleId rule, std::vector<ForestItem> daughters);
    void set_root(std::uint32_t node) { root_ = node; }

private:
    std::vector<SymbolId> tokens_;
    std::vector<ForestNode> nodes_;
    std::map<std::tuple<SymbolId, std::uint32_t, std::uint32_t>, std::uint32_t> index_;
    std::optional<std::uint32_t> root_;
};

/// Number of derivations under the root, saturating at the maximum uint64.
std::uint64_t count_derivations(const Forest& forest);

/// Every derivation tree under the root. Throws Error if there are more than `limit`.
std::vector<DerivNode> unpack_all(const Forest& forest,
                                  std::size_t limit = std::numeric_limits<std::size_t>::max());

/// Marks the nodes reachable from the root; nodes built on dead GLR branches are false.
std::vector<bool> live_nodes(const Forest& forest);

/// The derivation in `forest` whose surface tree (helpers spliced out) has the
/// bracketing and labels of `gold`. The first matching alternative wins.
std::optional<DerivNode> find_tree(const Forest& forest, const LRTable& table, const Tree& gold);

} // namespace lexglr

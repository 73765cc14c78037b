#include "lexglr/forest.hpp"

#include <algorithm>
#include <functional>

#include "lexglr/error.hpp"

namespace lexglr {

std::optional<std::uint32_t> Forest::find(SymbolId symbol, std::uint32_t start, std::uint32_t end) const {
    auto it = index_.find({symbol, start, end});
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::pair<std::uint32_t, std::uint32_t> Forest::span(ForestItem item) const {
    if (item.is_token()) {
        return {item.index, item.index + 1};
    }
    const auto& n = nodes_.at(item.index);
    return {n.start, n.end};
}

bool Forest::has_alternative(std::uint32_t node, RuleId rule, std::span<const ForestItem> daughters) const {
    const auto& alts = nodes_.at(node).alternatives;
    return std::any_of(alts.begin(), alts.end(), [&](const PackedAlternative& a) {
        return a.rule == rule && std::equal(a.daughters.begin(), a.daughters.end(), daughters.begin(), daughters.end());
    });
}

std::uint32_t Forest::intern(SymbolId symbol, std::uint32_t start, std::uint32_t end) {
    auto [it, inserted] = index_.emplace(std::make_tuple(symbol, start, end), static_cast<std::uint32_t>(nodes_.size()));
    if (inserted) {
        nodes_.push_back({symbol, start, end, {}});
    }
    return it->second;
}

bool Forest::add_alternative(std::uint32_t node, RuleId rule, std::vector<ForestItem> daughters) {
    if (has_alternative(node, rule, daughters)) {
        return false;
    }
    nodes_.at(node).alternatives.push_back({rule, std::move(daughters)});
    return true;
}

std::uint64_t count_derivations(const Forest& forest) {
    if (forest.empty()) {
        return 0;
    }
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    auto mul = [](std::uint64_t a, std::uint64_t b) -> std::uint64_t {
        if (a != 0 && b > kMax / a) {
            return kMax;
        }
        return a * b;
    };
    std::vector<std::optional<std::uint64_t>> memo(forest.num_nodes());
    std::function<std::uint64_t(std::uint32_t)> count = [&](std::uint32_t id) -> std::uint64_t {
        if (memo[id]) {
            return *memo[id];
        }
        std::uint64_t total = 0;
        for (const auto& alt : forest.node(id).alternatives) {
            std::uint64_t product = 1;
            for (const auto& d : alt.daughters) {
                if (!d.is_token()) {
                    product = mul(product, count(d.index));
                }
            }
            total = (kMax - total < product) ? kMax : total + product;
        }
        memo[id] = total;
        return total;
    };
    return count(*forest.root());
}

std::vector<DerivNode> unpack_all(const Forest& forest, std::size_t limit) {
    if (forest.empty()) {
        return {};
    }
    if (count_derivations(forest) > limit) {
        throw Error("forest holds more than " + std::to_string(limit) + " derivations");
    }
    std::vector<std::optional<std::vector<DerivNode>>> memo(forest.num_nodes());
    std::function<const std::vector<DerivNode>&(std::uint32_t)> expand =
        [&](std::uint32_t id) -> const std::vector<DerivNode>& {
        if (memo[id]) {
            return *memo[id];
        }
        const auto& node = forest.node(id);
        std::vector<DerivNode> out;
        for (const auto& alt : node.alternatives) {
            std::vector<std::vector<DerivNode>> partial{{}};
            for (const auto& d : alt.daughters) {
                std::vector<std::vector<DerivNode>> next;
                if (d.is_token()) {
                    for (auto& p : partial) {
                        p.push_back(DerivNode::token(d.index));
                    }
                    continue;
                }
                const auto& options = expand(d.index);
                for (const auto& p : partial) {
                    for (const auto& o : options) {
                        auto q = p;
                        q.push_back(o);
                        next.push_back(std::move(q));
                    }
                }
                partial = std::move(next);
            }
            for (auto& children : partial) {
                out.push_back({static_cast<std::int32_t>(alt.rule), node.start, node.end, std::move(children)});
            }
        }
        memo[id] = std::move(out);
        return *memo[id];
    };
    return expand(*forest.root());
}

} // namespace lexglr

namespace lexglr {

std::vector<bool> live_nodes(const Forest& forest) {
    std::vector<bool> live(forest.num_nodes(), false);
    if (forest.empty()) {
        return live;
    }
    std::vector<std::uint32_t> stack{*forest.root()};
    live[*forest.root()] = true;
    while (!stack.empty()) {
        const auto id = stack.back();
        stack.pop_back();
        for (const auto& alt : forest.node(id).alternatives) {
            for (const auto& d : alt.daughters) {
                if (!d.is_token() && !live[d.index]) {
                    live[d.index] = true;
                    stack.push_back(d.index);
                }
            }
        }
    }
    return live;
}

namespace {

struct GoldSpan {
    const Tree* tree;
    std::uint32_t start;
    std::uint32_t end;
};

class GoldMatcher {
public:
    GoldMatcher(const Forest& forest, const LRTable& table) : forest_(forest), table_(table) {}

    std::optional<DerivNode> match_node(const Tree& gold, std::uint32_t start, std::uint32_t id) const {
        const auto children = spans_of(gold, start);
        for (const auto& alt : forest_.node(id).alternatives) {
            if (auto kids = match_items(alt.daughters, children)) {
                const auto& node = forest_.node(id);
                return DerivNode{static_cast<std::int32_t>(alt.rule), node.start, node.end, std::move(*kids)};
            }
        }
        return std::nullopt;
    }

private:
    static std::vector<GoldSpan> spans_of(const Tree& gold, std::uint32_t start) {
        std::vector<GoldSpan> out;
        for (const auto& child : gold.children) {
            const auto end = start + static_cast<std::uint32_t>(leaf_count(child));
            out.push_back({&child, start, end});
            start = end;
        }
        return out;
    }

    // Matches daughters against gold children; every gold child must be consumed.
    std::optional<std::vector<DerivNode>> match_items(std::span<const ForestItem> items,
                                                      std::span<const GoldSpan> gold) const {
        std::vector<DerivNode> out;
        std::size_t g = 0;
        for (const auto& item : items) {
            const auto [a, b] = forest_.span(item);
            if (g >= gold.size() || gold[g].start != a) {
                return std::nullopt;
            }
            if (item.is_token()) {
                const auto& leaf = *gold[g].tree;
                if (!leaf.is_leaf() || leaf.label != table_.symbol_name(forest_.tokens()[item.index])) {
                    return std::nullopt;
                }
                out.push_back(DerivNode::token(item.index));
                ++g;
                continue;
            }
            const auto& node = forest_.node(item.index);
            if (!is_helper_label(table_.symbol_name(node.symbol))) {
                const auto& child = *gold[g].tree;
                if (gold[g].end != b || child.is_leaf() || child.label != table_.symbol_name(node.symbol)) {
                    return std::nullopt;
                }
                auto sub = match_node(child, a, item.index);
                if (!sub) {
                    return std::nullopt;
                }
                out.push_back(std::move(*sub));
                ++g;
                continue;
            }
            // Helper: it covers a run of gold siblings.
            auto last = g;
            while (last < gold.size() && gold[last].end < b) {
                ++last;
            }
            if (last >= gold.size() || gold[last].end != b) {
                return std::nullopt;
            }
            const auto run = gold.subspan(g, last - g + 1);
            std::optional<DerivNode> helper;
            for (const auto& alt : node.alternatives) {
                if (auto kids = match_items(alt.daughters, run)) {
                    helper = DerivNode{static_cast<std::int32_t>(alt.rule), node.start, node.end, std::move(*kids)};
                    break;
                }
            }
            if (!helper) {
                return std::nullopt;
            }
            out.push_back(std::move(*helper));
            g = last + 1;
        }
        if (g != gold.size()) {
            return std::nullopt;
        }
        return out;
    }

    const Forest& forest_;
    const LRTable& table_;
};

} // namespace

std::optional<DerivNode> find_tree(const Forest& forest, const LRTable& table, const Tree& gold) {
    if (forest.empty() || gold.is_leaf()) {
        return std::nullopt;
    }
    const auto& root = forest.node(*forest.root());
    if (gold.label != table.symbol_name(root.symbol) || leaf_count(gold) != forest.num_tokens()) {
        return std::nullopt;
    }
    return GoldMatcher(forest, table).match_node(gold, 0, *forest.root());
}

} // namespace lexglr

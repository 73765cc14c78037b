#include "lexglr/derivation.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

#include "lexglr/error.hpp"

namespace lexglr {

namespace {

bool has_action(const LRTable& table, StateId state, SymbolId la, const Action& action) {
    const auto acts = table.actions(state, la);
    return std::find(acts.begin(), acts.end(), action) != acts.end();
}

} // namespace

std::strong_ordering operator<=>(const DerivNode& a, const DerivNode& b) {
    if (auto c = std::tie(a.rule, a.start, a.end) <=> std::tie(b.rule, b.start, b.end); c != 0) {
        return c;
    }
    return std::lexicographical_compare_three_way(a.children.begin(), a.children.end(), b.children.begin(),
                                                  b.children.end());
}

std::vector<TraceStep> compute_trace(const DerivNode& tree, std::span<const SymbolId> tokens, const LRTable& table) {
    std::vector<TraceStep> trace;
    std::vector<StateId> stack{0};
    std::uint32_t pos = 0;
    const auto n = static_cast<std::uint32_t>(tokens.size());
    auto lookahead = [&] { return pos < n ? tokens[pos] : table.end_marker(); };

    std::function<SymbolId(const DerivNode&)> visit = [&](const DerivNode& node) -> SymbolId {
        if (node.is_token()) {
            if (node.start != pos || node.end != pos + 1 || pos >= n) {
                throw DerivationError("token leaf out of order at " + std::to_string(node.start));
            }
            const SymbolId la = tokens[pos];
            const auto acts = table.actions(stack.back(), la);
            const auto shift = std::find_if(acts.begin(), acts.end(),
                                            [](const Action& a) { return a.kind == Action::Kind::Shift; });
            if (shift == acts.end()) {
                throw DerivationError("no shift for token " + std::to_string(pos) + " ('" +
                                      table.symbol_name(la) + "')");
            }
            trace.push_back({stack.back(), la, *shift});
            stack.push_back(shift->target);
            ++pos;
            return la;
        }

        if (node.rule < 0 || static_cast<std::size_t>(node.rule) >= table.grammar().rules().size()) {
            throw DerivationError("rule id " + std::to_string(node.rule) + " out of range");
        }
        const auto rule = static_cast<RuleId>(node.rule);
        const auto rhs = table.rhs(rule);
        if (node.children.size() != rhs.size()) {
            throw DerivationError("node for rule '" + table.rule(rule).id + "' has wrong daughter count");
        }
        if (node.start != pos) {
            throw DerivationError("node span does not start where expected");
        }
        for (std::size_t i = 0; i < rhs.size(); ++i) {
            if (visit(node.children[i]) != rhs[i]) {
                throw DerivationError("daughter " + std::to_string(i + 1) + " of rule '" + table.rule(rule).id +
                                      "' has the wrong category");
            }
        }
        if (node.end != pos) {
            throw DerivationError("node span does not end where its daughters end");
        }
        const SymbolId la = lookahead();
        const auto action = Action::reduce(rule);
        if (!has_action(table, stack.back(), la, action)) {
            throw DerivationError("table has no reduce by '" + table.rule(rule).id + "' in state " +
                                  std::to_string(stack.back()) + " on '" + table.symbol_name(la) + "'");
        }
        trace.push_back({stack.back(), la, action});
        stack.resize(stack.size() - rhs.size());
        const auto next = table.goto_state(stack.back(), table.lhs(rule));
        if (!next) {
            throw DerivationError("missing goto after reducing '" + table.rule(rule).id + "'");
        }
        stack.push_back(*next);
        return table.lhs(rule);
    };

    if (visit(tree) != table.start_symbol()) {
        throw DerivationError("tree root is not the start symbol");
    }
    if (pos != n) {
        throw DerivationError("tree covers " + std::to_string(pos) + " of " + std::to_string(n) + " tokens");
    }
    if (stack.size() != 2 || !has_action(table, stack.back(), table.end_marker(), Action::accept())) {
        throw DerivationError("tree does not end in an accepting configuration");
    }
    trace.push_back({stack.back(), table.end_marker(), Action::accept()});
    return trace;
}

DerivNode replay_trace(std::span<const TraceStep> trace, std::span<const SymbolId> tokens, const LRTable& table) {
    std::vector<std::pair<StateId, DerivNode>> stack;
    stack.emplace_back(0, DerivNode{});
    std::uint32_t pos = 0;
    const auto n = static_cast<std::uint32_t>(tokens.size());

    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& step = trace[i];
        const SymbolId la = pos < n ? tokens[pos] : table.end_marker();
        if (step.state != stack.back().first || step.lookahead != la) {
            throw DerivationError("trace step " + std::to_string(i) + " does not match the parser configuration");
        }
        if (!has_action(table, step.state, la, step.action)) {
            throw DerivationError("trace step " + std::to_string(i) + " uses an action absent from the table");
        }
        switch (step.action.kind) {
        case Action::Kind::Shift:
            stack.emplace_back(step.action.target, DerivNode::token(pos));
            ++pos;
            break;
        case Action::Kind::Reduce: {
            const RuleId rule = step.action.target;
            const auto k = table.rhs(rule).size();
            DerivNode node;
            node.rule = static_cast<std::int32_t>(rule);
            for (std::size_t j = stack.size() - k; j < stack.size(); ++j) {
                node.children.push_back(std::move(stack[j].second));
            }
            node.start = node.children.front().start;
            node.end = node.children.back().end;
            stack.resize(stack.size() - k);
            const auto next = table.goto_state(stack.back().first, table.lhs(rule));
            if (!next) {
                throw DerivationError("missing goto during replay");
            }
            stack.emplace_back(*next, std::move(node));
            break;
        }
        case Action::Kind::Accept:
            if (i + 1 != trace.size() || stack.size() != 2) {
                throw DerivationError("accept before the end of the trace");
            }
            return std::move(stack.back().second);
        }
    }
    throw DerivationError("trace does not end with accept");
}

Derivation make_derivation(DerivNode tree, std::span<const SymbolId> tokens, const LRTable& table) {
    auto trace = compute_trace(tree, tokens, table);
    return {std::move(tree), std::move(trace)};
}

std::uint32_t head_token(const DerivNode& node, const Grammar& grammar) {
    const DerivNode* current = &node;
    while (!current->is_token()) {
        const auto& rule = grammar.rules().at(static_cast<std::size_t>(current->rule));
        current = &current->children.at(rule.head_index);
    }
    return current->start;
}

const DerivNode* follow_path(const DerivNode& node, std::span<const std::size_t> path) {
    const DerivNode* current = &node;
    for (const auto index : path) {
        if (current->is_token() || index == 0 || index > current->children.size()) {
            return nullptr;
        }
        current = &current->children[index - 1];
    }
    return current;
}

namespace {

void surface_children(const DerivNode& node, const LRTable& table, std::span<const SymbolId> tokens,
                      std::span<const std::string> words, std::vector<Tree>& out) {
    if (node.is_token()) {
        const auto& tag = table.symbol_name(tokens[node.start]);
        out.push_back(Tree::preterminal(tag, words.empty() ? tag : words[node.start]));
        return;
    }
    const auto& rule = table.rule(static_cast<RuleId>(node.rule));
    if (rule.is_helper()) {
        for (const auto& child : node.children) {
            surface_children(child, table, tokens, words, out);
        }
        return;
    }
    Tree tree;
    tree.label = rule.mother.label;
    for (const auto& child : node.children) {
        surface_children(child, table, tokens, words, tree.children);
    }
    out.push_back(std::move(tree));
}

} // namespace

Tree to_tree(const DerivNode& tree, const LRTable& table, std::span<const SymbolId> tokens,
             std::span<const std::string> words) {
    std::vector<Tree> out;
    surface_children(tree, table, tokens, words, out);
    if (out.size() != 1) {
        throw DerivationError("derivation root is a helper node");
    }
    return std::move(out.front());
}

} // namespace lexglr

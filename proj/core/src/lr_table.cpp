#include "lexglr/lr_table.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <ostream>
#include <utility>

#include "lexglr/error.hpp"

namespace lexglr {

namespace {

// Fixed-width set of terminal ids (terminals plus the end marker).
class TerminalSet {
public:
    explicit TerminalSet(std::size_t n = 0) : words_((n + 63) / 64, 0) {}

    void insert(std::size_t i) { words_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
    bool contains(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

    // Returns true if anything was added.
    bool merge(const TerminalSet& other) {
        bool changed = false;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            const auto before = words_[w];
            words_[w] |= other.words_[w];
            changed |= words_[w] != before;
        }
        return changed;
    }

    std::vector<SymbolId> to_vector(std::size_t n) const {
        std::vector<SymbolId> out;
        for (std::size_t i = 0; i < n; ++i) {
            if (contains(i)) {
                out.push_back(static_cast<SymbolId>(i));
            }
        }
        return out;
    }

private:
    std::vector<std::uint64_t> words_;
};

using Core = std::pair<RuleId, std::size_t>;

class Fnv {
public:
    void add(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            hash_ ^= (v >> (8 * i)) & 0xFF;
            hash_ *= 0x100000001b3ULL;
        }
    }
    std::uint64_t value() const { return hash_; }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

} // namespace

std::string format_action(const Action& action) {
    switch (action.kind) {
    case Action::Kind::Shift:
        return "s" + std::to_string(action.target);
    case Action::Kind::Reduce:
        return "r" + std::to_string(action.target);
    case Action::Kind::Accept:
        return "acc";
    }
    return "?";
}

std::optional<Action> parse_action(std::string_view text) {
    if (text == "acc") {
        return Action::accept();
    }
    if (text.size() < 2 || (text[0] != 's' && text[0] != 'r')) {
        return std::nullopt;
    }
    std::uint32_t value = 0;
    const auto* begin = text.data() + 1;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        return std::nullopt;
    }
    return text[0] == 's' ? Action::shift(value) : Action::reduce(value);
}

std::optional<SymbolId> LRTable::symbol_id(std::string_view name) const {
    auto it = ids_.find(std::string(name));
    if (it == ids_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<SymbolId> LRTable::terminal_id(std::string_view name) const {
    auto id = symbol_id(name);
    if (!id || !is_terminal(*id)) {
        return std::nullopt;
    }
    return id;
}

std::span<const Action> LRTable::actions(StateId state, SymbolId lookahead) const {
    if (state >= actions_.size() || lookahead > num_terminals_) {
        return {};
    }
    return actions_[state][lookahead];
}

std::optional<StateId> LRTable::goto_state(StateId state, SymbolId nonterminal) const {
    if (state >= gotos_.size() || nonterminal <= num_terminals_) {
        return std::nullopt;
    }
    const auto index = nonterminal - num_terminals_ - 1;
    if (index >= gotos_[state].size()) {
        return std::nullopt;
    }
    return gotos_[state][index];
}

std::vector<Conflict> LRTable::conflicts() const {
    std::vector<Conflict> out;
    for (StateId s = 0; s < actions_.size(); ++s) {
        for (SymbolId la = 0; la <= num_terminals_; ++la) {
            if (actions_[s][la].size() > 1) {
                out.push_back({s, la, actions_[s][la]});
            }
        }
    }
    return out;
}

void LRTable::dump(std::ostream& out) const {
    for (StateId s = 0; s < states_.size(); ++s) {
        out << "state " << s << '\n';
        for (const auto& item : states_[s]) {
            out << "  " << symbol_name(lhs_[item.rule]) << " ->";
            const auto& rhs = rhs_[item.rule];
            for (std::size_t i = 0; i <= rhs.size(); ++i) {
                if (i == item.dot) {
                    out << " .";
                }
                if (i < rhs.size()) {
                    out << ' ' << symbol_name(rhs[i]);
                }
            }
            out << "  [";
            for (std::size_t i = 0; i < item.lookaheads.size(); ++i) {
                out << (i ? " " : "") << symbol_name(item.lookaheads[i]);
            }
            out << "]\n";
        }
        for (SymbolId la = 0; la <= num_terminals_; ++la) {
            if (actions_[s][la].empty()) {
                continue;
            }
            out << "  on " << symbol_name(la) << ':';
            for (const auto& a : actions_[s][la]) {
                out << ' ' << format_action(a);
            }
            if (actions_[s][la].size() > 1) {
                out << "  (conflict)";
            }
            out << '\n';
        }
        for (std::size_t nt = 0; nt < gotos_[s].size(); ++nt) {
            if (gotos_[s][nt]) {
                out << "  goto " << symbol_name(static_cast<SymbolId>(nt + num_terminals_ + 1)) << ": "
                    << *gotos_[s][nt] << '\n';
            }
        }
    }
}

LRTable build_table(const Grammar& input) {
    if (input.rules().empty()) {
        throw GrammarError("cannot build a parse table: grammar has no rules");
    }
    if (input.terminals().empty()) {
        throw GrammarError("cannot build a parse table: grammar declares no terminals");
    }
    if (input.start_symbol().empty()) {
        throw GrammarError("cannot build a parse table: grammar has no start symbol");
    }

    LRTable t;
    t.grammar_ = input.is_normalized() ? input : normalize_kleene(input);
    const Grammar& g = t.grammar_;

    for (const auto& term : g.terminals()) {
        t.ids_.emplace(term, static_cast<SymbolId>(t.names_.size()));
        t.names_.push_back(term);
    }
    t.num_terminals_ = t.names_.size();
    t.ids_.emplace("$", static_cast<SymbolId>(t.names_.size()));
    t.names_.push_back("$");
    for (const auto& nt : g.nonterminals()) {
        t.ids_.emplace(nt, static_cast<SymbolId>(t.names_.size()));
        t.names_.push_back(nt);
    }
    const SymbolId augmented = static_cast<SymbolId>(t.names_.size());
    t.names_.push_back("^" + g.start_symbol());

    const auto start = t.symbol_id(g.start_symbol());
    if (!start || t.is_terminal(*start)) {
        throw GrammarError("start symbol '" + g.start_symbol() + "' has no rules");
    }
    t.start_ = *start;

    for (const auto& rule : g.rules()) {
        const auto lhs = t.symbol_id(rule.mother.label);
        std::vector<SymbolId> rhs;
        for (const auto& d : rule.daughters) {
            const auto id = t.symbol_id(d.category.label);
            if (!id || *id == t.end_marker()) {
                throw GrammarError("rule '" + rule.id + "' uses undeclared symbol '" + d.category.label + "'");
            }
            rhs.push_back(*id);
        }
        t.lhs_.push_back(*lhs);
        t.rhs_.push_back(std::move(rhs));
    }
    const RuleId aug_rule = static_cast<RuleId>(t.lhs_.size());
    t.lhs_.push_back(augmented);
    t.rhs_.push_back({t.start_});

    const std::size_t n_symbols = t.names_.size();
    const std::size_t n_la = t.num_terminals_ + 1;
    auto is_nonterminal = [&](SymbolId s) { return s > t.num_terminals_; };

    std::vector<std::vector<RuleId>> rules_of(n_symbols);
    for (RuleId r = 0; r < t.lhs_.size(); ++r) {
        rules_of[t.lhs_[r]].push_back(r);
    }

    // FIRST sets; the grammar is free of empty rules, so FIRST(X ...) = FIRST(X).
    std::vector<TerminalSet> first(n_symbols, TerminalSet(n_la));
    for (SymbolId s = 0; s < t.num_terminals_; ++s) {
        first[s].insert(s);
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (RuleId r = 0; r < t.lhs_.size(); ++r) {
            changed |= first[t.lhs_[r]].merge(first[t.rhs_[r].front()]);
        }
    }

    auto closure0 = [&](const std::vector<Core>& kernel) {
        std::vector<Core> items = kernel;
        std::vector<bool> added(n_symbols, false);
        for (std::size_t i = 0; i < items.size(); ++i) {
            const auto [r, dot] = items[i];
            if (dot >= t.rhs_[r].size()) {
                continue;
            }
            const SymbolId next = t.rhs_[r][dot];
            if (!is_nonterminal(next) || added[next]) {
                continue;
            }
            added[next] = true;
            for (RuleId rb : rules_of[next]) {
                items.emplace_back(rb, 0);
            }
        }
        return items;
    };

    // LR(0) automaton.
    std::vector<std::vector<Core>> kernels;
    std::vector<std::vector<Core>> closures;
    std::vector<std::vector<std::optional<StateId>>> trans;
    std::map<std::vector<Core>, StateId> kernel_ids;
    kernels.push_back({{aug_rule, 0}});
    kernel_ids.emplace(kernels.front(), 0);
    for (std::size_t s = 0; s < kernels.size(); ++s) {
        closures.push_back(closure0(kernels[s]));
        trans.emplace_back(n_symbols);
        std::vector<SymbolId> order;
        std::map<SymbolId, std::vector<Core>> next_kernels;
        for (const auto& [r, dot] : closures[s]) {
            if (dot >= t.rhs_[r].size()) {
                continue;
            }
            const SymbolId x = t.rhs_[r][dot];
            if (!next_kernels.contains(x)) {
                order.push_back(x);
            }
            next_kernels[x].emplace_back(r, dot + 1);
        }
        for (SymbolId x : order) {
            auto kernel = next_kernels[x];
            std::sort(kernel.begin(), kernel.end());
            kernel.erase(std::unique(kernel.begin(), kernel.end()), kernel.end());
            auto [it, inserted] = kernel_ids.emplace(kernel, static_cast<StateId>(kernels.size()));
            if (inserted) {
                kernels.push_back(kernel);
            }
            trans[s][x] = it->second;
        }
    }
    const std::size_t n_states = kernels.size();

    // LALR(1) lookaheads by fixpoint propagation over the LR(0) automaton.
    std::vector<std::vector<TerminalSet>> kernel_la(n_states);
    for (std::size_t s = 0; s < n_states; ++s) {
        kernel_la[s].assign(kernels[s].size(), TerminalSet(n_la));
    }
    kernel_la[0][0].insert(t.end_marker());

    auto kernel_index = [&](StateId s, Core core) {
        const auto& k = kernels[s];
        return static_cast<std::size_t>(std::lower_bound(k.begin(), k.end(), core) - k.begin());
    };

    auto closure1 = [&](std::size_t s) {
        std::vector<Core> items;
        std::vector<TerminalSet> las;
        std::map<Core, std::size_t> where;
        std::deque<std::size_t> work;
        auto add = [&](Core core, const TerminalSet& la) {
            auto [it, inserted] = where.emplace(core, items.size());
            if (inserted) {
                items.push_back(core);
                las.push_back(la);
                work.push_back(it->second);
            } else if (las[it->second].merge(la)) {
                work.push_back(it->second);
            }
        };
        for (std::size_t k = 0; k < kernels[s].size(); ++k) {
            add(kernels[s][k], kernel_la[s][k]);
        }
        while (!work.empty()) {
            const auto i = work.front();
            work.pop_front();
            const auto [r, dot] = items[i];
            if (dot >= t.rhs_[r].size() || !is_nonterminal(t.rhs_[r][dot])) {
                continue;
            }
            const TerminalSet la = dot + 1 < t.rhs_[r].size() ? first[t.rhs_[r][dot + 1]] : las[i];
            for (RuleId rb : rules_of[t.rhs_[r][dot]]) {
                add({rb, 0}, la);
            }
        }
        return std::make_pair(std::move(items), std::move(las));
    };

    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t s = 0; s < n_states; ++s) {
            const auto [items, las] = closure1(s);
            for (std::size_t i = 0; i < items.size(); ++i) {
                const auto [r, dot] = items[i];
                if (dot >= t.rhs_[r].size()) {
                    continue;
                }
                const StateId target = *trans[s][t.rhs_[r][dot]];
                changed |= kernel_la[target][kernel_index(target, {r, dot + 1})].merge(las[i]);
            }
        }
    }

    t.states_.resize(n_states);
    t.actions_.assign(n_states, std::vector<std::vector<Action>>(n_la));
    const std::size_t n_nonterminals = n_symbols - t.num_terminals_ - 1;
    t.gotos_.assign(n_states, std::vector<std::optional<StateId>>(n_nonterminals));
    for (std::size_t s = 0; s < n_states; ++s) {
        const auto [items, las] = closure1(s);
        for (std::size_t i = 0; i < items.size(); ++i) {
            const auto [r, dot] = items[i];
            t.states_[s].push_back({r, dot, las[i].to_vector(n_la)});
            if (dot == t.rhs_[r].size()) {
                for (SymbolId la : las[i].to_vector(n_la)) {
                    t.actions_[s][la].push_back(r == aug_rule ? Action::accept() : Action::reduce(r));
                }
                continue;
            }
            const SymbolId x = t.rhs_[r][dot];
            if (t.is_terminal(x)) {
                t.actions_[s][x].push_back(Action::shift(*trans[s][x]));
            }
        }
        for (SymbolId x = t.end_marker() + 1; x < n_symbols; ++x) {
            if (trans[s][x]) {
                t.gotos_[s][x - t.num_terminals_ - 1] = trans[s][x];
            }
        }
        for (auto& acts : t.actions_[s]) {
            std::sort(acts.begin(), acts.end());
            acts.erase(std::unique(acts.begin(), acts.end()), acts.end());
        }
    }

    Fnv fnv;
    fnv.add(n_states);
    fnv.add(n_symbols);
    for (std::size_t s = 0; s < n_states; ++s) {
        for (std::size_t la = 0; la < n_la; ++la) {
            for (const auto& a : t.actions_[s][la]) {
                fnv.add((static_cast<std::uint64_t>(s) << 40) ^ (static_cast<std::uint64_t>(la) << 24) ^
                        (static_cast<std::uint64_t>(a.kind) << 20) ^ a.target);
            }
        }
        for (std::size_t nt = 0; nt < n_nonterminals; ++nt) {
            if (t.gotos_[s][nt]) {
                fnv.add((static_cast<std::uint64_t>(s) << 32) ^ (nt << 16) ^ *t.gotos_[s][nt]);
            }
        }
    }
    t.signature_ = fnv.value();
    return t;
}

} // namespace lexglr

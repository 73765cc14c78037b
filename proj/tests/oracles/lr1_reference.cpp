#include "lr1_reference.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <tuple>

namespace lexglr::oracle {

namespace {

struct Item {
    RuleId rule;
    std::size_t dot;
    SymbolId lookahead;

    auto operator<=>(const Item&) const = default;
};

using ItemSet = std::set<Item>;

ReferenceLalr::Core core_of(const ItemSet& items) {
    ReferenceLalr::Core core;
    for (const auto& i : items) {
        core.emplace(i.rule, i.dot);
    }
    return core;
}

} // namespace

ReferenceLalr::ReferenceLalr(const LRTable& table) {
    const std::size_t nrules = table.num_rules();
    const RuleId augmented = static_cast<RuleId>(nrules - 1);
    const auto is_term = [&](SymbolId s) { return s <= table.end_marker(); };

    // FIRST sets; the grammar has no empty rules, so only leading symbols matter.
    std::map<SymbolId, std::set<SymbolId>> first;
    for (bool changed = true; changed;) {
        changed = false;
        for (RuleId r = 0; r < nrules; ++r) {
            const SymbolId lead = table.rhs(r)[0];
            auto& target = first[table.lhs(r)];
            const std::size_t before = target.size();
            if (is_term(lead)) {
                target.insert(lead);
            } else {
                target.insert(first[lead].begin(), first[lead].end());
            }
            changed |= target.size() != before;
        }
    }

    const auto closure = [&](ItemSet items) {
        std::deque<Item> work(items.begin(), items.end());
        while (!work.empty()) {
            const Item it = work.front();
            work.pop_front();
            const auto rhs = table.rhs(it.rule);
            if (it.dot >= rhs.size() || is_term(rhs[it.dot])) {
                continue;
            }
            std::set<SymbolId> las;
            if (it.dot + 1 < rhs.size()) {
                const SymbolId next = rhs[it.dot + 1];
                las = is_term(next) ? std::set<SymbolId>{next} : first[next];
            } else {
                las = {it.lookahead};
            }
            for (RuleId r = 0; r < nrules; ++r) {
                if (table.lhs(r) != rhs[it.dot]) {
                    continue;
                }
                for (SymbolId la : las) {
                    if (items.insert({r, 0, la}).second) {
                        work.push_back({r, 0, la});
                    }
                }
            }
        }
        return items;
    };

    const auto go = [&](const ItemSet& from, SymbolId symbol) {
        ItemSet kernel;
        for (const auto& it : from) {
            const auto rhs = table.rhs(it.rule);
            if (it.dot < rhs.size() && rhs[it.dot] == symbol) {
                kernel.insert({it.rule, it.dot + 1, it.lookahead});
            }
        }
        return kernel.empty() ? kernel : closure(std::move(kernel));
    };

    std::set<ItemSet> seen;
    std::deque<ItemSet> work;
    work.push_back(closure({{augmented, 0, table.end_marker()}}));
    seen.insert(work.front());
    while (!work.empty()) {
        ItemSet state = std::move(work.front());
        work.pop_front();
        const Core core = core_of(state);
        auto& acts = actions_[core];
        for (const auto& it : state) {
            const auto rhs = table.rhs(it.rule);
            if (it.dot == rhs.size()) {
                if (it.rule == augmented) {
                    acts[it.lookahead].insert({Action::Kind::Accept, 0, {}});
                } else {
                    acts[it.lookahead].insert({Action::Kind::Reduce, it.rule, {}});
                }
            }
        }
        for (SymbolId s = 0; s < table.num_symbols(); ++s) {
            ItemSet next = go(state, s);
            if (next.empty()) {
                continue;
            }
            if (is_term(s)) {
                acts[s].insert({Action::Kind::Shift, 0, core_of(next)});
            } else {
                gotos_[core][s] = core_of(next);
            }
            if (seen.insert(next).second) {
                work.push_back(std::move(next));
            }
        }
    }
    canonical_count_ = seen.size();
}

std::vector<std::string> ReferenceLalr::compare(const LRTable& table) const {
    std::vector<std::string> diffs;
    std::map<Core, StateId> state_of;
    for (StateId s = 0; s < table.num_states(); ++s) {
        Core core;
        for (const auto& item : table.items(s)) {
            core.emplace(item.rule, item.dot);
        }
        if (!state_of.emplace(core, s).second) {
            diffs.push_back("table has two states with one core: " + std::to_string(s));
        }
    }
    if (state_of.size() != actions_.size()) {
        diffs.push_back("state count " + std::to_string(table.num_states()) + " vs reference " +
                        std::to_string(actions_.size()));
    }
    for (const auto& [core, by_la] : actions_) {
        auto found = state_of.find(core);
        if (found == state_of.end()) {
            diffs.push_back("reference core missing from table");
            continue;
        }
        const StateId s = found->second;
        for (SymbolId la = 0; la <= table.end_marker(); ++la) {
            std::vector<Action> expected;
            if (auto it = by_la.find(la); it != by_la.end()) {
                for (const auto& a : it->second) {
                    switch (a.kind) {
                    case Action::Kind::Shift: {
                        auto t = state_of.find(a.target);
                        expected.push_back(Action::shift(t == state_of.end() ? ~StateId{0} : t->second));
                        break;
                    }
                    case Action::Kind::Reduce:
                        expected.push_back(Action::reduce(a.rule));
                        break;
                    case Action::Kind::Accept:
                        expected.push_back(Action::accept());
                        break;
                    }
                }
            }
            std::sort(expected.begin(), expected.end());
            const auto actual = table.actions(s, la);
            if (!std::equal(expected.begin(), expected.end(), actual.begin(), actual.end())) {
                diffs.push_back("actions differ in state " + std::to_string(s) + " on " + table.symbol_name(la));
            }
        }
        const auto gotos = gotos_.find(core);
        for (SymbolId nt = table.end_marker() + 1; nt < table.num_symbols(); ++nt) {
            std::optional<StateId> expected;
            if (gotos != gotos_.end()) {
                if (auto it = gotos->second.find(nt); it != gotos->second.end()) {
                    expected = state_of.at(it->second);
                }
            }
            if (expected != table.goto_state(s, nt)) {
                diffs.push_back("goto differs in state " + std::to_string(s) + " on " + table.symbol_name(nt));
            }
        }
    }
    return diffs;
}

} // namespace lexglr::oracle

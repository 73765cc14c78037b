#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexglr/grammar.hpp"

namespace lexglr {

using SymbolId = std::uint32_t;
using StateId = std::uint32_t;
using RuleId = std::uint32_t;

struct Action {
    enum class Kind : std::uint8_t { Shift, Reduce, Accept };

    Kind kind = Kind::Shift;
    std::uint32_t target = 0; // shift: next state; reduce: rule id; accept: unused

    static Action shift(StateId s) { return {Kind::Shift, s}; }
    static Action reduce(RuleId r) { return {Kind::Reduce, r}; }
    static Action accept() { return {Kind::Accept, 0}; }

    friend bool operator==(const Action&, const Action&) = default;
    friend auto operator<=>(const Action&, const Action&) = default;
};

std::string format_action(const Action& action);
/// Inverse of format_action: "s12", "r3", "acc".
std::optional<Action> parse_action(std::string_view text);

struct LRItem {
    RuleId rule = 0; // the augmented rule S' -> start has id == grammar rule count
    std::size_t dot = 0;
    std::vector<SymbolId> lookaheads; // sorted

    friend bool operator==(const LRItem&, const LRItem&) = default;
};

struct Conflict {
    StateId state = 0;
    SymbolId lookahead = 0;
    std::vector<Action> actions;
};

/// LALR(1) automaton over a normalized grammar. Every conflict is retained:
/// actions() may return several entries, sorted shift < reduce (by rule) < accept.
class LRTable {
public:
    const Grammar& grammar() const noexcept { return grammar_; }

    std::size_t num_states() const noexcept { return states_.size(); }
    std::size_t num_terminals() const noexcept { return num_terminals_; }
    std::size_t num_symbols() const noexcept { return names_.size(); }
    SymbolId end_marker() const noexcept { return static_cast<SymbolId>(num_terminals_); }
    SymbolId start_symbol() const noexcept { return start_; }
    bool is_terminal(SymbolId s) const noexcept { return s < num_terminals_; }
    const std::string& symbol_name(SymbolId s) const { return names_.at(s); }
    std::optional<SymbolId> symbol_id(std::string_view name) const;
    std::optional<SymbolId> terminal_id(std::string_view name) const;

    std::size_t num_rules() const noexcept { return lhs_.size(); }
    SymbolId lhs(RuleId r) const { return lhs_.at(r); }
    std::span<const SymbolId> rhs(RuleId r) const { return rhs_.at(r); }
    const Rule& rule(RuleId r) const { return grammar_.rules().at(r); }

    std::span<const Action> actions(StateId state, SymbolId lookahead) const;
    std::optional<StateId> goto_state(StateId state, SymbolId nonterminal) const;

    /// Closure items of a state, kernel items first.
    const std::vector<LRItem>& items(StateId state) const { return states_.at(state); }
    std::vector<Conflict> conflicts() const;

    /// Hash of the action and goto tables; models carry it to detect mismatches.
    std::uint64_t signature() const noexcept { return signature_; }

    void dump(std::ostream& out) const;

private:
    friend LRTable build_table(const Grammar& grammar);

    Grammar grammar_;
    std::size_t num_terminals_ = 0;
    SymbolId start_ = 0;
    std::vector<std::string> names_;
    std::unordered_map<std::string, SymbolId> ids_;
    std::vector<SymbolId> lhs_;
    std::vector<std::vector<SymbolId>> rhs_;
    std::vector<std::vector<LRItem>> states_;
    // actions_[state][lookahead], lookahead in [0, num_terminals]
    std::vector<std::vector<std::vector<Action>>> actions_;
    // gotos_[state][nonterminal - num_terminals - 1]
    std::vector<std::vector<std::optional<StateId>>> gotos_;
    std::uint64_t signature_ = 0;
};

/// Builds the LALR(1) table. The grammar is normalized first if needed.
/// Throws GrammarError for a grammar without rules, terminals or start symbol.
LRTable build_table(const Grammar& grammar);

} // namespace lexglr

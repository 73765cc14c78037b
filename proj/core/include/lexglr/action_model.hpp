#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "lexglr/derivation.hpp"
#include "lexglr/lr_table.hpp"
#include "lexglr/tree.hpp"

namespace lexglr {

/// Log-probability charged for a transition the model has no class for.
inline constexpr double kUnseenActionLogProb = -13.815510557964274; // log(1e-6)

/// Per-(state, lookahead) action distributions with add-1 smoothing.
///
/// P(a | s, l) = (count(s, l, a) + 1) / (N(s, l) + |actions(s, l)|), so a model with
/// no counts is uniform within every class and a class with a single action has P = 1.
class ActionModel {
public:
    struct ActionClass {
        StateId state = 0;
        SymbolId lookahead = 0;
        std::vector<Action> actions;
        std::vector<std::uint64_t> counts;

        std::uint64_t total() const;
        double probability(std::size_t index) const;
    };

    ActionModel() = default;
    /// Every action class of `table`, all counts zero.
    explicit ActionModel(const LRTable& table);

    std::uint64_t table_signature() const noexcept { return signature_; }
    std::size_t num_states() const noexcept { return num_states_; }
    /// Throws ModelMismatchError unless the model was built for `table`.
    void check_compatible(const LRTable& table) const;

    /// Adds one to the count of every step. Throws ModelMismatchError for a step
    /// the table does not allow.
    void observe(std::span<const TraceStep> trace);

    double probability(StateId state, SymbolId lookahead, const Action& action) const;
    double logprob(StateId state, SymbolId lookahead, const Action& action) const;
    std::uint64_t count(StateId state, SymbolId lookahead, const Action& action) const;

    /// Classes ordered by (state, lookahead).
    std::vector<const ActionClass*> classes() const;

    /// Text table `state<TAB>lookahead<TAB>action<TAB>count<TAB>prob` after a
    /// `# signature <hex>` header. Lookaheads are written as symbol names.
    void write(std::ostream& out, const LRTable& table) const;

private:
    const ActionClass* find(StateId state, SymbolId lookahead) const;
    static std::uint64_t key(StateId state, SymbolId lookahead) {
        return (static_cast<std::uint64_t>(state) << 32) | lookahead;
    }

    std::uint64_t signature_ = 0;
    std::size_t num_states_ = 0;
    std::unordered_map<std::uint64_t, ActionClass> classes_;

    friend ActionModel read_action_model(std::istream& in, const LRTable& table);
};

ActionModel read_action_model(std::istream& in, const LRTable& table);
ActionModel load_action_model(const std::string& path, const LRTable& table);

struct SkippedTree {
    std::string id;
    std::string reason;
};

struct TrainingResult {
    ActionModel model;
    std::size_t used = 0;
    std::vector<SkippedTree> skipped;
};

/// Counts the action sequence of every gold tree that the grammar derives.
/// Underivable trees are skipped and reported with their id.
TrainingResult train_actions(std::span<const TreebankEntry> treebank, const LRTable& table);

/// Sum of log P(action | state, lookahead) over the trace, added in ascending
/// order so that it does not depend on the order of the steps.
double derivation_logprob(const Derivation& derivation, const ActionModel& model);
double trace_logprob(std::span<const TraceStep> trace, const ActionModel& model);

} // namespace lexglr

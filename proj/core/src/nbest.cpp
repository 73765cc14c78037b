#include "lexglr/nbest.hpp"

#include <algorithm>
#include <queue>

#include "lexglr/error.hpp"

namespace lexglr {

namespace {

constexpr std::uint32_t kNone = 0xffffffffu;

// Persistent stacks and traces share structure through parent indices.
struct StackCell {
    StateId state;
    ForestItem item;
    std::uint32_t below;
};

struct TraceCell {
    TraceStep step;
    std::uint32_t parent;
};

struct Config {
    double cost;
    std::uint64_t order; // insertion sequence, for a deterministic queue
    std::uint32_t position;
    std::uint32_t stack;
    std::uint32_t trace;
};

struct ConfigAfter {
    bool operator()(const Config& a, const Config& b) const {
        if (a.cost != b.cost) {
            return a.cost > b.cost;
        }
        return a.order > b.order;
    }
};

class Search {
public:
    Search(const Forest& forest, const LRTable& table, const ActionModel& model, const ReduceCost& extra)
        : forest_(forest), table_(table), model_(model), extra_(extra), live_(live_nodes(forest)) {}

    std::vector<SearchResult> run(std::size_t n, double tie_epsilon) {
        std::vector<SearchResult> done;
        if (forest_.empty() || n == 0) {
            return done;
        }
        stack_.push_back({0, ForestItem::token(0), kNone});
        push(0.0, 0, 0, kNone);
        std::optional<double> cutoff;
        while (!queue_.empty()) {
            const auto config = queue_.top();
            queue_.pop();
            if (cutoff && config.cost > *cutoff) {
                break;
            }
            if (expand(config, done) && done.size() == n) {
                cutoff = done.back().cost + tie_epsilon;
            }
        }
        return done;
    }

private:
    void push(double cost, std::uint32_t position, std::uint32_t stack, std::uint32_t trace) {
        queue_.push({cost, next_order_++, position, stack, trace});
    }

    std::uint32_t add_trace(const TraceStep& step, std::uint32_t parent) {
        traces_.push_back({step, parent});
        return static_cast<std::uint32_t>(traces_.size() - 1);
    }

    std::vector<TraceStep> unwind(std::uint32_t trace) const {
        std::vector<TraceStep> out;
        for (auto t = trace; t != kNone; t = traces_[t].parent) {
            out.push_back(traces_[t].step);
        }
        std::reverse(out.begin(), out.end());
        return out;
    }

    // Returns true when the configuration completed a derivation.
    bool expand(const Config& config, std::vector<SearchResult>& done) {
        const auto tokens = forest_.tokens();
        const auto n = static_cast<std::uint32_t>(tokens.size());
        const SymbolId la = config.position < n ? tokens[config.position] : table_.end_marker();
        const StateId state = stack_[config.stack].state;
        for (const auto& action : table_.actions(state, la)) {
            const TraceStep step{state, la, action};
            const double step_cost = -model_.logprob(state, la, action);
            switch (action.kind) {
            case Action::Kind::Shift: {
                stack_.push_back({action.target, ForestItem::token(config.position), config.stack});
                push(config.cost + step_cost, config.position + 1, static_cast<std::uint32_t>(stack_.size() - 1),
                     add_trace(step, config.trace));
                break;
            }
            case Action::Kind::Reduce:
                reduce(config, step, step_cost);
                break;
            case Action::Kind::Accept: {
                const auto& top = stack_[config.stack];
                if (config.position == n && !top.item.is_token() && top.item.index == *forest_.root() &&
                    top.below != kNone && stack_[top.below].below == kNone) {
                    done.push_back({unwind(add_trace(step, config.trace)), config.cost + step_cost});
                    return true;
                }
                break;
            }
            }
        }
        return false;
    }

    void reduce(const Config& config, const TraceStep& step, double step_cost) {
        const RuleId rule = step.action.target;
        const auto length = table_.rhs(rule).size();
        std::vector<ForestItem> daughters(length);
        auto cell = config.stack;
        for (std::size_t k = length; k > 0; --k) {
            if (cell == kNone || stack_[cell].below == kNone) {
                return;
            }
            daughters[k - 1] = stack_[cell].item;
            cell = stack_[cell].below;
        }
        const auto start = forest_.span(daughters.front()).first;
        const auto node = forest_.find(table_.lhs(rule), start, config.position);
        if (!node || !live_[*node] || !forest_.has_alternative(*node, rule, daughters)) {
            return;
        }
        const auto next = table_.goto_state(stack_[cell].state, table_.lhs(rule));
        if (!next) {
            return;
        }
        double cost = config.cost + step_cost;
        if (extra_) {
            cost += extra_(rule, daughters);
        }
        stack_.push_back({*next, ForestItem::node(*node), cell});
        push(cost, config.position, static_cast<std::uint32_t>(stack_.size() - 1), add_trace(step, config.trace));
    }

    const Forest& forest_;
    const LRTable& table_;
    const ActionModel& model_;
    const ReduceCost& extra_;
    std::vector<bool> live_;
    std::vector<StackCell> stack_;
    std::vector<TraceCell> traces_;
    std::priority_queue<Config, std::vector<Config>, ConfigAfter> queue_;
    std::uint64_t next_order_ = 0;
};

} // namespace

bool trace_less(std::span<const TraceStep> a, std::span<const TraceStep> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const TraceStep& x, const TraceStep& y) { return x.action < y.action; });
}

std::vector<SearchResult> search_derivations(const Forest& forest, const LRTable& table, const ActionModel& model,
                                             std::size_t n, const ReduceCost& extra, double tie_epsilon) {
    model.check_compatible(table);
    return Search(forest, table, model, extra).run(n, tie_epsilon);
}

std::vector<ScoredDerivation> unpack_n_best(const Forest& forest, const LRTable& table, const ActionModel& model,
                                            std::size_t n) {
    auto found = search_derivations(forest, table, model, n);
    std::vector<ScoredDerivation> out;
    out.reserve(found.size());
    for (auto& result : found) {
        Derivation d{replay_trace(result.trace, forest.tokens(), table), std::move(result.trace)};
        const double score = derivation_logprob(d, model);
        out.push_back({std::move(d), score});
    }
    std::sort(out.begin(), out.end(), [](const ScoredDerivation& a, const ScoredDerivation& b) {
        if (a.logprob != b.logprob) {
            return a.logprob > b.logprob;
        }
        return trace_less(a.derivation.trace, b.derivation.trace);
    });
    if (out.size() > n) {
        out.resize(n);
    }
    return out;
}

} // namespace lexglr

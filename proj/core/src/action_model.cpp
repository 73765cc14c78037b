#include "lexglr/action_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <tuple>

#include "lexglr/error.hpp"
#include "lexglr/forest.hpp"
#include "lexglr/glr_parser.hpp"

namespace lexglr {

std::uint64_t ActionModel::ActionClass::total() const {
    std::uint64_t sum = 0;
    for (const auto c : counts) {
        sum += c;
    }
    return sum;
}

double ActionModel::ActionClass::probability(std::size_t index) const {
    return (static_cast<double>(counts.at(index)) + 1.0) /
           (static_cast<double>(total()) + static_cast<double>(actions.size()));
}

ActionModel::ActionModel(const LRTable& table) : signature_(table.signature()), num_states_(table.num_states()) {
    for (StateId s = 0; s < table.num_states(); ++s) {
        for (SymbolId la = 0; la <= table.end_marker(); ++la) {
            const auto acts = table.actions(s, la);
            if (acts.empty()) {
                continue;
            }
            ActionClass cls{s, la, {acts.begin(), acts.end()}, std::vector<std::uint64_t>(acts.size(), 0)};
            classes_.emplace(key(s, la), std::move(cls));
        }
    }
}

void ActionModel::check_compatible(const LRTable& table) const {
    if (signature_ != table.signature() || num_states_ != table.num_states()) {
        throw ModelMismatchError("action model was trained on a different parse table");
    }
}

const ActionModel::ActionClass* ActionModel::find(StateId state, SymbolId lookahead) const {
    auto it = classes_.find(key(state, lookahead));
    return it == classes_.end() ? nullptr : &it->second;
}

void ActionModel::observe(std::span<const TraceStep> trace) {
    for (const auto& step : trace) {
        auto it = classes_.find(key(step.state, step.lookahead));
        if (it == classes_.end()) {
            throw ModelMismatchError("no action class for state " + std::to_string(step.state));
        }
        auto& cls = it->second;
        auto pos = std::find(cls.actions.begin(), cls.actions.end(), step.action);
        if (pos == cls.actions.end()) {
            throw ModelMismatchError("action " + format_action(step.action) + " not available in state " +
                                     std::to_string(step.state));
        }
        ++cls.counts[static_cast<std::size_t>(pos - cls.actions.begin())];
    }
}

double ActionModel::probability(StateId state, SymbolId lookahead, const Action& action) const {
    return std::exp(logprob(state, lookahead, action));
}

double ActionModel::logprob(StateId state, SymbolId lookahead, const Action& action) const {
    const auto* cls = find(state, lookahead);
    if (cls == nullptr) {
        return kUnseenActionLogProb;
    }
    auto pos = std::find(cls->actions.begin(), cls->actions.end(), action);
    if (pos == cls->actions.end()) {
        return kUnseenActionLogProb;
    }
    return std::log(cls->probability(static_cast<std::size_t>(pos - cls->actions.begin())));
}

std::uint64_t ActionModel::count(StateId state, SymbolId lookahead, const Action& action) const {
    const auto* cls = find(state, lookahead);
    if (cls == nullptr) {
        return 0;
    }
    auto pos = std::find(cls->actions.begin(), cls->actions.end(), action);
    return pos == cls->actions.end() ? 0 : cls->counts[static_cast<std::size_t>(pos - cls->actions.begin())];
}

std::vector<const ActionModel::ActionClass*> ActionModel::classes() const {
    std::vector<const ActionClass*> out;
    out.reserve(classes_.size());
    for (const auto& [k, cls] : classes_) {
        out.push_back(&cls);
    }
    std::sort(out.begin(), out.end(), [](const ActionClass* a, const ActionClass* b) {
        return std::tie(a->state, a->lookahead) < std::tie(b->state, b->lookahead);
    });
    return out;
}

void ActionModel::write(std::ostream& out, const LRTable& table) const {
    check_compatible(table);
    out << "# signature " << std::hex << signature_ << std::dec << '\n';
    out << std::setprecision(17);
    for (const auto* cls : classes()) {
        for (std::size_t i = 0; i < cls->actions.size(); ++i) {
            out << cls->state << '\t' << table.symbol_name(cls->lookahead) << '\t' << format_action(cls->actions[i])
                << '\t' << cls->counts[i] << '\t' << cls->probability(i) << '\n';
        }
    }
}

ActionModel read_action_model(std::istream& in, const LRTable& table) {
    ActionModel model(table);
    std::string line;
    std::size_t lineno = 0;
    bool saw_signature = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            std::istringstream header(line.substr(1));
            std::string word;
            std::uint64_t sig = 0;
            if (header >> word && word == "signature" && header >> std::hex >> sig) {
                if (sig != table.signature()) {
                    throw ModelMismatchError("action model was trained on a different parse table");
                }
                saw_signature = true;
            }
            continue;
        }
        std::istringstream row(line);
        std::string state_text, la_text, action_text;
        std::uint64_t count = 0;
        double prob = 0.0;
        if (!std::getline(row, state_text, '\t') || !std::getline(row, la_text, '\t') ||
            !std::getline(row, action_text, '\t') || !(row >> count >> prob)) {
            throw FormatError("expected state, lookahead, action, count and probability", lineno);
        }
        StateId state = 0;
        try {
            state = static_cast<StateId>(std::stoul(state_text));
        } catch (const std::exception&) {
            throw FormatError("bad state '" + state_text + "'", lineno);
        }
        const auto la = table.symbol_id(la_text);
        const auto action = parse_action(action_text);
        if (!la || !action || (*la > table.end_marker())) {
            throw FormatError("bad lookahead or action", lineno);
        }
        if (state >= table.num_states()) {
            throw ModelMismatchError("state " + std::to_string(state) + " out of range");
        }
        auto it = model.classes_.find(ActionModel::key(state, *la));
        if (it == model.classes_.end()) {
            throw ModelMismatchError("no action class for state " + state_text + " on '" + la_text + "'");
        }
        auto& cls = it->second;
        auto pos = std::find(cls.actions.begin(), cls.actions.end(), *action);
        if (pos == cls.actions.end()) {
            throw ModelMismatchError("action " + action_text + " not available in state " + state_text);
        }
        cls.counts[static_cast<std::size_t>(pos - cls.actions.begin())] = count;
    }
    if (!saw_signature) {
        throw FormatError("action model has no signature header");
    }
    return model;
}

ActionModel load_action_model(const std::string& path, const LRTable& table) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open model file '" + path + "'");
    }
    return read_action_model(in, table);
}

TrainingResult train_actions(std::span<const TreebankEntry> treebank, const LRTable& table) {
    TrainingResult result{ActionModel(table), 0, {}};
    for (const auto& entry : treebank) {
        try {
            const auto tags = leaf_tags(entry.tree);
            const auto tokens = encode_tags(table, tags);
            const auto forest = glr_parse(std::span<const SymbolId>(tokens), table);
            if (forest.empty()) {
                result.skipped.push_back({entry.id, "sentence is outside the grammar"});
                continue;
            }
            const auto tree = find_tree(forest, table, entry.tree);
            if (!tree) {
                result.skipped.push_back({entry.id, "gold tree is not derivable"});
                continue;
            }
            result.model.observe(compute_trace(*tree, tokens, table));
            ++result.used;
        } catch (const Error& e) {
            result.skipped.push_back({entry.id, e.what()});
        }
    }
    return result;
}

double trace_logprob(std::span<const TraceStep> trace, const ActionModel& model) {
    std::vector<double> terms;
    terms.reserve(trace.size());
    for (const auto& step : trace) {
        terms.push_back(model.logprob(step.state, step.lookahead, step.action));
    }
    // Summing in a fixed order makes the score a function of the multiset of
    // steps, so derivations that differ only in step order tie exactly.
    std::sort(terms.begin(), terms.end());
    double sum = 0.0;
    for (double t : terms) {
        sum += t;
    }
    return sum;
}

double derivation_logprob(const Derivation& derivation, const ActionModel& model) {
    return trace_logprob(derivation.trace, model);
}

} // namespace lexglr

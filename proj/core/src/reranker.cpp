#include "lexglr/reranker.hpp"

#include <algorithm>

#include "lexglr/error.hpp"
#include "lexglr/nbest.hpp"

namespace lexglr {

namespace {

void check_lemmas(std::span<const std::string> lemmas, std::size_t tokens) {
    if (lemmas.size() != tokens) {
        throw Error("expected " + std::to_string(tokens) + " lemmas, got " + std::to_string(lemmas.size()));
    }
}

void collect_frames(const DerivNode& node, const Grammar& grammar, std::span<const std::string> lemmas,
                    const FrameInventory& inventory, std::vector<FrameInstance>& out) {
    if (node.is_token()) {
        return;
    }
    const auto& rule = grammar.rules().at(static_cast<std::size_t>(node.rule));
    if (auto frame = grammar.vsubcat_of(rule, inventory)) {
        const auto token = node.children.at(rule.head_index).start;
        out.push_back({lemmas[token], *frame, token, static_cast<RuleId>(node.rule), node.start, node.end});
    }
    for (const auto& child : node.children) {
        collect_frames(child, grammar, lemmas, inventory, out);
    }
}

} // namespace

std::vector<FrameInstance> verb_frames(const DerivNode& tree, const Grammar& grammar,
                                       std::span<const std::string> lemmas, const FrameInventory& inventory) {
    check_lemmas(lemmas, tree.end);
    std::vector<FrameInstance> out;
    collect_frames(tree, grammar, lemmas, inventory, out);
    return out;
}

RankedAnalysis lexicalized_score(Derivation derivation, const ActionModel& model, const SubcatLexicon& lexicon,
                                 const Grammar& grammar, std::span<const std::string> lemmas) {
    RankedAnalysis out;
    out.structural_logprob = derivation_logprob(derivation, model);
    out.frames = verb_frames(derivation.tree, grammar, lemmas, lexicon.inventory());
    std::vector<double> terms;
    for (const auto& f : out.frames) {
        terms.push_back(frame_logprob(lexicon, f.lemma, f.frame));
    }
    std::sort(terms.begin(), terms.end());
    for (double t : terms) {
        out.lexical_logprob += t;
    }
    out.total_score = out.structural_logprob + out.lexical_logprob;
    out.derivation = std::move(derivation);
    return out;
}

bool ranks_before(const RankedAnalysis& a, const RankedAnalysis& b) {
    if (a.total_score != b.total_score) {
        return a.total_score > b.total_score;
    }
    if (a.structural_logprob != b.structural_logprob) {
        return a.structural_logprob > b.structural_logprob;
    }
    return trace_less(a.derivation.trace, b.derivation.trace);
}

std::vector<RankedAnalysis> rank_analyses(const Forest& forest, const LRTable& table, const ActionModel& model,
                                          const SubcatLexicon& lexicon, std::span<const std::string> lemmas,
                                          std::size_t n) {
    check_lemmas(lemmas, forest.num_tokens());
    const auto& grammar = table.grammar();
    std::vector<std::optional<VSubcat>> frames;
    frames.reserve(grammar.rules().size());
    for (const auto& rule : grammar.rules()) {
        frames.push_back(grammar.vsubcat_of(rule, lexicon.inventory()));
    }
    // Lexical probabilities enter the search as extra reduce costs, so the
    // search returns the best analyses by total score directly.
    const ReduceCost lexical_cost = [&](RuleId rule, std::span<const ForestItem> daughters) {
        if (rule >= frames.size() || !frames[rule]) {
            return 0.0;
        }
        const auto token = daughters[grammar.rules()[rule].head_index].index;
        return -frame_logprob(lexicon, lemmas[token], *frames[rule]);
    };
    auto found = search_derivations(forest, table, model, n, lexical_cost);
    std::vector<RankedAnalysis> out;
    out.reserve(found.size());
    for (auto& result : found) {
        Derivation d{replay_trace(result.trace, forest.tokens(), table), std::move(result.trace)};
        out.push_back(lexicalized_score(std::move(d), model, lexicon, grammar, lemmas));
    }
    std::sort(out.begin(), out.end(), ranks_before);
    if (out.size() > n) {
        out.resize(n);
    }
    return out;
}

} // namespace lexglr

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lexglr/action_model.hpp"
#include "lexglr/derivation.hpp"
#include "lexglr/forest.hpp"
#include "lexglr/grammar.hpp"
#include "lexglr/subcat_lexicon.hpp"

namespace lexglr {

/// A verb token together with the frame its dominating verbal rule assigns.
struct FrameInstance {
    std::string lemma;
    VSubcat frame;
    std::uint32_t token = 0;
    RuleId rule = 0;
    std::uint32_t start = 0;
    std::uint32_t end = 0;
};

/// Frames in pre-order of the derivation. `lemmas` holds one lemma per token.
/// Verbs under rules without VSUBCAT (such as phrasal-verb pieces) contribute nothing.
std::vector<FrameInstance> verb_frames(const DerivNode& tree, const Grammar& grammar,
                                       std::span<const std::string> lemmas,
                                       const FrameInventory& inventory = FrameInventory::standard());

struct RankedAnalysis {
    Derivation derivation;
    double structural_logprob = 0.0;
    double lexical_logprob = 0.0;
    double total_score = 0.0; // structural + lexical; not a probability
    std::vector<FrameInstance> frames;
};

RankedAnalysis lexicalized_score(Derivation derivation, const ActionModel& model, const SubcatLexicon& lexicon,
                                 const Grammar& grammar, std::span<const std::string> lemmas);

/// The `n` best analyses by total score. Ties fall back to the structural score
/// and then to the action trace, so a uniform lexicon reproduces unpack_n_best.
std::vector<RankedAnalysis> rank_analyses(const Forest& forest, const LRTable& table, const ActionModel& model,
                                          const SubcatLexicon& lexicon, std::span<const std::string> lemmas,
                                          std::size_t n);

/// Orders analyses by (total desc, structural desc, trace asc).
bool ranks_before(const RankedAnalysis& a, const RankedAnalysis& b);

} // namespace lexglr

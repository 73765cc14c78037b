#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexglr/action_model.hpp"
#include "lexglr/gr.hpp"
#include "lexglr/lr_table.hpp"
#include "lexglr/preprocess.hpp"
#include "lexglr/reranker.hpp"
#include "lexglr/subcat_lexicon.hpp"
#include "lexglr/tree.hpp"

namespace lexglr {

struct Analysis {
    RankedAnalysis ranked;
    Tree tree;
    std::vector<GR> grs;
};

struct SentenceResult {
    std::vector<Token> tokens;
    std::vector<Analysis> analyses;
    std::optional<std::string> error; // why the sentence has no analysis

    bool parsed() const noexcept { return !analyses.empty(); }
};

/// Parses and ranks one tagged sentence. Without a lexicon the ranking is
/// purely structural and the lexical score is reported as 0.
SentenceResult analyze(std::vector<Token> tokens, const LRTable& table, const ActionModel& model,
                       const SubcatLexicon* lexicon, std::size_t n);

/// analyze() over a corpus; results are in input order whatever the thread count.
std::vector<SentenceResult> analyze_corpus(std::span<const std::vector<Token>> corpus, const LRTable& table,
                                           const ActionModel& model, const SubcatLexicon* lexicon, std::size_t n,
                                           unsigned threads = 1);

} // namespace lexglr

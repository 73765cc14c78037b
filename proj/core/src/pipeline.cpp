#include "lexglr/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "lexglr/error.hpp"
#include "lexglr/glr_parser.hpp"
#include "lexglr/gr_extraction.hpp"
#include "lexglr/nbest.hpp"

namespace lexglr {

SentenceResult analyze(std::vector<Token> tokens, const LRTable& table, const ActionModel& model,
                       const SubcatLexicon* lexicon, std::size_t n) {
    SentenceResult result;
    result.tokens = std::move(tokens);
    const auto tags = token_tags(result.tokens);
    const auto lemmas = token_lemmas(result.tokens);
    const auto words = token_surfaces(result.tokens);
    std::vector<SymbolId> ids;
    try {
        ids = encode_tags(table, tags);
    } catch (const UnknownTerminalError& e) {
        result.error = e.what();
        return result;
    }
    const auto forest = glr_parse(std::span<const SymbolId>(ids), table);
    if (forest.empty()) {
        result.error = "no parse";
        return result;
    }

    std::vector<RankedAnalysis> ranked;
    if (lexicon != nullptr) {
        ranked = rank_analyses(forest, table, model, *lexicon, lemmas, n);
    } else {
        for (auto& scored : unpack_n_best(forest, table, model, n)) {
            RankedAnalysis a;
            a.structural_logprob = scored.logprob;
            a.total_score = scored.logprob;
            a.frames = verb_frames(scored.derivation.tree, table.grammar(), lemmas);
            a.derivation = std::move(scored.derivation);
            ranked.push_back(std::move(a));
        }
    }
    for (auto& r : ranked) {
        Analysis a;
        a.tree = to_tree(r.derivation.tree, table, ids, words);
        a.grs = extract_grs(r.derivation.tree, table.grammar(), lemmas);
        a.ranked = std::move(r);
        result.analyses.push_back(std::move(a));
    }
    return result;
}

std::vector<SentenceResult> analyze_corpus(std::span<const std::vector<Token>> corpus, const LRTable& table,
                                           const ActionModel& model, const SubcatLexicon* lexicon, std::size_t n,
                                           unsigned threads) {
    model.check_compatible(table);
    std::vector<SentenceResult> results(corpus.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (auto i = next.fetch_add(1); i < corpus.size(); i = next.fetch_add(1)) {
            results[i] = analyze(corpus[i], table, model, lexicon, n);
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(corpus.size())));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    return results;
}

} // namespace lexglr

#include "lexglr/acquisition.hpp"

#include <algorithm>
#include <atomic>
#include <optional>
#include <thread>

#include "lexglr/error.hpp"
#include "lexglr/glr_parser.hpp"
#include "lexglr/nbest.hpp"
#include "lexglr/reranker.hpp"

namespace lexglr {

bool ObservationStore::add(const std::string& lemma, Observation observation) {
    auto& list = by_lemma_[lemma];
    if (list.size() >= cap_) {
        ++observations_dropped;
        return false;
    }
    list.push_back(std::move(observation));
    return true;
}

std::size_t ObservationStore::count(const std::string& lemma) const {
    auto it = by_lemma_.find(lemma);
    return it == by_lemma_.end() ? 0 : it->second.size();
}

namespace {

std::optional<std::vector<FrameInstance>> top_frames(const std::vector<Token>& sentence, const LRTable& table,
                                                     const ActionModel& model) {
    try {
        const auto tags = token_tags(sentence);
        const auto forest = glr_parse(std::span<const std::string>(tags), table);
        const auto best = unpack_n_best(forest, table, model, 1);
        if (best.empty()) {
            return std::nullopt;
        }
        const auto lemmas = token_lemmas(sentence);
        return verb_frames(best.front().derivation.tree, table.grammar(), lemmas);
    } catch (const UnknownTerminalError&) {
        return std::nullopt;
    }
}

} // namespace

ObservationStore observe_corpus(std::span<const std::vector<Token>> corpus, const LRTable& table,
                                const ActionModel& model, const ObserveOptions& options) {
    model.check_compatible(table);
    std::vector<std::optional<std::vector<FrameInstance>>> results(corpus.size());
    const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(corpus.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (auto i = next.fetch_add(1); i < corpus.size(); i = next.fetch_add(1)) {
            results[i] = top_frames(corpus[i], table, model);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }

    // Appending in corpus order keeps the cap deterministic.
    ObservationStore store(options.cap);
    store.sentences_seen = corpus.size();
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (!results[i]) {
            ++store.sentences_skipped;
            continue;
        }
        ++store.sentences_parsed;
        for (const auto& f : *results[i]) {
            store.add(f.lemma, {f.frame, i});
        }
    }
    return store;
}

SubcatLexicon hypothesize_entries(const ObservationStore& store, double min_count, double min_relfreq,
                                  const FrameInventory& inventory) {
    SubcatLexicon lexicon(inventory);
    for (const auto& [lemma, list] : store.observations()) {
        if (list.empty()) {
            continue;
        }
        std::map<std::string, std::size_t> counts;
        for (const auto& o : list) {
            ++counts[o.frame.symbol()];
        }
        const auto total = static_cast<double>(list.size());
        for (const auto& [frame, c] : counts) {
            const auto count = static_cast<double>(c);
            if (count >= min_count && count / total >= min_relfreq) {
                lexicon.add(lemma, inventory.get(frame), count);
            }
        }
    }
    return lexicon;
}

} // namespace lexglr

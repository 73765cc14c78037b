#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lexglr/action_model.hpp"
#include "lexglr/lr_table.hpp"
#include "lexglr/preprocess.hpp"
#include "lexglr/subcat_lexicon.hpp"

namespace lexglr {

struct Observation {
    VSubcat frame;
    std::size_t sentence = 0; // 0-based corpus index
};

/// Frame observations per verb lemma, in corpus order, at most `cap` each.
class ObservationStore {
public:
    explicit ObservationStore(std::size_t cap = 1000) : cap_(cap) {}

    std::size_t cap() const noexcept { return cap_; }
    /// Returns false, storing nothing, once the lemma has reached the cap.
    bool add(const std::string& lemma, Observation observation);

    const std::map<std::string, std::vector<Observation>>& observations() const noexcept { return by_lemma_; }
    std::size_t count(const std::string& lemma) const;
    bool empty() const noexcept { return by_lemma_.empty(); }

    std::size_t sentences_seen = 0;
    std::size_t sentences_parsed = 0;
    std::size_t sentences_skipped = 0;
    std::size_t observations_dropped = 0; // beyond the cap

private:
    std::size_t cap_;
    std::map<std::string, std::vector<Observation>> by_lemma_;
};

struct ObserveOptions {
    std::size_t cap = 1000;
    unsigned threads = 1;
};

/// Parses every sentence with the structural model and records the frames of
/// the top analysis. Sentences outside the grammar, including those with tags
/// that are not terminals, are skipped and counted. The result does not depend
/// on the thread count.
ObservationStore observe_corpus(std::span<const std::vector<Token>> corpus, const LRTable& table,
                                const ActionModel& model, const ObserveOptions& options = {});

/// Frames with count >= min_count and relative frequency >= min_relfreq among
/// all of the lemma's observations become entries; survivors are renormalized.
SubcatLexicon hypothesize_entries(const ObservationStore& store, double min_count = 1, double min_relfreq = 0,
                                  const FrameInventory& inventory = FrameInventory::standard());

} // namespace lexglr

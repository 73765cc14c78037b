#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexglr/vsubcat.hpp"

namespace lexglr {

struct SubcatEntry {
    std::string lemma;
    VSubcat frame;
    double count = 0.0; // fractional after class collapsing
    double relfreq = 0.0;
};

/// Per-verb frame frequencies. Counts are kept; relative frequencies and
/// smoothed probabilities are derived from them on demand.
class SubcatLexicon {
public:
    explicit SubcatLexicon(FrameInventory inventory = FrameInventory::standard());

    const FrameInventory& inventory() const noexcept { return inventory_; }

    /// Throws FormatError for a negative count or an existing (lemma, frame) key.
    void add(const std::string& lemma, const VSubcat& frame, double count);
    /// Inserts or replaces a count.
    void set_count(const std::string& lemma, const VSubcat& frame, double count);

    bool empty() const noexcept { return counts_.empty(); }
    std::size_t size() const;
    bool contains(std::string_view lemma) const;
    std::vector<std::string> lemmas() const;
    double count(std::string_view lemma, const VSubcat& frame) const;
    double total(std::string_view lemma) const;
    std::optional<double> relfreq(std::string_view lemma, const VSubcat& frame) const;

    /// Entries grouped by lemma, frames in inventory order.
    std::vector<SubcatEntry> entries() const;
    std::vector<SubcatEntry> entries_for(std::string_view lemma) const;

    /// `lemma<TAB>FRAME<TAB>count<TAB>relfreq`, one line per entry.
    void write(std::ostream& out) const;

private:
    FrameInventory inventory_;
    // lemma -> frame index -> count
    std::map<std::string, std::map<std::size_t, double>, std::less<>> counts_;
};

/// Reads a lexicon file, recomputing relative frequencies and checking the
/// stored ones to within 1e-6. Throws FormatError with the line number.
SubcatLexicon read_lexicon(std::istream& in, const FrameInventory& inventory = FrameInventory::standard());
SubcatLexicon load_lexicon(const std::string& path, const FrameInventory& inventory = FrameInventory::standard());

/// Add-1 smoothed log P(frame | lemma) = log((c + 1) / (N + K)), K the inventory
/// size; log(1 / K) for a lemma with no entries.
double frame_logprob(const SubcatLexicon& lexicon, std::string_view lemma, const VSubcat& frame);

/// A probability for one fine-grained acquisition class of a verb.
struct FineClassEntry {
    std::string lemma;
    std::string fine_class;
    double prob = 0.0;
};

using FineClassMapping = std::map<std::string, VSubcat, std::less<>>;

/// Sums fine-class probabilities into VSUBCAT values. The sums become the
/// entry counts. Throws Error for a fine class without a mapping.
SubcatLexicon collapse_classes(std::span<const FineClassEntry> fine, const FineClassMapping& mapping,
                               const FrameInventory& inventory = FrameInventory::standard());

/// `fine_id<TAB>VSUBCAT` lines.
FineClassMapping read_fine_mapping(std::istream& in, const FrameInventory& inventory = FrameInventory::standard());

} // namespace lexglr

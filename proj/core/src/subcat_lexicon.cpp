#include "lexglr/subcat_lexicon.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "lexglr/error.hpp"

namespace lexglr {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, '\t')) {
        out.push_back(field);
    }
    return out;
}

double parse_number(const std::string& text, std::size_t lineno) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(value)) {
        throw FormatError("bad number '" + text + "'", lineno);
    }
    return value;
}

bool skippable(const std::string& line) {
    return line.empty() || line.front() == '#';
}

} // namespace

SubcatLexicon::SubcatLexicon(FrameInventory inventory) : inventory_(std::move(inventory)) {}

void SubcatLexicon::add(const std::string& lemma, const VSubcat& frame, double count) {
    const auto index = inventory_.index_of(frame.symbol());
    if (!index) {
        throw FormatError("unknown frame '" + frame.symbol() + "'");
    }
    if (!(count >= 0.0)) {
        throw FormatError("negative count for " + lemma + "/" + frame.symbol());
    }
    auto& frames = counts_[lemma];
    if (!frames.emplace(*index, count).second) {
        throw FormatError("duplicate entry " + lemma + "/" + frame.symbol());
    }
}

void SubcatLexicon::set_count(const std::string& lemma, const VSubcat& frame, double count) {
    const auto index = inventory_.index_of(frame.symbol());
    if (!index) {
        throw FormatError("unknown frame '" + frame.symbol() + "'");
    }
    if (!(count >= 0.0)) {
        throw FormatError("negative count for " + lemma + "/" + frame.symbol());
    }
    counts_[lemma][*index] = count;
}

std::size_t SubcatLexicon::size() const {
    std::size_t n = 0;
    for (const auto& [lemma, frames] : counts_) {
        n += frames.size();
    }
    return n;
}

bool SubcatLexicon::contains(std::string_view lemma) const {
    return counts_.find(lemma) != counts_.end();
}

std::vector<std::string> SubcatLexicon::lemmas() const {
    std::vector<std::string> out;
    for (const auto& [lemma, frames] : counts_) {
        out.push_back(lemma);
    }
    return out;
}

double SubcatLexicon::count(std::string_view lemma, const VSubcat& frame) const {
    auto it = counts_.find(lemma);
    const auto index = inventory_.index_of(frame.symbol());
    if (it == counts_.end() || !index) {
        return 0.0;
    }
    auto f = it->second.find(*index);
    return f == it->second.end() ? 0.0 : f->second;
}

double SubcatLexicon::total(std::string_view lemma) const {
    auto it = counts_.find(lemma);
    if (it == counts_.end()) {
        return 0.0;
    }
    double sum = 0.0;
    for (const auto& [frame, c] : it->second) {
        sum += c;
    }
    return sum;
}

std::optional<double> SubcatLexicon::relfreq(std::string_view lemma, const VSubcat& frame) const {
    const auto index = inventory_.index_of(frame.symbol());
    auto it = counts_.find(lemma);
    if (it == counts_.end() || !index || !it->second.contains(*index)) {
        return std::nullopt;
    }
    const double n = total(lemma);
    return n > 0.0 ? it->second.at(*index) / n : 0.0;
}

std::vector<SubcatEntry> SubcatLexicon::entries_for(std::string_view lemma) const {
    std::vector<SubcatEntry> out;
    auto it = counts_.find(lemma);
    if (it == counts_.end()) {
        return out;
    }
    const double n = total(lemma);
    for (const auto& [index, c] : it->second) {
        out.push_back({it->first, inventory_.at(index), c, n > 0.0 ? c / n : 0.0});
    }
    return out;
}

std::vector<SubcatEntry> SubcatLexicon::entries() const {
    std::vector<SubcatEntry> out;
    for (const auto& [lemma, frames] : counts_) {
        auto part = entries_for(lemma);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

void SubcatLexicon::write(std::ostream& out) const {
    const auto old = out.precision(12);
    for (const auto& e : entries()) {
        out << e.lemma << '\t' << e.frame.symbol() << '\t' << e.count << '\t' << e.relfreq << '\n';
    }
    out.precision(old);
}

SubcatLexicon read_lexicon(std::istream& in, const FrameInventory& inventory) {
    SubcatLexicon lexicon(inventory);
    std::map<std::pair<std::string, std::string>, std::pair<double, std::size_t>> stored;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (skippable(line)) {
            continue;
        }
        const auto fields = split_tabs(line);
        if (fields.size() != 4) {
            throw FormatError("expected lemma, frame, count and relfreq separated by tabs", lineno);
        }
        const auto frame = inventory.find(fields[1]);
        if (!frame) {
            throw FormatError("unknown frame '" + fields[1] + "'", lineno);
        }
        const double count = parse_number(fields[2], lineno);
        const double relfreq = parse_number(fields[3], lineno);
        if (count < 0.0) {
            throw FormatError("negative count", lineno);
        }
        if (lexicon.relfreq(fields[0], *frame)) {
            throw FormatError("duplicate entry " + fields[0] + "/" + fields[1], lineno);
        }
        lexicon.add(fields[0], *frame, count);
        stored[{fields[0], fields[1]}] = {relfreq, lineno};
    }
    for (const auto& [key, value] : stored) {
        const auto actual = lexicon.relfreq(key.first, inventory.get(key.second)).value_or(0.0);
        if (std::abs(actual - value.first) > 1e-6) {
            std::ostringstream msg;
            msg << "relfreq " << value.first << " for " << key.first << "/" << key.second << " should be " << actual;
            throw FormatError(msg.str(), value.second);
        }
    }
    return lexicon;
}

SubcatLexicon load_lexicon(const std::string& path, const FrameInventory& inventory) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open lexicon file '" + path + "'");
    }
    try {
        return read_lexicon(in, inventory);
    } catch (const FormatError& e) {
        throw FormatError(path + ": " + e.what());
    }
}

double frame_logprob(const SubcatLexicon& lexicon, std::string_view lemma, const VSubcat& frame) {
    const auto k = static_cast<double>(lexicon.inventory().size());
    if (!lexicon.contains(lemma)) {
        return -std::log(k);
    }
    return std::log((lexicon.count(lemma, frame) + 1.0) / (lexicon.total(lemma) + k));
}

SubcatLexicon collapse_classes(std::span<const FineClassEntry> fine, const FineClassMapping& mapping,
                               const FrameInventory& inventory) {
    SubcatLexicon lexicon(inventory);
    for (const auto& entry : fine) {
        auto it = mapping.find(entry.fine_class);
        if (it == mapping.end()) {
            throw Error("fine class '" + entry.fine_class + "' has no VSUBCAT mapping");
        }
        lexicon.set_count(entry.lemma, it->second, lexicon.count(entry.lemma, it->second) + entry.prob);
    }
    return lexicon;
}

FineClassMapping read_fine_mapping(std::istream& in, const FrameInventory& inventory) {
    FineClassMapping mapping;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (skippable(line)) {
            continue;
        }
        const auto fields = split_tabs(line);
        if (fields.size() != 2) {
            throw FormatError("expected fine class id and VSUBCAT separated by a tab", lineno);
        }
        const auto frame = inventory.find(fields[1]);
        if (!frame) {
            throw FormatError("unknown frame '" + fields[1] + "'", lineno);
        }
        if (!mapping.emplace(fields[0], *frame).second) {
            throw FormatError("fine class '" + fields[0] + "' mapped twice", lineno);
        }
    }
    return mapping;
}

} // namespace lexglr

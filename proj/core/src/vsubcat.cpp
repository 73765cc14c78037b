#include "lexglr/vsubcat.hpp"

#include "lexglr/error.hpp"

namespace lexglr {

FrameInventory::FrameInventory(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i].empty()) {
            throw FormatError("empty frame symbol in inventory");
        }
        if (!index_.emplace(symbols_[i], i).second) {
            throw FormatError("duplicate frame symbol '" + symbols_[i] + "' in inventory");
        }
    }
}

const FrameInventory& FrameInventory::standard() {
    static const FrameInventory inventory({
        "AP",        "NONE",      "NP",        "NP_AP",    "NP_NP",    "NP_NP_SCOMP",
        "NP_PP",     "NP_PPOF",   "NP_PP_PP",  "NP_SCOMP", "NP_WHPP",  "PP",
        "PP_AP",     "PP_PP",     "PP_SCOMP",  "PP_VPINF", "PP_WHPP",  "PP_WHS",
        "PP_WHVP",   "SCOMP",     "SINF",      "SING",     "SING_PP",  "VPBSE",
        "VPINF",     "VPING",     "VPING_PP",  "VPPRT",    "WHPP",
    });
    return inventory;
}

bool FrameInventory::contains(std::string_view symbol) const {
    return index_of(symbol).has_value();
}

std::optional<std::size_t> FrameInventory::index_of(std::string_view symbol) const {
    auto it = index_.find(std::string(symbol));
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<VSubcat> FrameInventory::find(std::string_view symbol) const {
    if (!contains(symbol)) {
        return std::nullopt;
    }
    return VSubcat(std::string(symbol));
}

VSubcat FrameInventory::get(std::string_view symbol) const {
    if (!contains(symbol)) {
        throw FormatError("unknown frame '" + std::string(symbol) + "'");
    }
    return VSubcat(std::string(symbol));
}

} // namespace lexglr

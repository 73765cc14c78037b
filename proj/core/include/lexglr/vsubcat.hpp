#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lexglr {

/// A verbal subcategorisation frame symbol (e.g. NP, NP_PP, VPINF).
/// Only obtainable through a FrameInventory, so the value is always a member.
class VSubcat {
public:
    const std::string& symbol() const noexcept { return symbol_; }

    friend bool operator==(const VSubcat&, const VSubcat&) = default;
    friend auto operator<=>(const VSubcat&, const VSubcat&) = default;

private:
    friend class FrameInventory;
    explicit VSubcat(std::string symbol) : symbol_(std::move(symbol)) {}

    std::string symbol_;
};

/// The closed set of frame symbols a grammar and lexicon agree on.
class FrameInventory {
public:
    explicit FrameInventory(std::vector<std::string> symbols);

    /// The 29 VSUBCAT values of the shipped English grammar.
    static const FrameInventory& standard();

    std::size_t size() const noexcept { return symbols_.size(); }
    const std::vector<std::string>& symbols() const noexcept { return symbols_; }
    bool contains(std::string_view symbol) const;
    std::optional<std::size_t> index_of(std::string_view symbol) const;

    std::optional<VSubcat> find(std::string_view symbol) const;
    /// Throws FormatError for symbols outside the inventory.
    VSubcat get(std::string_view symbol) const;
    VSubcat at(std::size_t index) const { return VSubcat(symbols_.at(index)); }

private:
    std::vector<std::string> symbols_;
    std::unordered_map<std::string, std::size_t> index_;
};

} // namespace lexglr

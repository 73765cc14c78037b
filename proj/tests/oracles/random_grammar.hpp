#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace lexglr::oracle {

/// A small random grammar in the grammar-file format together with sentences
/// (terminal sequences) sampled from it.
struct RandomGrammar {
    std::string text;
    std::vector<std::vector<std::string>> sentences;
};

/// Deterministic for a given seed. Every non-terminal is productive, unit rules
/// only point to later non-terminals, and optional or starred daughters only
/// appear next to a terminal head, so the grammar always validates.
RandomGrammar make_random_grammar(std::uint32_t seed, std::size_t sentences, std::size_t max_length);

/// Uniformly random terminal strings, most of which the grammar rejects.
std::vector<std::vector<std::string>> random_strings(std::uint32_t seed, const std::vector<std::string>& terminals,
                                                     std::size_t count, std::size_t max_length);

} // namespace lexglr::oracle

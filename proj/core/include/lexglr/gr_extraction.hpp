#pragma once

#include <span>
#include <string>
#include <vector>

#include "lexglr/derivation.hpp"
#include "lexglr/gr.hpp"
#include "lexglr/grammar.hpp"

namespace lexglr {

/// Instantiates the GR templates of every rule in the derivation, filling
/// slots with the lemmas of head words. A `control` slot takes the dependent
/// of the nearest subject relation above it. Templates with a slot that cannot
/// be filled are skipped. The result is sorted and free of duplicates.
std::vector<GR> extract_grs(const DerivNode& tree, const Grammar& grammar, std::span<const std::string> lemmas);

} // namespace lexglr

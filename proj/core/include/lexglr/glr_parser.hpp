#pragma once

#include <span>
#include <string>
#include <vector>

#include "lexglr/forest.hpp"
#include "lexglr/lr_table.hpp"

namespace lexglr {

/// Maps PoS tags to terminal ids. Throws UnknownTerminalError naming the position.
std::vector<SymbolId> encode_tags(const LRTable& table, std::span<const std::string> tags);

/// Generalized LR parse with a graph-structured stack. The forest is empty
/// (no root) when the input is out of coverage.
Forest glr_parse(std::span<const SymbolId> tokens, const LRTable& table);
Forest glr_parse(std::span<const std::string> tags, const LRTable& table);

} // namespace lexglr

#include "lexglr/error.hpp"

#include <utility>

namespace lexglr {

namespace {

std::string with_line(const std::string& what, std::size_t line) {
    if (line == 0) {
        return what;
    }
    return "line " + std::to_string(line) + ": " + what;
}

} // namespace

FormatError::FormatError(const std::string& what, std::size_t line)
    : Error(with_line(what, line)), line_(line) {}

UnknownTerminalError::UnknownTerminalError(std::string symbol, std::size_t position)
    : Error("unknown terminal '" + symbol + "' at token " + std::to_string(position)),
      symbol_(std::move(symbol)),
      position_(position) {}

} // namespace lexglr

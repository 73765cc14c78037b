#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexglr {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, 0 when the error is not tied to a line.
class FormatError : public Error {
public:
    explicit FormatError(const std::string& what, std::size_t line = 0);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class GrammarError : public FormatError {
public:
    using FormatError::FormatError;
};

/// A token whose tag is not a terminal of the grammar.
class UnknownTerminalError : public Error {
public:
    UnknownTerminalError(std::string symbol, std::size_t position);

    const std::string& symbol() const noexcept { return symbol_; }
    std::size_t position() const noexcept { return position_; }

private:
    std::string symbol_;
    std::size_t position_;
};

/// An action model used with a table it was not built for.
class ModelMismatchError : public Error {
public:
    using Error::Error;
};

/// A tree or action trace that the grammar/table cannot produce.
class DerivationError : public Error {
public:
    using Error::Error;
};

} // namespace lexglr

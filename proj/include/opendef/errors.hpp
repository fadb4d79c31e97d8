#pragma once

#include <stdexcept>
#include <string>

namespace opendef {

// Raised for malformed instance files, formula text, or sentences.
// The message carries a 1-based line or column position where one applies.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an enumeration (naive slice, extension, beta, ...) would
// exceed its configured step budget.  Callers can retry with a larger
// budget or switch the expensive check off.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace opendef

#pragma once

#include <stdexcept>
#include <string>

namespace apaver {

// All library errors derive from Error so callers can catch one base type.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A series with no nonzero tracked coefficient was used where a unit or a
// finite valuation is required.
struct ZeroSeriesError : Error {
  explicit ZeroSeriesError(const std::string& what) : Error(what) {}
};

// A question was asked that the tracked precision window cannot answer.
// This is always loud; the library never silently guesses a coefficient.
struct PrecisionExhaustedError : Error {
  explicit PrecisionExhaustedError(const std::string& what) : Error(what) {}
};

// Slice or window bounds fall outside the tracked window.
struct WindowViolationError : Error {
  explicit WindowViolationError(const std::string& what) : Error(what) {}
};

// An enumeration would exceed the configured point budget.
struct BudgetExceededError : Error {
  explicit BudgetExceededError(const std::string& what) : Error(what) {}
};

// A retraction (or similar partial map) was applied outside its domain.
struct NotApplicableError : Error {
  explicit NotApplicableError(const std::string& what) : Error(what) {}
};

// A split-element construction could not realize the requested valuations.
struct ValuationMismatchError : Error {
  explicit ValuationMismatchError(const std::string& what) : Error(what) {}
};

// An internal case dispatch reached a combination that cannot occur for
// legal inputs.  Seeing this is a bug, not a user error.
struct InvalidCombinationError : Error {
  explicit InvalidCombinationError(const std::string& what) : Error(what) {}
};

}  // namespace apaver

#pragma once

#include <stdexcept>
#include <string>

namespace capfair {

// Base class for all library errors so callers can catch capfair failures
// without swallowing unrelated std exceptions.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input documents: JSON that does not match the instance or
// allocation schema (wrong types, unknown fields, bad rational literals,
// references to undeclared agents/items).
struct SchemaError : Error {
  using Error::Error;
};

// An operation that requires a structurally valid instance was handed one
// whose validation report is non-empty.  The message embeds the report.
struct InvalidInstanceError : Error {
  using Error::Error;
};

// Exhaustive enumeration would exceed the configured allocation budget.
struct BudgetExceededError : Error {
  using Error::Error;
};

// A "cannot happen" condition inside the solver: a guaranteed-to-exist
// candidate was missing, a certified exchange failed to improve, etc.
// Reaching this indicates a bug in this library, not bad input.
struct InternalInvariantError : Error {
  using Error::Error;
};

}  // namespace capfair

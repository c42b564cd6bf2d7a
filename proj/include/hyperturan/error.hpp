#ifndef HYPERTURAN_ERROR_HPP
#define HYPERTURAN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hyperturan {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: out-of-range ids, malformed text, infeasible parameters.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A counter would exceed its representable range.
class OverflowError : public Error {
public:
  using Error::Error;
};

/// A search or generator ran out of its node budget.
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

/// An internal self-check failed (e.g. embeddings not divisible by |Aut|).
class InternalError : public Error {
public:
  using Error::Error;
};

} // namespace hyperturan

#endif

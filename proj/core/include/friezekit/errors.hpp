#pragma once

#include <stdexcept>
#include <string>

namespace friezekit {

// Bad arguments from a caller: mismatched variable lists, window overflow,
// invalid family parameters, malformed files.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DivisionNotExact : std::domain_error {
  using std::domain_error::domain_error;
};

// A specialization point hit a zero denominator; the caller re-draws.
struct BadSpecialization : std::domain_error {
  using std::domain_error::domain_error;
};

struct SymbolicBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoAdmissibleOrder : std::domain_error {
  using std::domain_error::domain_error;
};

struct Unsupported : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Violated mathematical invariant, e.g. a non-Laurent cluster variable.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace friezekit

// Error taxonomy shared by every module.
//
// Each failure mode declared by an operation contract is a distinct kind, so
// callers (and the CLI) can branch on the kind without string matching. The
// message carries human-readable detail; for parse errors the byte offset of
// the first offending character is recorded.

#pragma once

#include <stdexcept>
#include <string>

namespace pullback {

enum class ErrorKind {
  // arithmetic
  DivisionByZero,
  NonInvertible,
  FieldMismatch,
  // parsing
  SyntaxError,
  UnknownSymbol,
  // projective points
  DegenerateTuple,
  // portraits
  InvalidPortrait,
  MarkingMismatch,
  CompositionIncomplete,
  // dynamics
  NotDynamical,
  NotPostcriticallyClosed,
  HypothesisViolated,
  TooFewMarked,
  BudgetExceeded,
  // quadratic differentials / pushforward
  TooFewPoints,
  DuplicatePoint,
  ConstantMap,
  InternalNonInvertible,
  AdmissibilityViolated,
  DegenerateInput,
  NotSimpleCritical,
  NumericFailure,
  // monodromy
  NotTransitive,
  DegreeTooLarge,
  InvalidTriple,
  HypothesesUnmet,
  // bicritical curves
  DegenerateParameter,
  TrivialRoot,
  WitnessSearchFailed,
  // elliptic verification
  TorsionDenominator,
  PoleAtTorsion,
  DegenerateFiber,
  CheckFailed,
  // everything else (internal invariant breaks)
  Internal,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, long offset = -1)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind),
        offset_(offset) {}

  ErrorKind kind() const { return kind_; }
  // Byte offset into the input for SyntaxError/UnknownSymbol; -1 otherwise.
  long offset() const { return offset_; }

 private:
  ErrorKind kind_;
  long offset_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message,
                              long offset = -1) {
  throw Error(kind, message, offset);
}

}  // namespace pullback

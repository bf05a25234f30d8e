#pragma once

#include <stdexcept>
#include <string>

namespace sepfact {

// Contract violations: malformed shapes, non-states, bad weights, broken
// preconditions.  The CLI maps these (and schema errors) to exit code 1.
struct ContractViolation : std::runtime_error {
  explicit ContractViolation(const std::string& msg) : std::runtime_error(msg) {}
};

// Input file or JSON schema problems.  Carries the offending field.
struct SchemaError : ContractViolation {
  std::string field;
  SchemaError(const std::string& field_, const std::string& msg)
      : ContractViolation("schema error at '" + field_ + "': " + msg), field(field_) {}
};

// The input is a well-formed state or ensemble, but structurally outside what
// the algorithm guarantees.  The CLI maps these to exit code 2.
struct RegimeRejection : std::runtime_error {
  explicit RegimeRejection(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotInRegime : RegimeRejection {
  explicit NotInRegime(const std::string& msg) : RegimeRejection(msg) {}
};

// Generalized eigenvalue collision; callers retry with a fresh combination.
struct DegeneratePencil : RegimeRejection {
  explicit DegeneratePencil(const std::string& msg) : RegimeRejection(msg) {}
};

// The f-side vectors are linearly dependent; plain mixtures are not unique.
struct DependentF : RegimeRejection {
  explicit DependentF(const std::string& msg) : RegimeRejection(msg) {}
};

// Requested fewer mixture elements than the rank allows.
struct RankTooHigh : ContractViolation {
  explicit RankTooHigh(const std::string& msg) : ContractViolation(msg) {}
};

// No decomposition length information can be derived.
struct Unbounded : RegimeRejection {
  explicit Unbounded(const std::string& msg) : RegimeRejection(msg) {}
};

// State validation failures; each carries the measured deviation.
struct StateError : ContractViolation {
  double deviation;
  StateError(const std::string& msg, double dev) : ContractViolation(msg), deviation(dev) {}
};

struct NotHermitian : StateError {
  explicit NotHermitian(double dev)
      : StateError("matrix is not Hermitian (deviation " + std::to_string(dev) + ")", dev) {}
};

struct TraceNotOne : StateError {
  explicit TraceNotOne(double dev)
      : StateError("trace differs from one by " + std::to_string(dev), dev) {}
};

struct NotPositive : StateError {
  explicit NotPositive(double dev)
      : StateError("matrix has a negative eigenvalue of magnitude " + std::to_string(dev), dev) {}
};

}  // namespace sepfact

#pragma once

#include <utility>
#include <vector>

#include "sepfact/states.hpp"

namespace sepfact {

enum class PtPattern { None, A, B, Both };

struct LocalUnitary {
  ComplexMatrix U;  // m x m
  ComplexMatrix V;  // n x n
};

struct Generator {
  enum class Kind { LocalU, PtA, PtB, Swap };
  Kind kind = Kind::LocalU;
  ComplexMatrix U, V;  // LocalU only

  static Generator local(ComplexMatrix U, ComplexMatrix V);
  static Generator pt(Side side);
  static Generator swap();
};

// Composition word over the generators; gens[0] acts on the state first.
// Swap is only admitted on square dims; unitaries are validated within 1e-10.
struct AutomorphismWord {
  Dims dims;
  std::vector<Generator> gens;

  AutomorphismWord(Dims dims_, std::vector<Generator> gens_);
};

// Normal form (Swap?) after (PT pattern) after (LocalUnitary): the local part
// acts first.  Unitary parts are unique up to a per-factor phase.
struct CanonicalAutomorphism {
  Dims dims;
  bool swap_flag = false;
  PtPattern pt = PtPattern::None;
  LocalUnitary local;
};

DensityMatrix apply(const AutomorphismWord& word, const DensityMatrix& rho);
DensityMatrix apply(const CanonicalAutomorphism& canon, const DensityMatrix& rho);

CanonicalAutomorphism canonicalize(const AutomorphismWord& word, const Tolerance& tol);
AutomorphismWord to_word(const CanonicalAutomorphism& canon);
AutomorphismWord inverse(const AutomorphismWord& word);

// Equality of normal forms, unitaries compared up to a per-factor phase.
bool canonical_equal(const CanonicalAutomorphism& a, const CanonicalAutomorphism& b, double eps);

// Fixes the free global phase: largest-magnitude entry made real positive
// (ties broken by lowest row-major index).
ComplexMatrix phase_normalized_matrix(const ComplexMatrix& mat);

// Whether the map extends positively beyond the separable states: exactly the
// words whose partial-transpose pattern is None or Both.
bool extends_to_full_state_space(const CanonicalAutomorphism& canon);

// A state whose chosen one-sided partial transpose has a negative eigenvalue
// (an embedded maximally entangled projector; the eigenvalue is -1/min(m,n)).
// Returns the state and the measured eigenvalue.
std::pair<DensityMatrix, double> witness_nonpositivity(Side pattern, Dims dims);

// Permutation matrix exchanging the two factors on square dims.
ComplexMatrix swap_matrix(int m);

}  // namespace sepfact

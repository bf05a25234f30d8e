#pragma once

#include <vector>

#include "sepfact/numerics.hpp"

namespace sepfact {

struct Dims {
  int m = 0;
  int n = 0;

  int total() const { return m * n; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

enum class Side { A, B };

// Pure product factor pair; both factors unit norm within 1e-12.
struct ProductVector {
  ComplexVector e;
  ComplexVector f;

  ProductVector(ComplexVector e_, ComplexVector f_);
  ComplexVector joint() const { return kron_vec(e, f); }
};

struct WeightedProduct {
  double weight = 0.0;
  ProductVector pv;
};

// Finite convex combination of pure product states.  Weights are strictly
// positive and sum to one within 1e-12; factor sizes match dims.
struct Ensemble {
  Dims dims;
  std::vector<WeightedProduct> components;

  Ensemble(Dims dims_, std::vector<WeightedProduct> components_);
  int size() const { return int(components.size()); }
};

// Carrier for an mn x mn matrix interpreted on the bipartite index
// (a*n + x, b*n + y).  Full state invariants (Hermitian within eps_herm,
// eigenvalues >= -eps_herm, unit trace within 1e-10) are established by
// validate_state and density_of; transformation outputs are only guaranteed
// to satisfy them on separable inputs.
struct DensityMatrix {
  Dims dims;
  ComplexMatrix mat;
};

DensityMatrix density_of(const Ensemble& ens);

// Reduced matrix of the kept side: marginal(rho, A) traces out B and is m x m.
ComplexMatrix marginal(const DensityMatrix& rho, Side keep);

DensityMatrix partial_transpose(const DensityMatrix& rho, Side side);

// Checks Hermitian -> trace -> positivity, in that order, throwing
// NotHermitian / TraceNotOne / NotPositive with the measured deviation.
DensityMatrix validate_state(const ComplexMatrix& mat, Dims dims, const Tolerance& tol);

ComplexMatrix outer(const ComplexVector& v);

// Largest-magnitude entry made real positive (ties break to the lowest index).
ComplexVector phase_normalized(const ComplexVector& v);

// sin of the principal angle between rays: sqrt(1 - |<a,b>|^2) for unit a, b.
double ray_distance(const ComplexVector& a, const ComplexVector& b);
bool same_ray(const ComplexVector& a, const ComplexVector& b, double eps);

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace sepfact

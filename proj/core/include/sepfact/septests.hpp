#pragma once

#include <array>

#include "sepfact/states.hpp"

namespace sepfact {

struct PptReport {
  Side side = Side::A;
  double min_eig_pt = 0.0;
  bool passes = false;  // min_eig_pt >= -eps_herm
};

// Necessary separability test: the chosen partial transpose stays positive.
PptReport ppt_test(const DensityMatrix& rho, Side side, const Tolerance& tol);

// Mixture of the four maximally entangled 2x2 projectors, weights in the
// basis order phi+, phi-, psi+, psi-.
DensityMatrix bell_diagonal(const std::array<double, 4>& p);

enum class SepVerdict { Separable, Entangled };

// Closed-form separability of a Bell-diagonal state: max weight <= 1/2.
SepVerdict octahedron_check(const std::array<double, 4>& p, const Tolerance& tol);

}  // namespace sepfact

#include "sepfact/septests.hpp"

#include <algorithm>
#include <cmath>

namespace sepfact {

PptReport ppt_test(const DensityMatrix& rho, Side side, const Tolerance& tol) {
  tol.check();
  const DensityMatrix pt = partial_transpose(rho, side);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (pt.mat + pt.mat.adjoint()));
  if (es.info() != Eigen::Success) throw ContractViolation("ppt_test: eigendecomposition failed");
  PptReport report;
  report.side = side;
  report.min_eig_pt = es.eigenvalues()(0);
  report.passes = report.min_eig_pt >= -tol.eps_herm;
  return report;
}

DensityMatrix bell_diagonal(const std::array<double, 4>& p) {
  double sum = 0.0;
  for (double w : p) {
    if (w < 0.0 || !std::isfinite(w)) throw ContractViolation("bell_diagonal: weights must be >= 0");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw ContractViolation("bell_diagonal: weights must sum to one");

  const double r = 1.0 / std::sqrt(2.0);
  ComplexVector phi_p(4), phi_m(4), psi_p(4), psi_m(4);
  phi_p << r, 0, 0, r;
  phi_m << r, 0, 0, -r;
  psi_p << 0, r, r, 0;
  psi_m << 0, r, -r, 0;

  ComplexMatrix mat = p[0] * outer(phi_p) + p[1] * outer(phi_m) + p[2] * outer(psi_p) +
                      p[3] * outer(psi_m);
  return {{2, 2}, std::move(mat)};
}

SepVerdict octahedron_check(const std::array<double, 4>& p, const Tolerance& tol) {
  tol.check();
  double sum = 0.0, pmax = 0.0;
  for (double w : p) {
    if (w < 0.0 || !std::isfinite(w)) throw ContractViolation("octahedron_check: weights must be >= 0");
    sum += w;
    pmax = std::max(pmax, w);
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw ContractViolation("octahedron_check: weights must sum to one");
  // The partial transpose spectrum is {1/2 - p_i}; grant the same eps_herm
  // slack as ppt_test so the two verdicts coincide.
  return pmax <= 0.5 + tol.eps_herm ? SepVerdict::Separable : SepVerdict::Entangled;
}

}  // namespace sepfact

#include "sepfact/states.hpp"

#include <algorithm>
#include <cmath>

namespace sepfact {

namespace {

constexpr double kUnitNormSlack = 1e-12;
constexpr double kWeightSumSlack = 1e-12;
constexpr double kTraceSlack = 1e-10;

}  // namespace

ProductVector::ProductVector(ComplexVector e_, ComplexVector f_) : e(std::move(e_)), f(std::move(f_)) {
  if (e.size() < 1 || f.size() < 1) throw ContractViolation("product vector factors must be non-empty");
  if (std::abs(e.norm() - 1.0) > kUnitNormSlack || std::abs(f.norm() - 1.0) > kUnitNormSlack)
    throw ContractViolation("product vector factors must be unit norm within 1e-12");
}

Ensemble::Ensemble(Dims dims_, std::vector<WeightedProduct> components_)
    : dims(dims_), components(std::move(components_)) {
  if (dims.m < 1 || dims.n < 1) throw ContractViolation("ensemble dims must be positive");
  if (components.empty()) throw ContractViolation("ensemble must have at least one component");
  double sum = 0.0;
  for (const auto& c : components) {
    if (!(c.weight > 0.0) || !std::isfinite(c.weight))
      throw ContractViolation("ensemble weights must be strictly positive");
    if (c.pv.e.size() != dims.m || c.pv.f.size() != dims.n)
      throw ContractViolation("ensemble component factor sizes must match dims");
    sum += c.weight;
  }
  if (std::abs(sum - 1.0) > kWeightSumSlack)
    throw ContractViolation("ensemble weights must sum to one within 1e-12");
}

DensityMatrix density_of(const Ensemble& ens) {
  const int d = ens.dims.total();
  ComplexMatrix mat = ComplexMatrix::Zero(d, d);
  for (const auto& c : ens.components) {
    const ComplexVector v = c.pv.joint();
    mat.noalias() += c.weight * (v * v.adjoint());
  }
  return {ens.dims, mat};
}

ComplexMatrix marginal(const DensityMatrix& rho, Side keep) {
  const int m = rho.dims.m, n = rho.dims.n;
  if (rho.mat.rows() != m * n || rho.mat.cols() != m * n)
    throw ContractViolation("marginal: matrix size does not match dims");
  if (keep == Side::A) {
    ComplexMatrix out = ComplexMatrix::Zero(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int x = 0; x < n; ++x) out(a, b) += rho.mat(a * n + x, b * n + x);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int a = 0; a < m; ++a) out(x, y) += rho.mat(a * n + x, a * n + y);
  return out;
}

DensityMatrix partial_transpose(const DensityMatrix& rho, Side side) {
  const int m = rho.dims.m, n = rho.dims.n;
  if (rho.mat.rows() != m * n || rho.mat.cols() != m * n)
    throw ContractViolation("partial_transpose: matrix size does not match dims");
  ComplexMatrix out(m * n, m * n);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          if (side == Side::A)
            out(a * n + x, b * n + y) = rho.mat(b * n + x, a * n + y);
          else
            out(a * n + x, b * n + y) = rho.mat(a * n + y, b * n + x);
        }
  return {rho.dims, out};
}

DensityMatrix validate_state(const ComplexMatrix& mat, Dims dims, const Tolerance& tol) {
  tol.check();
  if (dims.m < 1 || dims.n < 1) throw ContractViolation("validate_state: dims must be positive");
  const int d = dims.total();
  if (mat.rows() != d || mat.cols() != d)
    throw ContractViolation("validate_state: matrix must be mn x mn");
  for (Eigen::Index i = 0; i < mat.rows(); ++i)
    for (Eigen::Index j = 0; j < mat.cols(); ++j)
      if (!std::isfinite(mat(i, j).real()) || !std::isfinite(mat(i, j).imag()))
        throw ContractViolation("validate_state: matrix entries must be finite");

  const double herm_dev = (mat - mat.adjoint()).norm();
  if (herm_dev > tol.eps_herm * std::max(1.0, mat.norm())) throw NotHermitian(herm_dev);

  const double trace_dev = std::abs(mat.trace() - Complex(1.0, 0.0));
  if (trace_dev > kTraceSlack) throw TraceNotOne(trace_dev);

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (mat + mat.adjoint()));
  if (es.info() != Eigen::Success) throw ContractViolation("validate_state: eigendecomposition failed");
  const double min_eig = es.eigenvalues()(0);
  if (min_eig < -tol.eps_herm) throw NotPositive(-min_eig);

  return {dims, mat};
}

ComplexMatrix outer(const ComplexVector& v) { return v * v.adjoint(); }

ComplexVector phase_normalized(const ComplexVector& v) {
  Eigen::Index best = 0;
  double best_mag = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > best_mag + 1e-15) {
      best_mag = mag;
      best = i;
    }
  }
  if (best_mag <= 0.0) return v;
  return v * (std::conj(v(best)) / best_mag);
}

double ray_distance(const ComplexVector& a, const ComplexVector& b) {
  // sin of the principal angle as the projection residual ||b - a<a,b>||.
  // Equivalent to sqrt(1 - |<a,b>|^2) for unit vectors but keeps full
  // precision near zero, where the closed form bottoms out around 1e-8.
  const ComplexVector r = b - a * a.dot(b);  // Eigen's dot conjugates the left factor
  return std::min(1.0, r.norm());
}

bool same_ray(const ComplexVector& a, const ComplexVector& b, double eps) {
  return ray_distance(a, b) <= eps;
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * ((a - b) + (a - b).adjoint()));
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace sepfact

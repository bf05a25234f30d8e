#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "sepfact/numerics.hpp"

namespace sepfact {

// Derives an independent stream seed from (base, index); splitmix64 finalizer.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic sampling on top of mt19937_64.  Uniform and Gaussian variates
// are derived from raw bits so that fixed seeds reproduce byte-identical
// results regardless of the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  double uniform() {  // [0, 1)
    return double(engine_() >> 11) * 0x1.0p-53;
  }

  double gaussian() {
    const double u1 = (double(engine_() >> 11) + 0.5) * 0x1.0p-53;  // (0, 1)
    const double u2 = double(engine_() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  Complex cgaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return Complex(re, im) / std::sqrt(2.0);
  }

  ComplexMatrix gaussian_matrix(int rows, int cols) {
    ComplexMatrix g(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) g(i, j) = cgaussian();
    return g;
  }

  // Rotation-invariant (Haar) unit vector.
  ComplexVector unit_vector(int d) {
    ComplexVector v(d);
    for (int i = 0; i < d; ++i) v(i) = cgaussian();
    double nv = v.norm();
    while (nv < 1e-12) {  // astronomically unlikely; redraw to keep the contract
      for (int i = 0; i < d; ++i) v(i) = cgaussian();
      nv = v.norm();
    }
    return v / nv;
  }

  // Uniform point on the probability simplex.
  Eigen::VectorXd simplex(int k) {
    Eigen::VectorXd w(k);
    for (int i = 0; i < k; ++i) {
      double u = uniform();
      while (u <= 0.0) u = uniform();
      w(i) = -std::log(u);
    }
    return w / w.sum();
  }

  ComplexMatrix hermitian(int d) {
    ComplexMatrix g = gaussian_matrix(d, d);
    return 0.5 * (g + g.adjoint());
  }

  // Random Hermitian matrix with spectrum bounded away from zero.
  ComplexMatrix hermitian_pd(int d) {
    ComplexMatrix g = gaussian_matrix(d, d);
    return g * g.adjoint() / double(d) + 0.05 * ComplexMatrix::Identity(d, d);
  }

  // Haar-distributed unitary: QR of a Gaussian matrix with phase fixing.
  ComplexMatrix unitary(int d) {
    ComplexMatrix g = gaussian_matrix(d, d);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i) {
      const Complex rii = r(i, i);
      const double mag = std::abs(rii);
      q.col(i) *= (mag > 0.0) ? rii / mag : Complex(1.0, 0.0);
    }
    return q;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sepfact

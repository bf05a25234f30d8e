#include "sepfact/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sepfact {

void Tolerance::check() const {
  auto ok = [](double x) { return x > 0.0 && x < 1.0 && std::isfinite(x); };
  if (!ok(eps_rank) || !ok(eps_herm) || !ok(eps_match))
    throw ContractViolation("tolerances must lie strictly between 0 and 1");
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector kron_vec(const ComplexVector& e, const ComplexVector& f) {
  ComplexVector out(e.size() * f.size());
  for (Eigen::Index i = 0; i < e.size(); ++i) out.segment(i * f.size(), f.size()) = e(i) * f;
  return out;
}

ComplexMatrix reshape_vec(const ComplexVector& v, int m, int n) {
  if (m <= 0 || n <= 0 || v.size() != Eigen::Index(m) * n)
    throw ContractViolation("reshape_vec: vector length does not equal m*n");
  ComplexMatrix out(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = v(Eigen::Index(i) * n + j);
  return out;
}

ComplexVector flatten(const ComplexMatrix& mat) {
  ComplexVector out(mat.rows() * mat.cols());
  for (Eigen::Index i = 0; i < mat.rows(); ++i)
    for (Eigen::Index j = 0; j < mat.cols(); ++j) out(i * mat.cols() + j) = mat(i, j);
  return out;
}

int rank_svd(const ComplexMatrix& a, const Tolerance& tol) {
  tol.check();
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  const double cutoff = tol.eps_rank * sv(0);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++r;
  return r;
}

namespace {

double hermiticity_deviation(const ComplexMatrix& a) {
  return (a - a.adjoint()).norm();
}

bool nearly_hermitian(const ComplexMatrix& a, double eps) {
  return hermiticity_deviation(a) <= eps * std::max(1.0, a.norm());
}

// One representative index per eigenvalue cluster at resolution eps, in the
// order of the sorted values.  idx must already be sorted by value.
std::vector<int> cluster_representatives(const std::vector<Complex>& values,
                                         const std::vector<int>& idx, double eps) {
  std::vector<int> reps;
  for (std::size_t p = 0; p < idx.size(); ++p) {
    if (p == 0 || std::abs(values[idx[p]] - values[idx[p - 1]]) > eps) reps.push_back(idx[p]);
  }
  return reps;
}

}  // namespace

HermitianEig eig_hermitian(const ComplexMatrix& a, const Tolerance& tol) {
  tol.check();
  if (a.rows() != a.cols()) throw ContractViolation("eig_hermitian: matrix is not square");
  const double dev = hermiticity_deviation(a);
  if (dev > tol.eps_herm * std::max(1.0, a.norm()))
    throw ContractViolation("eig_hermitian: Hermiticity deviation " + std::to_string(dev) +
                            " exceeds eps_herm");
  ComplexMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  if (es.info() != Eigen::Success) throw ContractViolation("eig_hermitian: eigendecomposition failed");
  const Eigen::Index d = a.rows();
  HermitianEig out;
  out.values = RealVector(d);
  out.vectors = ComplexMatrix(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {  // Eigen sorts ascending; contract wants descending
    out.values(i) = es.eigenvalues()(d - 1 - i);
    out.vectors.col(i) = es.eigenvectors().col(d - 1 - i);
  }
  return out;
}

std::vector<PencilPair> pencil_eig(const ComplexMatrix& s1, const ComplexMatrix& s2, int k,
                                   const Tolerance& tol) {
  tol.check();
  if (s1.rows() != s1.cols() || s2.rows() != s2.cols() || s1.rows() != s2.rows())
    throw ContractViolation("pencil_eig: matrices must be square and of equal size");
  const Eigen::Index d = s1.rows();
  if (k < 1 || Eigen::Index(k) > d)
    throw ContractViolation("pencil_eig: k must lie between 1 and the matrix size");

  std::vector<Complex> values;
  std::vector<ComplexVector> vectors;

  bool definite_pair = false;
  if (nearly_hermitian(s1, tol.eps_herm) && nearly_hermitian(s2, tol.eps_herm)) {
    ComplexMatrix h2 = 0.5 * (s2 + s2.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es2(h2);
    if (es2.info() == Eigen::Success && es2.eigenvalues()(0) > tol.eps_rank * es2.eigenvalues()(d - 1) &&
        es2.eigenvalues()(0) > 0.0) {
      ComplexMatrix h1 = 0.5 * (s1 + s1.adjoint());
      Eigen::GeneralizedSelfAdjointEigenSolver<ComplexMatrix> ges(h1, h2);
      if (ges.info() == Eigen::Success) {
        definite_pair = true;
        for (Eigen::Index i = 0; i < d; ++i) {
          values.emplace_back(ges.eigenvalues()(i), 0.0);
          vectors.push_back(ges.eigenvectors().col(i).normalized());
        }
      }
    }
  }

  if (!definite_pair) {
    // General path: invert s2 on its numerical range and solve the standard
    // eigenproblem there.
    Eigen::JacobiSVD<ComplexMatrix> svd(s2, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (smax > 0.0 && sv(i) > tol.eps_rank * smax) ++r;
    if (r < k)
      throw DegeneratePencil("pencil_eig: numerical range of s2 has dimension " +
                             std::to_string(r) + " < k");
    ComplexMatrix q = svd.matrixU().leftCols(r);
    ComplexMatrix m = (q.adjoint() * s2 * q).partialPivLu().solve(q.adjoint() * s1 * q);
    Eigen::ComplexEigenSolver<ComplexMatrix> ces(m);
    if (ces.info() != Eigen::Success) throw DegeneratePencil("pencil_eig: eigensolver failed");
    const double finite_cap = 1.0 / tol.eps_rank;
    for (Eigen::Index i = 0; i < r; ++i) {
      Complex theta = ces.eigenvalues()(i);
      if (!std::isfinite(theta.real()) || !std::isfinite(theta.imag()) || std::abs(theta) > finite_cap)
        continue;
      values.push_back(theta);
      vectors.push_back((q * ces.eigenvectors().col(i)).normalized());
    }
  }

  std::vector<int> idx(values.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = int(i);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (values[a].real() != values[b].real()) return values[a].real() < values[b].real();
    return values[a].imag() < values[b].imag();
  });

  std::vector<int> reps = cluster_representatives(values, idx, tol.eps_rank);
  if (int(reps.size()) < k)
    throw DegeneratePencil("pencil_eig: only " + std::to_string(reps.size()) +
                           " separated eigenvalue clusters, need " + std::to_string(k));

  std::vector<PencilPair> out;
  out.reserve(k);
  for (int i = 0; i < k; ++i) out.push_back({values[reps[i]], vectors[reps[i]]});
  return out;
}

}  // namespace sepfact

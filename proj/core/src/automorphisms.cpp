#include "sepfact/automorphisms.hpp"

#include <cmath>

namespace sepfact {

namespace {

constexpr double kUnitarySlack = 1e-10;

bool is_unitary(const ComplexMatrix& u, double eps) {
  if (u.rows() != u.cols() || u.rows() < 1) return false;
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm() <= eps;
}

ComplexMatrix apply_generator(const Generator& g, const ComplexMatrix& mat, Dims dims) {
  switch (g.kind) {
    case Generator::Kind::LocalU: {
      const ComplexMatrix w = kron(g.U, g.V);
      return w * mat * w.adjoint();
    }
    case Generator::Kind::PtA:
      return partial_transpose({dims, mat}, Side::A).mat;
    case Generator::Kind::PtB:
      return partial_transpose({dims, mat}, Side::B).mat;
    case Generator::Kind::Swap: {
      const ComplexMatrix s = swap_matrix(dims.m);
      return s * mat * s;
    }
  }
  throw ContractViolation("apply: unknown generator");
}

}  // namespace

Generator Generator::local(ComplexMatrix U, ComplexMatrix V) {
  Generator g;
  g.kind = Kind::LocalU;
  g.U = std::move(U);
  g.V = std::move(V);
  return g;
}

Generator Generator::pt(Side side) {
  Generator g;
  g.kind = side == Side::A ? Kind::PtA : Kind::PtB;
  return g;
}

Generator Generator::swap() {
  Generator g;
  g.kind = Kind::Swap;
  return g;
}

AutomorphismWord::AutomorphismWord(Dims dims_, std::vector<Generator> gens_)
    : dims(dims_), gens(std::move(gens_)) {
  if (dims.m < 1 || dims.n < 1) throw ContractViolation("word dims must be positive");
  for (const auto& g : gens) {
    switch (g.kind) {
      case Generator::Kind::LocalU:
        if (g.U.rows() != dims.m || g.U.cols() != dims.m || g.V.rows() != dims.n ||
            g.V.cols() != dims.n)
          throw ContractViolation("local unitary factors must be m x m and n x n");
        if (!is_unitary(g.U, kUnitarySlack) || !is_unitary(g.V, kUnitarySlack))
          throw ContractViolation("local factors must be unitary within 1e-10");
        break;
      case Generator::Kind::Swap:
        if (dims.m != dims.n) throw ContractViolation("swap requires square dims");
        break;
      default:
        break;
    }
  }
}

ComplexMatrix swap_matrix(int m) {
  const int d = m * m;
  ComplexMatrix s = ComplexMatrix::Zero(d, d);
  for (int a = 0; a < m; ++a)
    for (int x = 0; x < m; ++x) s(x * m + a, a * m + x) = 1.0;
  return s;
}

DensityMatrix apply(const AutomorphismWord& word, const DensityMatrix& rho) {
  if (!(word.dims == rho.dims)) throw ContractViolation("apply: dims mismatch");
  const int d = rho.dims.total();
  if (rho.mat.rows() != d || rho.mat.cols() != d)
    throw ContractViolation("apply: matrix size does not match dims");
  ComplexMatrix mat = rho.mat;
  for (const auto& g : word.gens) mat = apply_generator(g, mat, word.dims);
  return {word.dims, std::move(mat)};
}

DensityMatrix apply(const CanonicalAutomorphism& canon, const DensityMatrix& rho) {
  return apply(to_word(canon), rho);
}

CanonicalAutomorphism canonicalize(const AutomorphismWord& word, const Tolerance& tol) {
  tol.check();
  bool swap_flag = false, pa = false, pb = false;
  ComplexMatrix u = ComplexMatrix::Identity(word.dims.m, word.dims.m);
  ComplexMatrix v = ComplexMatrix::Identity(word.dims.n, word.dims.n);

  // Fold each incoming generator through the normal form
  //   Swap^s after PT^(pa,pb) after LocalUnitary(u, v)
  // using: Swap LU(U,V) = LU(V,U) Swap, Swap PT_A = PT_B Swap,
  //        PT_A LU(U,V) = LU(conj U, V) PT_A (and the B-side analogue),
  //        with both PTs and Swap involutive and the PTs commuting.
  for (const auto& g : word.gens) {
    switch (g.kind) {
      case Generator::Kind::Swap:
        swap_flag = !swap_flag;
        break;
      case Generator::Kind::PtA:
      case Generator::Kind::PtB: {
        bool a_side = g.kind == Generator::Kind::PtA;
        if (swap_flag) a_side = !a_side;
        (a_side ? pa : pb) ^= true;
        break;
      }
      case Generator::Kind::LocalU: {
        ComplexMatrix w1 = g.U, w2 = g.V;
        if (swap_flag) std::swap(w1, w2);
        if (pa) w1 = w1.conjugate();
        if (pb) w2 = w2.conjugate();
        u = w1 * u;
        v = w2 * v;
        break;
      }
    }
  }

  CanonicalAutomorphism canon;
  canon.dims = word.dims;
  canon.swap_flag = swap_flag;
  canon.pt = pa ? (pb ? PtPattern::Both : PtPattern::A) : (pb ? PtPattern::B : PtPattern::None);
  canon.local = {std::move(u), std::move(v)};
  return canon;
}

AutomorphismWord to_word(const CanonicalAutomorphism& canon) {
  std::vector<Generator> gens;
  gens.push_back(Generator::local(canon.local.U, canon.local.V));
  if (canon.pt == PtPattern::A || canon.pt == PtPattern::Both) gens.push_back(Generator::pt(Side::A));
  if (canon.pt == PtPattern::B || canon.pt == PtPattern::Both) gens.push_back(Generator::pt(Side::B));
  if (canon.swap_flag) gens.push_back(Generator::swap());
  return AutomorphismWord(canon.dims, std::move(gens));
}

AutomorphismWord inverse(const AutomorphismWord& word) {
  std::vector<Generator> gens;
  gens.reserve(word.gens.size());
  for (auto it = word.gens.rbegin(); it != word.gens.rend(); ++it) {
    if (it->kind == Generator::Kind::LocalU)
      gens.push_back(Generator::local(it->U.adjoint(), it->V.adjoint()));
    else
      gens.push_back(*it);  // partial transposes and swap are involutive
  }
  return AutomorphismWord(word.dims, std::move(gens));
}

namespace {

bool phase_equal(const ComplexMatrix& a, const ComplexMatrix& b, double eps) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const Complex t = (b.adjoint() * a).trace();
  if (std::abs(t) < 0.5 * double(a.rows())) return false;  // unitaries at a common phase trace to m
  const Complex z = t / std::abs(t);
  return (a - z * b).norm() <= eps * std::max(1.0, a.norm());
}

}  // namespace

bool canonical_equal(const CanonicalAutomorphism& a, const CanonicalAutomorphism& b, double eps) {
  return a.dims == b.dims && a.swap_flag == b.swap_flag && a.pt == b.pt &&
         phase_equal(a.local.U, b.local.U, eps) && phase_equal(a.local.V, b.local.V, eps);
}

ComplexMatrix phase_normalized_matrix(const ComplexMatrix& mat) {
  Eigen::Index bi = 0, bj = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < mat.rows(); ++i)
    for (Eigen::Index j = 0; j < mat.cols(); ++j)
      if (std::abs(mat(i, j)) > best + 1e-15) {
        best = std::abs(mat(i, j));
        bi = i;
        bj = j;
      }
  if (best <= 0.0) return mat;
  return mat * (std::conj(mat(bi, bj)) / best);
}

bool extends_to_full_state_space(const CanonicalAutomorphism& canon) {
  return canon.pt == PtPattern::None || canon.pt == PtPattern::Both;
}

std::pair<DensityMatrix, double> witness_nonpositivity(Side pattern, Dims dims) {
  if (dims.m < 2 || dims.n < 2)
    throw ContractViolation("witness_nonpositivity: both factors must have dimension >= 2");
  const int d = std::min(dims.m, dims.n);
  ComplexVector psi = ComplexVector::Zero(dims.total());
  for (int i = 0; i < d; ++i) psi(i * dims.n + i) = 1.0 / std::sqrt(double(d));
  DensityMatrix rho{dims, outer(psi)};
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(partial_transpose(rho, pattern).mat);
  return {std::move(rho), es.eigenvalues()(0)};
}

}  // namespace sepfact

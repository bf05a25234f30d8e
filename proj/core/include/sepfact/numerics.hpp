#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "sepfact/errors.hpp"

namespace sepfact {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct Tolerance {
  double eps_rank = 1e-9;   // rank cutoff relative to the largest singular value
  double eps_herm = 1e-9;   // Hermiticity / positivity slack
  double eps_match = 1e-7;  // reconstruction and membership mismatch

  void check() const;  // throws ContractViolation unless all lie in (0,1)
};

// Kronecker product, first factor on the slow index:
// out(i*rows_b + k, j*cols_b + l) = a(i,j) * b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron_vec(const ComplexVector& e, const ComplexVector& f);

// Row-major reshape of v (length m*n) into an m x n matrix, M(i,j) = v(i*n + j).
// A vector is a product e (x) f exactly when the reshape has rank one.
ComplexMatrix reshape_vec(const ComplexVector& v, int m, int n);
ComplexVector flatten(const ComplexMatrix& mat);  // row-major inverse of reshape_vec

// Number of singular values above eps_rank relative to the largest; 0 for the
// zero matrix.
int rank_svd(const ComplexMatrix& a, const Tolerance& tol);

struct HermitianEig {
  RealVector values;      // descending
  ComplexMatrix vectors;  // columns ordered to match values
};

// Requires the Hermiticity deviation of a to be within eps_herm * max(1, ||a||_F).
HermitianEig eig_hermitian(const ComplexMatrix& a, const Tolerance& tol);

struct PencilPair {
  Complex value;
  ComplexVector vector;  // unit norm
};

// Solves s1 w = theta * s2 w for k eigenpairs whose eigenvalues are pairwise
// separated by more than eps_rank.  Eigenvalues are clustered at eps_rank
// resolution; fewer than k clusters raises DegeneratePencil and one
// representative pair per cluster is returned otherwise.  A Hermitian s1 with
// positive definite s2 is solved as a definite pair; other inputs go through
// inversion of s2 restricted to its numerical range.
std::vector<PencilPair> pencil_eig(const ComplexMatrix& s1, const ComplexMatrix& s2, int k,
                                   const Tolerance& tol);

}  // namespace sepfact

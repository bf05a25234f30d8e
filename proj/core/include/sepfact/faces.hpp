#pragma once

#include <vector>

#include "sepfact/states.hpp"

namespace sepfact {

// One block of a face: all states on the subspace ray (x) span(f columns).
struct FaceBlock {
  ComplexVector ray;       // left-ray representative, phase normalized, unit
  ComplexMatrix f_basis;   // n x d, the class members' right factors
  ComplexMatrix l_basis;   // mn x d, orthonormal basis of the block subspace
  int block_dim = 0;       // d, the number of right factors in the class
};

// Direct convex sum of block state spaces; the face an ensemble generates.
struct BlockSimplexFace {
  Dims dims;
  std::vector<FaceBlock> blocks;
  int q = 0;           // number of blocks
  int affine_dim = 0;  // sum of block_dim^2, minus one
};

BlockSimplexFace face_of_ensemble(const Ensemble& ens, const Tolerance& tol);

// Smallest face containing two pure product states: Equal when both factor
// rays agree, ThreeBall when exactly one agrees, Segment when neither does.
enum class FaceRelation { Equal, Segment, ThreeBall };

FaceRelation face_relation(const ProductVector& pv1, const ProductVector& pv2,
                           const Tolerance& tol);

bool is_simplex(const BlockSimplexFace& face);  // every block one-dimensional

struct FaceMembership {
  bool contains = false;
  std::vector<double> weights;  // block weights, face block order; empty if outside
};

// rho lies in the face when its support sits inside the joint block span and
// the oblique block compressions sum back to rho within eps_match.
FaceMembership face_contains(const BlockSimplexFace& face, const DensityMatrix& rho,
                             const Tolerance& tol);

}  // namespace sepfact

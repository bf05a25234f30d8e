#include "sepfact/faces.hpp"

#include <algorithm>

#include "internal.hpp"

namespace sepfact {

BlockSimplexFace face_of_ensemble(const Ensemble& ens, const Tolerance& tol) {
  tol.check();
  if (detail::f_min_singular_value(ens) <= tol.eps_rank)
    throw DependentF("right factors linearly dependent; the generated face is not a block face");

  const auto classes = detail::ray_classes(ens, tol.eps_rank);
  const int d = ens.dims.total();

  BlockSimplexFace face;
  face.dims = ens.dims;
  face.blocks.reserve(classes.size());
  for (const auto& cls : classes) {
    FaceBlock blk;
    blk.block_dim = int(cls.size());
    blk.ray = phase_normalized(ens.components[cls[0]].pv.e);
    blk.f_basis = ComplexMatrix(ens.dims.n, blk.block_dim);
    ComplexMatrix lcols(d, blk.block_dim);
    for (int j = 0; j < blk.block_dim; ++j) {
      blk.f_basis.col(j) = ens.components[cls[j]].pv.f;
      lcols.col(j) = kron_vec(blk.ray, blk.f_basis.col(j));
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(lcols);
    blk.l_basis = qr.householderQ() * ComplexMatrix::Identity(d, blk.block_dim);
    face.blocks.push_back(std::move(blk));
  }

  std::sort(face.blocks.begin(), face.blocks.end(), [](const FaceBlock& a, const FaceBlock& b) {
    if (a.block_dim != b.block_dim) return a.block_dim > b.block_dim;
    return detail::lex_compare(a.ray, b.ray) < 0;
  });

  face.q = int(face.blocks.size());
  face.affine_dim = -1;
  for (const auto& blk : face.blocks) face.affine_dim += blk.block_dim * blk.block_dim;
  return face;
}

FaceRelation face_relation(const ProductVector& pv1, const ProductVector& pv2,
                           const Tolerance& tol) {
  tol.check();
  if (pv1.e.size() != pv2.e.size() || pv1.f.size() != pv2.f.size())
    throw ContractViolation("face_relation: factor sizes must match");
  const bool e_same = same_ray(pv1.e, pv2.e, tol.eps_rank);
  const bool f_same = same_ray(pv1.f, pv2.f, tol.eps_rank);
  if (e_same && f_same) return FaceRelation::Equal;
  if (e_same || f_same) return FaceRelation::ThreeBall;
  return FaceRelation::Segment;
}

bool is_simplex(const BlockSimplexFace& face) {
  for (const auto& blk : face.blocks)
    if (blk.block_dim != 1) return false;
  return true;
}

FaceMembership face_contains(const BlockSimplexFace& face, const DensityMatrix& rho,
                             const Tolerance& tol) {
  tol.check();
  if (!(face.dims == rho.dims)) throw ContractViolation("face_contains: dims mismatch");
  const int d = rho.dims.total();
  if (rho.mat.rows() != d || rho.mat.cols() != d)
    throw ContractViolation("face_contains: matrix size does not match dims");

  int total = 0;
  for (const auto& blk : face.blocks) total += blk.block_dim;
  ComplexMatrix stacked(d, total);
  int offset = 0;
  for (const auto& blk : face.blocks) {
    stacked.middleCols(offset, blk.block_dim) = blk.l_basis;
    offset += blk.block_dim;
  }
  if (rank_svd(stacked, tol) < total)
    throw ContractViolation("face_contains: block subspaces are not independent");

  Eigen::HouseholderQR<ComplexMatrix> qr(stacked);
  const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, total);
  const ComplexMatrix compressed = q * (q.adjoint() * rho.mat * q) * q.adjoint();
  if ((rho.mat - compressed).norm() > tol.eps_match) return {false, {}};

  // Dual frame of the stacked columns gives the oblique projection onto each
  // block along the others; for face members these cut out the block states.
  const ComplexMatrix gram = stacked.adjoint() * stacked;
  const ComplexMatrix dual = gram.ldlt().solve(stacked.adjoint()).adjoint();  // dual^† stacked = I

  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  std::vector<double> weights;
  weights.reserve(face.blocks.size());
  offset = 0;
  for (const auto& blk : face.blocks) {
    const ComplexMatrix proj =
        stacked.middleCols(offset, blk.block_dim) * dual.middleCols(offset, blk.block_dim).adjoint();
    const ComplexMatrix comp = proj * rho.mat * proj.adjoint();
    weights.push_back(comp.trace().real());
    sum += comp;
    offset += blk.block_dim;
  }
  if ((sum - rho.mat).norm() > tol.eps_match) return {false, {}};
  return {true, std::move(weights)};
}

}  // namespace sepfact

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sepfact/states.hpp"

namespace sepfact {

// Uniqueness-regime certificate for an ensemble with k components:
// pairwise distinct left rays, independent right factors, k <= max(m, n).
struct VkCertificate {
  int k = 0;
  double ray_gap = 0.0;    // min over i != j of ray_distance(e_i, e_j); 1 when k = 1
  double f_min_sv = 0.0;   // smallest singular value of the stacked f columns
  double min_weight = 0.0;
  bool valid = false;
  std::string rejection;   // first violated hypothesis; empty when valid
  double margin = 0.0;     // measured value of the violated quantity
};

VkCertificate certify_vk(const Ensemble& ens, const Tolerance& tol);

struct Recovery {
  Ensemble ensemble;
  double residual = 0.0;  // Frobenius distance to the input state
  int retries = 0;        // fresh pencil combinations consumed after the first
};

// Recovers the unique product decomposition of an in-regime state from the
// matrix alone: the rank-k range of the B marginal carries a pencil of
// conditional blocks whose generalized eigenvectors are the dual f-frame.
// Throws NotInRegime when the state is structurally outside the regime and
// DegeneratePencil when every random combination stays degenerate.
Recovery recover_unique(const DensityMatrix& rho, const Tolerance& tol, std::uint64_t seed);

// Dense oracle: seeded alternating rank-one projection restarts locating the
// product vectors inside span(basis).  Results are ray-deduplicated.
// Domain guard: basis size <= 4 and dims.total() <= 16.
std::vector<ProductVector> product_vectors_in_subspace(const std::vector<ComplexVector>& basis,
                                                       Dims dims, const Tolerance& tol, int budget,
                                                       std::uint64_t seed);

struct CoarseBlock {
  double gamma = 0.0;
  DensityMatrix sigma;      // block state, supported on the block subspace
  ComplexMatrix l_basis;    // orthonormal basis of ray (x) span{f_j in class}
  ComplexVector ray;        // left-ray representative, phase normalized
};

// Grouping of components by left-ray class: rho = sum_k gamma_k sigma_k.
struct CoarseDecomposition {
  std::vector<CoarseBlock> blocks;  // descending gamma, ties lexicographic by ray
};

CoarseDecomposition coarse_decompose(const Ensemble& ens, const Tolerance& tol);

// All length-r pure decompositions of sigma arise from a seeded random
// r x rank isometry mixing the spectral decomposition; returns (weight, vector)
// pairs reproducing sigma.  r <= 64.
std::vector<std::pair<double, ComplexVector>> hjw_mixtures(const DensityMatrix& sigma, int r,
                                                           std::uint64_t mixing_seed,
                                                           const Tolerance& tol);

struct LengthBounds {
  int lower = 0;
  int upper = 0;
  std::optional<int> exact;
};

// lower = rank(rho); upper from a known ensemble or a successful recovery;
// exact when recovery succeeds or the bounds meet.  Throws Unbounded when
// nothing is known and recovery fails.
LengthBounds length_bounds(const DensityMatrix& rho, const std::optional<Ensemble>& known,
                           const Tolerance& tol, std::uint64_t seed);

// Seeded small perturbation of the factor vectors until the certificate is
// valid, keeping the induced state within trace distance delta of the input.
Ensemble perturb_to_regime(const Ensemble& ens, double delta, std::uint64_t seed,
                           const Tolerance& tol);

// Phase normalizes factors and orders components by descending weight, ties
// broken lexicographically on the normalized entries.
Ensemble canonical_ensemble(Dims dims, std::vector<WeightedProduct> components);

}  // namespace sepfact

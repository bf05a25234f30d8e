#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sepfact/decomposition.hpp"
#include "sepfact/rng.hpp"

namespace sepfact {

// k product components with sphere-uniform factors and simplex-uniform weights.
Ensemble draw_ensemble(Dims dims, int k, Rng& rng);

struct MarginQuantiles {
  double min = 0.0, q25 = 0.0, median = 0.0, q75 = 0.0, max = 0.0;
};

MarginQuantiles quantiles_of(std::vector<double> values);

struct SampleStats {
  Dims dims;
  int k = 0;
  int count = 0;
  std::uint64_t seed = 0;
  double valid_fraction = 0.0;
  MarginQuantiles ray_gap, f_min_sv, min_weight;
  int valid_count = 0;
  int recovered_count = 0;
  double recovery_success_rate = 0.0;  // among certificate-valid instances
  double max_residual = 0.0;           // among successful recoveries
  std::vector<double> ray_gap_values;  // per instance, in draw order
};

// Draws count seeded ensembles, certifies each, and attempts recovery of the
// valid ones.  Per-instance seeds are derived from (seed, index), so the
// result is independent of evaluation order.
SampleStats sample_experiment(Dims dims, int k, int count, std::uint64_t seed,
                              const Tolerance& tol);

// Static SVG bar chart of the ray-gap margins (20 bins on [0, 1]).
std::string margin_histogram_svg(const std::vector<double>& ray_gaps);

}  // namespace sepfact

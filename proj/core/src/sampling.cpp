#include "sepfact/sampling.hpp"

#include <algorithm>
#include <cstdio>

namespace sepfact {

Ensemble draw_ensemble(Dims dims, int k, Rng& rng) {
  if (k < 1) throw ContractViolation("draw_ensemble: k must be positive");
  const Eigen::VectorXd w = rng.simplex(k);
  std::vector<WeightedProduct> comps;
  comps.reserve(k);
  for (int i = 0; i < k; ++i)
    comps.push_back({w(i), ProductVector(rng.unit_vector(dims.m), rng.unit_vector(dims.n))});
  return Ensemble(dims, std::move(comps));
}

MarginQuantiles quantiles_of(std::vector<double> values) {
  if (values.empty()) return {};
  std::sort(values.begin(), values.end());
  auto at = [&](double p) {
    const double pos = p * double(values.size() - 1);
    const std::size_t lo = std::size_t(pos);
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - double(lo);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
  };
  return {values.front(), at(0.25), at(0.5), at(0.75), values.back()};
}

SampleStats sample_experiment(Dims dims, int k, int count, std::uint64_t seed,
                              const Tolerance& tol) {
  tol.check();
  if (dims.m < 2 || dims.n < 2) throw ContractViolation("sample_experiment: dims must be >= 2x2");
  if (k < 1 || k > std::max(dims.m, dims.n))
    throw ContractViolation("sample_experiment: k must lie in [1, max(m,n)]");
  if (count < 1 || count > 1000000) throw ContractViolation("sample_experiment: bad count");

  SampleStats stats;
  stats.dims = dims;
  stats.k = k;
  stats.count = count;
  stats.seed = seed;

  std::vector<double> gaps, svs, weights;
  gaps.reserve(count);
  svs.reserve(count);
  weights.reserve(count);

  for (int i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, std::uint64_t(i)));
    const Ensemble ens = draw_ensemble(dims, k, rng);
    const VkCertificate cert = certify_vk(ens, tol);
    gaps.push_back(cert.ray_gap);
    svs.push_back(cert.f_min_sv);
    weights.push_back(cert.min_weight);
    if (!cert.valid) continue;
    ++stats.valid_count;
    try {
      const Recovery rec =
          recover_unique(density_of(ens), tol, derive_seed(seed, std::uint64_t(count) + i));
      ++stats.recovered_count;
      stats.max_residual = std::max(stats.max_residual, rec.residual);
    } catch (const RegimeRejection&) {
    }
  }

  stats.valid_fraction = double(stats.valid_count) / double(count);
  stats.recovery_success_rate =
      stats.valid_count > 0 ? double(stats.recovered_count) / double(stats.valid_count) : 0.0;
  stats.ray_gap_values = gaps;
  stats.ray_gap = quantiles_of(std::move(gaps));
  stats.f_min_sv = quantiles_of(std::move(svs));
  stats.min_weight = quantiles_of(std::move(weights));
  return stats;
}

std::string margin_histogram_svg(const std::vector<double>& ray_gaps) {
  constexpr int kBins = 20;
  constexpr int kWidth = 640, kHeight = 360, kPad = 40;
  int bins[kBins] = {0};
  for (double g : ray_gaps) {
    int b = int(std::min(std::max(g, 0.0), 1.0) * kBins);
    if (b == kBins) b = kBins - 1;
    ++bins[b];
  }
  int peak = 1;
  for (int b : bins) peak = std::max(peak, b);

  std::string svg;
  char buf[256];
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"360\" "
         "viewBox=\"0 0 640 360\">\n";
  svg += "<rect width=\"640\" height=\"360\" fill=\"white\"/>\n";
  svg += "<text x=\"320\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">ray gap distribution</text>\n";
  const double span = double(kWidth - 2 * kPad) / kBins;
  for (int b = 0; b < kBins; ++b) {
    const double h = double(bins[b]) / double(peak) * (kHeight - 2 * kPad);
    std::snprintf(buf, sizeof(buf),
                  "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"#4477aa\"/>\n",
                  kPad + b * span, kHeight - kPad - h, span - 2.0, h);
    svg += buf;
  }
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n", kPad,
                kHeight - kPad, kWidth - kPad, kHeight - kPad);
  svg += buf;
  svg += "<text x=\"40\" y=\"340\" font-family=\"sans-serif\" font-size=\"12\">0</text>\n";
  svg += "<text x=\"600\" y=\"340\" text-anchor=\"end\" font-family=\"sans-serif\" "
         "font-size=\"12\">1</text>\n";
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"12\">peak %d</text>\n",
                kPad, kPad - 10, peak);
  svg += buf;
  svg += "</svg>\n";
  return svg;
}

}  // namespace sepfact

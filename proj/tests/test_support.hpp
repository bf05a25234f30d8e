#pragma once

// Shared test helpers.  The oracles here are deliberately naive re-derivations
// (index loops, brute-force search) so the library is checked against an
// independent route, not against itself.

#include <algorithm>
#include <vector>

#include "sepfact/decomposition.hpp"
#include "sepfact/rng.hpp"
#include "sepfact/sampling.hpp"
#include "sepfact/states.hpp"

namespace testsup {

using namespace sepfact;

inline ComplexMatrix naive_kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline ComplexMatrix naive_marginal(const ComplexMatrix& rho, int m, int n, Side keep) {
  if (keep == Side::A) {
    ComplexMatrix out = ComplexMatrix::Zero(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int x = 0; x < n; ++x) out(a, b) += rho(a * n + x, b * n + x);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int a = 0; a < m; ++a) out(x, y) += rho(a * n + x, a * n + y);
  return out;
}

inline ComplexMatrix naive_partial_transpose(const ComplexMatrix& rho, int m, int n, Side side) {
  ComplexMatrix out(m * n, m * n);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          if (side == Side::A)
            out(a * n + x, b * n + y) = rho(b * n + x, a * n + y);
          else
            out(a * n + x, b * n + y) = rho(a * n + y, b * n + x);
        }
  return out;
}

// Redraws until every certificate margin clears min_margin.  Margins of a
// sphere-uniform draw are positive almost surely, so this terminates fast.
inline Ensemble draw_margin_ensemble(Dims dims, int k, double min_margin, Rng& rng,
                                     const Tolerance& tol) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Ensemble ens = draw_ensemble(dims, k, rng);
    const VkCertificate cert = certify_vk(ens, tol);
    if (cert.valid && cert.ray_gap >= min_margin && cert.f_min_sv >= min_margin &&
        cert.min_weight >= min_margin)
      return ens;
  }
  throw std::runtime_error("draw_margin_ensemble: margin never reached");
}

struct MatchReport {
  bool matched = false;           // one-to-one pairing found
  double worst_fidelity = 0.0;    // min over pairs of |<joint, joint'>|^2
  double worst_weight_err = 1.0;  // max over pairs of |weight - weight'|
};

// Greedy ray matching between two ensembles of equal size.
inline MatchReport match_ensembles(const Ensemble& truth, const Ensemble& found) {
  MatchReport rep;
  if (truth.components.size() != found.components.size()) return rep;
  const int k = truth.size();
  std::vector<bool> used(k, false);
  rep.worst_fidelity = 1.0;
  rep.worst_weight_err = 0.0;
  for (int i = 0; i < k; ++i) {
    const ComplexVector ti = truth.components[i].pv.joint();
    int best = -1;
    double best_fid = -1.0;
    for (int j = 0; j < k; ++j) {
      if (used[j]) continue;
      const double fid = std::norm(ti.dot(found.components[j].pv.joint()));
      if (fid > best_fid) {
        best_fid = fid;
        best = j;
      }
    }
    used[best] = true;
    rep.worst_fidelity = std::min(rep.worst_fidelity, best_fid);
    rep.worst_weight_err = std::max(
        rep.worst_weight_err, std::abs(truth.components[i].weight - found.components[best].weight));
  }
  rep.matched = true;
  return rep;
}

// Brute-force product test: the row-major reshape of a product vector is
// rank one, checked through its second singular value.
inline bool is_product_vector(const ComplexVector& v, Dims dims, double eps) {
  Eigen::JacobiSVD<ComplexMatrix> svd(reshape_vec(v, dims.m, dims.n));
  return svd.singularValues()(std::min(dims.m, dims.n) > 1 ? 1 : 0) <= eps ||
         std::min(dims.m, dims.n) == 1;
}

}  // namespace testsup

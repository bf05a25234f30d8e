#include "sepfact/decomposition.hpp"

#include <algorithm>
#include <cmath>

#include "sepfact/rng.hpp"
#include "internal.hpp"

namespace sepfact {

namespace detail {

int lex_compare(const ComplexVector& a, const ComplexVector& b) {
  for (Eigen::Index i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real() ? -1 : 1;
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag() ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

bool component_less(const WeightedProduct& a, const WeightedProduct& b) {
  if (a.weight != b.weight) return a.weight > b.weight;
  const int ce = lex_compare(a.pv.e, b.pv.e);
  if (ce != 0) return ce < 0;
  return lex_compare(a.pv.f, b.pv.f) < 0;
}

std::vector<std::vector<int>> ray_classes(const Ensemble& ens, double eps) {
  const int k = ens.size();
  std::vector<int> parent(k);
  for (int i = 0; i < k; ++i) parent[i] = i;
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (same_ray(ens.components[i].pv.e, ens.components[j].pv.e, eps)) {
        const int ri = find(i), rj = find(j);
        if (ri != rj) parent[rj] = ri;
      }
  std::vector<std::vector<int>> classes;
  std::vector<int> root_to_class(k, -1);
  for (int i = 0; i < k; ++i) {
    const int r = find(i);
    if (root_to_class[r] < 0) {
      root_to_class[r] = int(classes.size());
      classes.emplace_back();
    }
    classes[root_to_class[r]].push_back(i);
  }
  for (auto& cls : classes)
    std::sort(cls.begin(), cls.end(), [&](int a, int b) {
      return component_less(ens.components[a], ens.components[b]);
    });
  return classes;
}

ComplexMatrix stacked_f(const Ensemble& ens) {
  ComplexMatrix f(ens.dims.n, ens.size());
  for (int i = 0; i < ens.size(); ++i) f.col(i) = ens.components[i].pv.f;
  return f;
}

double f_min_singular_value(const Ensemble& ens) {
  Eigen::JacobiSVD<ComplexMatrix> svd(stacked_f(ens));
  const auto& sv = svd.singularValues();
  return sv(sv.size() - 1);
}

}  // namespace detail

Ensemble canonical_ensemble(Dims dims, std::vector<WeightedProduct> components) {
  for (auto& c : components) {
    c.pv.e = phase_normalized(c.pv.e);
    c.pv.f = phase_normalized(c.pv.f);
  }
  std::sort(components.begin(), components.end(), detail::component_less);
  return Ensemble(dims, std::move(components));
}

VkCertificate certify_vk(const Ensemble& ens, const Tolerance& tol) {
  tol.check();
  const int k = ens.size();
  const int kmax = std::max(ens.dims.m, ens.dims.n);

  VkCertificate cert;
  cert.k = k;
  cert.ray_gap = 1.0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      cert.ray_gap = std::min(cert.ray_gap,
                              ray_distance(ens.components[i].pv.e, ens.components[j].pv.e));
  cert.f_min_sv = detail::f_min_singular_value(ens);
  cert.min_weight = ens.components[0].weight;
  for (const auto& c : ens.components) cert.min_weight = std::min(cert.min_weight, c.weight);

  if (k > kmax) {
    cert.rejection = "k exceeds max(m,n)";
    cert.margin = double(k - kmax);
  } else if (cert.ray_gap <= tol.eps_rank) {
    cert.rejection = "left rays not pairwise distinct";
    cert.margin = cert.ray_gap;
  } else if (cert.f_min_sv <= tol.eps_rank) {
    cert.rejection = "right factors linearly dependent";
    cert.margin = cert.f_min_sv;
  } else if (!(cert.min_weight > 0.0)) {
    cert.rejection = "weight not positive";
    cert.margin = cert.min_weight;
  } else {
    cert.valid = true;
  }
  return cert;
}

Recovery recover_unique(const DensityMatrix& rho, const Tolerance& tol, std::uint64_t seed) {
  tol.check();
  const int m = rho.dims.m, n = rho.dims.n, d = m * n;
  if (m < 1 || n < 1 || rho.mat.rows() != d || rho.mat.cols() != d)
    throw ContractViolation("recover_unique: matrix size does not match dims");

  const ComplexMatrix rho_b = marginal(rho, Side::B);
  const int k = rank_svd(rho_b, tol);
  const int kmax = std::max(m, n);
  if (k > kmax)
    throw NotInRegime("B-marginal rank " + std::to_string(k) + " exceeds max(m,n) = " +
                      std::to_string(kmax));
  const int full_rank = rank_svd(rho.mat, tol);
  if (full_rank != k)
    throw NotInRegime("state rank " + std::to_string(full_rank) + " does not match B-marginal rank " +
                      std::to_string(k) + "; an in-regime state has exactly k independent product components");

  const HermitianEig eb = eig_hermitian(rho_b, tol);
  const ComplexMatrix range = eb.vectors.leftCols(k);
  const ComplexMatrix rho_b_r = range.adjoint() * rho_b * range;
  auto block = [&](int a, int b) { return rho.mat.block(a * n, b * n, n, n); };

  struct Attempt {
    Ensemble ens;
    double residual;
    int index;
  };
  std::optional<Attempt> best;
  bool pencil_ever_succeeded = false;
  constexpr int kMaxAttempts = 9;  // first combination plus 8 retries

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    const ComplexMatrix h1 = rng.hermitian(m);
    const ComplexMatrix h2 = rng.hermitian_pd(m);
    ComplexMatrix s1 = ComplexMatrix::Zero(n, n);
    ComplexMatrix s2 = ComplexMatrix::Zero(n, n);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        s1.noalias() += h1(a, b) * block(a, b);
        s2.noalias() += h2(a, b) * block(a, b);
      }

    std::vector<PencilPair> pairs;
    try {
      pairs = pencil_eig(range.adjoint() * s1 * range, range.adjoint() * s2 * range, k, tol);
    } catch (const DegeneratePencil&) {
      continue;
    }
    pencil_ever_succeeded = true;

    // The pencil eigenvectors are dual to the f-frame in range coordinates;
    // pushing them through the restricted marginal recovers the f_i rays.
    ComplexMatrix fcols(n, k);
    bool failed = false;
    for (int i = 0; i < k; ++i) {
      const ComplexVector f = range * (rho_b_r * pairs[i].vector);
      const double nf = f.norm();
      if (nf < 1e-14) {
        failed = true;
        break;
      }
      fcols.col(i) = f / nf;
    }
    if (failed) continue;

    const ComplexMatrix gram = fcols.adjoint() * fcols;
    Eigen::FullPivLU<ComplexMatrix> lu(gram);
    if (!lu.isInvertible()) continue;
    const ComplexMatrix duals = lu.solve(fcols.adjoint()).adjoint();  // duals^† fcols = I

    std::vector<WeightedProduct> comps;
    comps.reserve(k);
    for (int i = 0; i < k && !failed; ++i) {
      ComplexMatrix cond(m, m);  // h_i^† rho_ab h_i = lambda_i e_i e_i^†
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          cond(a, b) = (duals.col(i).adjoint() * block(a, b) * duals.col(i))(0, 0);
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (cond + cond.adjoint()));
      if (es.info() != Eigen::Success || es.eigenvalues()(m - 1) <= 1e-14) {
        failed = true;
        break;
      }
      comps.push_back({1.0, ProductVector(es.eigenvectors().col(m - 1), fcols.col(i))});
    }
    if (failed) continue;

    // Least-squares weight polish over the recovered rank-one products.
    ComplexMatrix phi(Eigen::Index(d) * d, k);
    for (int i = 0; i < k; ++i) phi.col(i) = flatten(outer(comps[i].pv.joint()));
    const ComplexVector sol = phi.colPivHouseholderQr().solve(flatten(rho.mat));
    double wsum = 0.0;
    for (int i = 0; i < k; ++i) {
      const double w = sol(i).real();
      if (!(w > 0.0)) {
        failed = true;
        break;
      }
      comps[i].weight = w;
      wsum += w;
    }
    if (failed) continue;
    for (auto& c : comps) c.weight /= wsum;

    Ensemble ens = canonical_ensemble(rho.dims, std::move(comps));
    const double residual = (density_of(ens).mat - rho.mat).norm();
    if (!certify_vk(ens, tol).valid) continue;
    if (!best || residual < best->residual) best = Attempt{std::move(ens), residual, attempt};
    if (best->residual <= 1e-10) break;
  }

  if (!best) {
    if (!pencil_ever_succeeded)
      throw DegeneratePencil("pencil degenerate on every combination after 8 retries");
    throw NotInRegime("no recovered ensemble passed certificate validation");
  }
  if (best->residual > tol.eps_match)
    throw NotInRegime("reconstruction residual " + std::to_string(best->residual) +
                      " exceeds eps_match");
  return {std::move(best->ens), best->residual, best->index};
}

std::vector<ProductVector> product_vectors_in_subspace(const std::vector<ComplexVector>& basis,
                                                       Dims dims, const Tolerance& tol, int budget,
                                                       std::uint64_t seed) {
  tol.check();
  const int m = dims.m, n = dims.n, mn = dims.total();
  if (basis.empty()) throw ContractViolation("subspace basis must be non-empty");
  if (int(basis.size()) > 4 || mn > 16)
    throw ContractViolation("oracle domain: subspace dimension <= 4 and mn <= 16");
  if (budget < 1) throw ContractViolation("restart budget must be positive");
  const int dsub = int(basis.size());
  ComplexMatrix b(mn, dsub);
  for (int j = 0; j < dsub; ++j) {
    if (basis[j].size() != mn) throw ContractViolation("basis vector length must equal m*n");
    b.col(j) = basis[j];
  }
  if (rank_svd(b, tol) < dsub) throw ContractViolation("basis vectors must be linearly independent");
  Eigen::HouseholderQR<ComplexMatrix> qr(b);
  const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(mn, dsub);

  struct Found {
    ProductVector pv;
    ComplexVector joint;
  };
  std::vector<Found> found;

  const auto offspan = [&q](const ComplexVector& x) -> ComplexVector {
    return x - q * (q.adjoint() * x);
  };

  // Top eigenvector of a Gram matrix, but when the top eigenvalue is
  // degenerate (a continuum of optimal factors), stay close to the current
  // iterate by projecting it onto the near-top eigenspace. Restart diversity
  // then survives, so a continuum is reported as many distinct rays.
  const auto ascend_step = [](const ComplexMatrix& gram, const ComplexVector& current) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram);
    const auto& vals = es.eigenvalues();
    const int d = int(vals.size());
    const double top = vals(d - 1);
    int lo = d - 1;
    while (lo > 0 && top - vals(lo - 1) <= 1e-12 * std::max(1.0, top)) --lo;
    ComplexVector next = ComplexVector::Zero(d);
    for (int i = lo; i < d; ++i)
      next += es.eigenvectors().col(i) * es.eigenvectors().col(i).dot(current);
    const double len = next.norm();
    if (len > 1e-8) return ComplexVector(next / len);
    return ComplexVector(es.eigenvectors().col(d - 1));
  };

  for (int restart = 0; restart < budget; ++restart) {
    Rng rng(derive_seed(seed, restart));
    ComplexVector coeff(dsub);
    for (int i = 0; i < dsub; ++i) coeff(i) = rng.cgaussian();
    if (coeff.norm() < 1e-12) continue;
    const ComplexVector v = (q * coeff).normalized();

    // Initial factors: rank-one truncation of the random subspace vector.
    Eigen::JacobiSVD<ComplexMatrix> init(reshape_vec(v, m, n),
                                         Eigen::ComputeThinU | Eigen::ComputeThinV);
    ComplexVector e = init.matrixU().col(0);
    ComplexVector f = init.matrixV().col(0).conjugate();

    // Exploration: maximize the in-span energy s(e, f) = |q^* (e (x) f)|^2 by
    // alternating factors; each half-step is a top-singular-vector problem and
    // globally optimal given the other factor, so s climbs monotonically.
    double s = 0.0;
    for (int it = 0; it < 200; ++it) {
      ComplexMatrix y(dsub, m);  // y = q^* (I_m (x) f), so s = |y e|^2
      for (int a = 0; a < m; ++a) y.col(a) = q.middleRows(a * n, n).adjoint() * f;
      e = ascend_step(y.adjoint() * y, e);

      ComplexMatrix z = ComplexMatrix::Zero(dsub, n);  // z = q^* (e (x) I_n)
      for (int a = 0; a < m; ++a) z += e(a) * q.middleRows(a * n, n).adjoint();
      f = ascend_step(z.adjoint() * z, f);

      const double next = (z * f).squaredNorm();
      const double gain = next - s;
      s = next;
      if (it >= 2 && gain < 1e-13) break;
    }

    // Refinement: Gauss-Newton on (I - qq^*)(e (x) f) = 0. The linearized step
    // is a minimal-norm least-squares solve, quadratically convergent near any
    // transversal intersection of the product variety with the subspace.
    for (int it = 0; it < 25; ++it) {
      const ComplexVector r = offspan(kron_vec(e, f));
      if (r.norm() <= 1e-13) break;
      ComplexMatrix jac(mn, m + n);
      for (int a = 0; a < m; ++a) {
        ComplexVector unit = ComplexVector::Zero(m);
        unit(a) = 1.0;
        jac.col(a) = offspan(kron_vec(unit, f));
      }
      for (int x = 0; x < n; ++x) {
        ComplexVector unit = ComplexVector::Zero(n);
        unit(x) = 1.0;
        jac.col(m + x) = offspan(kron_vec(e, unit));
      }
      Eigen::JacobiSVD<ComplexMatrix> jsvd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
      jsvd.setThreshold(1e-8);  // the step has phase/scale null directions
      const ComplexVector step = jsvd.solve(-r);
      e = (e + step.head(m)).normalized();
      f = (f + step.tail(n)).normalized();
    }

    const ComplexVector cand = kron_vec(e, f);
    if (offspan(cand).norm() > tol.eps_match) continue;  // not in the span

    bool dup = false;
    for (const auto& g : found)
      if (std::abs(g.joint.dot(cand)) >= 1.0 - 1e-6) {
        dup = true;
        break;
      }
    if (dup) continue;
    found.push_back({ProductVector(phase_normalized(e), phase_normalized(f)), cand});
  }

  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) {
    return detail::component_less({1.0, a.pv}, {1.0, b.pv});
  });
  std::vector<ProductVector> out;
  out.reserve(found.size());
  for (auto& g : found) out.push_back(std::move(g.pv));
  return out;
}

CoarseDecomposition coarse_decompose(const Ensemble& ens, const Tolerance& tol) {
  tol.check();
  if (detail::f_min_singular_value(ens) <= tol.eps_rank)
    throw DependentF("right factors linearly dependent; block decomposition is not unique");

  const auto classes = detail::ray_classes(ens, tol.eps_rank);
  CoarseDecomposition out;
  out.blocks.reserve(classes.size());
  for (const auto& cls : classes) {
    CoarseBlock blk;
    blk.gamma = 0.0;
    for (int i : cls) blk.gamma += ens.components[i].weight;
    blk.ray = phase_normalized(ens.components[cls[0]].pv.e);

    const int d = ens.dims.total();
    ComplexMatrix sigma = ComplexMatrix::Zero(d, d);
    ComplexMatrix lcols(d, int(cls.size()));
    for (std::size_t j = 0; j < cls.size(); ++j) {
      const auto& c = ens.components[cls[j]];
      const ComplexVector joint = c.pv.joint();
      sigma.noalias() += (c.weight / blk.gamma) * (joint * joint.adjoint());
      lcols.col(Eigen::Index(j)) = kron_vec(blk.ray, c.pv.f);
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(lcols);
    blk.l_basis = qr.householderQ() * ComplexMatrix::Identity(d, int(cls.size()));
    blk.sigma = DensityMatrix{ens.dims, std::move(sigma)};
    out.blocks.push_back(std::move(blk));
  }

  std::sort(out.blocks.begin(), out.blocks.end(), [](const CoarseBlock& a, const CoarseBlock& b) {
    if (a.gamma != b.gamma) return a.gamma > b.gamma;
    return detail::lex_compare(a.ray, b.ray) < 0;
  });
  return out;
}

std::vector<std::pair<double, ComplexVector>> hjw_mixtures(const DensityMatrix& sigma, int r,
                                                           std::uint64_t mixing_seed,
                                                           const Tolerance& tol) {
  tol.check();
  if (r < 1 || r > 64) throw ContractViolation("hjw_mixtures: r must lie in [1, 64]");
  const int d = sigma.dims.total();
  if (sigma.mat.rows() != d || sigma.mat.cols() != d)
    throw ContractViolation("hjw_mixtures: matrix size does not match dims");

  const HermitianEig eig = eig_hermitian(sigma.mat, tol);
  if (!(eig.values(0) > 0.0)) throw ContractViolation("hjw_mixtures: sigma must be nonzero");
  int rank = 0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    if (eig.values(i) > tol.eps_rank * eig.values(0)) ++rank;
  if (r < rank)
    throw RankTooHigh("requested " + std::to_string(r) + " elements; rank is " + std::to_string(rank));

  Rng rng(mixing_seed);
  Eigen::HouseholderQR<ComplexMatrix> qr(rng.gaussian_matrix(r, rank));
  const ComplexMatrix iso = qr.householderQ() * ComplexMatrix::Identity(r, rank);  // iso^† iso = I

  std::vector<std::pair<double, ComplexVector>> out;
  out.reserve(r);
  for (int j = 0; j < r; ++j) {
    ComplexVector psi = ComplexVector::Zero(d);
    for (int l = 0; l < rank; ++l)
      psi += iso(j, l) * std::sqrt(std::max(0.0, eig.values(l))) * eig.vectors.col(l);
    const double w = psi.squaredNorm();
    if (w < 1e-30) {
      out.emplace_back(0.0, eig.vectors.col(0));
    } else {
      out.emplace_back(w, psi / std::sqrt(w));
    }
  }
  return out;
}

LengthBounds length_bounds(const DensityMatrix& rho, const std::optional<Ensemble>& known,
                           const Tolerance& tol, std::uint64_t seed) {
  tol.check();
  const int lower = rank_svd(rho.mat, tol);
  std::optional<int> upper;
  if (known) {
    if (!(known->dims == rho.dims)) throw ContractViolation("length_bounds: known ensemble dims mismatch");
    if ((density_of(*known).mat - rho.mat).norm() > tol.eps_match)
      throw ContractViolation("length_bounds: known ensemble does not reproduce rho within eps_match");
    upper = known->size();
  }

  std::optional<int> exact;
  try {
    const Recovery rec = recover_unique(rho, tol, seed);
    const int k = rec.ensemble.size();
    upper = upper ? std::min(*upper, k) : k;
    exact = k;
  } catch (const RegimeRejection&) {
    if (!upper) throw Unbounded("no known ensemble and recovery is outside the regime");
  }
  if (!exact && lower == *upper) exact = lower;
  return {lower, *upper, exact};
}

Ensemble perturb_to_regime(const Ensemble& ens, double delta, std::uint64_t seed,
                           const Tolerance& tol) {
  tol.check();
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw ContractViolation("perturb_to_regime: delta must be positive");
  if (ens.size() > std::max(ens.dims.m, ens.dims.n))
    throw NotInRegime("perturb_to_regime: k exceeds max(m,n); no nearby in-regime ensemble");
  if (certify_vk(ens, tol).valid) return ens;

  const ComplexMatrix original = density_of(ens).mat;
  for (int attempt = 0; attempt < 40; ++attempt) {
    const double eps = 0.25 * delta * std::pow(0.5, attempt / 4);
    Rng rng(derive_seed(seed, attempt));
    std::vector<WeightedProduct> comps;
    comps.reserve(ens.size());
    for (const auto& c : ens.components) {
      const ComplexVector e = (c.pv.e + eps * rng.unit_vector(ens.dims.m)).normalized();
      const ComplexVector f = (c.pv.f + eps * rng.unit_vector(ens.dims.n)).normalized();
      comps.push_back({c.weight, ProductVector(e, f)});
    }
    Ensemble cand(ens.dims, std::move(comps));
    if (!certify_vk(cand, tol).valid) continue;
    if (trace_distance(density_of(cand).mat, original) <= delta) return cand;
  }
  throw NotInRegime("perturb_to_regime: no valid certificate within trace distance delta");
}

}  // namespace sepfact

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sepfact/rng.hpp"
#include "sepfact/states.hpp"
#include "test_support.hpp"

using namespace sepfact;

namespace {

ComplexVector basis_vec(int d, int i) {
  ComplexVector v = ComplexVector::Zero(d);
  v(i) = 1;
  return v;
}

Ensemble diag_pair_ensemble() {
  std::vector<WeightedProduct> comps;
  comps.push_back({0.5, ProductVector(basis_vec(2, 0), basis_vec(2, 0))});
  comps.push_back({0.5, ProductVector(basis_vec(2, 1), basis_vec(2, 1))});
  return Ensemble({2, 2}, std::move(comps));
}

DensityMatrix bell_state() {
  ComplexVector bell(4);
  bell << 1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
  return {{2, 2}, outer(bell)};
}

}  // namespace

TEST_CASE("ProductVector enforces unit factors") {
  ComplexVector e(2), f(2);
  e << 2, 0;
  f << 1, 0;
  CHECK_THROWS_AS(ProductVector(e, f), ContractViolation);
}

TEST_CASE("Ensemble enforces weights and dims") {
  auto comps = diag_pair_ensemble().components;
  CHECK_THROWS_AS(Ensemble({2, 3}, comps), ContractViolation);  // f length mismatch
  comps[0].weight = 0.7;                                        // sum != 1
  CHECK_THROWS_AS(Ensemble({2, 2}, comps), ContractViolation);
  comps[0].weight = -0.5;
  CHECK_THROWS_AS(Ensemble({2, 2}, comps), ContractViolation);
}

TEST_CASE("density_of single component is the product projector") {
  std::vector<WeightedProduct> comps;
  comps.push_back({1.0, ProductVector(basis_vec(2, 0), basis_vec(2, 0))});
  const DensityMatrix rho = density_of(Ensemble({2, 2}, std::move(comps)));
  ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
  expect(0, 0) = 1;
  CHECK((rho.mat - expect).norm() == 0.0);
}

TEST_CASE("density_of the orthogonal pair is diag(1/2,0,0,1/2)") {
  const DensityMatrix rho = density_of(diag_pair_ensemble());
  ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
  expect(0, 0) = 0.5;
  expect(3, 3) = 0.5;
  CHECK((rho.mat - expect).norm() <= 1e-15);
}

TEST_CASE("density_of matches a naive kron accumulation on random ensembles") {
  Rng rng(21);
  const Ensemble ens = draw_ensemble({3, 4}, 3, rng);
  ComplexMatrix expect = ComplexMatrix::Zero(12, 12);
  for (const auto& c : ens.components) {
    const ComplexMatrix pe = outer(c.pv.e), pf = outer(c.pv.f);
    expect += c.weight * testsup::naive_kron(pe, pf);
  }
  CHECK((density_of(ens).mat - expect).norm() <= 1e-13);
}

TEST_CASE("marginal traces out the other factor") {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 1;
  const DensityMatrix rho{{2, 2}, m};
  ComplexMatrix ma = marginal(rho, Side::A);
  ComplexMatrix mb = marginal(rho, Side::B);
  CHECK((ma - testsup::naive_marginal(m, 2, 2, Side::A)).norm() == 0.0);
  CHECK(ma(0, 0) == Complex(1, 0));
  CHECK((mb - ma).norm() == 0.0);
}

TEST_CASE("marginal of the maximally entangled state is maximally mixed") {
  const DensityMatrix rho = bell_state();
  CHECK((marginal(rho, Side::A) - ComplexMatrix::Identity(2, 2) * 0.5).norm() <= 1e-15);
  CHECK((marginal(rho, Side::B) - ComplexMatrix::Identity(2, 2) * 0.5).norm() <= 1e-15);
}

TEST_CASE("marginal agrees with the index oracle on random states") {
  Rng rng(22);
  const Ensemble ens = draw_ensemble({3, 2}, 2, rng);
  const DensityMatrix rho = density_of(ens);
  CHECK((marginal(rho, Side::A) - testsup::naive_marginal(rho.mat, 3, 2, Side::A)).norm() <= 1e-13);
  CHECK((marginal(rho, Side::B) - testsup::naive_marginal(rho.mat, 3, 2, Side::B)).norm() <= 1e-13);
}

TEST_CASE("partial transpose of the maximally entangled state") {
  const DensityMatrix pt = partial_transpose(bell_state(), Side::A);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(pt.mat);
  CHECK(es.eigenvalues()(0) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(es.eigenvalues()(3) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("partial transpose obeys the index oracle and composes to transpose") {
  Rng rng(23);
  const DensityMatrix rho = density_of(draw_ensemble({2, 3}, 2, rng));
  const DensityMatrix pa = partial_transpose(rho, Side::A);
  const DensityMatrix pb = partial_transpose(rho, Side::B);
  CHECK((pa.mat - testsup::naive_partial_transpose(rho.mat, 2, 3, Side::A)).norm() == 0.0);
  CHECK((pb.mat - testsup::naive_partial_transpose(rho.mat, 2, 3, Side::B)).norm() == 0.0);
  CHECK((partial_transpose(pa, Side::B).mat - rho.mat.transpose()).norm() == 0.0);
  CHECK((partial_transpose(pa, Side::A).mat - rho.mat).norm() == 0.0);  // involution
}

TEST_CASE("validate_state accepts the maximally mixed state") {
  CHECK_NOTHROW(validate_state(ComplexMatrix::Identity(4, 4) * 0.25, {2, 2}, Tolerance{}));
}

TEST_CASE("validate_state reports the negative eigenvalue") {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = -0.001;
  m(2, 2) = 0.001;
  try {
    validate_state(m, {2, 2}, Tolerance{});
    FAIL("expected NotPositive");
  } catch (const NotPositive& e) {
    CHECK(e.deviation == doctest::Approx(0.001).epsilon(1e-9));
  }
}

TEST_CASE("validate_state diagnoses in the fixed order") {
  // Hermitian -> trace -> positivity.  Trace is exactly 1 here, so the
  // negative spectrum is what gets reported.
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 0.6;
  m(1, 1) = 0.6;
  m(2, 2) = -0.1;
  m(3, 3) = -0.1;
  CHECK_THROWS_AS(validate_state(m, {2, 2}, Tolerance{}), NotPositive);

  ComplexMatrix off_trace = m * 2.0;  // trace 2: reported before positivity
  CHECK_THROWS_AS(validate_state(off_trace, {2, 2}, Tolerance{}), TraceNotOne);

  ComplexMatrix nh = m;
  nh(0, 1) = 1;  // breaks Hermiticity: reported first
  CHECK_THROWS_AS(validate_state(nh, {2, 2}, Tolerance{}), NotHermitian);
}

TEST_CASE("phase_normalized pins the largest entry real positive") {
  Rng rng(24);
  for (int t = 0; t < 20; ++t) {
    const ComplexVector v = rng.unit_vector(4);
    const ComplexVector w = phase_normalized(v);
    int big = 0;
    for (int i = 1; i < 4; ++i)
      if (std::abs(w(i)) > std::abs(w(big))) big = i;
    CHECK(w(big).imag() == doctest::Approx(0).epsilon(1e-14));
    CHECK(w(big).real() > 0);
    CHECK(std::abs(std::abs(v.dot(w)) - 1.0) <= 1e-12);  // same ray
  }
}

TEST_CASE("ray_distance is a phase-invariant sine") {
  ComplexVector a = basis_vec(2, 0);
  ComplexVector b(2);
  b << std::cos(0.3), std::sin(0.3);
  CHECK(ray_distance(a, b) == doctest::Approx(std::sin(0.3)).epsilon(1e-12));
  CHECK(ray_distance(a, a * Complex(0, 1)) == doctest::Approx(0).epsilon(1e-12));
  CHECK(same_ray(a, a * std::polar(1.0, 2.2), 1e-10));
  CHECK_FALSE(same_ray(a, b, 1e-10));
}

TEST_CASE("trace_distance basics") {
  const DensityMatrix rho = density_of(diag_pair_ensemble());
  CHECK(trace_distance(rho.mat, rho.mat) == doctest::Approx(0).epsilon(1e-14));
  ComplexMatrix other = ComplexMatrix::Zero(4, 4);
  other(0, 0) = 1;
  // eigenvalues of the difference: (1/2, 0, 0, -1/2) -> distance 1/2
  CHECK(trace_distance(rho.mat, other) == doctest::Approx(0.5).epsilon(1e-12));
}

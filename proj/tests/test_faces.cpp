#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sepfact/decomposition.hpp"
#include "sepfact/faces.hpp"
#include "sepfact/rng.hpp"
#include "test_support.hpp"

using namespace sepfact;

namespace {

ComplexVector basis_vec(int d, int i) {
  ComplexVector v = ComplexVector::Zero(d);
  v(i) = 1;
  return v;
}

}  // namespace

TEST_CASE("two distinct rays with independent right factors give a segment") {
  const Tolerance tol;
  Rng rng(51);
  const Ensemble ens = testsup::draw_margin_ensemble({2, 2}, 2, 0.1, rng, tol);
  const BlockSimplexFace face = face_of_ensemble(ens, tol);
  CHECK(face.q == 2);
  CHECK(face.affine_dim == 1);
  CHECK(is_simplex(face));
  for (const auto& blk : face.blocks) CHECK(blk.block_dim == 1);
}

TEST_CASE("a shared ray with two right factors gives a 3-ball block") {
  std::vector<WeightedProduct> comps;
  Rng rng(52);
  const ComplexVector e = rng.unit_vector(2);
  comps.push_back({0.5, ProductVector(e, basis_vec(3, 0))});
  comps.push_back({0.5, ProductVector(e, basis_vec(3, 1))});
  const BlockSimplexFace face = face_of_ensemble(Ensemble({2, 3}, std::move(comps)), Tolerance{});
  CHECK(face.q == 1);
  CHECK(face.blocks[0].block_dim == 2);
  CHECK(face.affine_dim == 3);
  CHECK_FALSE(is_simplex(face));
}

TEST_CASE("planted ray classes 2,1,1 in 3x4 give affine dimension 5") {
  Rng rng(53);
  const ComplexVector r1 = rng.unit_vector(3), r2 = rng.unit_vector(3), r3 = rng.unit_vector(3);
  std::vector<WeightedProduct> comps;
  comps.push_back({0.25, ProductVector(r1, basis_vec(4, 0))});
  comps.push_back({0.25, ProductVector(r1, basis_vec(4, 1))});
  comps.push_back({0.25, ProductVector(r2, basis_vec(4, 2))});
  comps.push_back({0.25, ProductVector(r3, basis_vec(4, 3))});
  const BlockSimplexFace face = face_of_ensemble(Ensemble({3, 4}, std::move(comps)), Tolerance{});
  CHECK(face.q == 3);
  CHECK(face.blocks[0].block_dim == 2);  // largest class first
  CHECK(face.blocks[1].block_dim == 1);
  CHECK(face.blocks[2].block_dim == 1);
  CHECK(face.affine_dim == 5);

  // stacked orthonormal block bases stay independent: rank = sum of dims
  ComplexMatrix stacked(12, 4);
  int off = 0;
  for (const auto& blk : face.blocks) {
    stacked.middleCols(off, blk.block_dim) = blk.l_basis;
    off += blk.block_dim;
  }
  CHECK(rank_svd(stacked, Tolerance{}) == 4);
}

TEST_CASE("face_of_ensemble refuses dependent right factors") {
  std::vector<WeightedProduct> comps;
  comps.push_back({0.5, ProductVector(basis_vec(2, 0), basis_vec(2, 1))});
  comps.push_back({0.5, ProductVector(basis_vec(2, 1), basis_vec(2, 1))});
  CHECK_THROWS_AS(face_of_ensemble(Ensemble({2, 2}, std::move(comps)), Tolerance{}), DependentF);
}

TEST_CASE("face_relation classifies the three regimes") {
  Rng rng(54);
  const ComplexVector e1 = rng.unit_vector(2), e2 = basis_vec(2, 0);
  const ComplexVector f1 = rng.unit_vector(3), f2 = basis_vec(3, 2);
  REQUIRE(ray_distance(e1, e2) > 1e-3);
  REQUIRE(ray_distance(f1, f2) > 1e-3);
  const Tolerance tol;
  CHECK(face_relation(ProductVector(e1, f1), ProductVector(e1, f1), tol) == FaceRelation::Equal);
  // a phase does not change the ray
  CHECK(face_relation(ProductVector(e1, f1),
                      ProductVector(Complex(0, 1) * e1, std::polar(1.0, 0.7) * f1),
                      tol) == FaceRelation::Equal);
  CHECK(face_relation(ProductVector(e1, f1), ProductVector(e1, f2), tol) ==
        FaceRelation::ThreeBall);
  CHECK(face_relation(ProductVector(e1, f1), ProductVector(e2, f1), tol) ==
        FaceRelation::ThreeBall);
  CHECK(face_relation(ProductVector(e1, f1), ProductVector(e2, f2), tol) == FaceRelation::Segment);
}

TEST_CASE("the face of a certified ensemble is a simplex") {
  const Tolerance tol;
  for (std::uint64_t seed = 60; seed < 66; ++seed) {
    Rng rng(seed);
    const Ensemble ens = testsup::draw_margin_ensemble({3, 3}, 3, 0.05, rng, tol);
    REQUIRE(certify_vk(ens, tol).valid);
    CHECK(is_simplex(face_of_ensemble(ens, tol)));
  }
}

TEST_CASE("face_contains accepts the generating state with the coarse weights") {
  const Tolerance tol;
  Rng rng(55);
  const ComplexVector e = rng.unit_vector(2);
  std::vector<WeightedProduct> comps;
  comps.push_back({0.5, ProductVector(e, basis_vec(3, 0))});
  comps.push_back({0.25, ProductVector(e, basis_vec(3, 1))});
  comps.push_back({0.25, ProductVector(basis_vec(2, 1), basis_vec(3, 2))});
  const Ensemble ens({2, 3}, std::move(comps));
  const BlockSimplexFace face = face_of_ensemble(ens, tol);
  const CoarseDecomposition coarse = coarse_decompose(ens, tol);

  const FaceMembership mem = face_contains(face, density_of(ens), tol);
  REQUIRE(mem.contains);
  REQUIRE(mem.weights.size() == coarse.blocks.size());
  double sum = 0;
  for (std::size_t i = 0; i < mem.weights.size(); ++i) {
    CHECK(mem.weights[i] == doctest::Approx(coarse.blocks[i].gamma).epsilon(1e-9));
    sum += mem.weights[i];
  }
  CHECK(sum == doctest::Approx(1).epsilon(1e-10));
}

TEST_CASE("face_contains rejects the maximally mixed state of a proper face") {
  const Tolerance tol;
  Rng rng(56);
  const Ensemble ens = testsup::draw_margin_ensemble({2, 2}, 2, 0.1, rng, tol);
  const BlockSimplexFace face = face_of_ensemble(ens, tol);
  const FaceMembership mem =
      face_contains(face, {{2, 2}, ComplexMatrix::Identity(4, 4) * 0.25}, tol);
  CHECK_FALSE(mem.contains);
  CHECK(mem.weights.empty());
}

TEST_CASE("face_contains accepts a pure product state inside a block span") {
  const Tolerance tol;
  Rng rng(57);
  const ComplexVector e = rng.unit_vector(2);
  const ComplexVector f1 = rng.unit_vector(4), f2 = rng.unit_vector(4);
  REQUIRE(ray_distance(f1, f2) > 1e-2);
  std::vector<WeightedProduct> comps;
  comps.push_back({0.5, ProductVector(e, f1)});
  comps.push_back({0.5, ProductVector(e, f2)});
  const BlockSimplexFace face = face_of_ensemble(Ensemble({2, 4}, std::move(comps)), tol);

  // any unit combination of f1, f2 stays inside the block
  ComplexVector g = 0.6 * f1 + Complex(0, 0.8) * f2;
  g /= g.norm();
  const DensityMatrix probe{{2, 4}, outer(kron_vec(e, g))};
  const FaceMembership mem = face_contains(face, probe, tol);
  REQUIRE(mem.contains);
  REQUIRE(mem.weights.size() == 1);
  CHECK(mem.weights[0] == doctest::Approx(1).epsilon(1e-10));

  // while a product state off the shared ray falls outside
  REQUIRE_FALSE(same_ray(basis_vec(2, 0), e, 1e-6));
  const DensityMatrix off{{2, 4}, outer(kron_vec(basis_vec(2, 0), g))};
  CHECK_FALSE(face_contains(face, off, tol).contains);
}

TEST_CASE("face_contains accepts convex mixtures across blocks") {
  const Tolerance tol;
  Rng rng(58);
  const Ensemble ens = testsup::draw_margin_ensemble({3, 4}, 3, 0.05, rng, tol);
  const BlockSimplexFace face = face_of_ensemble(ens, tol);

  // reweighted mixture of the same product states stays in the face
  std::vector<WeightedProduct> re;
  const double w[] = {0.7, 0.2, 0.1};
  for (int i = 0; i < 3; ++i) re.push_back({w[i], ens.components[std::size_t(i)].pv});
  const FaceMembership mem = face_contains(face, density_of(Ensemble(ens.dims, re)), tol);
  REQUIRE(mem.contains);
  std::vector<double> got = mem.weights;
  std::sort(got.begin(), got.end());
  CHECK(got[0] == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(got[1] == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(got[2] == doctest::Approx(0.7).epsilon(1e-9));
}

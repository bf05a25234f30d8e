#include <benchmark/benchmark.h>

#include "sepfact/decomposition.hpp"
#include "sepfact/faces.hpp"
#include "sepfact/rng.hpp"
#include "sepfact/sampling.hpp"

using namespace sepfact;

namespace {

Ensemble fixture_ensemble(int m, int n, int k, std::uint64_t seed) {
  const Tolerance tol;
  Rng rng(seed);
  for (;;) {
    Ensemble ens = draw_ensemble({m, n}, k, rng);
    const VkCertificate cert = certify_vk(ens, tol);
    if (cert.valid && cert.ray_gap > 0.05 && cert.f_min_sv > 0.05) return ens;
  }
}

}  // namespace

static void BM_Kron(benchmark::State& state) {
  const int d = int(state.range(0));
  Rng rng(1);
  const ComplexMatrix a = rng.gaussian_matrix(d, d);
  const ComplexMatrix b = rng.gaussian_matrix(d, d);
  for (auto _ : state) {
    ComplexMatrix out = kron(a, b);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_Kron)->Arg(4)->Arg(8)->Arg(16);

static void BM_PencilEig(benchmark::State& state) {
  const int d = int(state.range(0));
  Rng rng(2);
  const ComplexMatrix s1 = rng.hermitian(d);
  const ComplexMatrix s2 = rng.hermitian_pd(d);
  const Tolerance tol;
  for (auto _ : state) {
    auto pairs = pencil_eig(s1, s2, d, tol);
    benchmark::DoNotOptimize(pairs.data());
  }
}
BENCHMARK(BM_PencilEig)->Arg(3)->Arg(6)->Arg(12);

static void BM_RecoverUnique(benchmark::State& state) {
  const int m = int(state.range(0)), n = int(state.range(1));
  const int k = std::max(m, n);
  const DensityMatrix rho = density_of(fixture_ensemble(m, n, k, 3));
  const Tolerance tol;
  for (auto _ : state) {
    Recovery rec = recover_unique(rho, tol, 7);
    benchmark::DoNotOptimize(rec.residual);
  }
}
BENCHMARK(BM_RecoverUnique)->Args({2, 2})->Args({2, 3})->Args({3, 3})->Args({3, 4})->Args({4, 6});

static void BM_FaceOfEnsemble(benchmark::State& state) {
  const int k = int(state.range(0));
  const Ensemble ens = fixture_ensemble(4, 6, k, 4);
  const Tolerance tol;
  for (auto _ : state) {
    BlockSimplexFace face = face_of_ensemble(ens, tol);
    benchmark::DoNotOptimize(face.affine_dim);
  }
}
BENCHMARK(BM_FaceOfEnsemble)->Arg(2)->Arg(4)->Arg(6);

BENCHMARK_MAIN();

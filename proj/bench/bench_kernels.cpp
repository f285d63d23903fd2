// Parallel kernels against their serial references.
#include <benchmark/benchmark.h>

#include <random>

#include "cix/deligne.hpp"
#include "cix/homology.hpp"
#include "cix/spectral.hpp"

using namespace cix;

namespace {

IntMatrix random_matrix(std::size_t r, std::size_t c, unsigned seed) {
  std::mt19937_64 rng(seed);
  IntMatrix A(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) A(i, j) = static_cast<long>(rng() % 19) - 9;
  return A;
}

std::vector<CMat> random_path(int n, int len, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<CMat> p;
  for (int k = 0; k < len; ++k) {
    CMat A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = cplx(g(rng), g(rng));
    p.push_back((A + A.adjoint()) / 2.0);
  }
  return p;
}

RatVec random_vec(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  RatVec v(n);
  for (auto& x : v) {
    x = Rat(static_cast<long>(rng() % 13) - 6, 1 + static_cast<long>(rng() % 6));
    x.canonicalize();
  }
  return v;
}

void BM_matmul(benchmark::State& s) {
  auto n = static_cast<std::size_t>(s.range(0));
  IntMatrix A = random_matrix(n, n, 1), B = random_matrix(n, n, 2);
  for (auto _ : s) benchmark::DoNotOptimize(matmul(A, B));
}

void BM_matmul_ref(benchmark::State& s) {
  auto n = static_cast<std::size_t>(s.range(0));
  IntMatrix A = random_matrix(n, n, 1), B = random_matrix(n, n, 2);
  for (auto _ : s) benchmark::DoNotOptimize(matmul_ref(A, B));
}

const DeligneModel& torus_model() {
  static DeligneModel M(complexes::by_name("torus"), 3);
  return M;
}

void BM_apply(benchmark::State& s) {
  const auto& D = torus_model().d(1);
  RatVec x = random_vec(D.cols, 3);
  for (auto _ : s) benchmark::DoNotOptimize(D.apply(x));
}

void BM_apply_ref(benchmark::State& s) {
  const auto& D = torus_model().d(1);
  RatVec x = random_vec(D.cols, 3);
  for (auto _ : s) benchmark::DoNotOptimize(D.apply_ref(x));
}

void BM_spectral_flow(benchmark::State& s) {
  auto p = random_path(static_cast<int>(s.range(0)), 16, 4);
  for (auto _ : s) benchmark::DoNotOptimize(spectral_flow(p).sf);
}

void BM_spectral_flow_ref(benchmark::State& s) {
  auto p = random_path(static_cast<int>(s.range(0)), 16, 4);
  for (auto _ : s) benchmark::DoNotOptimize(spectral_flow_ref(p).sf);
}

}  // namespace

BENCHMARK(BM_matmul)->Arg(64)->Arg(160);
BENCHMARK(BM_matmul_ref)->Arg(64)->Arg(160);
BENCHMARK(BM_apply);
BENCHMARK(BM_apply_ref);
BENCHMARK(BM_spectral_flow)->Arg(8)->Arg(24);
BENCHMARK(BM_spectral_flow_ref)->Arg(8)->Arg(24);

BENCHMARK_MAIN();

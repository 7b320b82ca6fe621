#include <benchmark/benchmark.h>

#include "ejaopt/algebra.hpp"
#include "ejaopt/automorphism.hpp"
#include "ejaopt/orbit_opt.hpp"

namespace {

using namespace ejaopt;

void BM_EigenvaluesSym(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  const Element x = random_element(Algebra::sym_matrix(n), rng);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(x));
}
BENCHMARK(BM_EigenvaluesSym)->Arg(3)->Arg(8)->Arg(16)->Arg(32);

void BM_SpectralDecomposeSpin(benchmark::State& state) {
  Rng rng(2);
  const Element x = random_element(Algebra::spin_factor(static_cast<int>(state.range(0))), rng);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_decompose(x));
}
BENCHMARK(BM_SpectralDecomposeSpin)->Arg(5)->Arg(50);

void BM_PermutationOracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(3);
  Eigen::VectorXd a(n);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    a(i) = rng.normal();
    b(i) = rng.normal();
  }
  const SymmetricFunction fn = schatten(4.0);
  for (auto _ : state) benchmark::DoNotOptimize(permutation_oracle(fn, b, a, Sense::kMin));
}
BENCHMARK(BM_PermutationOracle)->DenseRange(4, 8, 2);

void BM_SolveOrbitGlobal(benchmark::State& state) {
  const Algebra alg = Algebra::sym_matrix(static_cast<int>(state.range(0)));
  Rng rng(4);
  const OrbitProblem p{alg, schatten(2.0), random_element(alg, rng), EigenvalueOrbit{random_element(alg, rng)},
                       Sense::kMin};
  for (auto _ : state) benchmark::DoNotOptimize(solve_orbit_global(p));
}
BENCHMARK(BM_SolveOrbitGlobal)->Arg(4)->Arg(16);

void BM_LocalSearch(benchmark::State& state) {
  const Algebra alg = state.range(0) == 0 ? Algebra::sym_matrix(3) : Algebra::spin_factor(5);
  Rng rng(5);
  const Element b = random_element(alg, rng);
  const OrbitProblem p{alg, schatten(4.0), random_element(alg, rng), EigenvalueOrbit{b}, Sense::kMin};
  const Element x0 = random_automorphism(alg, rng).apply(
      synthesize_from_frame(spectral_decompose(random_element(alg, rng)).frame, eigenvalues(b)));
  LocalSearchParams params;
  params.record_trace = false;
  for (auto _ : state) benchmark::DoNotOptimize(local_search_orbit(p, x0, params));
}
BENCHMARK(BM_LocalSearch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

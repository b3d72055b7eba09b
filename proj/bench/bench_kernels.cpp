// Serial reference vs OpenMP for the sweeps that dominate runtime. The
// argument is the size parameter of the groupoid: pair:N, or the action of
// an N-cycle with period 2N.

#include <benchmark/benchmark.h>

#include <random>

#include "groupoidal/io.hpp"
#include "groupoidal/reference.hpp"

using namespace groupoidal;

namespace {

GroupoidPtr pair_groupoid(const benchmark::State& state) { return build_pair_groupoid(static_cast<std::size_t>(state.range(0))); }

GroupoidPtr action_groupoid(const benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = (i + 1) % n;
  return build_action_groupoid(perm, 2 * n);
}

GFunction random_function(const GroupoidPtr& g, Rng& rng) {
  std::normal_distribution<double> n;
  std::vector<Complex> v(g->morphism_count());
  for (auto& x : v) x = {n(rng), n(rng)};
  return GFunction::from_dense(g, v);
}

GKernel random_kernel(const GroupoidPtr& g, Rng& rng) {
  std::uniform_real_distribution<double> u(0.5, 2.0);
  std::vector<double> t(g->morphism_count());
  for (auto& x : t) x = u(rng);
  return GKernel::from_morphism_values(g, t, true);
}

template <auto Make, bool Parallel>
void BM_convolve(benchmark::State& state) {
  const auto g = Make(state);
  Rng rng(1);
  const auto f = random_function(g, rng);
  const auto h = random_function(g, rng);
  for (auto _ : state) {
    if constexpr (Parallel) {
      benchmark::DoNotOptimize(convolve(f, h));
    } else {
      benchmark::DoNotOptimize(reference::convolve(f, h));
    }
  }
  state.counters["morphisms"] = static_cast<double>(g->morphism_count());
}

template <auto Make, bool Parallel>
void BM_convolve_haar(benchmark::State& state) {
  const auto g = Make(state);
  Rng rng(2);
  const auto f = random_function(g, rng);
  const auto h = random_function(g, rng);
  const auto k = random_kernel(g, rng);
  for (auto _ : state) {
    if constexpr (Parallel) {
      benchmark::DoNotOptimize(convolve_haar(f, h, k));
    } else {
      benchmark::DoNotOptimize(reference::convolve_haar(f, h, k));
    }
  }
}

template <auto Make, bool Parallel>
void BM_transverse(benchmark::State& state) {
  const auto g = Make(state);
  const auto k = GKernel::counting(g);
  for (auto _ : state) {
    if constexpr (Parallel) {
      benchmark::DoNotOptimize(check_transverse(k));
    } else {
      benchmark::DoNotOptimize(reference::check_transverse(k));
    }
  }
}

template <auto Make, bool Parallel>
void BM_associativity(benchmark::State& state) {
  const auto g = Make(state);
  for (auto _ : state) {
    if constexpr (Parallel) {
      benchmark::DoNotOptimize(check_basis_associativity(g));
    } else {
      benchmark::DoNotOptimize(reference::check_basis_associativity(g));
    }
  }
}

template <bool Parallel>
void BM_separation(benchmark::State& state) {
  const auto g = pair_groupoid(state);
  const auto fam = separating_family(g, 1);
  for (auto _ : state) {
    if constexpr (Parallel) {
      benchmark::DoNotOptimize(separation_check(*fam));
    } else {
      benchmark::DoNotOptimize(reference::separation_check(*fam));
    }
  }
}

}  // namespace

BENCHMARK(BM_convolve<pair_groupoid, false>)->Arg(8)->Arg(16)->Arg(24);
BENCHMARK(BM_convolve<pair_groupoid, true>)->Arg(8)->Arg(16)->Arg(24);
BENCHMARK(BM_convolve<action_groupoid, false>)->Arg(6)->Arg(12);
BENCHMARK(BM_convolve<action_groupoid, true>)->Arg(6)->Arg(12);
BENCHMARK(BM_convolve_haar<pair_groupoid, false>)->Arg(8)->Arg(16)->Arg(24);
BENCHMARK(BM_convolve_haar<pair_groupoid, true>)->Arg(8)->Arg(16)->Arg(24);
BENCHMARK(BM_transverse<pair_groupoid, false>)->Arg(8)->Arg(12);
BENCHMARK(BM_transverse<pair_groupoid, true>)->Arg(8)->Arg(12);
BENCHMARK(BM_associativity<pair_groupoid, false>)->Arg(4)->Arg(6);
BENCHMARK(BM_associativity<pair_groupoid, true>)->Arg(4)->Arg(6);
BENCHMARK(BM_associativity<action_groupoid, false>)->Arg(3)->Arg(4);
BENCHMARK(BM_associativity<action_groupoid, true>)->Arg(3)->Arg(4);
BENCHMARK(BM_separation<false>)->Arg(4)->Arg(6);
BENCHMARK(BM_separation<true>)->Arg(4)->Arg(6);

BENCHMARK_MAIN();

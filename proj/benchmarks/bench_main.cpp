#include <benchmark/benchmark.h>

#include <vector>

#include "ctphs/ctphs.hpp"

using namespace ctphs;

namespace {

std::vector<Point> nodes(const ManifoldSpec& s, int m) {
  Rng rng = make_rng(1);
  std::vector<Point> out;
  for (int i = 0; i < m; ++i) out.push_back(sample_uniform(s, rng));
  return out;
}

void BM_JacobiEval(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  double t = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jacobi_eval({0.5, 1.5}, k, t));
    t = t > 0.9 ? -0.9 : t + 1e-3;
  }
}
BENCHMARK(BM_JacobiEval)->Arg(16)->Arg(128)->Arg(1024);

void BM_JacobiBatch(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  std::vector<double> t(4096), out(4096);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = -1.0 + 2.0 * i / (t.size() - 1);
  for (auto _ : state) {
    jacobi_eval_batch({0.0, 0.0}, k, t, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(t.size()));
}
BENCHMARK(BM_JacobiBatch)->Arg(32)->Arg(256);

void BM_GramMatrix(benchmark::State& state) {
  const auto s = make_spec(Kind::Sphere, 3);
  const auto pts = nodes(s, static_cast<int>(state.range(0)));
  const int D = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(gram_matrix(s, pts, D, 1).data());
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_GramMatrix)->Args({500, 16})->Args({2000, 32})->Unit(benchmark::kMillisecond);

void BM_SolveWeights(benchmark::State& state) {
  const auto s = make_spec(Kind::Sphere, 3);
  const auto G = gram_matrix(s, nodes(s, 1500), 16, 1);
  SolverOptions o;
  o.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(solve_weights(G, o).residual);
}
BENCHMARK(BM_SolveWeights)->Unit(benchmark::kMillisecond);

void BM_ZonalEval(benchmark::State& state) {
  const auto s = make_spec(Kind::Sphere, 3);
  const auto f = random_poly(s, static_cast<int>(state.range(0)), 16, 7);
  const auto xs = nodes(s, 1024);
  for (auto _ : state) benchmark::DoNotOptimize(zonal_eval_batch(f, xs, 1).data());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(xs.size()));
}
BENCHMARK(BM_ZonalEval)->Arg(8)->Arg(64);

void BM_KernelEval(benchmark::State& state) {
  const auto s = make_spec(Kind::Sphere, 3);
  const KernelSpec ks{static_cast<int>(state.range(0))};
  double u = -0.99;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel_eval(s, ks, u));
    u = u > 0.99 ? -0.99 : u + 1e-3;
  }
}
BENCHMARK(BM_KernelEval)->Arg(16)->Arg(128);

void BM_Distance(benchmark::State& state) {
  const auto s = make_spec(static_cast<Kind>(state.range(0)), static_cast<int>(state.range(1)));
  const auto pts = nodes(s, 256);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(distance(s, pts[i % 256], pts[(i * 7 + 3) % 256]));
    ++i;
  }
}
BENCHMARK(BM_Distance)
    ->Args({static_cast<int>(Kind::Sphere), 3})
    ->Args({static_cast<int>(Kind::ComplexProjective), 9})
    ->Args({static_cast<int>(Kind::QuaternionProjective), 13});

}  // namespace

BENCHMARK_MAIN();

// Serial reference vs OpenMP kernel, pairwise on identical inputs.
#include <benchmark/benchmark.h>

#include <random>

#include "watchroute/batch.hpp"
#include "watchroute/generators.hpp"
#include "watchroute/oracles.hpp"
#include "watchroute/street_approx.hpp"

using namespace watchroute;

namespace {

const Scene& comb() {
  static const Scene scene = make_scene(Environment::kRandomStreet, 17);
  return scene;
}

std::vector<Point> viewpoints() {
  std::vector<Point> v;
  for (double x = 0.5; x < 10; x += 1.0) v.push_back({x, 0.5});
  return v;
}

template <bool Parallel>
void coverage(benchmark::State& state) {
  const SimplePolygon poly(comb().polygon);
  const auto views = viewpoints();
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? coverage_fraction(poly, views, n, 5)
                                      : coverage_fraction_serial(poly, views, n, 5));
  }
}

template <bool Parallel>
void witnesses(benchmark::State& state) {
  const SimplePolygon poly(comb().polygon);
  const Curve curve(poly, comb().curve);
  const auto pts = sample_interior(poly, static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? witness_intervals(poly, curve, pts)
                                      : witness_intervals_serial(poly, curve, pts));
  }
}

std::vector<CurveInterval> random_intervals() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pos(0.0, 10.0), width(0.0, 1.5);
  std::vector<CurveInterval> iv;
  for (std::size_t i = 0; i < 6; ++i) {
    const double a = pos(rng);
    iv.push_back({i, a, a + width(rng)});
  }
  return iv;
}

template <bool Parallel>
void chain_oracle(benchmark::State& state) {
  const auto iv = random_intervals();
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? oracle::brute_chain_intervals(iv, 3, 1.0)
                                      : oracle::brute_chain_intervals_serial(iv, 3, 1.0));
  }
}

template <bool Parallel>
void street_oracle(benchmark::State& state) {
  const SimplePolygon poly(comb().polygon);
  const auto pts = sample_interior(poly, 200, 4);
  const auto grid = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        Parallel ? oracle::brute_street(comb().polygon, comb().curve, pts, 2, 1.0, grid)
                 : oracle::brute_street_serial(comb().polygon, comb().curve, pts, 2, 1.0, grid));
  }
}

template <bool Parallel>
void batch(benchmark::State& state) {
  BatchOptions opt;
  opt.base.env = Environment::kRandomStreet;
  opt.base.targets = 15;
  opt.base.t_m = 1.0;
  opt.from = 1;
  opt.to = 5;
  opt.trials = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? run_batch(opt) : run_batch_serial(opt));
  }
}

}  // namespace

BENCHMARK(coverage<false>)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(coverage<true>)->Arg(20000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(witnesses<false>)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(witnesses<true>)->Arg(2000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(chain_oracle<false>)->Unit(benchmark::kMillisecond);
BENCHMARK(chain_oracle<true>)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(street_oracle<false>)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(street_oracle<true>)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(batch<false>)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(batch<true>)->Arg(20)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();

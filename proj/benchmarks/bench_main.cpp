#include <benchmark/benchmark.h>

#include "z2h/branch.hpp"
#include "z2h/fiber.hpp"
#include "z2h/form.hpp"
#include "z2h/linking.hpp"
#include "z2h/sun.hpp"

namespace {

void BM_ContinueAroundMeridian(benchmark::State& state) {
  const auto h = z2h::DefiningFunction::node(0.0, 0.0, 0.0).field();
  std::vector<std::vector<double>> pts;
  const auto n = static_cast<std::size_t>(state.range(0));
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2.0 * 3.141592653589793 * static_cast<double>(i) / static_cast<double>(n);
    pts.push_back({0.1 * std::cos(t), 0.1 * std::sin(t), 1.0, 0.0});
  }
  const auto loop = z2h::Polyline::from_points(pts, true);
  for (auto _ : state) benchmark::DoNotOptimize(z2h::monodromy(h, loop));
}
BENCHMARK(BM_ContinueAroundMeridian)->Arg(64)->Arg(1024);

void BM_GaussLinkingSeifert(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = z2h::fiber(2, 3, {0.8, 0.1}).sample(n);
  const auto b = z2h::fiber(2, 3, {-0.4, 1.2}).sample(n);
  for (auto _ : state) benchmark::DoNotOptimize(z2h::s3_gauss_linking(a, b));
}
BENCHMARK(BM_GaussLinkingSeifert)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_SunSolve(benchmark::State& state) {
  z2h::SunParams params;
  params.grid = static_cast<int>(state.range(0));
  const z2h::SunPipeline pipe(params);
  const auto p = z2h::ZonalPolynomial::single(1);
  for (auto _ : state) benchmark::DoNotOptimize(pipe.solve(p));
}
BENCHMARK(BM_SunSolve)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_SunFactorize(benchmark::State& state) {
  z2h::SunParams params;
  params.grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(z2h::SunPipeline(params).grid());
}
BENCHMARK(BM_SunFactorize)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

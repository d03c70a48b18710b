#include "canyon/bump.hpp"
#include "canyon/integrator.hpp"
#include "canyon/knot.hpp"
#include "canyon/parse.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

using namespace canyon;

namespace {

const char* kInputs[] = {"z^2 - w^3", "1/4*z^4 - 1/5*w^5", "z^4 - 2*z^2*w^2 - w^100",
                         "(z^2-w^3)*((z-w)^2-w^3)", "z^4 + z^3*w^27 + z^2*w^63 - w^100"};

struct Prepared {
  BiPoly f;
  LeadingFormAnalysis lfa;
  std::vector<PolarRecord> polars;
  std::vector<CanyonRecord> canyons;
};

Prepared prepare(const char* text) {
  Prepared p;
  p.f = parse_polynomial(text);
  p.lfa = leading_form_analysis(p.f);
  p.polars = polars(p.f);
  p.canyons = build_canyons(p.f, p.polars, p.lfa);
  return p;
}

}  // namespace

static void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_polynomial(kInputs[state.range(0)]));
}
BENCHMARK(BM_Parse)->DenseRange(0, 4);

static void BM_Polars(benchmark::State& state) {
  BiPoly f = parse_polynomial(kInputs[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(polars(f));
}
BENCHMARK(BM_Polars)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

static void BM_Canyons(benchmark::State& state) {
  BiPoly f = parse_polynomial(kInputs[state.range(0)]);
  auto lfa = leading_form_analysis(f);
  auto P = polars(f);
  for (auto _ : state) {
    auto copy = P;
    benchmark::DoNotOptimize(build_canyons(f, copy, lfa));
  }
}
BENCHMARK(BM_Canyons)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

static void BM_GaussCurvature(benchmark::State& state) {
  CurvatureEvaluator ev(parse_polynomial(kInputs[state.range(0)]));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-0.5, 0.5);
  std::vector<std::pair<cplx, cplx>> pts(1024);
  for (auto& [z, w] : pts) z = {U(rng), U(rng)}, w = {U(rng), U(rng)};
  for (auto _ : state)
    for (auto& [z, w] : pts) benchmark::DoNotOptimize(ev.eval(z, w));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pts.size()));
}
BENCHMARK(BM_GaussCurvature)->DenseRange(0, 4);

static void BM_FindBumps(benchmark::State& state) {
  auto p = prepare(kInputs[1]);
  auto R = r_function(p.f, p.canyons[0], p.polars);
  BumpOptions opt;
  opt.grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(find_bumps(R, opt));
}
BENCHMARK(BM_FindBumps)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_MilnorNumber(benchmark::State& state) {
  auto p = prepare(kInputs[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(milnor_number(p.f, p.polars));
}
BENCHMARK(BM_MilnorNumber)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

static void BM_Linking(benchmark::State& state) {
  auto p = prepare(kInputs[state.range(0)]);
  for (auto _ : state) {
    auto [e, d] = build_twin_networks(p.f, p.polars, 1);
    benchmark::DoNotOptimize(linking_number(e, d));
  }
}
BENCHMARK(BM_Linking)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

static void BM_LevelsetPass(benchmark::State& state) {
  auto p = prepare(kInputs[0]);
  GridParams grid;
  grid.per_efold = static_cast<int>(state.range(0));
  grid.angular = 16 * grid.per_efold;
  cplx c = std::polar(1e-5, 0.3);
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate_levelset_multi(p.f, c, p.canyons[0].representative,
                                                      p.canyons[0].d.value, {4, 8}, 0.4, grid));
}
BENCHMARK(BM_LevelsetPass)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

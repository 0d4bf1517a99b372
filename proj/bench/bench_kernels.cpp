// Serial reference kernels against their OpenMP counterparts.  Argument 0 runs
// the serial path, 1 the parallel one.

#include <benchmark/benchmark.h>

#include <random>

#include "tcurves/curves.hpp"
#include "tcurves/io.hpp"
#include "tcurves/linalg.hpp"
#include "tcurves/oracle.hpp"
#include "tcurves/reduction.hpp"
#include "tcurves/strata.hpp"

using namespace tcurves;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(0) ? Exec::Parallel : Exec::Serial; }

std::string fixture(const std::string& name) { return std::string(TCURVES_FIXTURE_DIR) + "/" + name; }

void BM_BareissRank(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> coeff(-20, 20);
  std::vector<IntRow> rows(48, IntRow(48));
  for (auto& r : rows)
    for (auto& v : r) v = coeff(rng);
  for (auto _ : state) benchmark::DoNotOptimize(bareiss_rank(rows, exec_of(state)));
}
BENCHMARK(BM_BareissRank)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RelValueReduced(benchmark::State& state) {
  auto fam = load_family(fixture("three_branches.json"));
  auto red = select_parameters(fam, 3);
  Polynomial f = parse_polynomial("(x + y - z)^4 + x*y*z - z^2", fam.variables());
  for (auto _ : state) benchmark::DoNotOptimize(rel_value(f, red.curves, exec_of(state)));
}
BENCHMARK(BM_RelValueReduced)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CompositionTables(benchmark::State& state) {
  auto fam = load_family(fixture("three_branches.json"));
  for (auto _ : state) benchmark::DoNotOptimize(build_tables(fam, 3, exec_of(state)));
}
BENCHMARK(BM_CompositionTables)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Strata(benchmark::State& state) {
  auto fam = load_family(fixture("level_xy_minus_y.json"));
  for (auto _ : state) benchmark::DoNotOptimize(compute_strata(fam, 4, StrataMode::Degree, exec_of(state)));
}
BENCHMARK(BM_Strata)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_OracleShells(benchmark::State& state) {
  auto set = load_set(fixture("sets/power_strip_u2_w3.json"));
  OracleConfig cfg;
  cfg.exec = exec_of(state);
  cfg.sampler.count = 1000;
  Polynomial f = parse_polynomial("x^2", set.variables);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_exponent(set, f, cfg));
}
BENCHMARK(BM_OracleShells)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

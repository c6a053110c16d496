// Serial reference against the OpenMP path for the grid kernels.

#include "liesphere/conformal.hpp"
#include "liesphere/transforms.hpp"

#include <benchmark/benchmark.h>

using namespace liesphere;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(1) ? Exec::parallel : Exec::serial; }

SphereCurve helix(int n) {
  return presets::sphere_curve(presets::helix(1, 0.5), presets::constant_radius(0.3), CurveGrid::open(n, 0, 6));
}

SphereCurve cylinder(int n) {
  return presets::sphere_curve(presets::line({0, 0, 0}, {0, 0, 1}), presets::constant_radius(1), CurveGrid::open(n, -1, 1));
}

void args(benchmark::internal::Benchmark* b) {
  for (int n : {64, 128})
    for (int p : {0, 1}) b->Args({n, p});
  b->ArgNames({"n", "parallel"})->Unit(benchmark::kMillisecond);
}

void BM_envelope(benchmark::State& s) {
  const SphereCurve c = helix(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(envelope(c, static_cast<int>(s.range(0)), {}, exec_of(s)));
}

void BM_validate(benchmark::State& s) {
  const LegendreGrid g = envelope(helix(static_cast<int>(s.range(0))), static_cast<int>(s.range(0))).grid;
  for (auto _ : s) benchmark::DoNotOptimize(validate_legendre(g, {}, exec_of(s)));
}

void BM_curvature_data(benchmark::State& s) {
  const LegendreGrid g = envelope(helix(static_cast<int>(s.range(0))), static_cast<int>(s.range(0))).grid;
  for (auto _ : s) benchmark::DoNotOptimize(curvature_data(g, {}, exec_of(s)));
}

void BM_is_channel(benchmark::State& s) {
  const LegendreGrid g = envelope(helix(static_cast<int>(s.range(0))), static_cast<int>(s.range(0))).grid;
  const CurvatureData cd = curvature_data(g);
  for (auto _ : s) benchmark::DoNotOptimize(is_channel(g, cd, {}, exec_of(s)));
}

struct DarbouxSetup {
  SphereCurve s;
  LegendreGrid g;
  CurvatureData cd;
  Omega0Structure om;
  LieVec phi0;

  explicit DarbouxSetup(int n)
      : s(cylinder(n)), g(envelope(s, n).grid), cd(curvature_data(g)),
        om(omega0_form(g, is_channel(g, cd), special_lift_against(s, basis(6)))),
        phi0(sphere_lift({2.0, 0.5, -1.0}, 1.0).rep()) {}
};

void BM_darboux(benchmark::State& s) {
  const DarbouxSetup d(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(darboux_transform(d.g, d.om, 1.0, d.phi0, {}, exec_of(s)));
}

void BM_calapso(benchmark::State& s) {
  const DarbouxSetup d(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(calapso_transform(d.g, d.om, 1.0, exec_of(s)));
}

void BM_ribaucour_cyclides(benchmark::State& s) {
  const DarbouxSetup d(static_cast<int>(s.range(0)));
  const DarbouxResult r = darboux_transform(d.g, d.om, 1.0, d.phi0);
  const CurvatureData hcd = curvature_data(r.hat_f);
  const RibaucourPair p{&d.g, &d.cd, &d.s, &r.hat_f, &hcd, &r.hat_s};
  for (auto _ : s) benchmark::DoNotOptimize(ribaucour_cyclides(p, exec_of(s)));
}

BENCHMARK(BM_envelope)->Apply(args);
BENCHMARK(BM_validate)->Apply(args);
BENCHMARK(BM_curvature_data)->Apply(args);
BENCHMARK(BM_is_channel)->Apply(args);
BENCHMARK(BM_darboux)->Apply(args);
BENCHMARK(BM_calapso)->Apply(args);
BENCHMARK(BM_ribaucour_cyclides)->Apply(args);

}  // namespace

BENCHMARK_MAIN();

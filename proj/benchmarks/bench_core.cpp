#include <cmath>

#include <benchmark/benchmark.h>

#include <combfrac/comb.hpp>
#include <combfrac/fraccalc.hpp>
#include <combfrac/ftse.hpp>
#include <combfrac/greens.hpp>
#include <combfrac/transforms.hpp>

using namespace combfrac;

namespace {

SampledFunction sine(std::size_t n) {
  return SampledFunction::sample([](double t) { return cplx(std::sin(3.0 * t)); }, 0.0, 1.0 / (n - 1), n);
}

void BM_FracIntegral(benchmark::State& st) {
  const auto f = sine(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(frac_integral(f, {0.5}));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_FracIntegral)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();

void BM_CaputoL1(benchmark::State& st) {
  const auto f = sine(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(caputo_deriv(f, {0.5}));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_CaputoL1)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();

void BM_WeylDerivative(benchmark::State& st) {
  const auto f = SampledFunction::sample([](double x) { return cplx(std::exp(-x * x)); }, -10.0, 20.0 / 2047, 2048);
  for (auto _ : st) benchmark::DoNotOptimize(weyl_deriv(f, {0.5}));
}
BENCHMARK(BM_WeylDerivative);

void BM_MittagLeffler(benchmark::State& st) {
  const cplx z = std::polar(static_cast<double>(st.range(0)), 2.5);
  for (auto _ : st) benchmark::DoNotOptimize(mittag_leffler({0.5}, z));
}
BENCHMARK(BM_MittagLeffler)->Arg(0)->Arg(1)->Arg(5)->Arg(20);

void BM_BromwichInvert(benchmark::State& st) {
  const auto c = BromwichContour::for_time(1.0, 256);
  for (auto _ : st) benchmark::DoNotOptimize(bromwich_invert([](cplx s) { return 1.0 / std::sqrt(s); }, 1.0, c));
}
BENCHMARK(BM_BromwichInvert);

void BM_FtseSolve(benchmark::State& st) {
  HamiltonianSpec s;
  s.kind = PotentialKind::harmonic;
  s.x_grid = {-12.8, 0.1, 256};
  const Hamiltonian H(s);
  CVector psi0(256);
  for (int k = 0; k < 256; ++k) psi0[k] = std::exp(-s.x_grid.at(k) * s.x_grid.at(k));
  const int steps = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(ftse_solve(psi0, {&H, -I / std::sqrt(2.0)}, {0.5}, 1e-3, steps, 1.0, steps));
  st.SetComplexityN(steps);
}
BENCHMARK(BM_FtseSolve)->Arg(250)->Arg(500)->Arg(1000)->Complexity()->Unit(benchmark::kMillisecond);

void BM_CombStrangStep(benchmark::State& st) {
  CombGrid g;
  HamiltonianSpec s;
  s.x_grid = g.x_grid();
  const Hamiltonian H(s);
  CombField f = CombField::axis_delta(g, 1.0, CVector::Ones(g.nx));
  StrangSplitPropagator p(g, H, 1e-3);
  for (auto _ : st) p.step(f);
}
BENCHMARK(BM_CombStrangStep)->Unit(benchmark::kMillisecond);

void BM_GreensClosedForm(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(greens_closed_form(1.0, 0.5, 1.0, 1.0));
}
BENCHMARK(BM_GreensClosedForm);

void BM_GreensUIntegral(benchmark::State& st) {
  GreensQuery q;
  q.lambda = 1.0;
  q.y = 0.5;
  for (auto _ : st) benchmark::DoNotOptimize(greens_u_integral(q));
}
BENCHMARK(BM_GreensUIntegral);

void BM_IAB(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(i_ab({1.0, 3.0}, {0.1, -3.0}));
}
BENCHMARK(BM_IAB);

}  // namespace
BENCHMARK_MAIN();

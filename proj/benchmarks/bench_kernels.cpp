#include <benchmark/benchmark.h>

#include <cmath>

#include "kzosc/furry.hpp"
#include "kzosc/ising.hpp"
#include "kzosc/pt.hpp"
#include "kzosc/specfun.hpp"
#include "kzosc/tdse.hpp"

using namespace kzosc;

namespace {

const Complex kRay = std::polar(1.0, 0.25 * 3.141592653589793);

void BM_ParabolicCylinder(benchmark::State& st) {
  const double t = static_cast<double>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(specfun::parabolic_cylinder_d(Complex(0.0, -0.5625), kRay * t));
}
BENCHMARK(BM_ParabolicCylinder)->Arg(1)->Arg(10)->Arg(100)->Arg(500);

void BM_KummerRegularized(benchmark::State& st) {
  const double z = static_cast<double>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(specfun::kummer_m_regularized(Complex(0.0, -0.5625), 0, Complex(0.0, z)));
}
BENCHMARK(BM_KummerRegularized)->Arg(4)->Arg(36)->Arg(200);

void BM_TdseSurvival(benchmark::State& st) {
  const DriveParams p{0.75, 0.5, 0.05, 0.1, static_cast<double>(st.range(0))};
  for (auto _ : st) benchmark::DoNotOptimize(tdse::survival_probability(p));
}
BENCHMARK(BM_TdseSurvival)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_PerturbativeSum(benchmark::State& st) {
  const DriveParams p{0.2, 0.5, 0.3, 0.2, 2.0};
  const pt::SumTruncation trunc{static_cast<int>(st.range(0))};
  for (auto _ : st) benchmark::DoNotOptimize(pt::p_pt(p, trunc));
}
BENCHMARK(BM_PerturbativeSum)->Arg(10)->Arg(40);

void BM_KSet(benchmark::State& st) {
  const auto c = furry::f_coefficients_asymptotic(0.5625, -500.0);
  for (auto _ : st) benchmark::DoNotOptimize(furry::k_set(0.5625, 3.0, 0.5, c.f1, c.f2));
}
BENCHMARK(BM_KSet);

void BM_FirstOrderExact(benchmark::State& st) {
  const DriveParams p{0.75, 0.5, 0.05, 0.1, 3.0};
  for (auto _ : st) benchmark::DoNotOptimize(furry::p_fp_exact(p));
}
BENCHMARK(BM_FirstOrderExact)->Unit(benchmark::kMicrosecond);

void BM_AdiabaticLimit(benchmark::State& st) {
  const DriveParams p{1.0, 0.5, 0.05, 0.3, 3.0};
  for (auto _ : st) benchmark::DoNotOptimize(furry::p_fp_adiabatic(p));
}
BENCHMARK(BM_AdiabaticLimit);

void BM_DensityApprox(benchmark::State& st) {
  const ising::IsingDiagParams p{7.0, 0.05, 6.0, 0.5, 200};
  for (auto _ : st) benchmark::DoNotOptimize(ising::defect_density_approx_diag(p).n_approx());
}
BENCHMARK(BM_DensityApprox)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();

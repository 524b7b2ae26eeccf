#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "zetafred/asymptotics.hpp"
#include "zetafred/fredholm.hpp"
#include "zetafred/models.hpp"
#include "zetafred/special_functions.hpp"
#include "zetafred/spectral_zeta.hpp"

using namespace zetafred;

namespace {

const char* model_name(int i) {
  static const char* names[] = {"N1", "N2", "HO"};
  return names[i];
}

void BM_ZetaValue(benchmark::State& state) {
  const SpectrumModel m = catalog_model(model_name(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    // Fresh evaluator each time so the heat cache is part of the cost.
    const SpectralZeta sz(m);
    benchmark::DoNotOptimize(sz.zeta(Cx<double>(0.5, 1.0)).value);
  }
  state.SetLabel(m.name);
}
BENCHMARK(BM_ZetaValue)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_LogDetZetaHeat(benchmark::State& state) {
  const SpectrumModel m = catalog_model(model_name(static_cast<int>(state.range(0))));
  ZetaOptions opt;
  opt.check_routes = false;
  const SpectralZeta sz(m, opt);
  double z = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sz.log_det_heat(z));
    z = z < 8 ? z * 1.5 : 0.5;
  }
  state.SetLabel(m.name);
}
BENCHMARK(BM_LogDetZetaHeat)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

void BM_LogDetZetaBothRoutes(benchmark::State& state) {
  const SpectrumModel m = catalog_model(model_name(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(log_det_zeta(m).value);
  state.SetLabel(m.name);
}
BENCHMARK(BM_LogDetZetaBothRoutes)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_Fredholm(benchmark::State& state) {
  const SpectrumModel m = catalog_model("N1");
  const double z = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(det_fredholm(m, z, 2).log_value);
}
BENCHMARK(BM_Fredholm)->RangeMultiplier(10)->Range(1, 10000)->Unit(benchmark::kMicrosecond);

void BM_FredholmExtended(benchmark::State& state) {
  const SpectrumModel m = catalog_model("N1");
  for (auto _ : state) {
    benchmark::DoNotOptimize(det_fredholm_log_extended(m, Cx<Extended>(Extended(2.5)), 2));
  }
}
BENCHMARK(BM_FredholmExtended)->Unit(benchmark::kMicrosecond);

void BM_LaplaceRegint(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(laplace_regint<double>(Exponent(Rational(-1, 2)), k, Cx<double>(1, 1)));
    benchmark::DoNotOptimize(laplace_regint<double>(Exponent(-2), k, Cx<double>(2)));
  }
}
BENCHMARK(BM_LaplaceRegint)->DenseRange(0, 2);

void BM_PredictLogDet(benchmark::State& state) {
  const SpectrumModel m = catalog_model("N1");
  for (auto _ : state) benchmark::DoNotOptimize(predict_log_det_zeta_expansion<double>(m).size());
}
BENCHMARK(BM_PredictLogDet)->Unit(benchmark::kMicrosecond);

void BM_FitFredholm(benchmark::State& state) {
  const SpectrumModel m = catalog_model("N1");
  const auto pred = predict_fredholm_expansion(m).truncated(3);
  const auto keys = pred.keys();
  std::vector<std::pair<double, Cx<double>>> samples;
  for (double z : geometric_grid(25, static_cast<int>(keys.size()) + 2)) {
    samples.emplace_back(z, det_fredholm(m, z, 2).log_value);
  }
  for (auto _ : state) benchmark::DoNotOptimize(fit_expansion(samples, keys).size());
}
BENCHMARK(BM_FitFredholm)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <cmath>

#include "gradpriv/accountant.hpp"
#include "gradpriv/dpconvert.hpp"
#include "gradpriv/noisechan.hpp"
#include "gradpriv/qif.hpp"
#include "gradpriv/rdp.hpp"
#include "gradpriv/specfn.hpp"

using namespace gradpriv;

static void BM_LogBesselSeries(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_bessel_i(20.0, 120.0));
  }
}
BENCHMARK(BM_LogBesselSeries);

static void BM_LogBesselLargeArgument(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_bessel_i(2.0, 5000.0));
  }
}
BENCHMARK(BM_LogBesselLargeArgument);

static void BM_LogBesselUniform(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_bessel_i(6849.0, 300.0));
  }
}
BENCHMARK(BM_LogBesselUniform);

static void BM_BesselRatio(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_ratio_consecutive(6849.0, 300.0));
  }
}
BENCHMARK(BM_BesselRatio);

static void BM_VmfRdp(benchmark::State& state) {
  const VmfParams params{13700, 75.0};
  double alpha = 1.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(vmf_rdp(params, alpha));
    alpha = alpha < 1000.0 ? alpha * 1.01 : 1.5;
  }
}
BENCHMARK(BM_VmfRdp);

static void BM_DeltaGivenEpsilon(benchmark::State& state) {
  const RdpCurve curve = make_vmf_curve({13700, 75.0});
  const RdpConverter converter(curve);
  for (auto _ : state) {
    benchmark::DoNotOptimize(converter.delta_given_epsilon(4.4));
  }
}
BENCHMARK(BM_DeltaGivenEpsilon)->Unit(benchmark::kMicrosecond);

static void BM_SubsampledCurve512(benchmark::State& state) {
  const RdpCurve curve = make_vmf_curve({13700, 150.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(subsampled_curve(curve, 128.0 / 60000.0, 512));
  }
}
BENCHMARK(BM_SubsampledCurve512)->Unit(benchmark::kMillisecond);

static void BM_BestEpsilonTableRow(benchmark::State& state) {
  const AccountingScenario scenario{128.0 / 60000.0, 3.0, 1.0 / 60000.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        best_epsilon(VmfParams{13700, 75.0}, scenario));
  }
}
BENCHMARK(BM_BestEpsilonTableRow)->Unit(benchmark::kMillisecond)->Iterations(3);

static void BM_VmfSample(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  GradientVector mean(p, 0.0);
  mean[0] = 1.0;
  RandomSource rng(42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(vmf_sample(mean, 100.0, rng));
  }
}
BENCHMARK(BM_VmfSample)->Arg(16)->Arg(1024)->Arg(13700);

static void BM_BayesCapacityGaussian(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(bayes_capacity_gaussian(13700, 1.23, 1.0));
  }
}
BENCHMARK(BM_BayesCapacityGaussian)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();

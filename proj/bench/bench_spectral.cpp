// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>
#include <omp.h>

#include "gica/pipeline.hpp"
#include "gica/simulators.hpp"
#include "gica/spectral_kernels.hpp"
#include "gica/surrogate.hpp"

namespace {

gica::kernels::LagPolynomials closed_loop_poly(const gica::RestrictedModel& x) {
  gica::SimSpec spec;
  spec.system = gica::System::ClosedLoop;
  spec.d = 0.5;
  return gica::kernels::LagPolynomials::from(gica::build_true_model(spec), &x);
}

gica::RestrictedModel restricted_x_of_closed_loop() {
  gica::SimSpec spec;
  spec.system = gica::System::ClosedLoop;
  spec.d = 0.5;
  return gica::theoretical_profiles(spec, {}).x;
}

template <bool Parallel>
void BM_Spectra(benchmark::State& state) {
  const auto x = restricted_x_of_closed_loop();
  const auto poly = closed_loop_poly(x);
  const auto grid = gica::FrequencyGrid::uniform(static_cast<std::size_t>(state.range(0)));
  std::vector<gica::kernels::PointValues> out(grid.size());
  for (auto _ : state) {
    if constexpr (Parallel) {
      gica::kernels::evaluate_parallel(poly, grid.values, out);
    } else {
      gica::kernels::evaluate_serial(poly, grid.values, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SurrogateBatch(benchmark::State& state) {
  gica::SimSpec spec;
  spec.n = 500;
  spec.seed = 7;
  const auto pair = gica::precondition(gica::simulate(spec), std::nullopt);
  gica::SurrogateConfig config;
  config.n_surrogates = 20;
  gica::AnalysisOptions options;
  options.grid_points = 513;
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto reports = gica::surrogate_reports(pair, 2, config, options);
    benchmark::DoNotOptimize(reports.data());
  }
  omp_set_num_threads(omp_get_num_procs());
}

}  // namespace

BENCHMARK(BM_Spectra<false>)->Name("spectra/serial")->RangeMultiplier(4)->Range(257, 16385);
BENCHMARK(BM_Spectra<true>)->Name("spectra/openmp")->RangeMultiplier(4)->Range(257, 16385);
BENCHMARK(BM_SurrogateBatch)->Name("surrogates/threads")->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

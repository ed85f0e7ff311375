#include <doctest.h>

#include <cstring>

#include <omp.h>

#include "gica/autocovariance.hpp"
#include "gica/restricted.hpp"
#include "gica/simulators.hpp"
#include "gica/spectral.hpp"
#include "gica/spectral_kernels.hpp"

using namespace gica;

namespace {

bool same_bits(const kernels::PointValues& a, const kernels::PointValues& b) {
  const double va[] = {a.p_x, a.p_y, a.cross_mag, a.causal, a.isolated, a.hyy2,
                       a.gyy2, a.dc_yx, a.dc_yy, a.gc, a.gi, a.ga_bar};
  const double vb[] = {b.p_x, b.p_y, b.cross_mag, b.causal, b.isolated, b.hyy2,
                       b.gyy2, b.dc_yx, b.dc_yy, b.gc, b.gi, b.ga_bar};
  return std::memcmp(va, vb, sizeof va) == 0 && a.singular == b.singular;
}

}  // namespace

TEST_CASE("parallel kernel output is bit-identical to the serial reference") {
  SimSpec s;
  s.system = System::ClosedLoop;
  s.d = 0.5;
  const auto m = build_true_model(s);
  const auto x = restricted_x(compute_autocovariance(m, 20), 20);
  const auto poly = kernels::LagPolynomials::from(m, &x);
  const auto grid = FrequencyGrid::uniform(4097);

  std::vector<kernels::PointValues> serial(grid.size());
  kernels::evaluate_serial(poly, grid.values, serial);
  const int saved = omp_get_max_threads();
  for (int threads : {1, 2, 3, 7}) {
    omp_set_num_threads(threads);
    std::vector<kernels::PointValues> par(grid.size());
    kernels::evaluate_parallel(poly, grid.values, par);
    bool all = true;
    for (std::size_t i = 0; i < grid.size(); ++i) all = all && same_bits(serial[i], par[i]);
    CHECK_MESSAGE(all, "threads = " << threads);
  }
  omp_set_num_threads(saved);

  const auto a = evaluate_spectra(m, x, grid, Execution::Serial);
  const auto b = evaluate_spectra(m, x, grid, Execution::Parallel);
  CHECK(a.gc == b.gc);
  CHECK(a.gi == b.gi);
  CHECK(a.ga == b.ga);
  CHECK(a.p_y == b.p_y);
}

TEST_CASE("kernel without a restricted model skips G") {
  SimSpec s;
  const auto m = build_true_model(s);
  const auto poly = kernels::LagPolynomials::from(m);
  CHECK(poly.byx.empty());
  const auto pv = kernels::evaluate_point(poly, 0.1);
  CHECK_FALSE(pv.singular);
  CHECK(pv.p_y == doctest::Approx(pv.causal + pv.isolated));
  CHECK(pv.dc_yx + pv.dc_yy == doctest::Approx(1.0));
}

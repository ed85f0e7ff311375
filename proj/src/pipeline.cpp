#include "gica/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "gica/autocovariance.hpp"
#include "gica/error.hpp"

namespace gica {

std::vector<Band> default_bands() {
  return {{"VLF", 0.02, 0.07}, {"LF", 0.07, 0.2}};
}

ModelAnalysis analyze_model(const BivariateVarModel& model, double fs,
                            const AnalysisOptions& options) {
  if (options.q < 1) throw InvalidArgument("restricted lag q must be >= 1");
  ModelAnalysis out;
  out.model = model;
  auto& report = out.report;
  report.order = model.order();
  report.q = options.q;
  report.fs = fs;

  const int max_lag = options.convergence_check ? 2 * options.q : options.q;
  const auto gammas = compute_autocovariance(model, max_lag);
  out.ar = restricted_ar(gammas, options.q);
  out.x = restricted_x(gammas, options.q);

  const double rho = model.residual_correlation();
  if (std::abs(rho) > kResidualCorrelationWarning) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "residual cross-correlation %.3f exceeds %.1f; spectral measures use "
                  "diag(Sigma) only",
                  rho, kResidualCorrelationWarning);
    report.warnings.emplace_back(buf);
  }
  if (options.convergence_check) {
    const auto check = [&](const RestrictedModel& at_q, const RestrictedModel& at_2q,
                           const char* label) {
      const double shift = std::abs(at_q.resid_var - at_2q.resid_var) / at_2q.resid_var;
      if (shift > 1e-4) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "%s residual variance shifts by %.2e (relative) between q=%d and q=%d",
                      label, shift, options.q, 2 * options.q);
        report.warnings.emplace_back(buf);
      }
    };
    check(out.ar, restricted_ar(gammas, 2 * options.q), "restricted AR");
    check(out.x, restricted_x(gammas, 2 * options.q), "restricted X");
  }

  const auto grid = FrequencyGrid::uniform(options.grid_points, fs);
  out.spectra = evaluate_spectra(model, out.x, grid, options.exec);

  const auto gi = out.spectra.profile("gi");
  const auto td = time_domain_measures(model.sigma, out.ar.resid_var, out.x.resid_var, gi);
  report.f_xy = td.f_xy;
  report.f_y = td.f_y;
  report.a_y = td.a_y;

  const auto gc = out.spectra.profile("gc");
  const auto ga = out.spectra.profile("ga");
  report.f_xy_spectral = integrate_full(gc);
  report.a_y_spectral = integrate_full(ga);
  const auto consistency = [&](double time_value, double spectral, const char* label) {
    if (std::isfinite(time_value) && std::abs(time_value - spectral) > kIntegralMismatchWarning) {
      char buf[200];
      std::snprintf(buf, sizeof buf,
                    "full-band %s integral differs from its time-domain value by %.2e nats "
                    "(residual cross-correlation %.3f)",
                    label, std::abs(time_value - spectral), rho);
      report.warnings.emplace_back(buf);
    }
  };
  consistency(report.f_xy, report.f_xy_spectral, "GC");
  consistency(report.a_y, report.a_y_spectral, "GA");

  for (const auto& band : options.bands) {
    if (band.hi_hz > fs / 2.0) {
      throw InvalidArgument("band " + band.name + " exceeds fs/2");
    }
    report.bands.push_back({band, integrate_band(gc, band.lo_hz, band.hi_hz),
                            integrate_band(gi, band.lo_hz, band.hi_hz),
                            integrate_band(ga, band.lo_hz, band.hi_hz)});
  }
  return out;
}

ModelAnalysis analyze_pair(const TimeSeriesPair& pair, const OrderChoice& order,
                           const AnalysisOptions& options) {
  int p = 0;
  std::optional<std::vector<double>> aic;
  if (order.fixed) {
    p = *order.fixed;
  } else {
    auto sel = select_order_aic(pair, order.p_max);
    p = sel.order;
    aic = std::move(sel.aic);
  }
  auto analysis = analyze_model(fit_var(pair, p), pair.fs, options);
  analysis.report.aic = std::move(aic);
  return analysis;
}

}  // namespace gica

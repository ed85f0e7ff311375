#include "gica/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gica/error.hpp"
#include "gica/spectral_kernels.hpp"

namespace gica {
namespace {

using cplx = std::complex<double>;

Eigen::Matrix2cd lag_sum(const std::vector<Mat2>& lags, double f_norm) {
  Eigen::Matrix2cd acc = Eigen::Matrix2cd::Zero();
  for (std::size_t k = 0; k < lags.size(); ++k) {
    const cplx z = std::polar(1.0, -2.0 * std::numbers::pi * f_norm * static_cast<double>(k + 1));
    acc += lags[k].cast<cplx>() * z;
  }
  return acc;
}

std::vector<kernels::PointValues> evaluate(const BivariateVarModel& model,
                                           const RestrictedModel* x_model,
                                           const FrequencyGrid& grid, Execution exec) {
  require_stable(model, "full model");
  if (x_model != nullptr) require_stable(mixed_model(model, *x_model), "restricted X mixed model");
  const auto poly = kernels::LagPolynomials::from(model, x_model);
  std::vector<kernels::PointValues> out(grid.size());
  if (exec == Execution::Parallel) {
    kernels::evaluate_parallel(poly, grid.values, out);
  } else {
    kernels::evaluate_serial(poly, grid.values, out);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].singular) {
      throw SingularSystem("transfer matrix singular at normalized frequency " +
                           std::to_string(grid.values[i]));
    }
  }
  return out;
}

template <typename Field>
SpectralProfile collect(std::string name, const FrequencyGrid& grid,
                        const std::vector<kernels::PointValues>& pts, Field field) {
  SpectralProfile prof{std::move(name), grid, {}};
  prof.values.reserve(pts.size());
  for (const auto& p : pts) prof.values.push_back(p.*field);
  return prof;
}

}  // namespace

BivariateVarModel mixed_model(const BivariateVarModel& model, const RestrictedModel& restricted) {
  const int p = model.order();
  const int q = restricted.lags();
  BivariateVarModel mixed;
  mixed.A.assign(static_cast<std::size_t>(std::max(p, q)), Mat2::Zero());
  for (int k = 0; k < p; ++k) mixed.A[k].row(0) = model.A[k].row(0);
  const int col = restricted.kind == RestrictedKind::XOnY ? 0 : 1;
  for (int k = 0; k < q; ++k) mixed.A[k](1, col) = restricted.coeffs(k);
  mixed.sigma << model.var_x(), 0.0, 0.0, restricted.resid_var;
  return mixed;
}

std::vector<Eigen::Matrix2cd> full_transfer(const BivariateVarModel& model,
                                            const FrequencyGrid& grid) {
  require_stable(model, "full model");
  std::vector<Eigen::Matrix2cd> out;
  out.reserve(grid.size());
  for (double f : grid.values) {
    const Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity() - lag_sum(model.A, f);
    if (m.determinant() == cplx{0.0, 0.0}) {
      throw SingularSystem("I - A(f) singular at normalized frequency " + std::to_string(f));
    }
    out.push_back(m.inverse());
  }
  return out;
}

std::vector<Eigen::Matrix2cd> restricted_transfer_ga(const BivariateVarModel& model,
                                                     const RestrictedModel& x_model,
                                                     const FrequencyGrid& grid) {
  if (x_model.kind != RestrictedKind::XOnY) {
    throw InvalidArgument("restricted_transfer_ga needs the X-on-Y restricted model");
  }
  const auto mixed = mixed_model(model, x_model);
  require_stable(mixed, "restricted X mixed model");
  std::vector<Eigen::Matrix2cd> out;
  out.reserve(grid.size());
  for (double f : grid.values) {
    // The (1, 1) entry of the mixed lag sum is zero, so this is exactly
    // [1 - Axx, -Axy; -Byx, 1].
    const Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity() - lag_sum(mixed.A, f);
    if (m.determinant() == cplx{0.0, 0.0}) {
      throw SingularSystem("G(f) singular at normalized frequency " + std::to_string(f));
    }
    out.push_back(m.inverse());
  }
  return out;
}

PsdProfiles psd(const BivariateVarModel& model, const FrequencyGrid& grid) {
  const auto pts = evaluate(model, nullptr, grid, Execution::Parallel);
  return {collect("psd_x", grid, pts, &kernels::PointValues::p_x),
          collect("psd_y", grid, pts, &kernels::PointValues::p_y),
          collect("psd_cross", grid, pts, &kernels::PointValues::cross_mag)};
}

DirectedCoherence directed_coherence(const BivariateVarModel& model, const FrequencyGrid& grid) {
  const auto pts = evaluate(model, nullptr, grid, Execution::Parallel);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!(pts[i].p_y > 0.0)) {
      throw SingularSystem("zero target PSD at normalized frequency " +
                           std::to_string(grid.values[i]));
    }
  }
  return {collect("dc_yx", grid, pts, &kernels::PointValues::dc_yx),
          collect("dc_yy", grid, pts, &kernels::PointValues::dc_yy)};
}

SpectralProfile spectral_gc(const BivariateVarModel& model, const FrequencyGrid& grid) {
  return collect("gc", grid, evaluate(model, nullptr, grid, Execution::Parallel),
                 &kernels::PointValues::gc);
}

SpectralProfile spectral_gi(const BivariateVarModel& model, const FrequencyGrid& grid) {
  return collect("gi", grid, evaluate(model, nullptr, grid, Execution::Parallel),
                 &kernels::PointValues::gi);
}

GaProfiles spectral_ga(const BivariateVarModel& model, const RestrictedModel& x_model,
                       const FrequencyGrid& grid) {
  const auto bundle = evaluate_spectra(model, x_model, grid);
  return {bundle.profile("ga_bar"), bundle.profile("ga"), bundle.a_y};
}

TimeDomainMeasures time_domain_measures(const Mat2& sigma, double var_y_given_y,
                                        double var_y_given_x, const SpectralProfile& gi) {
  const double var_y = sigma(1, 1);
  if (!(var_y > 0.0) || !(var_y_given_y > 0.0) || !(var_y_given_x > 0.0)) {
    throw InvalidArgument("time-domain measures need positive residual variances");
  }
  return {std::log(var_y_given_y / var_y), integrate_full(gi), std::log(var_y_given_x / var_y)};
}

const std::vector<std::string>& SpectralBundle::profile_names() {
  static const std::vector<std::string> names = {"psd_x", "psd_y",  "psd_cross", "dc_yx",
                                                 "dc_yy", "gc",     "gi",        "hyy2",
                                                 "gyy2",  "ga_bar", "ga"};
  return names;
}

SpectralProfile SpectralBundle::profile(std::string_view name) const {
  const std::vector<double>* src = nullptr;
  if (name == "psd_x") src = &p_x;
  else if (name == "psd_y") src = &p_y;
  else if (name == "psd_cross") src = &cross_mag;
  else if (name == "dc_yx") src = &dc_yx;
  else if (name == "dc_yy") src = &dc_yy;
  else if (name == "gc") src = &gc;
  else if (name == "gi") src = &gi;
  else if (name == "hyy2") src = &hyy2;
  else if (name == "gyy2") src = &gyy2;
  else if (name == "ga_bar") src = &ga_bar;
  else if (name == "ga") src = &ga;
  else throw InvalidArgument("unknown spectral profile '" + std::string(name) + "'");
  return {std::string(name), grid, *src};
}

SpectralBundle evaluate_spectra(const BivariateVarModel& model, const RestrictedModel& x_model,
                                const FrequencyGrid& grid, Execution exec) {
  const auto pts = evaluate(model, &x_model, grid, exec);
  SpectralBundle b;
  b.grid = grid;
  b.a_y = std::log(x_model.resid_var / model.var_y());
  const auto n = pts.size();
  for (auto* v : {&b.p_x, &b.p_y, &b.cross_mag, &b.dc_yx, &b.dc_yy, &b.gc, &b.gi, &b.hyy2,
                  &b.gyy2, &b.ga_bar, &b.ga}) {
    v->resize(n);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = pts[i];
    b.p_x[i] = p.p_x;
    b.p_y[i] = p.p_y;
    b.cross_mag[i] = p.cross_mag;
    b.dc_yx[i] = p.dc_yx;
    b.dc_yy[i] = p.dc_yy;
    b.gc[i] = p.gc;
    b.gi[i] = p.gi;
    b.hyy2[i] = p.hyy2;
    b.gyy2[i] = p.gyy2;
    b.ga_bar[i] = p.ga_bar;
    b.ga[i] = b.a_y + p.ga_bar;
  }
  return b;
}

}  // namespace gica

#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gica/frequency_grid.hpp"
#include "gica/report.hpp"
#include "gica/restricted.hpp"
#include "gica/var_model.hpp"

namespace gica {

enum class Execution { Serial, Parallel };

/// H(f) = (I - sum_k A_k e^{-j 2 pi f k})^{-1} at every grid point.
std::vector<Eigen::Matrix2cd> full_transfer(const BivariateVarModel& model,
                                            const FrequencyGrid& grid);

/// G(f) = [1 - Axx, -Axy; -Byx, 1]^{-1} of the mixed model formed by the X
/// equation of the full model and the restricted X-on-Y regression.
std::vector<Eigen::Matrix2cd> restricted_transfer_ga(const BivariateVarModel& model,
                                                     const RestrictedModel& x_model,
                                                     const FrequencyGrid& grid);

/// Mixed model of the X row of `model` and the restricted row of `restricted`
/// as a lag list (order max(p, q)).
BivariateVarModel mixed_model(const BivariateVarModel& model, const RestrictedModel& restricted);

struct PsdProfiles {
  SpectralProfile p_x;
  SpectralProfile p_y;
  SpectralProfile cross;
};

PsdProfiles psd(const BivariateVarModel& model, const FrequencyGrid& grid);

struct DirectedCoherence {
  SpectralProfile from_driver;  // |gamma_YX|^2
  SpectralProfile from_target;  // |gamma_YY|^2
};

DirectedCoherence directed_coherence(const BivariateVarModel& model, const FrequencyGrid& grid);

SpectralProfile spectral_gc(const BivariateVarModel& model, const FrequencyGrid& grid);

/// +inf wherever the causal power sx |Hyx|^2 is exactly zero.
SpectralProfile spectral_gi(const BivariateVarModel& model, const FrequencyGrid& grid);

struct GaProfiles {
  SpectralProfile ga_bar;  // ln(|Hyy|^2 / |Gyy|^2)
  SpectralProfile ga;      // A_Y + ga_bar
  double a_y = 0.0;
};

GaProfiles spectral_ga(const BivariateVarModel& model, const RestrictedModel& x_model,
                       const FrequencyGrid& grid);

struct TimeDomainMeasures {
  double f_xy = 0.0;
  double f_y = 0.0;
  double a_y = 0.0;
};

/// F_xy and A_y from residual variances; F_y by full-band integration of the
/// GI profile.
TimeDomainMeasures time_domain_measures(const Mat2& sigma, double var_y_given_y,
                                        double var_y_given_x, const SpectralProfile& gi);

/// Every spectral quantity of one model on one grid.
struct SpectralBundle {
  FrequencyGrid grid;
  std::vector<double> p_x, p_y, cross_mag, dc_yx, dc_yy, gc, gi, hyy2, gyy2, ga_bar, ga;
  double a_y = 0.0;

  SpectralProfile profile(std::string_view name) const;
  static const std::vector<std::string>& profile_names();
};

/// Evaluates the bundle in one pass over the grid. x_model must be the
/// restricted X-on-Y model of `model`; a_y = ln(x_model.resid_var / var_y).
SpectralBundle evaluate_spectra(const BivariateVarModel& model, const RestrictedModel& x_model,
                                const FrequencyGrid& grid,
                                Execution exec = Execution::Parallel);

}  // namespace gica

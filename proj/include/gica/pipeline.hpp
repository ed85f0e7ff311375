#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gica/report.hpp"
#include "gica/restricted.hpp"
#include "gica/spectral.hpp"
#include "gica/timeseries.hpp"
#include "gica/var_model.hpp"

namespace gica {

/// VLF [0.02, 0.07] Hz and LF [0.07, 0.2] Hz.
std::vector<Band> default_bands();

struct AnalysisOptions {
  int q = 20;
  std::size_t grid_points = 2049;
  std::vector<Band> bands = default_bands();
  Execution exec = Execution::Parallel;
  /// Recompute the restricted variances at 2q and warn on a relative shift
  /// above 1e-4.
  bool convergence_check = true;
};

struct ModelAnalysis {
  BivariateVarModel model;
  RestrictedModel ar;  // AR on Y
  RestrictedModel x;   // X on Y
  SpectralBundle spectra;
  MeasureReport report;
};

/// Restricted models, spectra, time-domain and band measures of a known
/// (fitted or theoretical) model.
ModelAnalysis analyze_model(const BivariateVarModel& model, double fs,
                            const AnalysisOptions& options);

struct OrderChoice {
  std::optional<int> fixed;  // empty: AIC
  int p_max = 14;
};

/// Fits the full model on a preconditioned pair (fixed order or AIC) and
/// analyzes it. The AIC curve is recorded in the report when used.
ModelAnalysis analyze_pair(const TimeSeriesPair& pair, const OrderChoice& order,
                           const AnalysisOptions& options);

/// Residual-correlation threshold above which the diagonal-Sigma convention
/// is flagged.
inline constexpr double kResidualCorrelationWarning = 0.2;

/// Largest accepted gap (nats) between a full-band spectral integral and its
/// time-domain value before the report carries a warning.
inline constexpr double kIntegralMismatchWarning = 1e-3;

}  // namespace gica

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gica/frequency_grid.hpp"

namespace gica {

enum class Tail { Upper, Lower, TwoSided };

enum class Hypothesis { H1, H2 };

/// Outcome of comparing one original value with its surrogate distribution.
struct SignificanceVerdict {
  std::string measure;  // "gc", "gi" or "ga"
  std::string scope;    // "time" or a band name
  Hypothesis hypothesis = Hypothesis::H1;
  Tail tail = Tail::Upper;
  double original = 0.0;
  /// Percentile thresholds in increasing percentile order (one for a
  /// one-sided tail, two for two-sided).
  std::vector<double> percentiles;
  std::vector<double> thresholds;
  bool significant = false;
};

struct BandValues {
  Band band;
  BandIntegral gc;
  BandIntegral gi;
  BandIntegral ga;
};

/// Time-domain and band-integrated GC / GI / GA for one bivariate model.
struct MeasureReport {
  int order = 0;
  int q = 0;
  double fs = 1.0;
  /// ln(var_y|y / var_y|xy)
  double f_xy = 0.0;
  /// 2 * integral of the spectral GI; +inf for an isolated target.
  double f_y = 0.0;
  /// ln(var_y|x / var_y|xy)
  double a_y = 0.0;
  /// Full-band integrals of the spectral GC and GA (consistency check
  /// against f_xy and a_y).
  double f_xy_spectral = 0.0;
  double a_y_spectral = 0.0;
  std::vector<BandValues> bands;
  std::vector<std::string> warnings;
  std::vector<SignificanceVerdict> significance;
  std::optional<std::vector<double>> aic;
};

}  // namespace gica

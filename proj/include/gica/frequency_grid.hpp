#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace gica {

/// Uniform normalized frequencies 0 .. 0.5 inclusive. fs (Hz) is only used to
/// report frequencies in physical units.
struct FrequencyGrid {
  std::vector<double> values;
  double fs = 1.0;

  static FrequencyGrid uniform(std::size_t n_points, double fs = 1.0);

  std::size_t size() const { return values.size(); }
  double step() const { return values[1] - values[0]; }
  double hz(std::size_t i) const { return values[i] * fs; }
  /// Index of the grid point closest to f_hz.
  std::size_t nearest(double f_hz) const;
};

/// One real value per grid point for a named measure.
struct SpectralProfile {
  std::string name;
  FrequencyGrid grid;
  std::vector<double> values;
};

struct Band {
  std::string name;
  double lo_hz = 0.0;
  double hi_hz = 0.0;
};

struct BandIntegral {
  /// 2 * integral over the band in normalized frequency (nats for log
  /// measures). Over [0, fs/2] this is the time-domain counterpart.
  double integral = 0.0;
  /// integral / (2 (hi - lo) / fs): the average value over the band.
  double mean = 0.0;
};

/// Trapezoid rule on the profile grid, with linear interpolation at band
/// edges that fall between grid points. Any +inf inside the band yields +inf.
BandIntegral integrate_band(const SpectralProfile& profile, double lo_hz, double hi_hz);

/// Full band [0, fs/2].
double integrate_full(const SpectralProfile& profile);

}  // namespace gica

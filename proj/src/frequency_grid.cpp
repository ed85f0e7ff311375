#include "gica/frequency_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gica/error.hpp"

namespace gica {

FrequencyGrid FrequencyGrid::uniform(std::size_t n_points, double fs) {
  if (n_points < 2) throw InvalidArgument("frequency grid needs at least 2 points");
  if (!(fs > 0.0)) throw InvalidArgument("sampling frequency must be positive");
  FrequencyGrid grid;
  grid.fs = fs;
  grid.values.resize(n_points);
  const double last = static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) {
    grid.values[i] = 0.5 * static_cast<double>(i) / last;
  }
  grid.values.back() = 0.5;
  return grid;
}

std::size_t FrequencyGrid::nearest(double f_hz) const {
  const double f = std::clamp(f_hz / fs, 0.0, 0.5);
  const auto i = static_cast<std::size_t>(std::lround(f / step()));
  return std::min(i, size() - 1);
}

BandIntegral integrate_band(const SpectralProfile& profile, double lo_hz, double hi_hz) {
  const auto& grid = profile.grid;
  const double nyquist = grid.fs / 2.0;
  if (!(lo_hz >= 0.0) || !(hi_hz <= nyquist)) {
    throw InvalidArgument("band must lie within [0, fs/2]");
  }
  if (!(lo_hz < hi_hz)) throw InvalidArgument("band must satisfy lo < hi");
  if (profile.values.size() != grid.size()) {
    throw InvalidArgument("profile and grid sizes differ");
  }

  const double lo = lo_hz / grid.fs;
  const double hi = hi_hz / grid.fs;
  const auto& f = grid.values;
  const auto& v = profile.values;
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    const double a = std::max(lo, f[i]);
    const double b = std::min(hi, f[i + 1]);
    if (!(b > a)) continue;
    if (std::isinf(v[i]) || std::isinf(v[i + 1])) {
      const double inf = std::numeric_limits<double>::infinity();
      return {inf, inf};
    }
    const double width = f[i + 1] - f[i];
    const double va = v[i] + (v[i + 1] - v[i]) * (a - f[i]) / width;
    const double vb = v[i] + (v[i + 1] - v[i]) * (b - f[i]) / width;
    area += 0.5 * (va + vb) * (b - a);
  }
  const double integral = 2.0 * area;
  return {integral, integral / (2.0 * (hi - lo))};
}

double integrate_full(const SpectralProfile& profile) {
  return integrate_band(profile, 0.0, profile.grid.fs / 2.0).integral;
}

}  // namespace gica

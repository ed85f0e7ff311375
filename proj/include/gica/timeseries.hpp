#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gica {

/// Two synchronous real-valued series: x is the putative driver, y the
/// target. Units are arbitrary; fs is the sampling frequency in Hz.
struct TimeSeriesPair {
  std::vector<double> x;
  std::vector<double> y;
  double fs = 1.0;

  std::size_t size() const { return x.size(); }

  /// Throws DataError unless lengths match, N >= 2, every sample is finite
  /// and fs > 0.
  void validate() const;
};

/// Selects the two columns of a CSV file. Each entry is either a header
/// name or a 0-based column index.
struct ColumnSpec {
  std::string x = "0";
  std::string y = "1";
};

/// Reads a comma separated file. A first line that does not parse as
/// numbers is treated as a header. Errors name the offending line
/// (1-based, counting the header) and column.
TimeSeriesPair load_pair(const std::filesystem::path& path, double fs,
                         const ColumnSpec& columns = {});

/// Writes "x,y" plus one row per sample with 15 significant digits.
void write_pair(const std::filesystem::path& path, const TimeSeriesPair& pair);

std::vector<double> remove_mean(std::span<const double> series);

/// Zero-phase high-pass: a first-order recursive high-pass run forward and
/// then backward over a reflect-padded copy of the series.
std::vector<double> highpass_detrend(std::span<const double> series, double fs,
                                     double cutoff_hz);

/// Optional detrend of both channels followed by mean removal.
TimeSeriesPair precondition(const TimeSeriesPair& pair,
                            std::optional<double> detrend_cutoff_hz);

}  // namespace gica

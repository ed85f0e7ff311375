#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gica/pipeline.hpp"
#include "gica/timeseries.hpp"
#include "gica/var_model.hpp"

namespace gica {

/// OpenLoop:     X = ax1 X1 + ax2 X2 + U;          Y = ay1 Y1 + ay2 Y2 - c X1 + V
/// ClosedLoop:   as OpenLoop plus -d Y1 in the X equation
/// Confounded:   Y = ay1 Y1 + ay2 Y2 - 0.8 X1 - a Z1 + V, Z an AR(2) at 0.2 Hz
/// SupplementS2: OpenLoop with (b, c) fixed by setting i..iv
/// Poles: rho_x = 0.9 at 0.3, rho_y = 0.8 b at 0.1, rho_z = 0.8 at 0.2
/// (normalized frequency); unit-variance independent innovations.
enum class System { OpenLoop, ClosedLoop, Confounded, SupplementS2 };

std::string_view to_string(System s);
System system_from_string(std::string_view name);

struct SimSpec {
  System system = System::OpenLoop;
  double b = 1.0;
  double c = 0.5;
  double d = 0.0;
  double a = 0.0;
  /// SupplementS2 only: 'i' (b=0, c=0), 'ii' (1, 0), 'iii' (0, 1), 'iv' (1, 1).
  std::string setting = "i";
  std::size_t n = 500;
  std::uint64_t seed = 0;
  std::size_t burn_in = 1000;
  double fs = 1.0;

  /// Parameters in [0, 1]; SupplementS2 setting resolved into b and c.
  SimSpec resolved() const;
};

inline constexpr double kRhoX = 0.9, kFreqX = 0.3;
inline constexpr double kRhoY = 0.8, kFreqY = 0.1;
inline constexpr double kRhoZ = 0.8, kFreqZ = 0.2;
inline constexpr double kConfoundedDriveXY = 0.8;

/// True two-process model (OpenLoop, ClosedLoop, SupplementS2).
BivariateVarModel build_true_model(const SimSpec& spec);

/// Lag matrices (3 x 3, order [X, Y, Z]) of the confounded system.
std::vector<Eigen::MatrixXd> build_confounded_lags(const SimSpec& spec);

/// Realization of length n after burn_in discarded samples, driven by
/// independent standard normal noise from Rng(seed). Only X and Y are
/// returned for the confounded system.
TimeSeriesPair simulate(const SimSpec& spec);

/// Exact profiles and measures from the true parameters (no estimation).
ModelAnalysis theoretical_profiles(const SimSpec& spec, const AnalysisOptions& options);

struct ConfoundedStudy {
  FrequencyGrid grid;
  std::vector<double> gc, gi, ga;  // pointwise averages over successful runs
  int runs_ok = 0;
  int runs_failed = 0;
  std::vector<int> orders;  // selected order per run (0 on failure)
};

/// Per run: simulate the confounded system with seed derive_seed(seed, run),
/// precondition, fit with AIC up to p_max, evaluate spectra; average the GC,
/// GI and GA profiles in run order.
ConfoundedStudy run_confounded_study(double a, double b, int n_runs, std::size_t n,
                                     std::uint64_t seed, const AnalysisOptions& options,
                                     int p_max = 14);

}  // namespace gica

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gica/pipeline.hpp"
#include "gica/simulators.hpp"
#include "gica/surrogate.hpp"
#include "gica/timeseries.hpp"

namespace gica::cli {

struct AnalysisConfig {
  std::filesystem::path input;
  ColumnSpec columns;
  double fs = 1.0;
  std::optional<double> detrend_cutoff_hz = 0.0156;
  OrderChoice order;
  /// Use this model instead of fitting (data still needed for surrogates).
  std::optional<std::filesystem::path> model_path;
  AnalysisOptions analysis;
  int n_surrogates = 0;  // 0: no surrogate testing
  double alpha = 0.05;
  std::uint64_t seed = 0;
  bool test_h1 = true;
  bool test_h2 = true;
  std::filesystem::path out_dir = "gica_out";
  bool plot_data = false;
};

struct SimulateConfig {
  SimSpec spec;
  std::filesystem::path out = "pair.csv";
};

struct Sweep {
  std::string parameter;  // b, c or d
  std::vector<double> values;
};

struct TheoreticalConfig {
  SimSpec spec;
  AnalysisOptions analysis;
  std::optional<Sweep> sweep;
  std::filesystem::path out_dir = "profiles";
  bool plot_data = false;
};

struct ConfoundedConfig {
  double a = 0.0;
  double b = 0.0;
  int runs = 100;
  std::size_t n = 500;
  std::uint64_t seed = 0;
  int p_max = 14;
  AnalysisOptions analysis;
  std::filesystem::path out_dir = "confounded";
};

/// Each command returns a process exit status and reports failures on `err`
/// with the failing stage named.
int cmd_analyze(const AnalysisConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateConfig& config, std::ostream& out, std::ostream& err);
int cmd_theoretical(const TheoreticalConfig& config, std::ostream& out, std::ostream& err);
int cmd_confounded_study(const ConfoundedConfig& config, std::ostream& out, std::ostream& err);

/// One-screen table of time-domain and per-band values (band means, 4
/// decimals, '*' marks significance, infinities as "inf (isolated)").
void print_summary(const MeasureReport& report, std::ostream& out);

/// Parses argv and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gica::cli

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gica/pipeline.hpp"
#include "gica/report.hpp"
#include "gica/timeseries.hpp"

namespace gica {

std::string_view to_string(Hypothesis h);
std::string_view to_string(Tail t);

/// H1: no coupling X -> Y (Y regenerated from its own past only).
/// H2: no internal Y dynamics (Y regenerated from the past of X only).
struct SurrogateConfig {
  int n_surrogates = 100;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  Hypothesis hypothesis = Hypothesis::H1;
  /// Lag of the restricted least-squares regression for Y.
  int q = 20;
  /// Samples discarded before the retained pass.
  int burn_in = 100;

  void validate() const;
};

/// Surrogate generator: X equation of the fitted full model plus the
/// restricted Y equation fitted by least squares, driven by shuffled
/// residuals.
struct SurrogateGenerator {
  BivariateVarModel model;  // mixed model, order max(p, q)
  std::vector<double> residuals_x;
  std::vector<double> residuals_y;
  double fs = 1.0;
  std::size_t length = 0;

  /// Surrogate number `index`; its permutations come from
  /// derive_seed(seed, index) only.
  TimeSeriesPair generate(std::uint64_t seed, std::uint64_t index, int burn_in) const;
};

/// Fits the generator on a preconditioned pair. Throws UnstableModel when the
/// fitted generator is unstable.
SurrogateGenerator build_surrogate_generator(const TimeSeriesPair& pair, int order,
                                             const SurrogateConfig& config);

std::vector<TimeSeriesPair> generate_surrogates(const TimeSeriesPair& pair, int order,
                                                const SurrogateConfig& config);

/// Linear interpolation between closest order statistics (position
/// (n - 1) * pct / 100).
double percentile(std::span<const double> values, double pct);

/// Compares one original value with its surrogate distribution.
/// GC: significant above the 100(1 - alpha) percentile of H1 surrogates.
/// GI: significant below the 100 alpha percentile of H1 surrogates (+inf is
/// never significant). GA: significant outside [100 alpha/2, 100 (1 - alpha/2)]
/// of H2 surrogates. Throws InvalidArgument on a measure/hypothesis mismatch.
SignificanceVerdict test_measure(std::string_view measure, std::string_view scope,
                                 double original, std::span<const double> surrogate_values,
                                 Hypothesis hypothesis, double alpha);

/// Verdicts for every applicable measure (time domain and each band) of one
/// hypothesis.
std::vector<SignificanceVerdict> significance_test(const MeasureReport& original,
                                                   const std::vector<MeasureReport>& surrogates,
                                                   const SurrogateConfig& config);

/// Generates surrogates, analyzes each one with the original order, and
/// returns their reports (index order).
std::vector<MeasureReport> surrogate_reports(const TimeSeriesPair& pair, int order,
                                             const SurrogateConfig& config,
                                             const AnalysisOptions& options);

}  // namespace gica

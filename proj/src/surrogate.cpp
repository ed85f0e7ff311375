#include "gica/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "gica/error.hpp"
#include "gica/rng.hpp"
#include "gica/spectral.hpp"

namespace gica {

std::string_view to_string(Hypothesis h) { return h == Hypothesis::H1 ? "h1" : "h2"; }

std::string_view to_string(Tail t) {
  switch (t) {
    case Tail::Upper: return "upper";
    case Tail::Lower: return "lower";
    case Tail::TwoSided: return "two-sided";
  }
  return "upper";
}

void SurrogateConfig::validate() const {
  if (n_surrogates < 20) throw InvalidArgument("at least 20 surrogates required");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  if (q < 1) throw InvalidArgument("surrogate restricted lag must be >= 1");
  if (burn_in < 0) throw InvalidArgument("burn-in must be non-negative");
}

namespace {

std::vector<double> x_row_residuals(const TimeSeriesPair& pair, const BivariateVarModel& model) {
  const auto p = static_cast<std::size_t>(model.order());
  std::vector<double> resid;
  resid.reserve(pair.size() - p);
  for (std::size_t t = p; t < pair.size(); ++t) {
    double pred = 0.0;
    for (std::size_t k = 1; k <= p; ++k) {
      pred += model.A[k - 1](0, 0) * pair.x[t - k] + model.A[k - 1](0, 1) * pair.y[t - k];
    }
    resid.push_back(pair.x[t] - pred);
  }
  return resid;
}

}  // namespace

SurrogateGenerator build_surrogate_generator(const TimeSeriesPair& pair, int order,
                                             const SurrogateConfig& config) {
  config.validate();
  const auto full = fit_var(pair, order);
  const auto kind =
      config.hypothesis == Hypothesis::H1 ? RestrictedKind::ArOnY : RestrictedKind::XOnY;
  auto restricted = fit_restricted_least_squares(pair, kind, config.q);

  SurrogateGenerator gen;
  gen.model = mixed_model(full, restricted.model);
  const double radius = spectral_radius(companion_matrix(gen.model));
  if (!(radius < 1.0)) {
    throw UnstableModel("surrogate generator for " + std::string(to_string(config.hypothesis)) +
                        " is unstable (spectral radius " + std::to_string(radius) + ")");
  }
  gen.residuals_x = x_row_residuals(pair, full);
  gen.residuals_y = std::move(restricted.residuals);
  gen.fs = pair.fs;
  gen.length = pair.size();
  return gen;
}

TimeSeriesPair SurrogateGenerator::generate(std::uint64_t seed, std::uint64_t index,
                                            int burn_in) const {
  Rng rng(derive_seed(seed, index));
  std::vector<double> ux = residuals_x;
  std::vector<double> uy = residuals_y;
  rng.shuffle(std::span<double>(ux));
  rng.shuffle(std::span<double>(uy));

  const auto order = static_cast<std::size_t>(model.order());
  const auto total = static_cast<std::size_t>(burn_in) + length;
  std::vector<double> x(total, 0.0);
  std::vector<double> y(total, 0.0);
  for (std::size_t t = 0; t < total; ++t) {
    // Burn-in cycles through the permuted residuals; the retained samples
    // start a fresh pass.
    const std::size_t r = t < static_cast<std::size_t>(burn_in) ? t : t - burn_in;
    double xs = ux[r % ux.size()];
    double ys = uy[r % uy.size()];
    for (std::size_t k = 1; k <= std::min(order, t); ++k) {
      const auto& a = model.A[k - 1];
      xs += a(0, 0) * x[t - k] + a(0, 1) * y[t - k];
      ys += a(1, 0) * x[t - k] + a(1, 1) * y[t - k];
    }
    x[t] = xs;
    y[t] = ys;
  }
  TimeSeriesPair out;
  out.fs = fs;
  out.x.assign(x.begin() + burn_in, x.end());
  out.y.assign(y.begin() + burn_in, y.end());
  return out;
}

std::vector<TimeSeriesPair> generate_surrogates(const TimeSeriesPair& pair, int order,
                                                const SurrogateConfig& config) {
  const auto gen = build_surrogate_generator(pair, order, config);
  std::vector<TimeSeriesPair> out(static_cast<std::size_t>(config.n_surrogates));
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = gen.generate(config.seed, static_cast<std::uint64_t>(i), config.burn_in);
  }
  return out;
}

double percentile(std::span<const double> values, double pct) {
  if (values.empty()) throw InvalidArgument("percentile of an empty distribution");
  if (!(pct >= 0.0 && pct <= 100.0)) throw InvalidArgument("percentile must lie in [0, 100]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = (static_cast<double>(sorted.size()) - 1.0) * pct / 100.0;
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  if (frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

SignificanceVerdict test_measure(std::string_view measure, std::string_view scope,
                                 double original, std::span<const double> surrogate_values,
                                 Hypothesis hypothesis, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  if (surrogate_values.empty()) throw InvalidArgument("empty surrogate distribution");
  SignificanceVerdict v;
  v.measure = std::string(measure);
  v.scope = std::string(scope);
  v.hypothesis = hypothesis;
  v.original = original;
  const bool causal_measure = measure == "gc" || measure == "gi";
  if (measure == "ga") {
    if (hypothesis != Hypothesis::H2) {
      throw InvalidArgument("GA must be tested against H2 surrogates");
    }
  } else if (causal_measure) {
    if (hypothesis != Hypothesis::H1) {
      throw InvalidArgument(std::string(measure) + " must be tested against H1 surrogates");
    }
  } else {
    throw InvalidArgument("unknown measure '" + std::string(measure) + "'");
  }

  if (measure == "gc") {
    v.tail = Tail::Upper;
    v.percentiles = {100.0 * (1.0 - alpha)};
  } else if (measure == "gi") {
    v.tail = Tail::Lower;
    v.percentiles = {100.0 * alpha};
  } else {
    v.tail = Tail::TwoSided;
    v.percentiles = {100.0 * alpha / 2.0, 100.0 * (1.0 - alpha / 2.0)};
  }
  for (double pct : v.percentiles) v.thresholds.push_back(percentile(surrogate_values, pct));

  switch (v.tail) {
    case Tail::Upper: v.significant = original > v.thresholds[0]; break;
    // +inf (isolated target) is never below a finite threshold.
    case Tail::Lower: v.significant = original < v.thresholds[0]; break;
    case Tail::TwoSided:
      v.significant = original < v.thresholds[0] || original > v.thresholds[1];
      break;
  }
  return v;
}

std::vector<SignificanceVerdict> significance_test(const MeasureReport& original,
                                                   const std::vector<MeasureReport>& surrogates,
                                                   const SurrogateConfig& config) {
  if (surrogates.empty()) throw InvalidArgument("no surrogate reports");
  const std::vector<std::string> measures =
      config.hypothesis == Hypothesis::H1 ? std::vector<std::string>{"gc", "gi"}
                                          : std::vector<std::string>{"ga"};
  const auto time_value = [](const MeasureReport& r, const std::string& m) {
    return m == "gc" ? r.f_xy : m == "gi" ? r.f_y : r.a_y;
  };
  const auto band_value = [](const BandValues& b, const std::string& m) {
    return (m == "gc" ? b.gc : m == "gi" ? b.gi : b.ga).integral;
  };

  std::vector<SignificanceVerdict> verdicts;
  std::vector<double> dist(surrogates.size());
  for (const auto& m : measures) {
    for (std::size_t s = 0; s < surrogates.size(); ++s) dist[s] = time_value(surrogates[s], m);
    verdicts.push_back(
        test_measure(m, "time", time_value(original, m), dist, config.hypothesis, config.alpha));
    for (std::size_t b = 0; b < original.bands.size(); ++b) {
      for (std::size_t s = 0; s < surrogates.size(); ++s) {
        if (surrogates[s].bands.size() != original.bands.size()) {
          throw InvalidArgument("surrogate reports use different bands");
        }
        dist[s] = band_value(surrogates[s].bands[b], m);
      }
      verdicts.push_back(test_measure(m, original.bands[b].band.name,
                                      band_value(original.bands[b], m), dist, config.hypothesis,
                                      config.alpha));
    }
  }
  return verdicts;
}

std::vector<MeasureReport> surrogate_reports(const TimeSeriesPair& pair, int order,
                                             const SurrogateConfig& config,
                                             const AnalysisOptions& options) {
  const auto gen = build_surrogate_generator(pair, order, config);
  AnalysisOptions inner = options;
  inner.exec = Execution::Serial;  // parallelism is across surrogates
  inner.convergence_check = false;

  const auto n = static_cast<std::ptrdiff_t>(config.n_surrogates);
  std::vector<MeasureReport> reports(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      const auto s = precondition(
          gen.generate(config.seed, static_cast<std::uint64_t>(i), config.burn_in), std::nullopt);
      reports[i] = analyze_pair(s, OrderChoice{order, order}, inner).report;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return reports;
}

}  // namespace gica

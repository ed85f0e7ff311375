#include "gica/simulators.hpp"

#include <exception>
#include <string>

#include "gica/error.hpp"
#include "gica/rng.hpp"

namespace gica {

std::string_view to_string(System s) {
  switch (s) {
    case System::OpenLoop: return "open_loop";
    case System::ClosedLoop: return "closed_loop";
    case System::Confounded: return "confounded";
    case System::SupplementS2: return "supplement_s2";
  }
  return "open_loop";
}

System system_from_string(std::string_view name) {
  if (name == "open_loop") return System::OpenLoop;
  if (name == "closed_loop") return System::ClosedLoop;
  if (name == "confounded") return System::Confounded;
  if (name == "supplement_s2") return System::SupplementS2;
  throw InvalidArgument("unknown system '" + std::string(name) + "'");
}

SimSpec SimSpec::resolved() const {
  SimSpec s = *this;
  if (system == System::SupplementS2) {
    if (setting == "i") { s.b = 0.0; s.c = 0.0; }
    else if (setting == "ii") { s.b = 1.0; s.c = 0.0; }
    else if (setting == "iii") { s.b = 0.0; s.c = 1.0; }
    else if (setting == "iv") { s.b = 1.0; s.c = 1.0; }
    else throw InvalidArgument("supplement setting must be one of i, ii, iii, iv");
    s.d = 0.0;
  }
  for (const auto& [name, v] : {std::pair{"b", s.b}, {"c", s.c}, {"d", s.d}, {"a", s.a}}) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InvalidArgument(std::string("parameter ") + name + " must lie in [0, 1]");
    }
  }
  if (s.n < 2) throw InvalidArgument("realization length must be >= 2");
  return s;
}

BivariateVarModel build_true_model(const SimSpec& spec) {
  const auto s = spec.resolved();
  if (s.system == System::Confounded) {
    throw InvalidArgument("the confounded system has three processes; use build_confounded_lags");
  }
  const auto ax = poles_to_ar_coeffs(kRhoX, kFreqX);
  const auto ay = poles_to_ar_coeffs(kRhoY * s.b, kFreqY);
  BivariateVarModel m;
  m.A.assign(2, Mat2::Zero());
  m.A[0] << ax.a1, (s.system == System::ClosedLoop ? -s.d : 0.0), -s.c, ay.a1;
  m.A[1] << ax.a2, 0.0, 0.0, ay.a2;
  m.sigma = Mat2::Identity();
  require_stable(m, "simulated system");
  return m;
}

std::vector<Eigen::MatrixXd> build_confounded_lags(const SimSpec& spec) {
  const auto s = spec.resolved();
  const auto ax = poles_to_ar_coeffs(kRhoX, kFreqX);
  const auto ay = poles_to_ar_coeffs(kRhoY * s.b, kFreqY);
  const auto az = poles_to_ar_coeffs(kRhoZ, kFreqZ);
  std::vector<Eigen::MatrixXd> lags(2, Eigen::MatrixXd::Zero(3, 3));
  lags[0](0, 0) = ax.a1;
  lags[1](0, 0) = ax.a2;
  lags[0](1, 1) = ay.a1;
  lags[1](1, 1) = ay.a2;
  lags[0](1, 0) = -kConfoundedDriveXY;
  lags[0](1, 2) = -s.a;
  lags[0](2, 2) = az.a1;
  lags[1](2, 2) = az.a2;
  if (!(spectral_radius(companion_matrix(lags)) < 1.0)) {
    throw UnstableModel("confounded system is unstable");
  }
  return lags;
}

namespace {

// Unit-variance Gaussian VAR driven by one Rng stream (channel order per step).
std::vector<Eigen::VectorXd> simulate_var(const std::vector<Eigen::MatrixXd>& lags,
                                          std::size_t n, std::size_t burn_in,
                                          std::uint64_t seed) {
  const auto k = lags.front().rows();
  const std::size_t p = lags.size();
  const std::size_t total = n + burn_in;
  Rng rng(seed);
  std::vector<Eigen::VectorXd> s(total, Eigen::VectorXd::Zero(k));
  for (std::size_t t = 0; t < total; ++t) {
    Eigen::VectorXd v(k);
    for (Eigen::Index c = 0; c < k; ++c) v(c) = rng.normal();
    for (std::size_t l = 1; l <= std::min(p, t); ++l) v += lags[l - 1] * s[t - l];
    s[t] = v;
  }
  return {s.begin() + static_cast<std::ptrdiff_t>(burn_in), s.end()};
}

}  // namespace

TimeSeriesPair simulate(const SimSpec& spec) {
  const auto s = spec.resolved();
  std::vector<Eigen::MatrixXd> lags;
  if (s.system == System::Confounded) {
    lags = build_confounded_lags(s);
  } else {
    const auto m = build_true_model(s);
    lags.assign(m.A.begin(), m.A.end());
  }
  const auto states = simulate_var(lags, s.n, s.burn_in, s.seed);
  TimeSeriesPair pair;
  pair.fs = s.fs;
  pair.x.reserve(s.n);
  pair.y.reserve(s.n);
  for (const auto& st : states) {
    pair.x.push_back(st(0));
    pair.y.push_back(st(1));
  }
  return pair;
}

ModelAnalysis theoretical_profiles(const SimSpec& spec, const AnalysisOptions& options) {
  if (spec.system == System::Confounded) {
    throw InvalidArgument("theoretical profiles are defined for two-process systems only");
  }
  return analyze_model(build_true_model(spec), spec.fs, options);
}

ConfoundedStudy run_confounded_study(double a, double b, int n_runs, std::size_t n,
                                     std::uint64_t seed, const AnalysisOptions& options,
                                     int p_max) {
  if (n_runs < 1) throw InvalidArgument("n_runs must be >= 1");
  SimSpec spec;
  spec.system = System::Confounded;
  spec.a = a;
  spec.b = b;
  spec.n = n;
  spec = spec.resolved();

  AnalysisOptions inner = options;
  inner.exec = Execution::Serial;  // parallel across runs
  inner.convergence_check = false;

  const auto runs = static_cast<std::size_t>(n_runs);
  std::vector<SpectralBundle> bundles(runs);
  std::vector<int> orders(runs, 0);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(runs); ++r) {
    try {
      SimSpec run = spec;
      run.seed = derive_seed(seed, static_cast<std::uint64_t>(r));
      const auto pair = precondition(simulate(run), std::nullopt);
      auto analysis = analyze_pair(pair, OrderChoice{std::nullopt, p_max}, inner);
      orders[r] = analysis.model.order();
      bundles[r] = std::move(analysis.spectra);
    } catch (const Error&) {
      orders[r] = 0;
    }
  }

  ConfoundedStudy study;
  study.grid = FrequencyGrid::uniform(options.grid_points, spec.fs);
  const auto m = study.grid.size();
  study.gc.assign(m, 0.0);
  study.gi.assign(m, 0.0);
  study.ga.assign(m, 0.0);
  for (std::size_t r = 0; r < runs; ++r) {
    if (orders[r] == 0) {
      ++study.runs_failed;
      continue;
    }
    ++study.runs_ok;
    for (std::size_t i = 0; i < m; ++i) {
      study.gc[i] += bundles[r].gc[i];
      study.gi[i] += bundles[r].gi[i];
      study.ga[i] += bundles[r].ga[i];
    }
  }
  if (study.runs_ok > 0) {
    const double inv = 1.0 / study.runs_ok;
    for (std::size_t i = 0; i < m; ++i) {
      study.gc[i] *= inv;
      study.gi[i] *= inv;
      study.ga[i] *= inv;
    }
  }
  study.orders = std::move(orders);
  return study;
}

}  // namespace gica

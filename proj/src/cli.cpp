#include "gica/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "gica/error.hpp"
#include "gica/rng.hpp"
#include "gica/serialization.hpp"

namespace gica::cli {
namespace fs = std::filesystem;

namespace {

// Runs one pipeline stage, prefixing any failure with the stage name.
template <typename F>
auto stage(const char* name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const std::exception& e) {
    throw Error(std::string(name) + ": " + e.what());
  }
}

std::string fmt_nats(double v) {
  if (std::isinf(v)) return v > 0 ? "inf (isolated)" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create directory '" + dir.string() + "': " + ec.message());
}

void write_profiles(const fs::path& dir, const SpectralBundle& spectra, bool plot_data) {
  std::vector<SpectralProfile> all;
  for (const auto& name : SpectralBundle::profile_names()) {
    all.push_back(spectra.profile(name));
    write_profile_csv(dir / (name + ".csv"), all.back());
  }
  if (plot_data) write_plot_data(dir / "plot_data.txt", all);
}

void write_analysis(const fs::path& dir, const ModelAnalysis& analysis, bool plot_data) {
  ensure_dir(dir);
  write_json(dir / "report.json", to_json(analysis.report));
  write_json(dir / "model.json", to_json(analysis.model));
  write_json(dir / "restricted_ar.json", to_json(analysis.ar));
  write_json(dir / "restricted_x.json", to_json(analysis.x));
  write_profiles(dir, analysis.spectra, plot_data);
}

const SignificanceVerdict* find_verdict(const MeasureReport& r, const std::string& measure,
                                        const std::string& scope) {
  for (const auto& v : r.significance) {
    if (v.measure == measure && v.scope == scope) return &v;
  }
  return nullptr;
}

std::uint64_t env_seed_or(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("GICA_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InvalidArgument(std::string("GICA_SEED is not an unsigned integer: ") + env);
    }
  }
  return 0;
}

std::string csv_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Band parse_band(const std::string& text) {
  std::stringstream ss(text);
  std::string name, lo, hi;
  if (!std::getline(ss, name, ':') || !std::getline(ss, lo, ':') || !std::getline(ss, hi)) {
    throw InvalidArgument("band must be NAME:LO_HZ:HI_HZ, got '" + text + "'");
  }
  return {name, std::stod(lo), std::stod(hi)};
}

Sweep parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw InvalidArgument("sweep must be PARAM=v1,v2,...");
  Sweep s;
  s.parameter = text.substr(0, eq);
  if (s.parameter != "b" && s.parameter != "c" && s.parameter != "d") {
    throw InvalidArgument("sweep parameter must be b, c or d");
  }
  std::stringstream ss(text.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ',')) s.values.push_back(std::stod(item));
  if (s.values.empty()) throw InvalidArgument("sweep needs at least one value");
  return s;
}

}  // namespace

void print_summary(const MeasureReport& report, std::ostream& out) {
  const auto mark = [&](const std::string& m, const std::string& scope) {
    const auto* v = find_verdict(report, m, scope);
    return v == nullptr ? std::string(" ") : v->significant ? std::string("*") : std::string(" ");
  };
  out << "order p = " << report.order << ", q = " << report.q << ", fs = " << report.fs
      << " Hz\n";
  out << std::left << std::setw(10) << "scope" << std::setw(18) << "GC X->Y" << std::setw(18)
      << "GI Y" << std::setw(18) << "GA Y" << '\n';
  out << std::setw(10) << "time" << std::setw(18) << (fmt_nats(report.f_xy) + mark("gc", "time"))
      << std::setw(18) << (fmt_nats(report.f_y) + mark("gi", "time")) << std::setw(18)
      << (fmt_nats(report.a_y) + mark("ga", "time")) << '\n';
  for (const auto& b : report.bands) {
    const auto& n = b.band.name;
    out << std::setw(10) << n << std::setw(18) << (fmt_nats(b.gc.mean) + mark("gc", n))
        << std::setw(18) << (fmt_nats(b.gi.mean) + mark("gi", n)) << std::setw(18)
        << (fmt_nats(b.ga.mean) + mark("ga", n)) << '\n';
  }
  out << "(nats; band rows are band means; * significant vs surrogates)\n";
  for (const auto& w : report.warnings) out << "warning: " << w << '\n';
}

int cmd_analyze(const AnalysisConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const auto raw = stage("load", [&] { return load_pair(config.input, config.fs, config.columns); });
    const auto pair = stage("precondition", [&] { return precondition(raw, config.detrend_cutoff_hz); });

    auto analysis = stage("fit", [&] {
      if (config.model_path) {
        return analyze_model(model_from_json(read_json(*config.model_path)), pair.fs,
                             config.analysis);
      }
      return analyze_pair(pair, config.order, config.analysis);
    });
    auto& report = analysis.report;

    if (config.n_surrogates > 0) {
      stage("surrogates", [&] {
        for (const auto h : {Hypothesis::H1, Hypothesis::H2}) {
          if ((h == Hypothesis::H1 && !config.test_h1) || (h == Hypothesis::H2 && !config.test_h2)) {
            continue;
          }
          SurrogateConfig sc;
          sc.n_surrogates = config.n_surrogates;
          sc.alpha = config.alpha;
          sc.seed = derive_seed(config.seed, h == Hypothesis::H1 ? 1 : 2);
          sc.hypothesis = h;
          sc.q = config.analysis.q;
          const auto reports = surrogate_reports(pair, report.order, sc, config.analysis);
          const auto verdicts = significance_test(report, reports, sc);
          report.significance.insert(report.significance.end(), verdicts.begin(), verdicts.end());
        }
      });
    }

    stage("write", [&] { write_analysis(config.out_dir, analysis, config.plot_data); });
    print_summary(report, out);
    return 0;
  } catch (const std::exception& e) {
    err << "gica analyze: " << e.what() << '\n';
    return 1;
  }
}

int cmd_simulate(const SimulateConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const auto pair = stage("simulate", [&] { return simulate(config.spec); });
    stage("write", [&] {
      if (config.out.has_parent_path()) ensure_dir(config.out.parent_path());
      write_pair(config.out, pair);
    });
    out << "wrote " << pair.size() << " samples of " << to_string(config.spec.system) << " to "
        << config.out.string() << '\n';
    return 0;
  } catch (const std::exception& e) {
    err << "gica simulate: " << e.what() << '\n';
    return 1;
  }
}

int cmd_theoretical(const TheoreticalConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (!config.sweep) {
      const auto analysis =
          stage("theoretical", [&] { return theoretical_profiles(config.spec, config.analysis); });
      stage("write", [&] { write_analysis(config.out_dir, analysis, config.plot_data); });
      print_summary(analysis.report, out);
      return 0;
    }
    const auto& sweep = *config.sweep;
    ensure_dir(config.out_dir);
    std::ostringstream summary;
    summary << "parameter,value,F_xy,F_y,A_y\n";
    for (double v : sweep.values) {
      SimSpec spec = config.spec;
      if (sweep.parameter == "b") spec.b = v;
      else if (sweep.parameter == "c") spec.c = v;
      else spec.d = v;
      const auto analysis =
          stage("theoretical", [&] { return theoretical_profiles(spec, config.analysis); });
      char dir[64];
      std::snprintf(dir, sizeof dir, "%s_%g", sweep.parameter.c_str(), v);
      stage("write", [&] { write_analysis(config.out_dir / dir, analysis, config.plot_data); });
      char line[256];
      std::snprintf(line, sizeof line, "%s,%.17g,", sweep.parameter.c_str(), v);
      summary << line << csv_number(analysis.report.f_xy) << ','
              << csv_number(analysis.report.f_y) << ',' << csv_number(analysis.report.a_y)
              << '\n';
    }
    stage("write", [&] {
      std::ofstream f(config.out_dir / "sweep_summary.csv");
      if (!f) throw DataError("cannot write sweep_summary.csv");
      f << summary.str();
    });
    out << summary.str();
    return 0;
  } catch (const std::exception& e) {
    err << "gica theoretical: " << e.what() << '\n';
    return 1;
  }
}

int cmd_confounded_study(const ConfoundedConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const auto study = stage("study", [&] {
      return run_confounded_study(config.a, config.b, config.runs, config.n, config.seed,
                                  config.analysis, config.p_max);
    });
    if (study.runs_failed * 20 >= config.runs) {
      throw Error("study: " + std::to_string(study.runs_failed) + " of " +
                  std::to_string(config.runs) + " runs failed (limit 5%)");
    }
    stage("write", [&] {
      ensure_dir(config.out_dir);
      const std::vector<SpectralProfile> profiles = {{"gc", study.grid, study.gc},
                                                     {"gi", study.grid, study.gi},
                                                     {"ga", study.grid, study.ga}};
      for (const auto& p : profiles) write_profile_csv(config.out_dir / (p.name + ".csv"), p);
      write_plot_data(config.out_dir / "plot_data.txt", profiles);
      write_json(config.out_dir / "study.json", {{"a", config.a},
                                                 {"b", config.b},
                                                 {"runs", config.runs},
                                                 {"n", config.n},
                                                 {"seed", config.seed},
                                                 {"runs_ok", study.runs_ok},
                                                 {"runs_failed", study.runs_failed},
                                                 {"orders", study.orders}});
    });
    out << "confounded study a=" << config.a << " b=" << config.b << ": " << study.runs_ok
        << " runs ok, " << study.runs_failed << " failed\n";
    return 0;
  } catch (const std::exception& e) {
    err << "gica confounded-study: " << e.what() << '\n';
    return 1;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Granger causality, isolation and autonomy in time and frequency"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::size_t grid_points = 2049;
  int q = 20;

  // analyze
  AnalysisConfig an;
  std::string order_text = "aic";
  std::string detrend_text = "0.0156";
  std::string hypothesis_text = "both";
  std::vector<std::string> band_texts;
  std::string model_path;
  auto* analyze = app.add_subcommand("analyze", "Fit, measure and test a bivariate series");
  analyze->add_option("--input,-i", an.input, "CSV file with two numeric columns")->required();
  analyze->add_option("--fs", an.fs, "Sampling frequency [Hz]")->required();
  analyze->add_option("--x-col", an.columns.x, "Driver column (name or 0-based index)");
  analyze->add_option("--y-col", an.columns.y, "Target column (name or 0-based index)");
  analyze->add_option("--detrend", detrend_text, "High-pass cutoff [Hz] or 'off'");
  analyze->add_option("--order", order_text, "Model order or 'aic'");
  analyze->add_option("--p-max", an.order.p_max, "Maximum order scanned by AIC");
  analyze->add_option("--model", model_path, "Use this model JSON instead of fitting");
  analyze->add_option("--q", q, "Restricted model lag");
  analyze->add_option("--grid", grid_points, "Frequency grid points on [0, fs/2]");
  analyze->add_option("--band", band_texts, "Band NAME:LO_HZ:HI_HZ (repeatable)");
  analyze->add_option("--surrogates", an.n_surrogates, "Number of surrogates (0: off)");
  analyze->add_option("--alpha", an.alpha, "Significance level");
  analyze->add_option("--seed", seed, "RNG seed (fallback: GICA_SEED)");
  analyze->add_option("--hypothesis", hypothesis_text, "h1, h2 or both")
      ->check(CLI::IsMember({"h1", "h2", "both"}));
  analyze->add_option("--out,-o", an.out_dir, "Output directory");
  analyze->add_flag("--plot-data", an.plot_data, "Also write plot_data.txt");

  // simulate
  SimulateConfig sim;
  std::string system_text = "open_loop";
  std::string setting_text = "i";
  auto* simulate_cmd = app.add_subcommand("simulate", "Generate a simulated realization");
  simulate_cmd->add_option("--system", system_text,
                           "open_loop, closed_loop, confounded or supplement_s2");
  simulate_cmd->add_option("--b", sim.spec.b);
  simulate_cmd->add_option("--c", sim.spec.c);
  simulate_cmd->add_option("--d", sim.spec.d);
  simulate_cmd->add_option("--a", sim.spec.a);
  simulate_cmd->add_option("--setting", setting_text, "supplement_s2 setting: i, ii, iii, iv");
  simulate_cmd->add_option("--n", sim.spec.n, "Realization length");
  simulate_cmd->add_option("--burn-in", sim.spec.burn_in);
  simulate_cmd->add_option("--fs", sim.spec.fs);
  simulate_cmd->add_option("--seed", seed, "RNG seed (fallback: GICA_SEED)");
  simulate_cmd->add_option("--out,-o", sim.out, "Output CSV");

  // theoretical
  TheoreticalConfig th;
  std::string th_system = "open_loop";
  std::string th_setting = "i";
  std::string sweep_text;
  auto* theoretical = app.add_subcommand("theoretical", "Exact profiles from true parameters");
  theoretical->add_option("--system", th_system, "open_loop, closed_loop or supplement_s2");
  theoretical->add_option("--b", th.spec.b);
  theoretical->add_option("--c", th.spec.c);
  theoretical->add_option("--d", th.spec.d);
  theoretical->add_option("--setting", th_setting);
  theoretical->add_option("--fs", th.spec.fs);
  theoretical->add_option("--q", q, "Restricted model lag");
  theoretical->add_option("--grid", grid_points, "Frequency grid points");
  theoretical->add_option("--sweep", sweep_text, "PARAM=v1,v2,... (b, c or d)");
  theoretical->add_option("--out,-o", th.out_dir, "Output directory");
  theoretical->add_flag("--plot-data", th.plot_data);

  // confounded-study
  ConfoundedConfig cs;
  auto* confounded = app.add_subcommand("confounded-study", "Averaged estimates, confounded system");
  confounded->add_option("--a", cs.a);
  confounded->add_option("--b", cs.b);
  confounded->add_option("--runs", cs.runs);
  confounded->add_option("--n", cs.n);
  confounded->add_option("--p-max", cs.p_max);
  confounded->add_option("--q", q);
  confounded->add_option("--grid", grid_points);
  confounded->add_option("--seed", seed, "RNG seed (fallback: GICA_SEED)");
  confounded->add_option("--out,-o", cs.out_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    AnalysisOptions options;
    options.q = q;
    options.grid_points = grid_points;

    if (analyze->parsed()) {
      an.analysis = options;
      if (!band_texts.empty()) {
        an.analysis.bands.clear();
        for (const auto& t : band_texts) an.analysis.bands.push_back(parse_band(t));
      }
      if (detrend_text == "off") an.detrend_cutoff_hz.reset();
      else an.detrend_cutoff_hz = std::stod(detrend_text);
      if (order_text != "aic") an.order.fixed = std::stoi(order_text);
      if (!model_path.empty()) an.model_path = model_path;
      an.test_h1 = hypothesis_text != "h2";
      an.test_h2 = hypothesis_text != "h1";
      an.seed = env_seed_or(seed);
      return cmd_analyze(an, out, err);
    }
    if (simulate_cmd->parsed()) {
      sim.spec.system = system_from_string(system_text);
      sim.spec.setting = setting_text;
      sim.spec.seed = env_seed_or(seed);
      return cmd_simulate(sim, out, err);
    }
    if (theoretical->parsed()) {
      th.spec.system = system_from_string(th_system);
      th.spec.setting = th_setting;
      th.analysis = options;
      if (!sweep_text.empty()) th.sweep = parse_sweep(sweep_text);
      return cmd_theoretical(th, out, err);
    }
    if (confounded->parsed()) {
      cs.analysis = options;
      cs.seed = env_seed_or(seed);
      return cmd_confounded_study(cs, out, err);
    }
  } catch (const std::exception& e) {
    err << "gica: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace gica::cli

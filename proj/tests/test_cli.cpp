#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gica/cli.hpp"
#include "gica/frequency_grid.hpp"
#include "gica/timeseries.hpp"
#include "oracles.hpp"

using json = nlohmann::json;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result gica_run(std::vector<std::string> args) {
  args.insert(args.begin(), "gica");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = gica::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::pair<double, double>> read_profile(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  CHECK(line == "frequency_hz,value");
  std::vector<std::pair<double, double>> rows;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    rows.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
  }
  return rows;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("simulate then analyze end to end") {
  const auto dir = oracle::tmp_dir("cli_e2e");
  const auto pair_path = (dir / "pair.csv").string();
  auto r = gica_run({"simulate", "--system", "open_loop", "--b", "1", "--c", "0.5", "--n", "500",
                     "--seed", "7", "--out", pair_path});
  REQUIRE_MESSAGE(r.status == 0, r.err);
  CHECK(gica::load_pair(pair_path, 1.0).size() == 500);

  const auto out = (dir / "fixed").string();
  r = gica_run({"analyze", "--input", pair_path, "--fs", "1", "--order", "2", "--out", out,
                "--plot-data"});
  REQUIRE_MESSAGE(r.status == 0, r.err);
  CHECK(r.out.find("GC X->Y") != std::string::npos);
  const auto report = json::parse(slurp(dir / "fixed" / "report.json"));
  CHECK(report["schema"] == 1);
  CHECK(report["order"] == 2);
  CHECK(report["F_xy"].get<double>() > 0.0);
  // Either the full-band GC integral reproduces F_xy or the report says why not.
  const double gap =
      std::abs(report["F_xy"].get<double>() - report["F_xy_spectral"].get<double>());
  bool warned = false;
  for (const auto& w : report["warnings"]) {
    warned = warned || w.get<std::string>().find("full-band GC") != std::string::npos;
  }
  CHECK((gap < 1e-3) != warned);
  CHECK(std::abs(report["A_y"].get<double>() - report["A_y_spectral"].get<double>()) < 1e-3);
  CHECK(report["bands"].contains("VLF"));
  CHECK(report["bands"].contains("LF"));

  const auto gc = read_profile(dir / "fixed" / "gc.csv");
  REQUIRE(gc.size() == 2049);
  std::size_t best = 0;
  for (std::size_t i = 1; i < gc.size(); ++i) {
    if (gc[i].second > gc[best].second) best = i;
  }
  CHECK(gc[best].first >= 0.25);
  CHECK(gc[best].first <= 0.35);
  CHECK(std::filesystem::exists(dir / "fixed" / "plot_data.txt"));
  CHECK(std::filesystem::exists(dir / "fixed" / "model.json"));
  const auto model = json::parse(slurp(dir / "fixed" / "model.json"));
  CHECK(model["p"] == 2);
  CHECK(model["A"].size() == 2);

  r = gica_run({"analyze", "--input", pair_path, "--fs", "1", "--order", "aic", "--out",
                (dir / "aic").string()});
  REQUIRE_MESSAGE(r.status == 0, r.err);
  const auto aic = json::parse(slurp(dir / "aic" / "report.json"));
  CHECK(aic["order"].get<int>() >= 2);
  CHECK(aic["order"].get<int>() <= 14);
  CHECK(aic["aic"].size() == 14);

  // Model reuse: analyzing with the saved model reproduces the report values.
  r = gica_run({"analyze", "--input", pair_path, "--fs", "1", "--model",
                (dir / "fixed" / "model.json").string(), "--out", (dir / "reuse").string()});
  REQUIRE_MESSAGE(r.status == 0, r.err);
  const auto reuse = json::parse(slurp(dir / "reuse" / "report.json"));
  CHECK(reuse["F_xy"].get<double>() == doctest::Approx(report["F_xy"].get<double>()));
}

TEST_CASE("analyze with surrogates is reproducible byte for byte") {
  const auto dir = oracle::tmp_dir("cli_surr");
  const auto pair_path = (dir / "pair.csv").string();
  REQUIRE(gica_run({"simulate", "--n", "400", "--seed", "3", "--out", pair_path}).status == 0);
  const auto run_once = [&](const std::string& name) {
    return gica_run({"analyze", "--input", pair_path, "--fs", "1", "--order", "2", "--surrogates",
                     "20", "--seed", "5", "--grid", "257", "--out", (dir / name).string()});
  };
  auto a = run_once("a");
  REQUIRE_MESSAGE(a.status == 0, a.err);
  auto b = run_once("b");
  REQUIRE(b.status == 0);
  CHECK(a.out == b.out);
  for (const auto& e : std::filesystem::directory_iterator(dir / "a")) {
    CHECK_MESSAGE(slurp(e.path()) == slurp(dir / "b" / e.path().filename()), e.path());
  }
  const auto report = json::parse(slurp(dir / "a" / "report.json"));
  const auto& sig = report["significance"];
  REQUIRE(sig.size() == 9);  // gc, gi for time + 2 bands under H1; ga under H2
  CHECK(sig[0]["measure"] == "gc");
  CHECK(sig[0]["significant"] == true);

  // GICA_SEED is the fallback seed.
  ::setenv("GICA_SEED", "5", 1);
  auto c = gica_run({"analyze", "--input", pair_path, "--fs", "1", "--order", "2", "--surrogates",
                     "20", "--grid", "257", "--out", (dir / "c").string()});
  ::unsetenv("GICA_SEED");
  REQUIRE(c.status == 0);
  CHECK(slurp(dir / "a" / "report.json") == slurp(dir / "c" / "report.json"));

  auto h1 = gica_run({"analyze", "--input", pair_path, "--fs", "1", "--order", "2",
                      "--surrogates", "20", "--hypothesis", "h1", "--grid", "257", "--out",
                      (dir / "h1").string()});
  REQUIRE(h1.status == 0);
  CHECK(json::parse(slurp(dir / "h1" / "report.json"))["significance"].size() == 6);
}

TEST_CASE("error contracts") {
  const auto dir = oracle::tmp_dir("cli_errors");
  auto r = gica_run({"analyze", "--input", (dir / "nope.csv").string(), "--fs", "1", "--out",
                     (dir / "x").string()});
  CHECK(r.status != 0);
  CHECK(r.err.find("nope.csv") != std::string::npos);

  r = gica_run({"simulate", "--c", "1.5", "--out", (dir / "bad.csv").string()});
  CHECK(r.status != 0);

  r = gica_run({"frobnicate"});
  CHECK(r.status != 0);

  const auto pair_path = (dir / "pair.csv").string();
  REQUIRE(gica_run({"simulate", "--n", "400", "--out", pair_path}).status == 0);
  r = gica_run({"analyze", "--input", pair_path, "--fs", "1", "--band", "HF:0.3:0.7", "--out",
                (dir / "y").string()});
  CHECK(r.status != 0);
  r = gica_run({"analyze", "--input", pair_path, "--fs", "1", "--surrogates", "5", "--out",
                (dir / "z").string()});
  CHECK(r.status != 0);
}

TEST_CASE("theoretical sweeps") {
  const auto dir = oracle::tmp_dir("cli_theory");
  auto r = gica_run({"theoretical", "--c", "0.5", "--sweep", "b=0,0.2,0.4,0.6,0.8,1", "--out",
                     (dir / "b").string()});
  REQUIRE_MESSAGE(r.status == 0, r.err);
  auto rows = read_csv(dir / "b" / "sweep_summary.csv");
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == std::vector<std::string>{"parameter", "value", "F_xy", "F_y", "A_y"});
  for (std::size_t i = 2; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][4]) > std::stod(rows[i - 1][4]));
  }
  CHECK(std::filesystem::exists(dir / "b" / "b_0.4" / "ga.csv"));

  r = gica_run({"theoretical", "--b", "1", "--sweep", "c=0,0.2,0.4,0.6,0.8,1", "--out",
                (dir / "c").string()});
  REQUIRE_MESSAGE(r.status == 0, r.err);
  rows = read_csv(dir / "c" / "sweep_summary.csv");
  REQUIRE(rows.size() == 7);
  for (std::size_t i = 2; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][2]) > std::stod(rows[i - 1][2]));
  }
  CHECK(rows[1][3] == "inf");

  r = gica_run({"theoretical", "--sweep", "c=0,0.5", "--out", (dir / "c2").string()});
  REQUIRE(r.status == 0);
  CHECK(slurp(dir / "c" / "c_0" / "gi.csv") == slurp(dir / "c2" / "c_0" / "gi.csv"));

  CHECK(gica_run({"theoretical", "--sweep", "z=1", "--out", (dir / "z").string()}).status != 0);
}

TEST_CASE("confounded study output") {
  const auto dir = oracle::tmp_dir("cli_conf");
  auto r = gica_run({"confounded-study", "--a", "0.8", "--b", "0", "--runs", "4", "--grid", "129",
                     "--seed", "2", "--out", dir.string()});
  REQUIRE_MESSAGE(r.status == 0, r.err);
  for (const char* f : {"gc.csv", "gi.csv", "ga.csv", "plot_data.txt", "study.json"}) {
    CHECK_MESSAGE(std::filesystem::exists(dir / f), f);
  }
  CHECK(read_profile(dir / "ga.csv").size() == 129);
}

#include "gica/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "gica/error.hpp"
#include "gica/surrogate.hpp"

namespace gica {
namespace {

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json mat2_json(const Mat2& m) {
  return nlohmann::json::array({{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}});
}

Mat2 mat2_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || j[0].size() != 2 || j[1].size() != 2) {
    throw DataError("expected a 2x2 matrix");
  }
  Mat2 m;
  m << j[0][0].get<double>(), j[0][1].get<double>(), j[1][0].get<double>(),
      j[1][1].get<double>();
  return m;
}

nlohmann::json band_json(const BandIntegral& b) {
  return {{"integral", number_or_inf(b.integral)}, {"mean", number_or_inf(b.mean)}};
}

}  // namespace

nlohmann::json number_or_inf(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

nlohmann::json to_json(const BivariateVarModel& model) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& m : model.A) a.push_back(mat2_json(m));
  return {{"p", model.order()}, {"A", a}, {"Sigma", mat2_json(model.sigma)}};
}

BivariateVarModel model_from_json(const nlohmann::json& j) {
  try {
    BivariateVarModel model;
    const int p = j.at("p").get<int>();
    const auto& a = j.at("A");
    if (p < 1 || !a.is_array() || static_cast<int>(a.size()) != p) {
      throw DataError("model JSON: 'A' must hold p coefficient matrices");
    }
    for (const auto& m : a) model.A.push_back(mat2_from(m));
    model.sigma = mat2_from(j.at("Sigma"));
    if (!(model.sigma(0, 0) > 0.0) || !(model.sigma(1, 1) > 0.0)) {
      throw DataError("model JSON: Sigma diagonal must be positive");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("model JSON: ") + e.what());
  }
}

nlohmann::json to_json(const RestrictedModel& model) {
  return {{"kind", std::string(to_string(model.kind))},
          {"q", model.lags()},
          {"coeffs", std::vector<double>(model.coeffs.data(),
                                         model.coeffs.data() + model.coeffs.size())},
          {"resid_var", model.resid_var}};
}

RestrictedModel restricted_from_json(const nlohmann::json& j) {
  try {
    RestrictedModel m;
    m.kind = restricted_kind_from_string(j.at("kind").get<std::string>());
    const auto coeffs = j.at("coeffs").get<std::vector<double>>();
    m.coeffs = Eigen::Map<const Eigen::VectorXd>(coeffs.data(),
                                                 static_cast<Eigen::Index>(coeffs.size()));
    m.resid_var = j.at("resid_var").get<double>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("restricted model JSON: ") + e.what());
  }
}

nlohmann::json to_json(const MeasureReport& report) {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["order"] = report.order;
  j["q"] = report.q;
  j["fs"] = report.fs;
  j["F_xy"] = number_or_inf(report.f_xy);
  j["F_y"] = number_or_inf(report.f_y);
  j["A_y"] = number_or_inf(report.a_y);
  j["F_xy_spectral"] = number_or_inf(report.f_xy_spectral);
  j["A_y_spectral"] = number_or_inf(report.a_y_spectral);
  j["isolated"] = std::isinf(report.f_y);
  nlohmann::json bands = nlohmann::json::object();
  for (const auto& b : report.bands) {
    bands[b.band.name] = {{"lo_hz", b.band.lo_hz},
                          {"hi_hz", b.band.hi_hz},
                          {"gc", band_json(b.gc)},
                          {"gi", band_json(b.gi)},
                          {"ga", band_json(b.ga)}};
  }
  j["bands"] = bands;
  j["warnings"] = report.warnings;
  if (report.aic) j["aic"] = *report.aic;
  nlohmann::json sig = nlohmann::json::array();
  for (const auto& v : report.significance) {
    nlohmann::json thresholds = nlohmann::json::array();
    for (double t : v.thresholds) thresholds.push_back(number_or_inf(t));
    sig.push_back({{"measure", v.measure},
                   {"scope", v.scope},
                   {"hypothesis", std::string(to_string(v.hypothesis))},
                   {"tail", std::string(to_string(v.tail))},
                   {"original", number_or_inf(v.original)},
                   {"percentiles", v.percentiles},
                   {"thresholds", thresholds},
                   {"significant", v.significant}});
  }
  j["significance"] = sig;
  return j;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError("'" + path.string() + "': " + e.what());
  }
}

void write_profile_csv(const std::filesystem::path& path, const SpectralProfile& profile) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << "frequency_hz,value\n";
  for (std::size_t i = 0; i < profile.values.size(); ++i) {
    out << format_number(profile.grid.hz(i)) << ',' << format_number(profile.values[i]) << '\n';
  }
}

void write_plot_data(const std::filesystem::path& path,
                     const std::vector<SpectralProfile>& profiles) {
  if (profiles.empty()) throw InvalidArgument("no profiles to write");
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << "# frequency_hz";
  for (const auto& p : profiles) out << ' ' << p.name;
  out << '\n';
  const auto& grid = profiles.front().grid;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << format_number(grid.hz(i));
    for (const auto& p : profiles) out << ' ' << format_number(p.values[i]);
    out << '\n';
  }
}

}  // namespace gica

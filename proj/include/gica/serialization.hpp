#pragma once

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "gica/report.hpp"
#include "gica/restricted.hpp"
#include "gica/spectral.hpp"
#include "gica/var_model.hpp"

namespace gica {

/// Report schema version written under "schema".
inline constexpr int kReportSchema = 1;

/// {"p": p, "A": [[[a_xx, a_xy], [a_yx, a_yy]], ...], "Sigma": [[..], [..]]}.
/// Doubles are written with 17 significant digits.
nlohmann::json to_json(const BivariateVarModel& model);
BivariateVarModel model_from_json(const nlohmann::json& j);

/// Same envelope with a kind tag: {"kind", "q", "coeffs", "resid_var"}.
nlohmann::json to_json(const RestrictedModel& model);
RestrictedModel restricted_from_json(const nlohmann::json& j);

/// {"schema", "order", "q", "fs", "F_xy", "F_y", "A_y", "bands": {name: {gc, gi, ga}},
///  "warnings", "significance"}. Infinite values are written as the string "inf".
nlohmann::json to_json(const MeasureReport& report);

/// Finite numbers as-is, infinities as "inf" / "-inf".
nlohmann::json number_or_inf(double v);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

/// CSV "frequency_hz,value" with 17 significant digits; +inf as "inf".
void write_profile_csv(const std::filesystem::path& path, const SpectralProfile& profile);

/// Whitespace-separated columns (frequency_hz then one column per profile)
/// with a '#' header line, for external plotting tools.
void write_plot_data(const std::filesystem::path& path,
                     const std::vector<SpectralProfile>& profiles);

}  // namespace gica

#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gica/autocovariance.hpp"
#include "gica/timeseries.hpp"

namespace gica {

/// ArOnY regresses Y_n on its own past (GC/GI); XOnY regresses Y_n on the
/// past of X only (GA).
enum class RestrictedKind { ArOnY, XOnY };

std::string_view to_string(RestrictedKind kind);
RestrictedKind restricted_kind_from_string(std::string_view name);

/// Y_n = sum_{k=1..q} coeffs[k-1] * R_{n-k} + W_n, with R = Y (ArOnY) or
/// R = X (XOnY) and var(W) = resid_var.
struct RestrictedModel {
  RestrictedKind kind = RestrictedKind::ArOnY;
  Eigen::VectorXd coeffs;
  double resid_var = 0.0;

  int lags() const { return static_cast<int>(coeffs.size()); }
};

/// Projection of Y_n onto [Y_{n-1} .. Y_{n-q}] from the exact
/// autocovariance: B = S_{y,Y} S_Y^{-1}, var = var_y - B S_{y,Y}^T.
RestrictedModel restricted_ar(const AutocovarianceSequence& gammas, int q);

/// Projection of Y_n onto [X_{n-1} .. X_{n-q}] from the exact
/// autocovariance.
RestrictedModel restricted_x(const AutocovarianceSequence& gammas, int q);

struct RestrictedFit {
  RestrictedModel model;
  /// One-step residuals for samples q..N-1.
  std::vector<double> residuals;
};

/// Direct least-squares fit of the restricted regression on data (residual
/// variance with divisor N - q). Used to build surrogate generators.
RestrictedFit fit_restricted_least_squares(const TimeSeriesPair& pair, RestrictedKind kind,
                                           int q);

}  // namespace gica

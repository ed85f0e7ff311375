#pragma once

#include <vector>

#include <Eigen/Dense>

#include "gica/timeseries.hpp"

namespace gica {

using Mat2 = Eigen::Matrix2d;

/// Full bivariate AR model S_n = sum_k A_k S_{n-k} + U_n with S = [X Y]^T.
/// Row 0 of each A_k is the X equation (a_xx, a_xy), row 1 the Y equation
/// (a_yx, a_yy). sigma is the innovation covariance.
struct BivariateVarModel {
  std::vector<Mat2> A;
  Mat2 sigma = Mat2::Identity();

  int order() const { return static_cast<int>(A.size()); }
  double var_x() const { return sigma(0, 0); }
  double var_y() const { return sigma(1, 1); }
  /// Correlation between the two innovations.
  double residual_correlation() const;
};

struct ArCoeffs {
  double a1 = 0.0;
  double a2 = 0.0;
};

/// AR(2) coefficients of a complex-conjugate pole pair with modulus rho and
/// normalized frequency f: a1 = 2 rho cos(2 pi f), a2 = -rho^2.
ArCoeffs poles_to_ar_coeffs(double rho, double f_norm);

/// Block companion matrix (2p x 2p) of the lag-1 embedding.
Eigen::MatrixXd companion_matrix(const BivariateVarModel& model);

/// Companion matrix of a K-variate VAR given its lag matrices.
Eigen::MatrixXd companion_matrix(const std::vector<Eigen::MatrixXd>& lags);

double spectral_radius(const Eigen::MatrixXd& m);

bool is_stable(const BivariateVarModel& model);

/// Throws UnstableModel naming `what` when the companion spectral radius is
/// not below one.
void require_stable(const BivariateVarModel& model, const char* what = "model");

/// Vector least-squares identification over samples p..N-1 (0-based).
/// Sigma uses divisor N - p. Throws SingularSystem on a rank-deficient
/// regressor matrix.
BivariateVarModel fit_var(const TimeSeriesPair& pair, int order);

struct OrderSelection {
  int order = 0;
  /// aic[p - 1] is the criterion at order p.
  std::vector<double> aic;
};

/// argmin over p in [1, p_max] of N ln det(Sigma_p) + 2 (4p), ties toward the
/// smaller order.
OrderSelection select_order_aic(const TimeSeriesPair& pair, int p_max);

}  // namespace gica

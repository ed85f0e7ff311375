#include "gica/var_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gica/error.hpp"

namespace gica {

double BivariateVarModel::residual_correlation() const {
  return sigma(0, 1) / std::sqrt(sigma(0, 0) * sigma(1, 1));
}

ArCoeffs poles_to_ar_coeffs(double rho, double f_norm) {
  if (!(rho >= 0.0) || !(rho < 1.0)) {
    throw InvalidArgument("pole modulus must lie in [0, 1), got " + std::to_string(rho));
  }
  return {2.0 * rho * std::cos(2.0 * std::numbers::pi * f_norm), -rho * rho};
}

Eigen::MatrixXd companion_matrix(const std::vector<Eigen::MatrixXd>& lags) {
  if (lags.empty()) return Eigen::MatrixXd::Zero(0, 0);
  const auto k = lags.front().rows();
  const auto p = static_cast<Eigen::Index>(lags.size());
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(k * p, k * p);
  for (Eigen::Index l = 0; l < p; ++l) c.block(0, l * k, k, k) = lags[l];
  if (p > 1) c.block(k, 0, k * (p - 1), k * (p - 1)).setIdentity();
  return c;
}

Eigen::MatrixXd companion_matrix(const BivariateVarModel& model) {
  std::vector<Eigen::MatrixXd> lags(model.A.begin(), model.A.end());
  return companion_matrix(lags);
}

double spectral_radius(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

bool is_stable(const BivariateVarModel& model) {
  return spectral_radius(companion_matrix(model)) < 1.0;
}

void require_stable(const BivariateVarModel& model, const char* what) {
  const double r = spectral_radius(companion_matrix(model));
  if (!(r < 1.0)) {
    throw UnstableModel(std::string(what) + " is unstable (spectral radius " +
                        std::to_string(r) + ")");
  }
}

BivariateVarModel fit_var(const TimeSeriesPair& pair, int order) {
  if (order < 1) throw InvalidArgument("model order must be >= 1");
  pair.validate();
  const auto n = static_cast<Eigen::Index>(pair.size());
  const Eigen::Index p = order;
  if (n <= 4 * p + 2) {
    throw InvalidArgument("series too short for order " + std::to_string(order) +
                          " (need N > " + std::to_string(4 * p + 2) + ")");
  }
  const Eigen::Index rows = n - p;
  Eigen::MatrixXd regressors(rows, 2 * p);
  Eigen::MatrixXd targets(rows, 2);
  for (Eigen::Index t = p; t < n; ++t) {
    const auto r = t - p;
    targets(r, 0) = pair.x[t];
    targets(r, 1) = pair.y[t];
    for (Eigen::Index k = 1; k <= p; ++k) {
      regressors(r, 2 * (k - 1)) = pair.x[t - k];
      regressors(r, 2 * (k - 1) + 1) = pair.y[t - k];
    }
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(regressors);
  qr.setThreshold(1e-10);
  if (qr.rank() < 2 * p) {
    throw SingularSystem("rank-deficient regressor matrix (constant or duplicated series?)");
  }
  const Eigen::MatrixXd coef = qr.solve(targets);  // 2p x 2
  const Eigen::MatrixXd resid = targets - regressors * coef;

  BivariateVarModel model;
  model.A.resize(static_cast<std::size_t>(p));
  for (Eigen::Index k = 0; k < p; ++k) {
    model.A[k] = coef.block(2 * k, 0, 2, 2).transpose();
  }
  model.sigma = (resid.transpose() * resid) / static_cast<double>(rows);
  model.sigma(1, 0) = model.sigma(0, 1);
  return model;
}

OrderSelection select_order_aic(const TimeSeriesPair& pair, int p_max) {
  if (p_max < 1) throw InvalidArgument("maximum scanned order must be >= 1");
  OrderSelection sel;
  const double n = static_cast<double>(pair.size());
  double best = 0.0;
  for (int p = 1; p <= p_max; ++p) {
    const auto model = fit_var(pair, p);
    const double aic = n * std::log(model.sigma.determinant()) + 2.0 * (4.0 * p);
    sel.aic.push_back(aic);
    if (p == 1 || aic < best) {
      best = aic;
      sel.order = p;
    }
  }
  return sel;
}

}  // namespace gica

#include "gica/restricted.hpp"

#include <string>

#include "gica/error.hpp"

namespace gica {
namespace {

// Solves the normal equations of a projection given the Toeplitz covariance
// of the regressors (lag -> value) and the cross-covariance with Y_n.
RestrictedModel project(RestrictedKind kind, const AutocovarianceSequence& gammas, int q,
                        int auto_row, int auto_col, int cross_row, int cross_col) {
  if (q < 1) throw InvalidArgument("restricted model lag must be >= 1");
  if (gammas.max_lag() < q) {
    throw InvalidArgument("autocovariance available up to lag " +
                          std::to_string(gammas.max_lag()) + ", need " + std::to_string(q));
  }
  Eigen::MatrixXd past(q, q);
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) past(i, j) = gammas.at(j - i)(auto_row, auto_col);
  }
  Eigen::RowVectorXd cross(q);
  for (int j = 0; j < q; ++j) cross(j) = gammas.at(j + 1)(cross_row, cross_col);

  // Autocovariance of a scalar past is symmetric Toeplitz, so the transposed
  // inverse in the residual variance is the plain inverse.
  const double asym = (past - past.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-9 * (1.0 + past.cwiseAbs().maxCoeff())) {
    throw Error("restricted model: past covariance block is not symmetric");
  }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(past);
  if (!lu.isInvertible()) {
    throw SingularSystem("restricted model: singular covariance of the regressor past");
  }
  RestrictedModel model;
  model.kind = kind;
  model.coeffs = lu.solve(cross.transpose());
  model.resid_var = gammas.at(0)(1, 1) - cross.dot(model.coeffs);
  if (!(model.resid_var > 0.0)) {
    throw SingularSystem("restricted model: non-positive residual variance");
  }
  return model;
}

}  // namespace

std::string_view to_string(RestrictedKind kind) {
  return kind == RestrictedKind::ArOnY ? "AR_on_Y" : "X_on_Y";
}

RestrictedKind restricted_kind_from_string(std::string_view name) {
  if (name == "AR_on_Y") return RestrictedKind::ArOnY;
  if (name == "X_on_Y") return RestrictedKind::XOnY;
  throw InvalidArgument("unknown restricted model kind '" + std::string(name) + "'");
}

RestrictedModel restricted_ar(const AutocovarianceSequence& gammas, int q) {
  // Y past covariance: E[Y_{n-i} Y_{n-j}] = gamma_yy(j - i);
  // cross: E[Y_n Y_{n-j}] = Gamma_j(1, 1).
  return project(RestrictedKind::ArOnY, gammas, q, 1, 1, 1, 1);
}

RestrictedModel restricted_x(const AutocovarianceSequence& gammas, int q) {
  // X past covariance: gamma_xx(j - i); cross: E[Y_n X_{n-j}] = Gamma_j(1, 0).
  return project(RestrictedKind::XOnY, gammas, q, 0, 0, 1, 0);
}

RestrictedFit fit_restricted_least_squares(const TimeSeriesPair& pair, RestrictedKind kind,
                                           int q) {
  if (q < 1) throw InvalidArgument("restricted model lag must be >= 1");
  pair.validate();
  const auto n = static_cast<Eigen::Index>(pair.size());
  if (n <= 2 * q + 1) {
    throw InvalidArgument("series too short for restricted lag " + std::to_string(q));
  }
  const auto& source = kind == RestrictedKind::ArOnY ? pair.y : pair.x;
  const Eigen::Index rows = n - q;
  Eigen::MatrixXd regressors(rows, q);
  Eigen::VectorXd target(rows);
  for (Eigen::Index t = q; t < n; ++t) {
    target(t - q) = pair.y[t];
    for (Eigen::Index k = 1; k <= q; ++k) regressors(t - q, k - 1) = source[t - k];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(regressors);
  qr.setThreshold(1e-10);
  if (qr.rank() < q) throw SingularSystem("restricted fit: rank-deficient regressor matrix");

  RestrictedFit fit;
  fit.model.kind = kind;
  fit.model.coeffs = qr.solve(target);
  const Eigen::VectorXd resid = target - regressors * fit.model.coeffs;
  fit.model.resid_var = resid.squaredNorm() / static_cast<double>(rows);
  fit.residuals.assign(resid.data(), resid.data() + resid.size());
  return fit;
}

}  // namespace gica

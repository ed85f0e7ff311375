#include "gica/autocovariance.hpp"

#include "gica/error.hpp"
#include "gica/lyapunov.hpp"

namespace gica {

AutocovarianceSequence compute_autocovariance(const BivariateVarModel& model, int q) {
  if (q < 0) throw InvalidArgument("maximum lag must be non-negative");
  const int p = model.order();
  AutocovarianceSequence seq;
  seq.gammas.reserve(static_cast<std::size_t>(std::max(q, p) + 1));

  if (p == 0) {
    seq.gammas.push_back(model.sigma);
    for (int k = 1; k <= q; ++k) seq.gammas.push_back(Mat2::Zero());
    return seq;
  }

  require_stable(model, "full model");
  const Eigen::MatrixXd companion = companion_matrix(model);
  Eigen::MatrixXd xi = Eigen::MatrixXd::Zero(2 * p, 2 * p);
  xi.topLeftCorner(2, 2) = model.sigma;
  const Eigen::MatrixXd psi = solve_discrete_lyapunov(companion, xi);

  // First block row of Psi holds Gamma_0 ... Gamma_{p-1}.
  for (int k = 0; k < p; ++k) seq.gammas.push_back(psi.block(0, 2 * k, 2, 2));
  seq.gammas[0] = 0.5 * (seq.gammas[0] + seq.gammas[0].transpose()).eval();

  for (int k = p; k <= q; ++k) {
    Mat2 g = Mat2::Zero();
    for (int l = 1; l <= p; ++l) g += model.A[static_cast<std::size_t>(l - 1)] * seq.at(k - l);
    seq.gammas.push_back(g);
  }
  seq.gammas.resize(static_cast<std::size_t>(q + 1));
  return seq;
}

}  // namespace gica

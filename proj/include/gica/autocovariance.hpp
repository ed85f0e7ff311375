#pragma once

#include <vector>

#include "gica/var_model.hpp"

namespace gica {

/// Gamma_k = E[S_n S_{n-k}^T] for k = 0..max_lag.
struct AutocovarianceSequence {
  std::vector<Mat2> gammas;

  int max_lag() const { return static_cast<int>(gammas.size()) - 1; }

  /// Gamma_k for any |k| <= max_lag, using Gamma_{-k} = Gamma_k^T.
  Mat2 at(int k) const {
    return k >= 0 ? gammas[static_cast<std::size_t>(k)]
                  : Mat2(gammas[static_cast<std::size_t>(-k)].transpose());
  }
};

/// Exact autocovariance of a stable model up to lag q. Lags 0..p-1 come from
/// the discrete Lyapunov solution of the companion embedding; higher lags
/// from the Yule-Walker recursion Gamma_k = sum_l A_l Gamma_{k-l}.
AutocovarianceSequence compute_autocovariance(const BivariateVarModel& model, int q);

}  // namespace gica

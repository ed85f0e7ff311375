#pragma once

#include <span>
#include <vector>

#include "gica/restricted.hpp"
#include "gica/var_model.hpp"

namespace gica::kernels {

/// Lag polynomials of the full model and (optionally) of the restricted
/// X-on-Y model, flattened for per-frequency evaluation.
struct LagPolynomials {
  std::vector<double> axx, axy, ayx, ayy;
  std::vector<double> byx;  // empty: skip G(f)
  double var_x = 1.0;
  double var_y = 1.0;

  static LagPolynomials from(const BivariateVarModel& model,
                             const RestrictedModel* x_model = nullptr);
};

/// Every per-frequency quantity derived from H(f) and G(f). Spectral
/// formulas read only the diagonal of Sigma.
struct PointValues {
  double p_x = 0.0;        // sx |Hxx|^2 + sy |Hxy|^2
  double p_y = 0.0;        // sx |Hyx|^2 + sy |Hyy|^2
  double cross_mag = 0.0;  // |sx Hxx conj(Hyx) + sy Hxy conj(Hyy)|
  double causal = 0.0;     // sx |Hyx|^2
  double isolated = 0.0;   // sy |Hyy|^2
  double hyy2 = 0.0;
  double gyy2 = 0.0;
  double dc_yx = 0.0;
  double dc_yy = 0.0;
  double gc = 0.0;
  double gi = 0.0;
  double ga_bar = 0.0;
  bool singular = false;
};

PointValues evaluate_point(const LagPolynomials& poly, double f_norm);

/// Serial reference: one point at a time, in grid order.
void evaluate_serial(const LagPolynomials& poly, std::span<const double> freqs,
                     std::span<PointValues> out);

/// OpenMP version. Each point is computed by evaluate_point alone, so the
/// output is bit-identical to evaluate_serial for any thread count.
void evaluate_parallel(const LagPolynomials& poly, std::span<const double> freqs,
                       std::span<PointValues> out);

}  // namespace gica::kernels

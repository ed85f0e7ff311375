#include "gica/spectral_kernels.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "gica/error.hpp"

namespace gica::kernels {
namespace {

using cplx = std::complex<double>;

// sum_k c[k-1] z^-k on the unit circle.
cplx lag_poly(const std::vector<double>& c, cplx step) {
  cplx zk{1.0, 0.0};
  cplx acc{0.0, 0.0};
  for (double ck : c) {
    zk *= step;
    acc += ck * zk;
  }
  return acc;
}

}  // namespace

LagPolynomials LagPolynomials::from(const BivariateVarModel& model,
                                    const RestrictedModel* x_model) {
  LagPolynomials poly;
  for (const auto& a : model.A) {
    poly.axx.push_back(a(0, 0));
    poly.axy.push_back(a(0, 1));
    poly.ayx.push_back(a(1, 0));
    poly.ayy.push_back(a(1, 1));
  }
  if (x_model != nullptr) {
    if (x_model->kind != RestrictedKind::XOnY) {
      throw InvalidArgument("G(f) needs the restricted X-on-Y model");
    }
    poly.byx.assign(x_model->coeffs.data(), x_model->coeffs.data() + x_model->coeffs.size());
  }
  poly.var_x = model.var_x();
  poly.var_y = model.var_y();
  return poly;
}

PointValues evaluate_point(const LagPolynomials& poly, double f_norm) {
  PointValues pv;
  const cplx step = std::polar(1.0, -2.0 * std::numbers::pi * f_norm);

  const cplx mxx = 1.0 - lag_poly(poly.axx, step);
  const cplx mxy = -lag_poly(poly.axy, step);
  const cplx myx = -lag_poly(poly.ayx, step);
  const cplx myy = 1.0 - lag_poly(poly.ayy, step);
  const cplx det = mxx * myy - mxy * myx;
  if (det == cplx{0.0, 0.0}) {
    pv.singular = true;
    return pv;
  }
  const cplx hxx = myy / det;
  const cplx hxy = -mxy / det;
  const cplx hyx = -myx / det;
  const cplx hyy = mxx / det;

  const double sx = poly.var_x;
  const double sy = poly.var_y;
  pv.hyy2 = std::norm(hyy);
  pv.causal = sx * std::norm(hyx);
  pv.isolated = sy * pv.hyy2;
  pv.p_y = pv.causal + pv.isolated;
  pv.p_x = sx * std::norm(hxx) + sy * std::norm(hxy);
  pv.cross_mag = std::abs(sx * hxx * std::conj(hyx) + sy * hxy * std::conj(hyy));
  pv.dc_yx = pv.causal / pv.p_y;
  pv.dc_yy = pv.isolated / pv.p_y;
  // -ln(1 - |g_YX|^2) = ln(P_Y / isolated); -ln(1 - |g_YY|^2) = ln(P_Y / causal)
  pv.gc = -std::log(pv.dc_yy);
  pv.gi = pv.causal > 0.0 ? -std::log(pv.dc_yx) : std::numeric_limits<double>::infinity();

  if (!poly.byx.empty()) {
    // G = [1 - Axx, -Axy; -Byx, 1]^-1, so G_yy = (1 - Axx) / det_g.
    const cplx det_g = mxx + mxy * lag_poly(poly.byx, step);
    if (det_g == cplx{0.0, 0.0}) {
      pv.singular = true;
      return pv;
    }
    pv.gyy2 = std::norm(mxx / det_g);
    pv.ga_bar = std::log(pv.hyy2) - std::log(pv.gyy2);
  } else {
    pv.gyy2 = std::numeric_limits<double>::quiet_NaN();
    pv.ga_bar = std::numeric_limits<double>::quiet_NaN();
  }
  return pv;
}

void evaluate_serial(const LagPolynomials& poly, std::span<const double> freqs,
                     std::span<PointValues> out) {
  for (std::size_t i = 0; i < freqs.size(); ++i) out[i] = evaluate_point(poly, freqs[i]);
}

void evaluate_parallel(const LagPolynomials& poly, std::span<const double> freqs,
                       std::span<PointValues> out) {
  const auto n = static_cast<std::ptrdiff_t>(freqs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = evaluate_point(poly, freqs[i]);
}

}  // namespace gica::kernels

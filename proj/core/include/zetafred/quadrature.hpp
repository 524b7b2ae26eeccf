#pragma once

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "zetafred/errors.hpp"
#include "zetafred/precision.hpp"

namespace zetafred::quad {

template <class R>
struct Result {
  Cx<R> value;
  R error;    // absolute error estimate (real and imaginary passes combined)
  R l1_norm;  // integral of |f| as reported by the integrator
};

/// Per-thread integrator instances; the abscissa tables are built once.
template <class R>
boost::math::quadrature::tanh_sinh<R>& tanh_sinh_rule();
template <class R>
boost::math::quadrature::exp_sinh<R>& exp_sinh_rule();

extern template boost::math::quadrature::tanh_sinh<double>& tanh_sinh_rule<double>();
extern template boost::math::quadrature::tanh_sinh<Extended>& tanh_sinh_rule<Extended>();
extern template boost::math::quadrature::exp_sinh<double>& exp_sinh_rule<double>();
extern template boost::math::quadrature::exp_sinh<Extended>& exp_sinh_rule<Extended>();

/// Relative termination threshold handed to the double-exponential rules.
template <class R>
R default_rel_tol() {
  using std::sqrt;
  return sqrt(std::numeric_limits<R>::epsilon()) * R(1e-3);
}

namespace detail {

template <class R, class Run>
Result<R> complex_passes(Run&& run) {
  // Real part first; the imaginary pass is skipped for real integrands.
  bool has_imag = false;
  R err_re = 0, l1_re = 0;
  const R re = run([&](const Cx<R>& v) {
    if (v.imag() != R(0)) has_imag = true;
    return v.real();
  }, err_re, l1_re);
  R im = 0, err_im = 0, l1_im = 0;
  if (has_imag) {
    im = run([](const Cx<R>& v) { return v.imag(); }, err_im, l1_im);
  }
  using std::isfinite;
  if (!isfinite(re) || !isfinite(im)) throw NumericError("quadrature produced a non-finite value");
  return Result<R>{Cx<R>(re, im), err_re + err_im, l1_re + l1_im};
}

}  // namespace detail

/// Integral of a complex-valued f over [a, b].
template <class R, class F>
Result<R> finite(F&& f, R a, R b, R rel_tol = default_rel_tol<R>()) {
  if (!(b > a)) return Result<R>{Cx<R>(0), R(0), R(0)};
  auto& rule = tanh_sinh_rule<R>();
  try {
    return detail::complex_passes<R>([&](auto part, R& err, R& l1) {
      return rule.integrate([&](R t) { return part(f(t)); }, a, b, rel_tol, &err, &l1);
    });
  } catch (const NumericError&) {
    throw;
  } catch (const std::exception& e) {
    throw NumericError(std::string("quadrature failed: ") + e.what());
  }
}

/// Integral of a complex-valued f over [a, infinity).
template <class R, class F>
Result<R> to_infinity(F&& f, R a, R rel_tol = default_rel_tol<R>()) {
  auto& rule = exp_sinh_rule<R>();
  try {
    return detail::complex_passes<R>([&](auto part, R& err, R& l1) {
      return rule.integrate([&](R t) { return part(f(t)); }, a,
                            std::numeric_limits<R>::infinity(), rel_tol, &err, &l1);
    });
  } catch (const NumericError&) {
    throw;
  } catch (const std::exception& e) {
    throw NumericError(std::string("quadrature failed: ") + e.what());
  }
}

/// Non-adaptive 61-point Gauss-Kronrod rule on [a, b] for a complex-valued
/// f.  The error estimate is the Kronrod minus embedded Gauss difference.
/// Fixed nodes make repeated integrals over the same interval reuse the
/// same sample points.
template <class R, class F>
Result<R> gauss_kronrod(F&& f, R a, R b) {
  using GK = boost::math::quadrature::gauss_kronrod<R, 61>;
  using G = boost::math::quadrature::gauss<R, 30>;
  using std::abs;
  const auto& x = GK::abscissa();
  const auto& wk = GK::weights();
  const auto& wg = G::weights();
  const R half = (b - a) / 2;
  const R mid = (a + b) / 2;
  // 30 Gauss nodes sit at the odd Kronrod indices; index 0 is the centre.
  const Cx<R> f0 = f(mid);
  Cx<R> k = f0 * wk[0];
  Cx<R> g(0);
  R l1 = abs(f0) * wk[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    const Cx<R> fp = f(mid + half * x[i]);
    const Cx<R> fm = f(mid - half * x[i]);
    k += (fp + fm) * wk[i];
    l1 += (abs(fp) + abs(fm)) * wk[i];
    if (i % 2 == 1) g += (fp + fm) * wg[i / 2];
  }
  using std::isfinite;
  if (!isfinite(k.real()) || !isfinite(k.imag())) {
    throw NumericError("quadrature produced a non-finite value");
  }
  return Result<R>{k * half, abs(k - g) * half, l1 * abs(half)};
}

/// Adaptive bisection on top of gauss_kronrod until the error estimate of
/// every piece is below its share of abs_tol (or depth is exhausted).
template <class R, class F>
Result<R> adaptive(F&& f, R a, R b, R abs_tol, int depth = 12) {
  const Result<R> whole = gauss_kronrod<R>(f, a, b);
  if (whole.error <= abs_tol || depth == 0) return whole;
  const R m = (a + b) / 2;
  const Result<R> left = adaptive<R>(f, a, m, abs_tol / 2, depth - 1);
  const Result<R> right = adaptive<R>(f, m, b, abs_tol / 2, depth - 1);
  return Result<R>{left.value + right.value, left.error + right.error,
                   left.l1_norm + right.l1_norm};
}

}  // namespace zetafred::quad

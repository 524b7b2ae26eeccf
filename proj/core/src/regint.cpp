#include "zetafred/regint.hpp"

#include <cmath>

#include "detail/cuts.hpp"
#include "zetafred/errors.hpp"
#include "zetafred/quadrature.hpp"
#include "zetafred/special_functions.hpp"

namespace zetafred {

template <class R>
RegintResult<R> regint_numeric(const std::function<Cx<R>(R)>& f, const BasicExpansion<R>& at_zero,
                               const BasicExpansion<R>& at_inf, const RegintOptions& opt) {
  if (at_zero.direction() != Direction::AtZero || at_inf.direction() != Direction::AtInfinity) {
    throw ContractError("regint_numeric: expansion directions are swapped");
  }
  if (at_zero.cutoff() < 0) {
    throw InsufficientExpansionError("regint_numeric: expansion at 0 needs cutoff >= 0");
  }
  if (at_inf.cutoff() < 1) {
    throw InsufficientExpansionError("regint_numeric: expansion at infinity needs cutoff >= 1");
  }
  const R tol(opt.abs_tol);

  Cx<R> value(0);
  for (const auto& [key, c] : at_zero.terms()) value += c * regint_term<R>(key.alpha, key.k, true);
  for (const auto& [key, c] : at_inf.terms()) value += c * regint_term<R>(key.alpha, key.k, false);

  auto r0 = [&](R t) { return f(t) - at_zero.evaluate(t); };
  auto rinf = [&](R t) { return f(t) - at_inf.evaluate(t); };

  const auto c0 = detail::inner_cut<R>(r0, R(0.5), R(opt.inner_floor), tol, "regint_numeric");
  const auto cinf = detail::outer_cut<R>(rinf, R(2), R(opt.outer_ceiling), tol, "regint_numeric");
  const auto q0 = detail::dyadic<R>(r0, c0.at, R(1), tol / 4);
  const auto qinf = detail::dyadic<R>(rinf, R(1), cinf.at, tol / 4);

  value += q0.value + c0.tail + qinf.value + cinf.tail;
  const R err = q0.error + qinf.error + c0.tail_error + cinf.tail_error;
  return {value, err, c0.at, cinf.at};
}

template <class R>
Cx<R> unit_laplace_pf(Cx<R> beta, int k, Cx<R> z) {
  using std::abs;
  const R eps = machine_eps<R>();
  const R series_radius = std::is_same_v<R, double> ? R(2) : R(12);
  R kfact(1);
  for (int i = 2; i <= k; ++i) kfact *= R(i);
  const R ksign = (k % 2 == 0) ? R(1) : R(-1);

  if (abs(z) <= series_radius || z.real() < R(1)) {
    // sum_n (-z)^n/n! integral_0^1 t^{beta+n-1} log^k t dt, the pure pole
    // term (beta + n = 0) having finite part zero.
    Cx<R> sum(0);
    Cx<R> w(1);  // (-z)^n / n!
    const R az = abs(z);
    for (int n = 0; n < 2000; ++n) {
      const Cx<R> b = beta + R(n);
      if (b != Cx<R>(0)) {
        Cx<R> bp(1);
        for (int i = 0; i <= k; ++i) bp *= b;
        sum += w * ksign * kfact / bp;
      }
      // Past n = 2|z| the weights shrink by more than half per step.
      if (R(n) > 2 * az + 2 && abs(w) <= eps * std::max(R(1), abs(sum)) / 4) break;
      w *= -z / R(n + 1);
    }
    return sum;
  }
  // Whole half-line closed form minus the convergent piece on [1, infinity).
  const Cx<R> whole = laplace_regint<R>(beta, k, z);
  auto g = [&](R t) {
    using std::log;
    const R lt = log(t);
    R lk(1);
    for (int i = 0; i < k; ++i) lk *= lt;
    return std::exp((beta - R(1)) * lt - z * t) * lk;
  };
  const auto far = quad::to_infinity<R>(g, R(1));
  return whole - far.value;
}

template RegintResult<double> regint_numeric(const std::function<Cx<double>(double)>&,
                                             const BasicExpansion<double>&,
                                             const BasicExpansion<double>&, const RegintOptions&);
template RegintResult<Extended> regint_numeric(const std::function<Cx<Extended>(Extended)>&,
                                               const BasicExpansion<Extended>&,
                                               const BasicExpansion<Extended>&,
                                               const RegintOptions&);
template Cx<double> unit_laplace_pf<double>(Cx<double>, int, Cx<double>);
template Cx<Extended> unit_laplace_pf<Extended>(Cx<Extended>, int, Cx<Extended>);

}  // namespace zetafred

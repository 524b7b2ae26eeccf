#include "zetafred/fredholm.hpp"

#include <cmath>
#include <functional>

#include "zetafred/errors.hpp"
#include "zetafred/special_functions.hpp"

namespace zetafred {
namespace {

template <class R>
struct ComplexSum {
  // Neumaier summation applied to both components.
  R re = 0, im = 0, cre = 0, cim = 0;
  static void add1(R& s, R& c, R x) {
    using std::abs;
    const R t = s + x;
    if (abs(s) >= abs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }
  void add(Cx<R> v) {
    add1(re, cre, v.real());
    add1(im, cim, v.imag());
  }
  Cx<R> value() const { return {re + cre, im + cim}; }
};

/// First index past the explicit head: beyond the table and with
/// |z| / lambda_q <= 1/4.
template <class R>
long head_end(const SpectrumModel& m, Cx<R> z) {
  using std::abs;
  long n = m.table_size();
  const R az = abs(z);
  if (az == R(0)) return n;
  // lambda_q = c (q + d)^r >= 4|z|  <=>  q >= (4|z|/c)^{1/r} - d
  using std::pow;
  const R q = pow(R(4) * az / static_cast<R>(m.law.c), R(1) / m.law.r.to<R>()) - m.law.d.to<R>();
  long qn = static_cast<long>(std::ceil(static_cast<double>(q)));
  // Guard against rounding at the boundary.
  while (qn > n + 1 && R(4) * az <= m.eigenvalue<R>(qn - 1)) --qn;
  while (R(4) * az > m.eigenvalue<R>(std::max(qn, n + 1))) ++qn;
  return std::max(n, qn - 1);
}

/// sum_{j>=0} coef(j) z^j T_{k0+j} where T_k = sum_{q>nstar} mult lambda_q^{-k}
/// over the tail law.  T_k = mult Lambda^{-k} a^{rk} zeta(rk, a) with
/// a = nstar + 1 + d and Lambda = c a^r, so every term is representable.
template <class R>
Cx<R> tail_series(const SpectrumModel& m, long nstar, Cx<R> z, int k0,
                  const std::function<R(int)>& coef, R tol, R& bound) {
  using std::abs;
  using std::pow;
  const R r = m.law.r.to<R>();
  const R a = R(nstar + 1) + m.law.d.to<R>();
  const R Lambda = static_cast<R>(m.law.c) * pow(a, r);
  const R mult(m.law_mult);
  const Cx<R> w = z / Lambda;
  Cx<R> wj(1);
  const R base = pow(Lambda, -R(k0));
  Cx<R> sum(0);
  for (int j = 0; j < 2000; ++j) {
    const R s = r * R(k0 + j);
    const Cx<R> S = hurwitz_zeta_scaled<R>(Cx<R>(s), a);
    const Cx<R> term = coef(j) * mult * wj * base * S;
    sum += term;
    const R next_ratio = abs(w) * abs(coef(j + 1)) / std::max(abs(coef(j)), R(1e-300));
    if (j > k0 + 2 && next_ratio < R(0.75) && abs(term) * next_ratio / (R(1) - next_ratio) < tol / 4) {
      bound = abs(term) * next_ratio / (R(1) - next_ratio);
      return sum;
    }
    wj *= w;
  }
  throw NumericError("Fredholm tail series did not converge");
}

template <class R>
struct LogDet {
  Cx<R> log_value;
  bool defined = true;
  long n = 0;
  R bound = 0;
};

/// log(1 + w) + sum_{k=1}^N (-1)^k w^k / k.
template <class R>
Cx<R> weierstrass_log(Cx<R> w, int N) {
  using std::abs;
  if (abs(w) < R(0.5)) {
    // sum_{k>N} (-1)^{k+1} w^k / k
    Cx<R> wk(1);
    for (int k = 0; k <= N; ++k) wk *= w;
    Cx<R> s(0);
    const R eps = machine_eps<R>();
    for (int k = N + 1; k < 4000; ++k) {
      const Cx<R> t = wk / R(k);
      s += (k % 2 == 1) ? t : -t;
      if (abs(t) <= eps * abs(s) / 4) break;
      wk *= w;
    }
    return s;
  }
  Cx<R> s = std::log(Cx<R>(1) + w);
  Cx<R> wk(1);
  for (int k = 1; k <= N; ++k) {
    wk *= w;
    s += (k % 2 == 0) ? wk / R(k) : -wk / R(k);
  }
  return s;
}

template <class R>
LogDet<R> log_det_impl(const SpectrumModel& m, Cx<R> z, int order, R tol) {
  if (order < 1) throw ContractError("Fredholm order must be >= 1");
  if (order < m.schatten_p) {
    throw ContractError("Fredholm order below the Schatten order of the model");
  }
  if (m.dim_ker != 0) throw ContractError("Fredholm determinants need an invertible operator");
  const int N = order - 1;
  LogDet<R> out;
  if (z == Cx<R>(0)) return out;
  const long nstar = head_end<R>(m, z);
  ComplexSum<R> acc;
  for (long q = 1; q <= nstar; ++q) {
    const R lam = m.eigenvalue<R>(q);
    const Cx<R> w = z / lam;
    if (Cx<R>(1) + w == Cx<R>(0)) {
      out.defined = false;
      out.n = nstar;
      return out;
    }
    acc.add(R(m.multiplicity(q)) * weierstrass_log<R>(w, N));
  }
  Cx<R> zp(1);
  for (int k = 0; k <= N; ++k) zp *= z;
  R bound = 0;
  const Cx<R> tail = tail_series<R>(
      m, nstar, z, N + 1,
      [N](int j) { return (((N + j) % 2 == 0) ? R(1) : R(-1)) / R(N + 1 + j); },
      tol / std::max(R(1), std::abs(zp)), bound);
  acc.add(zp * tail);
  out.log_value = acc.value();
  out.n = nstar;
  out.bound = bound * std::abs(zp);
  return out;
}

template <class R>
TraceEval log_derivative_impl(const SpectrumModel& m, Cx<R> z, int order, R tol) {
  if (order < m.schatten_p || order < 1) {
    throw ContractError("Fredholm order below the Schatten order of the model");
  }
  const int N = order - 1;
  const long nstar = head_end<R>(m, z);
  ComplexSum<R> acc;
  for (long q = 1; q <= nstar; ++q) {
    const R lam = m.eigenvalue<R>(q);
    if (Cx<R>(lam) + z == Cx<R>(0)) throw ContractError("z lies on -spec L");
    R lp(1);
    for (int k = 0; k < N; ++k) lp *= lam;
    acc.add(R(m.multiplicity(q)) / (lp * (Cx<R>(lam) + z)));
  }
  R bound = 0;
  // lambda^{-N} (lambda + z)^{-1} = sum_j (-z)^j lambda^{-N-1-j}
  acc.add(tail_series<R>(
      m, nstar, z, N + 1, [](int j) { return (j % 2 == 0) ? R(1) : R(-1); }, tol, bound));
  Cx<R> pre(1);
  for (int k = 0; k < N; ++k) pre *= -z;
  return {cx_cast<double>(pre * acc.value()), nstar, static_cast<double>(bound * std::abs(pre))};
}

template <class R>
TraceEval resolvent_impl(const SpectrumModel& m, Cx<R> z, int N, R tol) {
  if (N < m.schatten_p || N < 1) throw ContractError("power below the Schatten order");
  if (!(z.real() > -m.eigenvalue<R>(1))) {
    throw ContractError("resolvent_power_trace needs Re z > -lambda_1");
  }
  const long nstar = head_end<R>(m, z);
  ComplexSum<R> acc;
  for (long q = 1; q <= nstar; ++q) {
    const Cx<R> v = Cx<R>(m.eigenvalue<R>(q)) + z;
    Cx<R> p(1);
    for (int k = 0; k < N; ++k) p *= v;
    acc.add(R(m.multiplicity(q)) / p);
  }
  R bound = 0;
  // (lambda + z)^{-N} = sum_j (-1)^j C(N+j-1, j) z^j lambda^{-N-j}
  acc.add(tail_series<R>(
      m, nstar, z, N,
      [N](int j) {
        R c(1);
        for (int i = 1; i <= j; ++i) c = c * R(N + i - 1) / R(i);
        return (j % 2 == 0) ? c : -c;
      },
      tol, bound));
  return {cx_cast<double>(acc.value()), nstar, static_cast<double>(bound)};
}

}  // namespace

FredholmEval det_fredholm(const SpectrumModel& m, Cx<double> z, int order,
                          const FredholmOptions& opt) {
  FredholmEval out;
  out.z = z;
  out.order = order;
  if (opt.precision == Precision::Extended) {
    const auto r = log_det_impl<Extended>(m, cx_cast<Extended>(z), order, Extended(opt.tol));
    out.log_value = cx_cast<double>(r.log_value);
    out.log_defined = r.defined;
    out.truncation_n = r.n;
    out.tail_bound = static_cast<double>(r.bound);
  } else {
    const auto r = log_det_impl<double>(m, z, order, opt.tol);
    out.log_value = r.log_value;
    out.log_defined = r.defined;
    out.truncation_n = r.n;
    out.tail_bound = r.bound;
  }
  if (out.log_defined) {
    out.value = std::exp(out.log_value);
  } else {
    out.value = 0;
    out.log_value = Cx<double>(std::nan(""), std::nan(""));
  }
  return out;
}

TraceEval log_derivative(const SpectrumModel& m, Cx<double> z, int order,
                         const FredholmOptions& opt) {
  if (opt.precision == Precision::Extended) {
    return log_derivative_impl<Extended>(m, cx_cast<Extended>(z), order, Extended(opt.tol));
  }
  return log_derivative_impl<double>(m, z, order, opt.tol);
}

TraceEval resolvent_power_trace(const SpectrumModel& m, Cx<double> z, int N,
                                const FredholmOptions& opt) {
  if (opt.precision == Precision::Extended) {
    return resolvent_impl<Extended>(m, cx_cast<Extended>(z), N, Extended(opt.tol));
  }
  return resolvent_impl<double>(m, z, N, opt.tol);
}

Cx<Extended> det_fredholm_log_extended(const SpectrumModel& m, Cx<Extended> z, int order,
                                       double tol) {
  const auto r = log_det_impl<Extended>(m, z, order, Extended(tol));
  if (!r.defined) throw ContractError("z lies on -spec L");
  return r.log_value;
}

}  // namespace zetafred

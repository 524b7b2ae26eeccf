#include "zetafred/special_functions.hpp"

#include <cmath>
#include <string>

#include "zetafred/errors.hpp"

namespace zetafred {
namespace {

template <class R>
bool nonpositive_integer(Cx<R> s, int& n) {
  using std::floor;
  if (s.imag() != R(0) || s.real() > R(0) || floor(s.real()) != s.real()) return false;
  if (s.real() < R(-1e6)) throw ContractError("argument too far along the negative axis");
  n = static_cast<int>(-static_cast<double>(s.real()));
  return true;
}

template <class R>
R factorial(int n) {
  R f(1);
  for (int i = 2; i <= n; ++i) f *= R(i);
  return f;
}

template <class R>
Cx<R> ipow(Cx<R> z, int n) {
  Cx<R> r(1);
  Cx<R> b = z;
  while (n > 0) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

template <class R>
int shift_threshold() {
  return std::is_same_v<R, double> ? 15 : 32;
}

Cx<double> lanczos_gamma(Cx<double> s) {
  static const double p[] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                             771.32342877765313,   -176.61502916214059,   12.507343278686905,
                             -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  const Cx<double> z = s - 1.0;
  Cx<double> x = p[0];
  for (int i = 1; i < 9; ++i) x += p[i] / (z + double(i));
  const Cx<double> t = z + 7.5;
  return std::sqrt(2.0 * pi<double>()) * std::exp((z + 0.5) * std::log(t) - t) * x;
}

}  // namespace

template <class R>
R bernoulli(int n) {
  if (n < 0) throw ContractError("bernoulli index must be nonnegative");
  if (n <= 30) return bernoulli_exact(n).to<R>();
  if (n % 2 == 1) return R(0);
  using std::pow;
  const R two_pi = 2 * pi<R>();
  R v = 2 * factorial<R>(n) * zeta_integer<R>(n) / pow(two_pi, n);
  return (n / 2) % 2 == 1 ? v : -v;
}

template <class R>
R zeta_integer(int k) {
  if (k < 2) throw ContractError("zeta_integer needs k >= 2");
  if (k >= 32) {
    using std::pow;
    R s(0);
    for (int n = 12; n >= 1; --n) s += pow(R(n), -k);
    return s;
  }
  return riemann_zeta<R>(Cx<R>(R(k), R(0))).real();
}

template <class R>
Cx<R> log_gamma(Cx<R> s) {
  int n = 0;
  if (nonpositive_integer(s, n)) {
    throw PoleError("log_gamma at a pole of Gamma", {0.0, 0.0}, {0.0, 0.0});
  }
  // Upward recurrence, then Stirling.
  Cx<R> shift_log(0);
  Cx<R> z = s;
  const R target = R(shift_threshold<R>());
  while (z.real() < target) {
    shift_log += std::log(z);
    z += R(1);
  }
  const Cx<R> z2 = z * z;
  Cx<R> zp = z;  // z^{2k-1}
  using std::log;
  Cx<R> v = (z - R(0.5)) * std::log(z) - z + R(0.5) * log(2 * pi<R>());
  for (int k = 1; k <= 15; ++k) {
    const R b = bernoulli<R>(2 * k) / R((2 * k) * (2 * k - 1));
    const Cx<R> term = b / zp;
    v += term;
    if (std::abs(term) < machine_eps<R>() * R(1e-2) * std::abs(v)) break;
    zp *= z2;
  }
  return v - shift_log;
}

template <class R>
Cx<R> gamma(Cx<R> s) {
  int n = 0;
  if (nonpositive_integer(s, n)) {
    const double res = gamma_pole_residue<double>(n);
    throw PoleError("Gamma has a pole at " + std::to_string(-n), {res, 0.0},
                    {gamma_pole_finite_part<double>(n), 0.0});
  }
  if constexpr (std::is_same_v<R, double>) {
    if (s.real() < 0.5) {
      return pi<double>() / (std::sin(pi<double>() * s) * lanczos_gamma(1.0 - s));
    }
    return lanczos_gamma(s);
  } else {
    if (s.real() < R(0.5)) {
      return pi<R>() / (std::sin(pi<R>() * s) * std::exp(log_gamma<R>(Cx<R>(1) - s)));
    }
    return std::exp(log_gamma<R>(s));
  }
}

template <class R>
Cx<R> digamma(Cx<R> s) {
  int n = 0;
  if (nonpositive_integer(s, n)) {
    const double fp = harmonic(n).to_double() - euler_gamma<double>();
    throw PoleError("digamma has a pole at " + std::to_string(-n), {-1.0, 0.0}, {fp, 0.0});
  }
  if (s.real() < R(0)) {
    return digamma<R>(Cx<R>(1) - s) - pi<R>() / std::tan(pi<R>() * s);
  }
  return polygamma<R>(0, s);
}

template <class R>
Cx<R> polygamma(int m, Cx<R> s) {
  if (m < 0) throw ContractError("polygamma order must be nonnegative");
  int n = 0;
  if (nonpositive_integer(s, n)) {
    if (m == 0) return digamma<R>(s);
    throw PoleError("polygamma has a pole at " + std::to_string(-n), {0.0, 0.0}, {0.0, 0.0});
  }
  if (m == 0 && s.real() < R(0)) return digamma<R>(s);
  const R sign = (m % 2 == 1) ? R(1) : R(-1);  // (-1)^{m+1}
  const R mfact = factorial<R>(m);
  Cx<R> acc(0);
  Cx<R> z = s;
  const R target = R(shift_threshold<R>() + m);
  while (z.real() < target) {
    // psi^(m)(z) = psi^(m)(z+1) + (-1)^{m+1} m! / z^{m+1}
    acc += sign * mfact / ipow(z, m + 1);
    z += R(1);
  }
  Cx<R> v;
  const Cx<R> z2 = z * z;
  if (m == 0) {
    v = std::log(z) - R(0.5) / z;
    Cx<R> zp = z2;
    for (int k = 1; k <= 30; ++k) {
      const Cx<R> term = bernoulli<R>(2 * k) / (R(2 * k) * zp);
      v -= term;
      if (std::abs(term) < machine_eps<R>() * R(1e-2) * std::abs(v)) break;
      zp *= z2;
    }
  } else {
    Cx<R> zm = ipow(z, m);
    v = factorial<R>(m - 1) / zm + mfact / (R(2) * zm * z);
    Cx<R> zp = zm * z2;  // z^{2k+m}
    R ratio = factorial<R>(m + 1) / R(2);  // (2k+m-1)!/(2k)! at k = 1
    for (int k = 1; k <= 30; ++k) {
      const Cx<R> term = bernoulli<R>(2 * k) * ratio / zp;
      v += term;
      if (std::abs(term) < machine_eps<R>() * R(1e-2) * std::abs(v)) break;
      zp *= z2;
      ratio *= R(2 * k + m) * R(2 * k + m + 1) / (R(2 * k + 1) * R(2 * k + 2));
    }
    v *= sign;
  }
  return v + acc;
}

template <class R>
R gamma_pole_residue(int n) {
  if (n < 0) throw ContractError("Gamma poles are at nonpositive integers");
  R v = R(1) / factorial<R>(n);
  return n % 2 == 0 ? v : -v;
}

template <class R>
R gamma_pole_finite_part(int n) {
  return gamma_pole_residue<R>(n) * (harmonic(n).to<R>() - euler_gamma<R>());
}

GammaPoleData gamma_pole_data(int n) {
  GammaPoleData d;
  d.n = n;
  if (n <= 20) {
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    d.residue_exact = Rational(n % 2 == 0 ? 1 : -1, f);
  }
  d.residue = gamma_pole_residue<double>(n);
  d.finite_part = gamma_pole_finite_part<double>(n);
  return d;
}

namespace {

// log Gamma(1 + eps) through eps^order.
template <class R>
LaurentSeries<R> log_gamma_one_plus(int order) {
  std::vector<Cx<R>> c(std::max(order, 0) + 1, Cx<R>(0));
  if (order >= 1) c[1] = -euler_gamma<R>();
  for (int k = 2; k <= order; ++k) {
    const R v = zeta_integer<R>(k) / R(k);
    c[k] = (k % 2 == 0) ? v : -v;
  }
  return LaurentSeries<R>(0, std::move(c));
}

// prod_{j=1}^{n} (eps - j), exact polynomial truncated at eps^order.
template <class R>
LaurentSeries<R> falling_poly(int n, int order) {
  std::vector<Cx<R>> p(order + 1, Cx<R>(0));
  p[0] = Cx<R>(1);
  for (int j = 1; j <= n; ++j) {
    for (int i = order; i >= 0; --i) {
      p[i] = p[i] * R(-j) + (i > 0 ? p[i - 1] : Cx<R>(0));
    }
  }
  return LaurentSeries<R>(0, std::move(p));
}

template <class R>
LaurentSeries<R> log_gamma_taylor(Cx<R> a, int order) {
  std::vector<Cx<R>> c(order + 1, Cx<R>(0));
  R mf(1);
  for (int m = 1; m <= order; ++m) {
    mf *= R(m);
    c[m] = polygamma<R>(m - 1, a) / mf;
  }
  return LaurentSeries<R>(0, std::move(c));
}

}  // namespace

template <class R>
LaurentSeries<R> gamma_series(Cx<R> a, int order) {
  if (order < -1) throw ContractError("gamma_series order must be >= -1");
  int n = 0;
  if (nonpositive_integer(a, n)) {
    // Gamma(-n + eps) = Gamma(1 + eps) / (eps prod_{j=1}^n (eps - j))
    const int o = order + 1;
    const LaurentSeries<R> g1 = log_gamma_one_plus<R>(o).exp();
    const LaurentSeries<R> inv = falling_poly<R>(n, o).reciprocal();
    const LaurentSeries<R> prod = g1 * inv;
    std::vector<Cx<R>> c(prod.coeffs().begin(), prod.coeffs().end());
    return LaurentSeries<R>(-1, std::move(c)).truncated(order);
  }
  if (order < 0) return LaurentSeries<R>(0, {});
  return gamma<R>(a) * log_gamma_taylor<R>(a, order).exp();
}

template <class R>
LaurentSeries<R> inv_gamma_series(Cx<R> a, int order) {
  if (order < 0) return LaurentSeries<R>(0, {});
  int n = 0;
  if (nonpositive_integer(a, n)) {
    // 1/Gamma(-n + eps) = eps prod_{j=1}^n (eps - j) / Gamma(1 + eps)
    const LaurentSeries<R> lg = log_gamma_one_plus<R>(order);
    const LaurentSeries<R> inv_g1 = (Cx<R>(-1) * lg).exp();
    const LaurentSeries<R> prod = falling_poly<R>(n, order) * inv_g1;
    std::vector<Cx<R>> c(order + 1, Cx<R>(0));
    for (int i = 1; i <= order; ++i) c[i] = prod[i - 1];
    return LaurentSeries<R>(0, std::move(c));
  }
  return (Cx<R>(1) / gamma<R>(a)) * (Cx<R>(-1) * log_gamma_taylor<R>(a, order)).exp();
}

template <class R>
Cx<R> pf_dgamma(int j, Cx<R> alpha) {
  if (j < 0) throw ContractError("derivative order must be nonnegative");
  return gamma_series<R>(alpha, j)[j] * factorial<R>(j);
}

template <class R>
Cx<R> laplace_regint(Cx<R> a, int k, Cx<R> z) {
  if (k < 0) throw ContractError("log power must be nonnegative");
  if (!(z.real() > R(0))) throw ContractError("laplace_regint needs Re z > 0");
  const Cx<R> lz = std::log(z);
  // Laurent data of Gamma at alpha through order k supplies every Pf derivative.
  const LaurentSeries<R> g = gamma_series<R>(a, k);
  Cx<R> sum(0);
  R binom(1);
  Cx<R> lzp(1);
  for (int j = 0; j <= k; ++j) {
    const Cx<R> pf = g[k - j] * factorial<R>(k - j);
    const R sgn = (j % 2 == 0) ? R(1) : R(-1);
    sum += binom * sgn * pf * lzp;
    binom = binom * R(k - j) / R(j + 1);
    lzp *= lz;
  }
  int n = 0;
  if (nonpositive_integer(a, n)) {
    const R sgn = (k % 2 == 1) ? R(1) : R(-1);  // (-1)^{k+1}
    sum += sgn * gamma_pole_residue<R>(n) * lzp / R(k + 1);
  }
  return std::exp(-a * lz) * sum;
}

template <class R>
Cx<R> laplace_regint(const Exponent& alpha, int k, Cx<R> z) {
  return laplace_regint<R>(alpha.template to<R>(), k, z);
}

#define ZETAFRED_SF_INST(R)                                            \
  template R bernoulli<R>(int);                                        \
  template R zeta_integer<R>(int);                                     \
  template Cx<R> gamma<R>(Cx<R>);                                      \
  template Cx<R> log_gamma<R>(Cx<R>);                                  \
  template Cx<R> digamma<R>(Cx<R>);                                    \
  template Cx<R> polygamma<R>(int, Cx<R>);                             \
  template LaurentSeries<R> gamma_series<R>(Cx<R>, int);               \
  template LaurentSeries<R> inv_gamma_series<R>(Cx<R>, int);           \
  template Cx<R> pf_dgamma<R>(int, Cx<R>);                             \
  template R gamma_pole_residue<R>(int);                               \
  template R gamma_pole_finite_part<R>(int);                           \
  template Cx<R> laplace_regint<R>(const Exponent&, int, Cx<R>);      \
  template Cx<R> laplace_regint<R>(Cx<R>, int, Cx<R>);

ZETAFRED_SF_INST(double)
ZETAFRED_SF_INST(Extended)

}  // namespace zetafred

#pragma once

#include <complex>

#include "zetafred/expansion.hpp"
#include "zetafred/laurent.hpp"
#include "zetafred/precision.hpp"
#include "zetafred/rational.hpp"

namespace zetafred {

/// Bernoulli number B_n: exact table through n = 30, zeta formula beyond.
template <class R>
R bernoulli(int n);

/// Riemann zeta at an integer k >= 2.
template <class R>
R zeta_integer(int k);

/// Gamma function.  Throws PoleError at 0, -1, -2, ...
template <class R>
Cx<R> gamma(Cx<R> s);

/// log Gamma on the branch that is real on the positive axis and
/// continuous in Re s > 0 (and, via recurrence, off the negative axis).
template <class R>
Cx<R> log_gamma(Cx<R> s);

/// Digamma.  Throws PoleError at 0, -1, -2, ... with residue -1.
template <class R>
Cx<R> digamma(Cx<R> s);

/// m-th derivative of digamma, m >= 0.
template <class R>
Cx<R> polygamma(int m, Cx<R> s);

/// Laurent series of Gamma(a + eps) through eps^order.  At a = -n the
/// series starts at eps^{-1}.
template <class R>
LaurentSeries<R> gamma_series(Cx<R> a, int order);

/// Taylor series of 1/Gamma(a + eps) through eps^order.
template <class R>
LaurentSeries<R> inv_gamma_series(Cx<R> a, int order);

/// Finite part of the j-th derivative of Gamma at alpha.  Equals the
/// ordinary derivative off the poles.
template <class R>
Cx<R> pf_dgamma(int j, Cx<R> alpha);

/// Residue and finite part of Gamma at -n.
struct GammaPoleData {
  int n = 0;
  Rational residue_exact;  // (-1)^n / n!  (n <= 20)
  double residue = 0;
  double finite_part = 0;  // residue * (L_n - gamma)
};
GammaPoleData gamma_pole_data(int n);

template <class R>
R gamma_pole_residue(int n);
template <class R>
R gamma_pole_finite_part(int n);

/// Regularized integral of x^{alpha-1} log^k x e^{-xz} over (0, infinity)
/// for Re z > 0, principal branch of log z.
template <class R>
Cx<R> laplace_regint(const Exponent& alpha, int k, Cx<R> z);
/// Same for a floating exponent; the pole branch applies only when alpha
/// is exactly a nonpositive integer.
template <class R>
Cx<R> laplace_regint(Cx<R> alpha, int k, Cx<R> z);

/// Hurwitz zeta(s, a) for a > 0.  Throws PoleError at s = 1 (residue 1,
/// finite part -digamma(a)).
template <class R>
Cx<R> hurwitz_zeta(Cx<R> s, R a);

/// d/ds zeta(s, a).
template <class R>
Cx<R> hurwitz_zeta_ds(Cx<R> s, R a);

/// a^s zeta(s, a) = sum_{j>=0} (a / (a + j))^s.  Stays representable for
/// large s and a where zeta(s, a) itself would underflow.
template <class R>
Cx<R> hurwitz_zeta_scaled(Cx<R> s, R a);

/// Riemann zeta(s) = zeta(s, 1).
template <class R>
Cx<R> riemann_zeta(Cx<R> s);

#define ZETAFRED_SF_EXTERN(R)                                        \
  extern template R bernoulli<R>(int);                               \
  extern template R zeta_integer<R>(int);                            \
  extern template Cx<R> gamma<R>(Cx<R>);                             \
  extern template Cx<R> log_gamma<R>(Cx<R>);                         \
  extern template Cx<R> digamma<R>(Cx<R>);                           \
  extern template Cx<R> polygamma<R>(int, Cx<R>);                    \
  extern template LaurentSeries<R> gamma_series<R>(Cx<R>, int);      \
  extern template LaurentSeries<R> inv_gamma_series<R>(Cx<R>, int);  \
  extern template Cx<R> pf_dgamma<R>(int, Cx<R>);                    \
  extern template R gamma_pole_residue<R>(int);                      \
  extern template R gamma_pole_finite_part<R>(int);                  \
  extern template Cx<R> laplace_regint<R>(const Exponent&, int, Cx<R>); \
  extern template Cx<R> laplace_regint<R>(Cx<R>, int, Cx<R>);          \
  extern template Cx<R> hurwitz_zeta<R>(Cx<R>, R);                   \
  extern template Cx<R> hurwitz_zeta_ds<R>(Cx<R>, R);                \
  extern template Cx<R> hurwitz_zeta_scaled<R>(Cx<R>, R);            \
  extern template Cx<R> riemann_zeta<R>(Cx<R>);

ZETAFRED_SF_EXTERN(double)
ZETAFRED_SF_EXTERN(Extended)
#undef ZETAFRED_SF_EXTERN

}  // namespace zetafred

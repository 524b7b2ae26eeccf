// Hurwitz zeta by Euler-Maclaurin summation.  The sum is split at N = a + M
// with M chosen so that N >= max(base, |s|); the Bernoulli corrections then
// decay geometrically.
#include <cmath>

#include "zetafred/errors.hpp"
#include "zetafred/special_functions.hpp"

namespace zetafred {
namespace {

template <class R>
struct EmPlan {
  int M;
  R N;
};

// Split point.  For Re s < 0 the head terms grow like N^{-s}, so N is kept
// as small as the Bernoulli tail allows.
template <class R>
EmPlan<R> plan(Cx<R> s, R a, bool double_target) {
  using std::ceil;
  if (!(a > R(0))) throw ContractError("Hurwitz zeta needs a > 0");
  const R abs_s = std::abs(s);
  R need;
  if (s.real() < R(0)) {
    need = std::max(R(double_target ? 8 : 14), (abs_s + R(10)) / pi<R>());
  } else {
    need = std::max(std::is_same_v<R, double> ? R(12) : R(30), abs_s);
  }
  const int M = a >= need ? 0 : static_cast<int>(static_cast<double>(ceil(need - a)));
  return {M, a + R(M)};
}

template <class R>
R bernoulli_over_factorial(int n) {
  R f(1);
  for (int i = 2; i <= n; ++i) f *= R(i);
  return bernoulli<R>(n) / f;
}

template <class R>
void check_pole(Cx<R> s, R a) {
  if (s == Cx<R>(1)) {
    const Cx<R> fp = -digamma<R>(Cx<R>(a));
    throw PoleError("Hurwitz zeta has a pole at s = 1", {1.0, 0.0},
                    {static_cast<double>(fp.real()), 0.0});
  }
}

template <class R>
Cx<R> scaled_em(Cx<R> s, R a, R target) {
  check_pole(s, a);
  const auto [M, N] = plan(s, a, target > R(1e-20));
  using std::log;
  Cx<R> head(0);
  for (int j = M - 1; j >= 0; --j) {
    head += std::exp(-s * Cx<R>(log((a + R(j)) / a)));
  }
  const Cx<R> r = std::exp(-s * Cx<R>(log(N / a)));  // (a / N)^s
  Cx<R> tail = r * N / (s - R(1)) + r / R(2);
  Cx<R> poch = s;  // (s)_{2i-1}
  R Np = N;        // N^{2i-1}
  R last = 0;
  for (int i = 1; i <= 45; ++i) {
    const Cx<R> term = bernoulli_over_factorial<R>(2 * i) * poch * r / Np;
    tail += term;
    last = std::abs(term);
    if (last <= target * R(1e-2) * std::abs(head + tail)) break;
    poch *= (s + R(2 * i - 1)) * (s + R(2 * i));
    Np *= N * N;
  }
  const R scale = std::abs(head + tail);
  if (last > R(1e2) * target * scale) {
    throw NumericError("Hurwitz zeta Euler-Maclaurin tail did not converge",
                       static_cast<double>(last / scale));
  }
  return head + tail;
}

template <class R>
Cx<R> ds_em(Cx<R> s, R a, R target) {
  if (s == Cx<R>(1)) throw PoleError("d/ds Hurwitz zeta has a pole at s = 1", {0.0, 0.0}, {0.0, 0.0});
  const auto [M, N] = plan(s, a, target > R(1e-20));
  using std::log;
  Cx<R> v(0);
  for (int j = M - 1; j >= 0; --j) {
    const R l = log(a + R(j));
    v -= l * std::exp(-s * l);
  }
  const R lN = log(N);
  const Cx<R> Ns = std::exp(-s * lN);  // N^{-s}
  const Cx<R> s1 = s - R(1);
  v -= N * Ns * (lN / s1 + Cx<R>(1) / (s1 * s1));
  v -= R(0.5) * lN * Ns;
  // (s)_{2i-1} and its s-derivative.
  Cx<R> poch = s, dpoch(1);
  R Np = N;
  for (int i = 1; i <= 45; ++i) {
    const Cx<R> term = bernoulli_over_factorial<R>(2 * i) * Ns / Np * (dpoch - poch * lN);
    v += term;
    if (std::abs(term) <= target * R(1e-2) * std::abs(v)) break;
    for (int q : {2 * i - 1, 2 * i}) {
      dpoch = dpoch * (s + R(q)) + poch;
      poch *= s + R(q);
    }
    Np *= N * N;
  }
  return v;
}

}  // namespace

// Double requests with Re s < 0 run in extended precision: the head sum
// cancels to many digits there.
template <class R>
Cx<R> hurwitz_zeta_scaled(Cx<R> s, R a) {
  if constexpr (std::is_same_v<R, double>) {
    if (s.real() < 0) return cx_cast<double>(
          scaled_em<Extended>(cx_cast<Extended>(s), Extended(a), Extended(machine_eps<double>())));
  }
  return scaled_em<R>(s, a, machine_eps<R>());
}

template <class R>
Cx<R> hurwitz_zeta_ds(Cx<R> s, R a) {
  if constexpr (std::is_same_v<R, double>) {
    if (s.real() < 0) return cx_cast<double>(
          ds_em<Extended>(cx_cast<Extended>(s), Extended(a), Extended(machine_eps<double>())));
  }
  return ds_em<R>(s, a, machine_eps<R>());
}

template <class R>
Cx<R> hurwitz_zeta(Cx<R> s, R a) {
  using std::log;
  return hurwitz_zeta_scaled<R>(s, a) * std::exp(-s * Cx<R>(log(a)));
}

template <class R>
Cx<R> riemann_zeta(Cx<R> s) {
  return hurwitz_zeta<R>(s, R(1));
}

#define ZETAFRED_HZ_INST(R)                              \
  template Cx<R> hurwitz_zeta<R>(Cx<R>, R);              \
  template Cx<R> hurwitz_zeta_ds<R>(Cx<R>, R);           \
  template Cx<R> hurwitz_zeta_scaled<R>(Cx<R>, R);       \
  template Cx<R> riemann_zeta<R>(Cx<R>);

ZETAFRED_HZ_INST(double)
ZETAFRED_HZ_INST(Extended)

}  // namespace zetafred

#include <gtest/gtest.h>

#include <cmath>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/polygamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "zetafred/errors.hpp"
#include "zetafred/special_functions.hpp"

using namespace zetafred;
using C = std::complex<double>;
namespace bm = boost::math;

namespace {
const double kPi = bm::constants::pi<double>();
const double kGamma = bm::constants::euler<double>();

double rel(C a, C b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }
}  // namespace

TEST(SpecialFunctions, BernoulliAndZetaIntegers) {
  for (int n = 1; n <= 15; ++n) {
    EXPECT_NEAR(bernoulli<double>(2 * n) / bm::bernoulli_b2n<double>(n), 1, 1e-14);
  }
  EXPECT_NEAR(bernoulli<double>(40) / bm::bernoulli_b2n<double>(20), 1, 1e-12);
  for (int k = 2; k <= 12; ++k) EXPECT_NEAR(zeta_integer<double>(k), bm::zeta<double>(k), 1e-15);
  const Extended z2 = zeta_integer<Extended>(2);
  EXPECT_LT(abs(z2 - bm::constants::pi<Extended>() * bm::constants::pi<Extended>() / 6),
            Extended(1e-32));
}

TEST(SpecialFunctions, GammaRealAxis) {
  for (double x : {0.1, 0.5, 1.0, 2.5, 7.25, 30.0, -0.5, -2.25}) {
    EXPECT_LT(rel(gamma<double>(x), std::tgamma(x)), 1e-14) << x;
  }
  for (double x : {0.1, 0.5, 3.5, 120.0}) {
    EXPECT_NEAR(log_gamma<double>(x).real(), std::lgamma(x), 1e-13 * std::max(1.0, std::lgamma(x)));
  }
  EXPECT_THROW(gamma<double>(C(-3)), PoleError);
}

TEST(SpecialFunctions, GammaComplexIdentities) {
  const C s(0.3, 1.7);
  // Recurrence and reflection.
  EXPECT_LT(rel(gamma<double>(s + 1.0), s * gamma<double>(s)), 1e-13);
  EXPECT_LT(rel(gamma<double>(s) * gamma<double>(1.0 - s), kPi / std::sin(kPi * s)), 1e-13);
  // |Gamma(1/2 + iy)|^2 = pi / cosh(pi y)
  const double y = 2.2;
  EXPECT_NEAR(std::norm(gamma<double>(C(0.5, y))), kPi / std::cosh(kPi * y), 1e-14);
  // log_gamma is continuous along a path crossing many branch sheets.
  const C big(2, 40);
  EXPECT_LT(rel(std::exp(log_gamma<double>(big)), gamma<double>(big)), 1e-11);
  C prev = log_gamma<double>(C(2, 0));
  for (int i = 1; i <= 400; ++i) {
    const C cur = log_gamma<double>(C(2, 0.1 * i));
    EXPECT_LT(std::abs(cur.imag() - prev.imag()), 1.0);
    prev = cur;
  }
}

TEST(SpecialFunctions, DigammaPolygamma) {
  for (double x : {0.25, 1.0, 3.7, 50.0, -1.5}) {
    EXPECT_NEAR(digamma<double>(x).real(), bm::digamma(x), 1e-13 * std::max(1.0, std::abs(bm::digamma(x))));
  }
  for (int m = 1; m <= 4; ++m) {
    for (double x : {0.5, 2.0, 9.0}) {
      EXPECT_LT(rel(polygamma<double>(m, x), bm::polygamma(m, x)), 1e-12) << m << " " << x;
    }
  }
  EXPECT_THROW(digamma<double>(C(0)), PoleError);
  const C s(1.2, -0.7);
  EXPECT_LT(rel(digamma<double>(s + 1.0), digamma<double>(s) + 1.0 / s), 1e-13);
}

TEST(SpecialFunctions, GammaSeries) {
  const C a(1.5);
  const auto g = gamma_series<double>(a, 3);
  const double ps = bm::digamma(1.5), tg = bm::trigamma(1.5), G = std::tgamma(1.5);
  EXPECT_NEAR(g[0].real(), G, 1e-15);
  EXPECT_NEAR(g[1].real(), G * ps, 1e-14);
  EXPECT_NEAR(g[2].real(), G * (ps * ps + tg) / 2, 1e-14);
  // At a = -n: residue (-1)^n/n!, finite part (-1)^n/n! (H_n - gamma).
  for (int n = 0; n <= 5; ++n) {
    const auto p = gamma_series<double>(C(-n), 2);
    EXPECT_EQ(p.lo(), -1);
    const double r = std::pow(-1.0, n) / std::tgamma(n + 1.0);
    double h = 0;
    for (int j = 1; j <= n; ++j) h += 1.0 / j;
    EXPECT_NEAR(p[-1].real(), r, 1e-15);
    EXPECT_NEAR(p[0].real(), r * (h - kGamma), 1e-14);
    EXPECT_NEAR(gamma_pole_residue<double>(n), r, 1e-15);
    EXPECT_NEAR(gamma_pole_finite_part<double>(n), r * (h - kGamma), 1e-14);
  }
  // 1/Gamma(eps) = eps + gamma eps^2 + ...
  const auto ig = inv_gamma_series<double>(C(0), 3);
  EXPECT_NEAR(std::abs(ig[0]), 0, 1e-16);
  EXPECT_NEAR(ig[1].real(), 1, 1e-15);
  EXPECT_NEAR(ig[2].real(), kGamma, 1e-15);
  EXPECT_NEAR(ig[3].real(), kGamma * kGamma / 2 - kPi * kPi / 12, 1e-14);
}

TEST(SpecialFunctions, Hurwitz) {
  for (double s : {-3.5, -1.0, 0.0, 0.5, 2.0, 3.3}) {
    if (s != 1.0) {
      // zeta(s, 1/2) = (2^s - 1) zeta(s)
      const double expect = (std::pow(2.0, s) - 1) * bm::zeta(s);
      EXPECT_NEAR(hurwitz_zeta<double>(s, 0.5).real(), expect, 1e-12 * std::max(1.0, std::abs(expect)));
      EXPECT_NEAR(riemann_zeta<double>(s).real(), bm::zeta(s), 1e-12 * std::max(1.0, std::abs(bm::zeta(s))));
    }
  }
  const C s(0.5, 14.134725141734693);  // first nontrivial zero
  EXPECT_LT(std::abs(riemann_zeta<double>(s)), 1e-9);
  const C t(2.5, 1.0);
  const double a = 0.3;
  EXPECT_LT(rel(hurwitz_zeta<double>(t, a) - hurwitz_zeta<double>(t, a + 1), std::pow(C(a), -t)), 1e-12);
  EXPECT_THROW(hurwitz_zeta<double>(C(1), 2.0), PoleError);
  // Lerch: d/ds zeta(s, a) at 0 = log Gamma(a) - log(2 pi)/2
  for (double b : {0.25, 1.0, 3.5}) {
    EXPECT_NEAR(hurwitz_zeta_ds<double>(C(0), b).real(), std::lgamma(b) - 0.5 * std::log(2 * kPi), 1e-12);
  }
  EXPECT_NEAR(riemann_zeta<double>(C(0)).real(), -0.5, 1e-15);
  // Scaled variant at large arguments.
  const double big = 1e4;
  EXPECT_LT(rel(hurwitz_zeta_scaled<double>(C(3), big) * std::pow(big, -3.0), hurwitz_zeta<double>(C(3), big)),
            1e-12);
}

TEST(SpecialFunctions, LaplaceRegintClosedForms) {
  const C z(2, 1);
  // Off the poles: Gamma(alpha) z^{-alpha}.
  for (Rational a : {Rational(1, 2), Rational(3), Rational(-3, 2)}) {
    const double ad = a.to_double();
    EXPECT_LT(rel(laplace_regint<double>(Exponent(a), 0, z), std::tgamma(ad) * std::pow(z, -ad)), 1e-13);
  }
  // alpha = 0: -gamma - log z; alpha = -1: z (log z + gamma - 1).
  EXPECT_LT(rel(laplace_regint<double>(Exponent(0), 0, z), -kGamma - std::log(z)), 1e-14);
  EXPECT_LT(rel(laplace_regint<double>(Exponent(-1), 0, z), z * (std::log(z) + kGamma - 1.0)), 1e-14);
  // k = 1 off the poles: d/dalpha Gamma(alpha) z^{-alpha}.
  const double a = 0.7;
  const C expect = std::tgamma(a) * std::pow(z, -a) * (bm::digamma(a) - std::log(z));
  EXPECT_LT(rel(laplace_regint<double>(Exponent(Rational(7, 10)), 1, z), expect), 1e-13);
  // The floating-exponent entry agrees with the exact one.
  EXPECT_LT(rel(laplace_regint<double>(C(0.5), 2, z), laplace_regint<double>(Exponent(Rational(1, 2)), 2, z)),
            1e-14);
}

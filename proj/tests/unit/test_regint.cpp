#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "zetafred/errors.hpp"
#include "zetafred/expansion.hpp"
#include "zetafred/regint.hpp"
#include "zetafred/special_functions.hpp"

using namespace zetafred;
using C = std::complex<double>;

namespace {
const double kGamma = 0.5772156649015329;

AsymptoticExpansion laplace_head(const Exponent& alpha, int k, C z, int terms) {
  // t^{alpha-1} log^k t e^{-zt} at t = 0.
  AsymptoticExpansion e(Direction::AtZero);
  C c(1);
  for (int n = 0; n < terms; ++n) {
    e.add(alpha - Exponent(1) + Exponent(n), k, c);
    c *= -z / double(n + 1);
  }
  e.set_cutoff(alpha.re.to_double() + terms - 2);
  return e;
}
}  // namespace

class LaplaceGrid : public ::testing::TestWithParam<std::tuple<int, int, int>> {};

TEST_P(LaplaceGrid, ClosedFormMatchesQuadrature) {
  static const Rational alphas[] = {Rational(-2), Rational(-1), Rational(-1, 2), Rational(0),
                                    Rational(1, 2), Rational(1), Rational(2)};
  static const C zs[] = {1.0, 2.0, 4.0, C(1, 1)};
  const auto [ai, k, zi] = GetParam();
  const Exponent a(alphas[ai]);
  const C z = zs[zi];
  const double ad = alphas[ai].to_double();
  std::function<C(double)> f = [&](double t) {
    return std::pow(t, ad - 1) * std::pow(std::log(t), k) * std::exp(-z * t);
  };
  RegintOptions ro;
  ro.abs_tol = 1e-11;
  const auto r = regint_numeric<double>(f, laplace_head(a, k, z, 22),
                                        AsymptoticExpansion(Direction::AtInfinity), ro);
  EXPECT_LT(std::abs(r.value - laplace_regint<double>(a, k, z)), 1e-9);
  EXPECT_LT(r.error, 1e-9);
}

INSTANTIATE_TEST_SUITE_P(AllCases, LaplaceGrid,
                         ::testing::Combine(::testing::Range(0, 7), ::testing::Range(0, 3),
                                            ::testing::Range(0, 4)));

TEST(Regint, DilationOfLaplaceKernel) {
  // regint u^{-1} e^{-lambda u} du = -gamma - log lambda
  for (double lam : {2.0, std::exp(1.0), 10.0}) {
    std::function<C(double)> f = [&](double u) { return C(std::exp(-lam * u) / u); };
    const auto r = regint_numeric<double>(f, laplace_head(Exponent(0), 0, lam, 30),
                                          AsymptoticExpansion(Direction::AtInfinity));
    EXPECT_NEAR(r.value.real(), -kGamma - std::log(lam), 1e-9);
    EXPECT_NEAR(laplace_regint<double>(Exponent(0), 0, C(lam)).real(), -kGamma - std::log(lam), 1e-14);
  }
}

TEST(Regint, DilationLawProperty) {
  // f(t) = a t^{-1} log^k t e^{-t} + b t^{-1} log^j t (1 - e^{-t}): both ends
  // carry t^{-1} log terms, so the correction is nontrivial.  Both pieces
  // are entire at 0, which keeps the subtracted series tame after dilation.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coef(-2, 2), lam(0.2, 8);
  std::uniform_int_distribution<int> kd(0, 2);
  const int terms = 50;
  for (int trial = 0; trial < 12; ++trial) {
    const double a = coef(rng), b = coef(rng), l = lam(rng);
    const int k = kd(rng), j = kd(rng);
    std::function<C(double)> f = [=](double t) {
      const double lt = std::log(t);
      return C((a * std::pow(lt, k) * std::exp(-t) - b * std::pow(lt, j) * std::expm1(-t)) / t);
    };
    AsymptoticExpansion z0 = scale(laplace_head(Exponent(0), k, 1.0, terms), C(a));
    double c = b;
    for (int n = 1; n <= terms; ++n) {
      z0.add(Exponent(n - 1), j, c);
      c *= -1.0 / (n + 1);
    }
    z0.set_cutoff(terms - 2);
    AsymptoticExpansion zi(Direction::AtInfinity);
    zi.add(Exponent(-1), j, b);

    std::function<C(double)> g = [&](double u) { return l * f(l * u); };
    const auto base = regint_numeric<double>(f, z0, zi);
    const auto dil = regint_numeric<double>(g, dilate(z0, l), dilate(zi, l));
    EXPECT_NEAR(std::abs(dil.value - base.value - dilation_correction(z0, zi, l)), 0, 1e-8)
        << "trial " << trial;
  }
}

TEST(Regint, PowerLawAtInfinity) {
  // regint_0^inf 1/(1+t) dt = 0 (finite part of log(1+T) - log T).
  std::function<C(double)> f = [](double t) { return C(1 / (1 + t)); };
  AsymptoticExpansion z0(Direction::AtZero, 0);
  z0.add(Exponent(0), 0, 1.0);
  AsymptoticExpansion zi(Direction::AtInfinity, 30);
  for (int n = 0; n <= 30; ++n) zi.add(Exponent(-1 - n), 0, n % 2 ? -1.0 : 1.0);
  EXPECT_NEAR(std::abs(regint_numeric<double>(f, z0, zi).value), 0, 1e-10);
}

TEST(Regint, ContractChecks) {
  std::function<C(double)> f = [](double t) { return C(std::exp(-t)); };
  AsymptoticExpansion shallow(Direction::AtZero, -0.5);
  EXPECT_THROW(regint_numeric<double>(f, shallow, AsymptoticExpansion(Direction::AtInfinity)), Error);
  AsymptoticExpansion z0(Direction::AtZero);
  AsymptoticExpansion weak(Direction::AtInfinity, 0.5);
  EXPECT_THROW(regint_numeric<double>(f, z0, weak), Error);
}

TEST(Regint, UnitLaplacePfExtended) {
  // Pf of integral_0^1 t^{-1} e^{-t} dt = Ein-type constant: equals
  // regint_0^inf t^{-1} e^{-t} minus integral_1^inf t^{-1} e^{-t} = -gamma - E1(1).
  const double e1 = 0.21938393439552027;
  const auto v = unit_laplace_pf<Extended>(Cx<Extended>(0), 0, Cx<Extended>(1));
  EXPECT_NEAR(static_cast<double>(v.real()), -kGamma - e1, 1e-15);
}

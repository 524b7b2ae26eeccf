#include <gtest/gtest.h>

#include <cmath>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/polygamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "zetafred/errors.hpp"
#include "zetafred/models.hpp"
#include "zetafred/special_functions.hpp"
#include "zetafred/spectral_zeta.hpp"

using namespace zetafred;
using C = std::complex<double>;
namespace bm = boost::math;

namespace {
const double kPi = 3.141592653589793;
const double kGamma = 0.5772156649015329;
const double kLog2Pi = std::log(2 * kPi);

// Closed forms of log det_zeta(L + z).
double n1_logdet(double z) { return 0.5 * kLog2Pi - std::lgamma(1 + z); }
double ho_logdet(double z) { return 0.5 * kLog2Pi - std::lgamma(0.5 + z); }
double n2_logdet(double z) {
  if (z == 0) return kLog2Pi;
  const double r = std::sqrt(z);
  return std::log(2 * std::sinh(kPi * r) / r);
}
}  // namespace

TEST(SpectralZeta, RealValuesAgainstRiemannZeta) {
  const SpectralZeta n1(catalog_model("N1")), n2(catalog_model("N2")), ho(catalog_model("HO"));
  for (double s : {-2.5, -1.0, -0.5, 0.25, 0.75, 2.0, 3.5}) {
    EXPECT_NEAR(n1.zeta(s).value.real(), bm::zeta(s), 1e-9 * std::max(1.0, std::abs(bm::zeta(s)))) << s;
    EXPECT_NEAR(n2.zeta(s).value.real(), bm::zeta(2 * s), 1e-9 * std::max(1.0, std::abs(bm::zeta(2 * s))))
        << s;
    const double h = (std::pow(2.0, s) - 1) * bm::zeta(s);
    EXPECT_NEAR(ho.zeta(s).value.real(), h, 1e-9 * std::max(1.0, std::abs(h))) << s;
  }
}

TEST(SpectralZeta, ComplexArgumentAndShift) {
  const SpectralZeta n1(catalog_model("N1"));
  // Complex s against the Euler-Maclaurin evaluation of Riemann zeta.
  for (C s : {C(0.5, 3.0), C(-1.5, 2.0), C(2.5, -4.0)}) {
    EXPECT_LT(std::abs(n1.zeta(s).value - riemann_zeta<double>(s)), 1e-9) << s;
  }
  // zeta(s; L + 1) for lambda_n = n is zeta(s) - 1.
  EXPECT_NEAR(n1.zeta(3.0, 1.0).value.real(), bm::zeta(3.0) - 1, 1e-10);
  EXPECT_NEAR(n1.zeta(-0.5, 1.0).value.real(), bm::zeta(-0.5) - 1, 1e-9);
}

TEST(SpectralZeta, PolesCarryLaurentData) {
  const auto n1 = catalog_model("N1");
  const ZetaValue v = zeta(n1, 1.0);
  EXPECT_TRUE(v.pole);
  EXPECT_NEAR(v.laurent.residue().real(), 1, 1e-10);
  EXPECT_NEAR(v.value.real(), kGamma, 1e-9);
  const auto pi1 = zeta_pf_at_positive_integer(n1, 1);
  EXPECT_NEAR(pi1.residue.real(), 1, 1e-10);
  EXPECT_NEAR(pi1.pf.real(), kGamma, 1e-9);
  // zeta(2s) has residue 1/2 at s = 1/2.
  const ZetaValue h = zeta(catalog_model("N2"), 0.5);
  EXPECT_TRUE(h.pole);
  EXPECT_NEAR(h.laurent.residue().real(), 0.5, 1e-10);
  EXPECT_NEAR(h.value.real(), kGamma, 1e-9);
}

TEST(SpectralZeta, LogDetClosedForms) {
  for (const auto& name : catalog_names()) {
    const auto m = catalog_model(name);
    const DetZetaValue d = log_det_zeta(m);
    EXPECT_NEAR(d.value.real(), m.oracles.at("log_det_zeta"), 1e-10) << name;
    EXPECT_LT(d.residual, 1e-7) << name;
    EXPECT_NEAR(d.zeta_at_zero.real(), m.oracles.at("zeta_at_0"), 1e-12) << name;
  }
}

TEST(SpectralZeta, ShiftedLogDet) {
  const SpectralZeta n1(catalog_model("N1")), n2(catalog_model("N2")), ho(catalog_model("HO"));
  for (double z : {0.5, 1.0, 3.0, 25.0}) {
    EXPECT_NEAR(n1.log_det_heat(z).real(), n1_logdet(z), 1e-10 * std::max(1.0, std::abs(n1_logdet(z))));
    EXPECT_NEAR(n2.log_det_heat(z).real(), n2_logdet(z), 1e-10 * std::max(1.0, n2_logdet(z)));
    EXPECT_NEAR(ho.log_det_heat(z).real(), ho_logdet(z), 1e-10 * std::max(1.0, std::abs(ho_logdet(z))));
    const auto both = n1.log_det(z);
    EXPECT_LT(both.residual, 1e-7);
  }
  // Complex shift against the complex log Gamma.
  const C z(1.5, 2.0);
  const C expect = 0.5 * kLog2Pi - log_gamma<double>(1.0 + z);
  EXPECT_LT(std::abs(n1.log_det_heat(z) - expect), 1e-9);
  const auto x = n1.log_det_heat_extended(Cx<Extended>(Extended(2)));
  EXPECT_NEAR(static_cast<double>(x.real()), n1_logdet(2), 1e-14);
}

TEST(SpectralZeta, TaylorCoefficients) {
  const auto n1 = catalog_model("N1"), n2 = catalog_model("N2");
  // log det_zeta(L + z) = log sqrt(2 pi) - log Gamma(1 + z) for lambda_n = n.
  EXPECT_NEAR(taylor_log_det_zeta(n1, 0).real(), 0.5 * kLog2Pi, 1e-10);
  EXPECT_NEAR(taylor_log_det_zeta(n1, 1).real(), kGamma, 1e-9);
  EXPECT_NEAR(taylor_log_det_zeta(n1, 2).real(), -bm::trigamma(1.0), 1e-9);
  EXPECT_NEAR(taylor_log_det_zeta(n1, 3).real(), -bm::polygamma(2, 1.0), 1e-9);
  // p = 1: first derivative at 0 is tr L^{-1} = zeta(2) for lambda = n^2.
  EXPECT_NEAR(taylor_log_det_zeta(n2, 1).real(), kPi * kPi / 6, 1e-9);
  EXPECT_EQ(taylor_sign(1), 1);
  EXPECT_EQ(taylor_sign(2), -1);
}

TEST(SpectralZeta, ShiftedHeatExpansion) {
  const auto e = shifted_heat_expansion(catalog_model("N1"), 2.0);
  // e^{-2t}(1/t - 1/2 + ...) at t^0: -2 - 1/2
  EXPECT_NEAR(e.coeff(Exponent(0), 0).real(), -2.5, 1e-15);
  EXPECT_NEAR(e.coeff(Exponent(-1), 0).real(), 1, 1e-15);
}

TEST(SpectralZeta, ExtendedPrecision) {
  ZetaOptions opt;
  opt.precision = Precision::Extended;
  const SpectralZeta n1(catalog_model("N1"), opt);
  EXPECT_NEAR(n1.zeta(2.0).value.real(), kPi * kPi / 6, 1e-14);
}

TEST(SpectralZeta, CorruptedHeatCoefficientIsDetected) {
  const auto bad = with_heat_perturbation(catalog_model("N1"), Exponent(0), 0, 1e-3);
  EXPECT_THROW(log_det_zeta(bad), Error);
}

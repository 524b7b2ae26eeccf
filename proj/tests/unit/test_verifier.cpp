#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "zetafred/models.hpp"
#include "zetafred/verifier.hpp"

using namespace zetafred;

namespace {
const double kLog2Pi = std::log(2 * 3.141592653589793);
}

TEST(Verifier, IdentityHoldsForCatalog) {
  for (const auto& name : catalog_names()) {
    const auto r = verify_main_theorem(catalog_model(name));
    EXPECT_TRUE(r.error.empty()) << r.error;
    EXPECT_TRUE(r.pass) << name;
    EXPECT_LT(r.max_residual, 1e-10) << name;
    EXPECT_EQ(r.lhs.size(), 4u);
    EXPECT_EQ(static_cast<int>(r.taylor_poly.size()), r.p);
  }
}

TEST(Verifier, IdentityAtCustomGrid) {
  VerifyOptions opt;
  opt.z_grid = {{0.1, 0.0}, {3.0, 2.0}, {10.0, -1.0}};
  const auto r = verify_main_theorem(catalog_model("N1"), opt);
  EXPECT_TRUE(r.pass) << r.error;
  // The N1 rhs at z = 0.1 is the Taylor polynomial plus log det_2.
  EXPECT_NEAR(r.taylor_poly[0].real(), 0.5 * kLog2Pi, 1e-10);
}

TEST(Verifier, ConstantTerm) {
  const auto c = verify_constant_term(catalog_model("N2"));
  EXPECT_TRUE(c.pass) << c.error;
  EXPECT_NEAR(c.expected_constant.real(), -kLog2Pi, 1e-9);
  EXPECT_LT(c.constant_difference, 1e-6);
  EXPECT_NEAR(c.expected_log.real(), -0.5, 1e-15);
  ASSERT_TRUE(c.fit);
  EXPECT_GE(c.grid.size(), c.fit_template.size() + 2);
}

TEST(Verifier, CorruptedModelFails) {
  const auto bad = with_heat_perturbation(catalog_model("N1"), Exponent(0), 0, 1e-3);
  EXPECT_FALSE(verify_main_theorem(bad).pass);
  EXPECT_FALSE(verify_constant_term(bad).pass);
  const auto suite = run_suite({bad});
  EXPECT_FALSE(suite.all_pass);
}

TEST(Verifier, TopHeatCoefficientCorruptionFails) {
  // The identity itself holds for the true spectrum; the declared t^11
  // coefficient is caught by the heat-expansion consistency check.
  for (const char* name : {"N1", "HO"}) {
    const auto m = catalog_model(name);
    const auto r = verify_main_theorem(with_heat_perturbation(m, Exponent(11), 0, 1e-3));
    EXPECT_LT(r.max_residual, 1e-10) << name;
    ASSERT_TRUE(r.heat_check);
    EXPECT_FALSE(r.heat_check->pass) << name;
    EXPECT_FALSE(r.pass) << name;
    EXPECT_TRUE(verify_main_theorem(m).heat_check->pass) << name;
  }
}

TEST(Verifier, SuiteOutputs) {
  const auto suite = run_suite({catalog_model("N2"), catalog_model("HO")});
  EXPECT_TRUE(suite.all_pass);
  ASSERT_EQ(suite.models.size(), 2u);
  EXPECT_EQ(suite.models[0].model, "N2");
  EXPECT_EQ(suite.models[1].model, "HO");

  const std::string csv = suite.to_csv();
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "model,check,z_re,z_im,lhs,rhs,residual,status");
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 7) << line;
    EXPECT_NE(line.find("PASS"), std::string::npos) << line;
  }
  EXPECT_EQ(rows, static_cast<int>(suite.rows.size()));

  const auto j = suite.to_json();
  EXPECT_TRUE(j.at("all_pass").get<bool>());
  EXPECT_EQ(j.at("models").size(), 2u);
  EXPECT_FALSE(suite.to_table().empty());
}

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zetafred/asymptotics.hpp"
#include "zetafred/models.hpp"
#include "zetafred/precision.hpp"

namespace zetafred {

struct VerifyOptions {
  Precision precision = Precision::Double;
  /// Largest accepted residual of the determinant identity.
  double identity_tol = 1e-6;
  /// Largest accepted disagreement between the two log det_zeta routes.
  double route_tol = 1e-7;
  /// Largest accepted error against closed-form values stored in a model.
  double oracle_tol = 1e-8;
  /// Largest accepted error of the fitted constant and log z coefficients.
  double constant_tol = 1e-3;
  std::vector<Cx<double>> z_grid = {0.5, 1.0, 2.0, 4.0};
  /// Fit grid z0 * 2^j with at least fit_points points (more if the
  /// template needs them).
  double fit_z0 = 25;
  int fit_points = 6;
  /// Fit template: predicted terms with Re alpha <= fit_max_alpha.
  double fit_max_alpha = 3;
  /// t-grid on which the declared heat expansion is checked against the
  /// spectrum before the identity is evaluated.
  std::vector<double> heat_grid = {0.0625, 0.125, 0.25, 0.5};
};

/// One line of a verification report.
struct CheckRow {
  std::string model;
  std::string check;
  Cx<double> z;
  Cx<double> lhs;
  Cx<double> rhs;
  double residual = 0;
  double tol = 0;
  bool pass = false;
  std::string note;
};

struct ConstantTermCheck {
  Cx<double> fitted_constant;
  Cx<double> expected_constant;  // -log det_zeta(L)
  double constant_difference = 0;
  Cx<double> fitted_log;
  Cx<double> expected_log;  // A_00 of the heat expansion
  double log_difference = 0;
  std::vector<double> grid;
  std::vector<TermKey> fit_template;
  std::optional<LargeZExpansion> fit;
  bool pass = false;
  std::string error;  // nonempty when a step failed
};

/// Both sides of log det_zeta(L + z) = sum_{j<p} z^j/j! c_j + log det_p(I + z L^{-1}).
struct DeterminantReport {
  std::string model;
  int p = 1;
  std::vector<Cx<double>> z_grid;
  Cx<double> log_det_zeta;          // log det_zeta(L), heat route
  double route_residual_zero = 0;   // heat vs derivative route at z = 0
  std::vector<Cx<double>> lhs;
  std::vector<Cx<double>> taylor_poly;  // c_0 .. c_{p-1}
  std::vector<Cx<double>> rhs;
  std::vector<double> residuals;
  std::vector<double> route_residuals;  // heat vs derivative route per z
  double max_residual = 0;
  bool pass = false;
  std::string error;
  /// Declared heat expansion against heat_trace at full cutoff; a failure
  /// fails the report even when the residuals are small.
  std::optional<ExpansionComparison> heat_check;
  std::optional<ConstantTermCheck> constant_term;
};

DeterminantReport verify_main_theorem(const SpectrumModel& m, const VerifyOptions& opt = {});
ConstantTermCheck verify_constant_term(const SpectrumModel& m, const VerifyOptions& opt = {});

/// Full check list for a set of models: closed-form oracles of the model
/// (if any), route agreement, the determinant identity on the grid and the
/// constant-term fit.
struct SuiteReport {
  std::vector<DeterminantReport> models;
  std::vector<CheckRow> rows;
  bool all_pass = false;

  nlohmann::json to_json() const;
  /// Columns model,check,z_re,z_im,lhs,rhs,residual,status.
  std::string to_csv() const;
  std::string to_table() const;
};

/// Runs every check for each model; models are processed concurrently and
/// merged in input order.
SuiteReport run_suite(const std::vector<SpectrumModel>& models, const VerifyOptions& opt = {});

std::vector<CheckRow> rows_for(const DeterminantReport& r, const VerifyOptions& opt);

nlohmann::json to_json(const DeterminantReport& r);

}  // namespace zetafred

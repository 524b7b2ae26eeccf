#include "zetafred/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>

#include "zetafred/errors.hpp"
#include "zetafred/fredholm.hpp"
#include "zetafred/spectral_zeta.hpp"

namespace zetafred {
namespace {

ZetaOptions zeta_options(const VerifyOptions& opt) {
  ZetaOptions zo;
  zo.precision = opt.precision;
  zo.route_tol = opt.route_tol;
  zo.check_routes = false;
  return zo;
}

FredholmOptions fredholm_options(const VerifyOptions& opt) {
  FredholmOptions fo;
  fo.precision = opt.precision;
  fo.tol = opt.precision == Precision::Extended ? 1e-25 : 1e-15;
  return fo;
}

nlohmann::json cx_json(Cx<double> z) {
  if (z.imag() == 0) return z.real();
  return nlohmann::json{{"re", z.real()}, {"im", z.imag()}};
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string cx_text(Cx<double> z) {
  if (z.imag() == 0) return num(z.real());
  return num(z.real()) + (z.imag() < 0 ? "" : "+") + num(z.imag()) + "i";
}

}  // namespace

DeterminantReport verify_main_theorem(const SpectrumModel& m, const VerifyOptions& opt) {
  DeterminantReport r;
  r.model = m.name;
  r.p = m.schatten_p;
  r.z_grid = opt.z_grid;
  try {
    if (m.dim_ker != 0) throw ContractError("the determinant identity needs dim ker L = 0");
    for (const auto& z : opt.z_grid) {
      if (!(z.real() > 0)) throw ContractError("grid point " + cx_text(z) + " is not in Re z > 0");
    }
    // The identity holds for the true spectrum whatever the declared
    // coefficients are, so their consistency is checked separately.
    double K = m.heat.cutoff();
    if (!std::isfinite(K)) {
      K = 0;
      for (const auto& [key, c] : m.heat.terms()) K = std::max(K, key.alpha.re.to_double());
    }
    r.heat_check = validate_heat_expansion(m, opt.heat_grid, K);

    const SpectralZeta sz(m, zeta_options(opt));
    r.log_det_zeta = sz.log_det_heat(0);
    r.route_residual_zero = std::abs(r.log_det_zeta - sz.log_det_derivative(0));
    r.taylor_poly.push_back(r.log_det_zeta);
    for (int j = 1; j < m.schatten_p; ++j) r.taylor_poly.push_back(sz.taylor(j));

    const FredholmOptions fo = fredholm_options(opt);
    for (const auto& z : opt.z_grid) {
      const Cx<double> lhs = sz.log_det_heat(z);
      r.route_residuals.push_back(std::abs(lhs - sz.log_det_derivative(z)));
      Cx<double> poly(0), zj(1);
      double jf = 1;
      for (int j = 0; j < m.schatten_p; ++j) {
        if (j > 0) {
          jf *= j;
          zj *= z;
        }
        poly += zj / jf * r.taylor_poly[j];
      }
      const auto fd = det_fredholm(m, z, m.schatten_p, fo);
      if (!fd.log_defined) throw ContractError("grid point " + cx_text(z) + " lies on -spec L");
      const Cx<double> rhs = poly + fd.log_value;
      const double res = std::abs(lhs - rhs);
      if (!std::isfinite(res)) throw NumericError("non-finite residual at z = " + cx_text(z));
      r.lhs.push_back(lhs);
      r.rhs.push_back(rhs);
      r.residuals.push_back(res);
      r.max_residual = std::max(r.max_residual, res);
    }
    r.pass = r.max_residual < opt.identity_tol && r.heat_check->pass;
  } catch (const Error& e) {
    r.error = e.what();
    r.pass = false;
  }
  return r;
}

ConstantTermCheck verify_constant_term(const SpectrumModel& m, const VerifyOptions& opt) {
  ConstantTermCheck c;
  const double nan = std::nan("");
  c.expected_constant = c.fitted_constant = nan;
  c.constant_difference = c.log_difference = nan;
  try {
    if (m.dim_ker != 0) throw ContractError("the constant-term check needs dim ker L = 0");
    // Template: the shape of the predicted expansion, independent of any
    // numeric determinant value.
    const auto pred = predict_log_det_zeta_expansion<double>(m).truncated(opt.fit_max_alpha);
    std::vector<TermKey> templ = pred.keys();
    auto ensure = [&](TermKey key) {
      for (const auto& t : templ) {
        if (t == key) return;
      }
      templ.push_back(key);
    };
    for (int j = 0; j < m.schatten_p; ++j) ensure({Exponent(-j), 0});
    ensure({Exponent(0), 1});
    std::sort(templ.begin(), templ.end());
    c.fit_template = templ;

    const int n = std::max(opt.fit_points, static_cast<int>(templ.size()) + 2);
    c.grid = geometric_grid(opt.fit_z0, n);
    const FredholmOptions fo = fredholm_options(opt);
    std::vector<std::pair<double, Cx<double>>> samples;
    for (double z : c.grid) samples.emplace_back(z, det_fredholm(m, z, m.schatten_p, fo).log_value);
    c.fit = fit_expansion(samples, templ);
    c.fitted_constant = c.fit->coeff(Exponent(0), 0);
    c.fitted_log = c.fit->coeff(Exponent(0), 1);
    c.expected_log = cx_cast<double>(m.heat.coeff(Exponent(0), 0)) - Cx<double>(m.dim_ker);
    c.log_difference = std::abs(c.fitted_log - c.expected_log);

    const SpectralZeta sz(m, zeta_options(opt));
    c.expected_constant = -sz.log_det_heat(0);
    c.constant_difference = std::abs(c.fitted_constant - c.expected_constant);
    c.pass = c.constant_difference < opt.constant_tol && c.log_difference < opt.constant_tol &&
             !c.fit->diagnostics->flagged;
    if (c.fit->diagnostics->flagged) c.error = c.fit->diagnostics->message;
  } catch (const Error& e) {
    c.error = e.what();
    c.pass = false;
  }
  return c;
}

std::vector<CheckRow> rows_for(const DeterminantReport& r, const VerifyOptions& opt) {
  std::vector<CheckRow> rows;
  auto row = [&](std::string check, Cx<double> z, Cx<double> lhs, Cx<double> rhs, double res,
                 double tol, std::string note = {}) {
    rows.push_back({r.model, std::move(check), z, lhs, rhs, res, tol,
                    std::isfinite(res) && res < tol, std::move(note)});
  };
  if (r.heat_check) {
    const auto& h = *r.heat_check;
    const double gap = h.pass ? 0.0 : std::abs(h.fitted_slope - h.expected_slope);
    rows.push_back({r.model, "heat_expansion", 0, h.fitted_slope, h.expected_slope, gap, 0, h.pass,
                    h.message});
  }
  if (!r.error.empty() && r.lhs.empty()) {
    const double nan = std::nan("");
    rows.push_back({r.model, "main_theorem", 0, nan, nan, nan, opt.identity_tol, false, r.error});
  } else {
    row("route_agreement", 0, r.log_det_zeta, r.log_det_zeta, r.route_residual_zero,
        opt.route_tol, "heat route vs derivative route");
    for (std::size_t i = 0; i < r.lhs.size(); ++i) {
      row("route_agreement", r.z_grid[i], r.lhs[i], r.lhs[i], r.route_residuals[i], opt.route_tol,
          "heat route vs derivative route");
    }
    for (std::size_t i = 0; i < r.lhs.size(); ++i) {
      row("main_theorem", r.z_grid[i], r.lhs[i], r.rhs[i], r.residuals[i], opt.identity_tol);
    }
    if (!r.error.empty()) {
      const double nan = std::nan("");
      rows.push_back({r.model, "main_theorem", 0, nan, nan, nan, opt.identity_tol, false, r.error});
    }
  }
  if (r.constant_term) {
    const auto& c = *r.constant_term;
    if (c.fit) {
      // A flagged fit or a failed reference value fails both rows.
      row("constant_term", 0, c.fitted_constant, c.expected_constant, c.constant_difference,
          opt.constant_tol, c.error);
      rows.back().pass = rows.back().pass && c.error.empty();
      row("log_coefficient", 0, c.fitted_log, c.expected_log, c.log_difference, opt.constant_tol,
          c.error);
      rows.back().pass = rows.back().pass && c.error.empty();
    } else {
      const double nan = std::nan("");
      rows.push_back({r.model, "constant_term", 0, nan, nan, nan, opt.constant_tol, false, c.error});
    }
  }
  return rows;
}

SuiteReport run_suite(const std::vector<SpectrumModel>& models, const VerifyOptions& opt) {
  std::vector<std::future<DeterminantReport>> jobs;
  for (const auto& m : models) {
    jobs.push_back(std::async(std::launch::async, [&m, &opt] {
      DeterminantReport r = verify_main_theorem(m, opt);
      r.constant_term = verify_constant_term(m, opt);
      return r;
    }));
  }
  SuiteReport out;
  out.all_pass = !models.empty();
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    DeterminantReport r = jobs[i].get();
    const auto& m = models[i];
    std::vector<CheckRow> rows;
    if (r.error.empty()) {
      if (auto it = m.oracles.find("log_det_zeta"); it != m.oracles.end()) {
        rows.push_back({m.name, "log_det_zeta_oracle", 0, r.log_det_zeta, it->second,
                        std::abs(r.log_det_zeta - it->second), opt.oracle_tol,
                        std::abs(r.log_det_zeta - it->second) < opt.oracle_tol, "closed form"});
      }
    }
    for (auto& row : rows_for(r, opt)) rows.push_back(std::move(row));
    for (const auto& row : rows) {
      out.all_pass = out.all_pass && row.pass;
      out.rows.push_back(row);
    }
    out.models.push_back(std::move(r));
  }
  return out;
}

nlohmann::json to_json(const DeterminantReport& r) {
  nlohmann::json j;
  j["model"] = r.model;
  j["p"] = r.p;
  nlohmann::json grid = nlohmann::json::array(), lhs = nlohmann::json::array(),
                 rhs = nlohmann::json::array(), poly = nlohmann::json::array();
  for (const auto& z : r.z_grid) grid.push_back(cx_json(z));
  for (const auto& v : r.lhs) lhs.push_back(cx_json(v));
  for (const auto& v : r.rhs) rhs.push_back(cx_json(v));
  for (const auto& v : r.taylor_poly) poly.push_back(cx_json(v));
  j["z_grid"] = grid;
  j["log_det_zeta"] = cx_json(r.log_det_zeta);
  j["taylor_poly"] = poly;
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["residuals"] = r.residuals;
  j["route_residuals"] = r.route_residuals;
  j["max_residual"] = r.max_residual;
  j["pass"] = r.pass;
  if (!r.error.empty()) j["error"] = r.error;
  if (r.heat_check) {
    j["heat_check"] = {{"fitted_slope", r.heat_check->fitted_slope},
                       {"expected_slope", r.heat_check->expected_slope},
                       {"pass", r.heat_check->pass},
                       {"message", r.heat_check->message}};
  }
  if (r.constant_term) {
    const auto& c = *r.constant_term;
    nlohmann::json cj{{"fitted_constant", cx_json(c.fitted_constant)},
                      {"expected_constant", cx_json(c.expected_constant)},
                      {"constant_difference", c.constant_difference},
                      {"fitted_log", cx_json(c.fitted_log)},
                      {"expected_log", cx_json(c.expected_log)},
                      {"log_difference", c.log_difference},
                      {"grid", c.grid},
                      {"pass", c.pass}};
    if (c.fit) cj["fit"] = to_json(*c.fit);
    if (!c.error.empty()) cj["error"] = c.error;
    j["constant_term_check"] = cj;
  }
  return j;
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json j;
  j["all_pass"] = all_pass;
  nlohmann::json ms = nlohmann::json::array();
  for (const auto& r : models) ms.push_back(zetafred::to_json(r));
  j["models"] = ms;
  nlohmann::json rs = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json o{{"model", r.model},
                     {"check", r.check},
                     {"z", cx_json(r.z)},
                     {"lhs", cx_json(r.lhs)},
                     {"rhs", cx_json(r.rhs)},
                     {"residual", r.residual},
                     {"tol", r.tol},
                     {"status", r.pass ? "PASS" : "FAIL"}};
    if (!r.note.empty()) o["note"] = r.note;
    rs.push_back(std::move(o));
  }
  j["checks"] = rs;
  return j;
}

std::string SuiteReport::to_csv() const {
  std::ostringstream os;
  os << "model,check,z_re,z_im,lhs,rhs,residual,status\n";
  for (const auto& r : rows) {
    os << r.model << ',' << r.check << ',' << num(r.z.real()) << ',' << num(r.z.imag()) << ','
       << cx_text(r.lhs) << ',' << cx_text(r.rhs) << ',' << num(r.residual) << ','
       << (r.pass ? "PASS" : "FAIL") << '\n';
  }
  return os.str();
}

std::string SuiteReport::to_table() const {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-8s %-20s %-10s %-24s %-24s %-10s %s\n", "model", "check", "z",
                "lhs", "rhs", "residual", "status");
  os << buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-8s %-20s %-10s %-24.16g %-24.16g %-10.2e %s\n",
                  r.model.c_str(), r.check.c_str(), cx_text(r.z).c_str(), r.lhs.real(),
                  r.rhs.real(), r.residual, r.pass ? "PASS" : "FAIL");
    os << buf;
    if (!r.note.empty() && !r.pass) os << "    " << r.note << '\n';
  }
  os << (all_pass ? "ALL PASS\n" : "FAILURES PRESENT\n");
  return os.str();
}

}  // namespace zetafred

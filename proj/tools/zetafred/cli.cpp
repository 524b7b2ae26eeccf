#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "zetafred/asymptotics.hpp"
#include "zetafred/errors.hpp"
#include "zetafred/fredholm.hpp"
#include "zetafred/models.hpp"
#include "zetafred/spectral_zeta.hpp"
#include "zetafred/verifier.hpp"

namespace zetafred::cli {
namespace {

using nlohmann::json;

/// A usage error detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Global {
  std::string precision = "double";
  double tol = 0;
  std::string json_path;
  std::string csv_path;

  Precision prec() const {
    return precision == "extended" ? Precision::Extended : Precision::Double;
  }
};

Cx<double> parse_complex(const std::string& text) {
  std::string t = text;
  for (char& ch : t) {
    if (ch == ',') ch = ' ';
  }
  std::istringstream is(t);
  double re = 0, im = 0;
  if (!(is >> re)) throw UsageError("cannot parse complex number \"" + text + "\"");
  if (!(is >> im)) im = 0;
  std::string rest;
  if (is >> rest) throw UsageError("cannot parse complex number \"" + text + "\"");
  return {re, im};
}

json cx(Cx<double> z) {
  if (z.imag() == 0) return z.real();
  return json{{"re", z.real()}, {"im", z.imag()}};
}

SpectrumModel load(const std::string& name) {
  const auto& names = catalog_names();
  if (std::find(names.begin(), names.end(), name) == names.end() &&
      !std::filesystem::exists(name)) {
    throw UsageError("\"" + name + "\" is neither a catalog model nor a model file");
  }
  try {
    return resolve_model(name);
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

std::string csv_num(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::string csv_cx(Cx<double> z) {
  if (z.imag() == 0) return csv_num(z.real());
  return csv_num(z.real()) + (z.imag() < 0 ? "" : "+") + csv_num(z.imag()) + "i";
}

/// One CSV row in the report schema.
std::string csv_row(const std::string& model, const std::string& check, Cx<double> z,
                    Cx<double> lhs, Cx<double> rhs, double residual, const std::string& status) {
  return model + "," + check + "," + csv_num(z.real()) + "," + csv_num(z.imag()) + "," +
         csv_cx(lhs) + "," + csv_cx(rhs) + "," + csv_num(residual) + "," + status + "\n";
}

const char* kCsvHeader = "model,check,z_re,z_im,lhs,rhs,residual,status\n";

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

/// Prints j to out and mirrors it to --json; writes csv rows to --csv.
void emit(const Global& g, std::ostream& out, const json& j, const std::string& csv_rows = {}) {
  out << j.dump(2) << '\n';
  if (!g.json_path.empty()) write_file(g.json_path, j.dump(2) + "\n");
  if (!g.csv_path.empty()) write_file(g.csv_path, kCsvHeader + csv_rows);
}

json laurent_json(const LaurentData& l) {
  json terms = json::array();
  const auto& s = l.series;
  for (int mm = s.lo(); mm <= std::min(0, s.top()); ++mm) {
    terms.push_back({{"power", mm}, {"coeff", cx(s[mm])}});
  }
  return terms;
}

json expansion_table(const LargeZExpansion& e) { return to_json(e); }

// ---------------------------------------------------------------------------

int cmd_models(const Global& g, const std::string& action, const std::string& name,
               double order, std::ostream& out) {
  if (action == "list") {
    json arr = json::array();
    std::string rows;
    for (const auto& n : catalog_names()) {
      const auto m = catalog_model(n);
      arr.push_back({{"name", m.name}, {"description", m.description}, {"p", m.schatten_p}});
    }
    emit(g, out, json{{"models", arr}});
    return kPass;
  }
  if (name.empty()) throw UsageError("models " + action + " needs a model name or file");
  if (action == "show") {
    emit(g, out, model_to_json(load(name)));
    return kPass;
  }
  // validate
  json j{{"model", name}};
  SpectrumModel m;
  try {
    m = load(name);
  } catch (const ValidationError& e) {
    j["valid"] = false;
    j["error"] = e.what();
    emit(g, out, j);
    return kNumericFailure;
  }
  const double K = std::isnan(order) ? std::min(m.heat.cutoff(), 1.0) : order;
  const auto cmp = validate_heat_expansion(m, {}, K);
  json samples = json::array();
  for (const auto& s : cmp.samples) samples.push_back({{"t", s.x}, {"remainder", s.remainder}});
  j["valid"] = cmp.pass;
  j["order"] = K;
  j["slope_test"] = cmp.slope_test;
  j["fitted_slope"] = cmp.fitted_slope;
  j["expected_slope"] = cmp.expected_slope;
  j["samples"] = samples;
  j["message"] = cmp.message;
  emit(g, out, j,
       csv_row(m.name, "heat_expansion", 0, cmp.fitted_slope, cmp.expected_slope,
               std::fabs(cmp.fitted_slope - cmp.expected_slope), cmp.pass ? "PASS" : "FAIL"));
  return cmp.pass ? kPass : kNumericFailure;
}

int cmd_zeta(const Global& g, const std::string& name, const std::string& s_text,
             const std::string& shift_text, std::ostream& out) {
  const auto m = load(name);
  const Cx<double> s = parse_complex(s_text);
  const Cx<double> z = parse_complex(shift_text);
  ZetaOptions zo;
  zo.precision = g.prec();
  zo.tol = g.tol;
  const SpectralZeta sz(m, zo);
  const ZetaValue v = sz.zeta(s, z);
  json j{{"model", m.name}, {"s", cx(s)}, {"shift", cx(z)}, {"pole", v.pole}};
  if (v.pole) {
    j["finite_part"] = cx(v.value);
    j["laurent"] = laurent_json(v.laurent);
  } else {
    j["zeta"] = cx(v.value);
  }
  emit(g, out, j, csv_row(m.name, "zeta", z, v.value, v.value, 0, "PASS"));
  return kPass;
}

int cmd_detzeta(const Global& g, const std::string& name, const std::string& shift_text,
                std::ostream& out) {
  const auto m = load(name);
  const Cx<double> z = parse_complex(shift_text);
  ZetaOptions zo;
  zo.precision = g.prec();
  zo.tol = g.tol;
  zo.check_routes = false;
  const SpectralZeta sz(m, zo);
  DetZetaValue d;
  d.z = z;
  d.route_heat = sz.log_det_heat(z);
  d.value = d.route_heat;
  d.route_derivative = sz.log_det_derivative(z);
  d.residual = std::abs(d.route_heat - d.route_derivative);
  const bool ok = d.residual < zo.route_tol;
  json j{{"model", m.name},
         {"shift", cx(z)},
         {"log_det_zeta", cx(d.value)},
         {"det_zeta", cx(std::exp(d.value))},
         {"route_heat", cx(d.route_heat)},
         {"route_derivative", cx(d.route_derivative)},
         {"route_residual", d.residual},
         {"route_tol", zo.route_tol},
         {"status", ok ? "PASS" : "FAIL"}};
  if (z == Cx<double>(0)) {
    if (auto it = m.oracles.find("log_det_zeta"); it != m.oracles.end()) {
      j["oracle"] = it->second;
    }
  }
  emit(g, out, j,
       csv_row(m.name, "route_agreement", z, d.route_heat, d.route_derivative, d.residual,
               ok ? "PASS" : "FAIL"));
  return ok ? kPass : kNumericFailure;
}

int cmd_fredholm(const Global& g, const std::string& name, const std::string& z_text, int order,
                 std::ostream& out) {
  const auto m = load(name);
  const Cx<double> z = parse_complex(z_text);
  if (order == 0) order = m.schatten_p;
  FredholmOptions fo;
  fo.precision = g.prec();
  if (g.tol > 0) fo.tol = g.tol;
  const auto r = det_fredholm(m, z, order, fo);
  json j{{"model", m.name},
         {"z", cx(z)},
         {"order", order},
         {"value", cx(r.value)},
         {"log_value", r.log_defined ? cx(r.log_value) : json(nullptr)},
         {"log_defined", r.log_defined},
         {"truncation_n", r.truncation_n},
         {"tail_bound", r.tail_bound}};
  emit(g, out, j, csv_row(m.name, "fredholm", z, r.value, r.value, r.tail_bound, "PASS"));
  return kPass;
}

int cmd_expand(const Global& g, const std::string& name, const std::string& what, int N,
               bool fit, std::ostream& out) {
  const auto m = load(name);
  LargeZExpansion pred;
  std::function<Cx<double>(double)> sample;
  double max_alpha = 3;
  ZetaOptions zo;
  zo.precision = g.prec();
  zo.tol = g.tol;
  zo.check_routes = false;
  FredholmOptions fo;
  fo.precision = g.prec();
  const SpectralZeta sz(m, zo);
  if (what == "detzeta") {
    pred = predict_log_det_zeta_expansion<double>(m);
    sample = [&](double z) { return sz.log_det_heat(z); };
  } else if (what == "fredholm") {
    pred = predict_fredholm_expansion(m, zo);
    sample = [&](double z) { return det_fredholm(m, z, m.schatten_p, fo).log_value; };
  } else {
    if (N == 0) N = m.schatten_p;
    pred = predict_resolvent_expansion<double>(m, N);
    sample = [&](double z) { return resolvent_power_trace(m, z, N, fo).value; };
    max_alpha += N;
  }
  json j{{"model", m.name}, {"what", what}, {"predicted", expansion_table(pred)}};
  if (what == "resolvent") j["N"] = N;
  std::string rows;
  int code = kPass;
  if (fit) {
    const auto tmpl = pred.truncated(max_alpha).keys();
    const auto grid = geometric_grid(25, std::max<int>(6, static_cast<int>(tmpl.size()) + 2));
    std::vector<std::pair<double, Cx<double>>> samples;
    for (double z : grid) samples.emplace_back(z, sample(z));
    const auto fitted = fit_expansion(samples, tmpl);
    json cmp = json::array();
    for (const auto& [key, t] : fitted.terms()) {
      const Cx<double> p = pred.coeff(key.alpha, key.k);
      const double diff = std::abs(t.coeff - p);
      const double rel = diff / std::max(1.0, std::abs(p));
      // Coefficients of the leading terms are well determined by the fit;
      // the deepest ones absorb the truncation error and are reported only.
      const bool checked = key.alpha.re.to_double() <= max_alpha - 2;
      const bool ok = !checked || rel < 1e-3;
      if (!ok) code = kNumericFailure;
      cmp.push_back({{"alpha", key.alpha.str()},
                     {"k", key.k},
                     {"predicted", cx(p)},
                     {"fitted", cx(t.coeff)},
                     {"difference", diff},
                     {"checked", checked},
                     {"status", ok ? "PASS" : "FAIL"}});
      rows += csv_row(m.name, "coeff(" + key.alpha.str() + "," + std::to_string(key.k) + ")", 0,
                      t.coeff, p, diff, ok ? "PASS" : "FAIL");
    }
    if (fitted.diagnostics->flagged) code = kNumericFailure;
    j["fitted"] = expansion_table(fitted);
    j["comparison"] = cmp;
    j["grid"] = grid;
  }
  emit(g, out, j, rows);
  return code;
}

VerifyOptions verify_options(const Global& g, const std::vector<std::string>& grid) {
  VerifyOptions vo;
  vo.precision = g.prec();
  if (g.tol > 0) vo.identity_tol = g.tol;
  if (!grid.empty()) {
    vo.z_grid.clear();
    for (const auto& t : grid) vo.z_grid.push_back(parse_complex(t));
  }
  return vo;
}

int cmd_verify(const Global& g, const std::vector<std::string>& names,
               const std::vector<std::string>& grid, bool table, std::ostream& out) {
  std::vector<SpectrumModel> ms;
  if (names.empty()) {
    for (const auto& n : catalog_names()) ms.push_back(catalog_model(n));
  } else {
    for (const auto& n : names) ms.push_back(load(n));
  }
  const VerifyOptions vo = verify_options(g, grid);
  const SuiteReport rep = run_suite(ms, vo);
  if (table) {
    out << rep.to_table();
  } else {
    out << rep.to_json().dump(2) << '\n';
  }
  if (!g.json_path.empty()) write_file(g.json_path, rep.to_json().dump(2) + "\n");
  if (!g.csv_path.empty()) write_file(g.csv_path, rep.to_csv());
  return rep.all_pass ? kPass : kNumericFailure;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zeta-regularized and Fredholm determinants of model operators"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--precision", g.precision, "Working precision")
      ->check(CLI::IsMember({"double", "extended"}));
  app.add_option("--tol", g.tol, "Tolerance override (meaning depends on the command)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--json", g.json_path, "Also write the JSON result to this file");
  app.add_option("--csv", g.csv_path, "Write result rows as CSV to this file");

  auto* models = app.add_subcommand("models", "List, show or validate spectrum models");
  std::string models_action, models_name;
  double validate_order = std::nan("");
  models->add_option("action", models_action, "list | show | validate")
      ->required()
      ->check(CLI::IsMember({"list", "show", "validate"}));
  models->add_option("model", models_name, "Catalog name or JSON model file");
  models->add_option("--order", validate_order,
                     "Validate heat terms with Re alpha <= order (default min(cutoff, 1))");

  auto* zeta = app.add_subcommand("zeta", "Spectral zeta function zeta(s; L + shift)");
  std::string zeta_model, zeta_s, zeta_shift = "0";
  zeta->add_option("model", zeta_model)->required();
  zeta->add_option("--s", zeta_s, "s as re,im")->required();
  zeta->add_option("--shift", zeta_shift, "shift z as re,im");

  auto* det = app.add_subcommand("detzeta", "log det_zeta(L + shift) by two routes");
  std::string det_model, det_shift = "0";
  det->add_option("model", det_model)->required();
  det->add_option("--shift", det_shift, "shift z as re,im");

  auto* fred = app.add_subcommand("fredholm", "Regularized Fredholm determinant det_order(I + z/L)");
  std::string fred_model, fred_z;
  int fred_order = 0;
  fred->add_option("model", fred_model)->required();
  fred->add_option("--z", fred_z, "z as re,im")->required();
  fred->add_option("--order", fred_order, "Order N+1 (default: Schatten order p)")
      ->check(CLI::PositiveNumber);

  auto* exp = app.add_subcommand("expand", "Large-z expansions, predicted and optionally fitted");
  std::string exp_model, exp_what = "detzeta";
  int exp_N = 0;
  bool exp_fit = false;
  exp->add_option("model", exp_model)->required();
  exp->add_option("--what", exp_what)->check(CLI::IsMember({"detzeta", "fredholm", "resolvent"}));
  exp->add_option("--N", exp_N, "Resolvent power (default p)")->check(CLI::PositiveNumber);
  exp->add_flag("--fit", exp_fit, "Fit numeric samples on z = 25 * 2^j and compare");

  auto* ver = app.add_subcommand("verify", "Check the determinant identity and constant term");
  std::vector<std::string> ver_models, ver_grid;
  bool ver_json = false;
  ver->add_option("models", ver_models, "Models (default: the catalog)");
  ver->add_option("--grid", ver_grid, "z-grid points as re,im")->delimiter(';');
  ver->add_flag("--print-json", ver_json, "Print JSON instead of the table");

  auto* rep = app.add_subcommand("report", "Full suite: table on stdout, JSON to --json (default zetafred-report.json)");
  std::vector<std::string> rep_models;
  bool rep_json = false;
  rep->add_option("models", rep_models, "Models (default: the catalog)");
  rep->add_flag("--print-json", rep_json, "Print JSON instead of the table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (*models) return cmd_models(g, models_action, models_name, validate_order, out);
    if (*zeta) return cmd_zeta(g, zeta_model, zeta_s, zeta_shift, out);
    if (*det) return cmd_detzeta(g, det_model, det_shift, out);
    if (*fred) return cmd_fredholm(g, fred_model, fred_z, fred_order, out);
    if (*exp) return cmd_expand(g, exp_model, exp_what, exp_N, exp_fit, out);
    if (*ver) return cmd_verify(g, ver_models, ver_grid, !ver_json, out);
    if (*rep) {
      if (g.json_path.empty()) g.json_path = "zetafred-report.json";
      return cmd_verify(g, rep_models, {}, !rep_json, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ContractError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const PoleError& e) {
    err << "pole: " << e.what() << " (residue " << e.residue() << ", finite part "
        << e.finite_part() << ")\n";
    return kNumericFailure;
  } catch (const Error& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  }
  return kUsage;
}

}  // namespace zetafred::cli

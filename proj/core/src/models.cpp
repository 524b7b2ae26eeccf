#include "zetafred/models.hpp"

#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include "zetafred/errors.hpp"
#include "zetafred/special_functions.hpp"

namespace zetafred {

template <class R>
R EigenLaw::operator()(R n) const {
  const R x = n + d.to<R>();
  if (!(x > R(0))) throw ContractError("eigenvalue law evaluated outside its domain");
  const R cc = static_cast<R>(c);
  if (r.is_positive_integer() && r.num() <= 8) {
    R p = x;
    for (std::int64_t i = 1; i < r.num(); ++i) p *= x;
    return cc * p;
  }
  using std::exp;
  using std::log;
  return cc * exp(r.to<R>() * log(x));
}

std::string EigenLaw::str() const {
  std::ostringstream os;
  os.precision(17);
  if (c != Extended(1)) os << static_cast<double>(c) << "*";
  const bool paren = !d.is_zero() && !(r == Rational(1));
  if (paren) os << "(";
  os << "n";
  if (!d.is_zero()) os << (d < Rational(0) ? "-" : "+") << (d < Rational(0) ? -d : d).str();
  if (paren) os << ")";
  if (!(r == Rational(1))) os << "^" << r.str();
  return os.str();
}

template <class R>
R SpectrumModel::eigenvalue(long n) const {
  if (n < 1) throw ContractError("eigenvalues are indexed from 1");
  if (n <= table_size()) return static_cast<R>(table[n - 1]);
  return law(R(n));
}

int SpectrumModel::multiplicity(long n) const {
  if (n <= table_size()) return table_mult.empty() ? 1 : table_mult[n - 1];
  return law_mult;
}

namespace {

template <class R>
R fact(int n) {
  R f(1);
  for (int i = 2; i <= n; ++i) f *= R(i);
  return f;
}

// Declared completeness order of the Bernoulli-type built-in expansions.
// Beyond t^11 the remainder drops below what extended precision resolves
// on any t-grid that is still in the asymptotic regime.
constexpr int kBernoulliCutoff = 11;

SpectrumModel make_n1() {
  SpectrumModel m;
  m.name = "N1";
  m.description = "lambda_n = n; zeta(s;L) = Riemann zeta(s)";
  m.schatten_p = 2;
  m.heat = BasicExpansion<Extended>(Direction::AtZero, kBernoulliCutoff);
  m.heat.add(Exponent(-1), 0, Extended(1));
  m.heat.add(Exponent(0), 0, Extended(-0.5));
  for (int k = 1; 2 * k - 1 <= kBernoulliCutoff; ++k) {
    m.heat.add(Exponent(2 * k - 1), 0, bernoulli_exact(2 * k).to<Extended>() / fact<Extended>(2 * k));
  }
  m.oracles["log_det_zeta"] = 0.5 * std::log(2 * pi<double>());
  m.oracles["zeta_at_0"] = -0.5;
  return m;
}

SpectrumModel make_n2() {
  SpectrumModel m;
  m.name = "N2";
  m.description = "lambda_n = n^2; zeta(s;L) = Riemann zeta(2s)";
  m.schatten_p = 1;
  m.law.r = 2;
  m.heat = BasicExpansion<Extended>(Direction::AtZero);  // exponentially small remainder
  m.heat.add(Exponent(Rational(-1, 2)), 0, sqrt(pi<Extended>()) / 2);
  m.heat.add(Exponent(0), 0, Extended(-0.5));
  m.oracles["log_det_zeta"] = std::log(2 * pi<double>());
  m.oracles["zeta_at_0"] = -0.5;
  return m;
}

SpectrumModel make_ho() {
  SpectrumModel m;
  m.name = "HO";
  m.description = "lambda_n = n - 1/2 (harmonic oscillator); zeta(s;L) = Hurwitz zeta(s, 1/2)";
  m.schatten_p = 2;
  m.law.d = Rational(-1, 2);
  m.heat = BasicExpansion<Extended>(Direction::AtZero, kBernoulliCutoff);
  m.heat.add(Exponent(-1), 0, Extended(1));
  for (int k = 1; 2 * k - 1 <= kBernoulliCutoff; ++k) {
    const Extended f = Extended(2) / boost::multiprecision::pow(Extended(2), 2 * k) - 1;
    m.heat.add(Exponent(2 * k - 1), 0,
               f * bernoulli_exact(2 * k).to<Extended>() / fact<Extended>(2 * k));
  }
  m.oracles["log_det_zeta"] = 0.5 * std::log(2.0);
  m.oracles["zeta_at_0"] = 0.0;
  return m;
}

// Local growth exponents over the last octaves of the table, extrapolated
// linearly in 1/log n.  A power law c n^r gives r; logarithmic growth gives 0.
double estimated_tail_exponent(const std::vector<Extended>& t) {
  const std::size_t m = t.size();
  std::vector<double> xs, ys;
  for (std::size_t hi = m; hi / 2 >= 8 && xs.size() < 4; hi /= 2) {
    const double a = static_cast<double>(t[hi / 2 - 1]);
    const double b = static_cast<double>(t[hi - 1]);
    const double center = std::sqrt(double(hi) * double(hi / 2));
    xs.push_back(1.0 / std::log(center));
    ys.push_back(std::log(b / a) / std::log(double(hi) / double(hi / 2)));
  }
  if (xs.size() < 2) return ys.empty() ? NAN : ys.front();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return (sy - slope * sx) / n;
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"N1", "N2", "HO"};
  return names;
}

SpectrumModel catalog_model(const std::string& name) {
  if (name == "N1") return make_n1();
  if (name == "N2") return make_n2();
  if (name == "HO") return make_ho();
  throw ValidationError("unknown catalog model \"" + name + "\" (known: N1, N2, HO)");
}

SpectrumModel resolve_model(const std::string& name_or_path) {
  for (const auto& n : catalog_names()) {
    if (n == name_or_path) return catalog_model(n);
  }
  return load_model_file(name_or_path);
}

void check_model(const SpectrumModel& m) {
  const std::string who = "model \"" + m.name + "\": ";
  if (m.schatten_p < 1) throw ValidationError(who + "Schatten order p must be >= 1");
  if (m.dim_ker < 0) throw ValidationError(who + "dim_ker must be >= 0");
  if (!m.table_mult.empty() && m.table_mult.size() != m.table.size()) {
    throw ValidationError(who + "multiplicity table length differs from eigenvalue table");
  }
  for (int mu : m.table_mult) {
    if (mu < 1) throw ValidationError(who + "multiplicities must be positive");
  }
  if (m.law_mult < 1) throw ValidationError(who + "tail multiplicity must be positive");
  Extended prev = 0;
  for (std::size_t i = 0; i < m.table.size(); ++i) {
    const Extended v = m.table[i];
    if (!(v > 0) || !isfinite(v)) {
      throw ValidationError(who + "eigenvalue " + std::to_string(i + 1) + " is not positive");
    }
    if (v < prev) throw ValidationError(who + "eigenvalues must be nondecreasing");
    prev = v;
  }
  if (!(m.law.c > 0)) throw ValidationError(who + "tail law needs c > 0");
  if (!(m.law.r > Rational(0))) throw ValidationError(who + "tail law needs r > 0");
  if (!(Rational(m.table_size() + 1) + m.law.d > Rational(0))) {
    throw ValidationError(who + "tail law is not positive at the first tail index");
  }
  if (m.law(Extended(m.table_size() + 1)) < prev) {
    throw ValidationError(who + "tail law decreases below the last table eigenvalue");
  }

  // Schatten summability: sum lambda_n^{-p} converges iff r p > 1.
  if (m.table.size() >= 64) {
    const double r_est = estimated_tail_exponent(m.table);
    if (!(r_est > 0.05)) {
      throw ValidationError(who + "no finite Schatten order: table eigenvalues grow slower "
                            "than any power (estimated tail exponent " +
                            std::to_string(r_est) + ")");
    }
    const double r_decl = m.law.r.to_double();
    if (std::fabs(r_est - r_decl) > 0.1 * r_decl + 0.05) {
      throw ValidationError(who + "declared tail exponent " + m.law.r.str() +
                            " disagrees with the table (estimated " + std::to_string(r_est) + ")");
    }
  }
  if (!(m.law.r * Rational(m.schatten_p) > Rational(1))) {
    throw ValidationError(who + "sum lambda_n^-p diverges for p = " +
                          std::to_string(m.schatten_p) + " with tail exponent " + m.law.r.str());
  }

  if (m.heat.direction() != Direction::AtZero) {
    throw ValidationError(who + "heat expansion must be at t = 0");
  }
  for (const auto& [key, c] : m.heat.terms()) {
    if (key.alpha.is_nonpositive_integer() && key.k > 0) {
      throw ValidationError(who + "heat term t^" + key.alpha.str() + " log^" +
                            std::to_string(key.k) +
                            " t violates k_{-n} = 0 (log terms at -alpha in {0,1,2,...})");
    }
    if (!(key.alpha.re > Rational(-m.schatten_p))) {
      throw ValidationError(who + "heat term t^" + key.alpha.str() +
                            " is incompatible with Schatten order p = " +
                            std::to_string(m.schatten_p));
    }
  }
}

namespace {

Rational parse_rational_text(const std::string& s) {
  try {
    return Rational::parse(s);
  } catch (const std::exception&) {
    throw ValidationError("bad number \"" + s + "\" in eigenvalue formula");
  }
}

EigenLaw parse_formula(const std::string& expr_in) {
  std::string expr;
  for (char ch : expr_in) {
    if (!std::isspace(static_cast<unsigned char>(ch))) expr += ch;
  }
  if (std::regex_match(expr, std::regex(R"(log\(.*\))"))) {
    throw ValidationError("eigenvalues \"" + expr +
                          "\" grow slower than any power: no finite Schatten order");
  }
  const std::string num = R"(([0-9]+(?:\.[0-9]*)?(?:[eE][+-]?[0-9]+)?(?:/[0-9]+)?))";
  const std::regex re("^(?:" + num + R"(\*)?(?:\(n([+-][0-9./]+)\)|n([+-][0-9./]+)?)(?:\^)" + num +
                      ")?$");
  std::smatch mt;
  if (!std::regex_match(expr, mt, re)) {
    throw ValidationError("unsupported eigenvalue formula \"" + expr_in +
                          "\" (expected c*(n+d)^r, n^r, n+d, ...)");
  }
  EigenLaw law;
  if (mt[1].matched) {
    const std::string c = mt[1].str();
    law.c = c.find('/') != std::string::npos ? parse_rational_text(c).to<Extended>()
                                             : Extended(c.c_str());
  }
  const std::string d = mt[2].matched ? mt[2].str() : (mt[3].matched ? mt[3].str() : "");
  if (!d.empty()) {
    law.d = parse_rational_text(d.substr(1));
    if (d[0] == '-') law.d = -law.d;
  }
  if (mt[4].matched) law.r = parse_rational_text(mt[4]);
  return law;
}

EigenLaw parse_power(const nlohmann::json& j) {
  EigenLaw law;
  if (j.contains("c")) law.c = parse_real_json<Extended>(j.at("c"));
  if (j.contains("r")) law.r = parse_rational_json(j.at("r"));
  if (j.contains("d")) law.d = parse_rational_json(j.at("d"));
  return law;
}

}  // namespace

SpectrumModel load_model(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw ValidationError("model must be a JSON object");
    SpectrumModel m;
    m.name = j.value("name", std::string("CUSTOM"));
    m.description = j.value("description", std::string());
    m.dim_ker = j.value("dim_ker", 0);
    if (!j.contains("p")) throw ValidationError("model needs a Schatten order \"p\"");
    m.schatten_p = j.at("p").get<int>();

    const auto& ev = j.at("eigenvalues");
    const std::string kind = ev.at("kind").get<std::string>();
    if (kind.rfind("formula:", 0) == 0) {
      m.law = parse_formula(kind.substr(8));
      m.law_mult = ev.value("multiplicity", 1);
    } else if (kind == "power") {
      m.law = parse_power(ev);
      m.law_mult = ev.value("multiplicity", 1);
    } else if (kind == "table") {
      for (const auto& v : ev.at("values")) m.table.push_back(parse_real_json<Extended>(v));
      if (ev.contains("multiplicities")) {
        m.table_mult = ev.at("multiplicities").get<std::vector<int>>();
      }
      if (!ev.contains("tail")) throw ValidationError("table spectra need a declared \"tail\" law");
      m.law = parse_power(ev.at("tail"));
      m.law_mult = ev.at("tail").value("multiplicity", 1);
    } else {
      throw ValidationError("unknown eigenvalue kind \"" + kind + "\"");
    }

    nlohmann::json hj;
    hj["direction"] = "zero";
    hj["cutoff"] = j.contains("heat_cutoff") ? j.at("heat_cutoff") : nlohmann::json("inf");
    hj["terms"] = j.value("heat_terms", nlohmann::json::array());
    m.heat = expansion_from_json<Extended>(hj);

    if (j.contains("oracles")) {
      for (const auto& [k, v] : j.at("oracles").items()) {
        if (v.is_number()) m.oracles[k] = v.get<double>();
      }
    }
    check_model(m);
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed model JSON: ") + e.what());
  }
}

SpectrumModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open model file \"" + path + "\"");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("model file \"" + path + "\" is not valid JSON: " + e.what());
  }
  return load_model(j);
}

nlohmann::json model_to_json(const SpectrumModel& m) {
  nlohmann::json j;
  j["name"] = m.name;
  if (!m.description.empty()) j["description"] = m.description;
  nlohmann::json tail = {{"c", static_cast<double>(m.law.c)}};
  auto rat = [](const Rational& r) -> nlohmann::json {
    if (r.is_integer()) return r.num();
    return r.str();
  };
  tail["r"] = rat(m.law.r);
  tail["d"] = rat(m.law.d);
  if (m.table.empty()) {
    j["eigenvalues"] = {{"kind", "formula:" + m.law.str()}};
    if (m.law_mult != 1) j["eigenvalues"]["multiplicity"] = m.law_mult;
  } else {
    std::vector<double> vals;
    for (const auto& v : m.table) vals.push_back(static_cast<double>(v));
    j["eigenvalues"] = {{"kind", "table"}, {"values", vals}};
    if (!m.table_mult.empty()) j["eigenvalues"]["multiplicities"] = m.table_mult;
    if (m.law_mult != 1) tail["multiplicity"] = m.law_mult;
    j["eigenvalues"]["tail"] = tail;
  }
  j["dim_ker"] = m.dim_ker;
  j["p"] = m.schatten_p;
  const auto hj = to_json(m.heat.cast<double>());
  j["heat_terms"] = hj.at("terms");
  j["heat_cutoff"] = hj.at("cutoff");
  if (!m.oracles.empty()) j["oracles"] = m.oracles;
  return j;
}

SpectrumModel with_heat_perturbation(const SpectrumModel& m, const Exponent& alpha, int k,
                                     double delta) {
  SpectrumModel out = m;
  out.name = m.name + "*";
  out.heat.add(alpha, k, Extended(delta));
  return out;
}

template Extended EigenLaw::operator()<Extended>(Extended) const;
template double EigenLaw::operator()<double>(double) const;
template double SpectrumModel::eigenvalue<double>(long) const;
template Extended SpectrumModel::eigenvalue<Extended>(long) const;

}  // namespace zetafred

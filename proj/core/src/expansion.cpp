#include "zetafred/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "zetafred/errors.hpp"

namespace zetafred {

std::string Exponent::str() const {
  if (im.is_zero()) return re.str();
  return "(" + re.str() + (im < Rational(0) ? "" : "+") + im.str() + "i)";
}

namespace {

template <class R>
R factorial(int n) {
  R f(1);
  for (int i = 2; i <= n; ++i) f *= R(i);
  return f;
}

template <class R>
R binomial(int n, int k) {
  R b(1);
  for (int i = 1; i <= k; ++i) b = b * R(n - k + i) / R(i);
  return b;
}

template <class R>
Cx<R> power_of_log(Cx<R> base, int k) {
  Cx<R> p(1);
  for (int i = 0; i < k; ++i) p *= base;
  return p;
}

template <class R>
bool in_window(Direction d, const Rational& re, double cutoff) {
  if (std::isinf(cutoff)) return true;
  const double v = re.to_double();
  return d == Direction::AtZero ? v <= cutoff + 1e-12 : v >= -cutoff - 1e-12;
}

}  // namespace

template <class R>
BasicExpansion<R>& BasicExpansion<R>::add(const Exponent& alpha, int k, Cx<R> c) {
  if (k < 0) throw ContractError("negative log power in expansion term");
  if (c == Cx<R>(0)) return *this;
  TermKey key{alpha, k};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
  } else {
    it->second += c;
    if (it->second == Cx<R>(0)) terms_.erase(it);
  }
  return *this;
}

template <class R>
Cx<R> BasicExpansion<R>::coeff(const Exponent& alpha, int k) const {
  auto it = terms_.find(TermKey{alpha, k});
  return it == terms_.end() ? Cx<R>(0) : it->second;
}

template <class R>
int BasicExpansion<R>::max_log_power(const Exponent& alpha) const {
  int kmax = -1;
  for (const auto& [key, c] : terms_) {
    if (key.alpha == alpha) kmax = std::max(kmax, key.k);
  }
  return kmax;
}

template <class R>
std::vector<Exponent> BasicExpansion<R>::exponents() const {
  std::vector<Exponent> out;
  for (const auto& [key, c] : terms_) {
    if (out.empty() || !(out.back() == key.alpha)) out.push_back(key.alpha);
  }
  return out;
}

template <class R>
BasicExpansion<R> BasicExpansion<R>::truncated(double new_cutoff) const {
  BasicExpansion out(dir_, std::min(cutoff_, new_cutoff));
  for (const auto& [key, c] : terms_) {
    if (in_window<R>(dir_, key.alpha.re, out.cutoff_)) out.add(key.alpha, key.k, c);
  }
  return out;
}

template <class R>
Cx<R> BasicExpansion<R>::evaluate(R x) const {
  if (!(x > 0)) throw ContractError("expansion evaluated at a non-positive point");
  return evaluate(Cx<R>(x, 0));
}

template <class R>
Cx<R> BasicExpansion<R>::evaluate(Cx<R> x) const {
  const Cx<R> lx = std::log(x);
  Cx<R> s(0);
  for (const auto& [key, c] : terms_) {
    s += c * std::exp(key.alpha.template to<R>() * lx) * power_of_log(lx, key.k);
  }
  return s;
}

template <class R>
BasicExpansion<R> add(const BasicExpansion<R>& a, const BasicExpansion<R>& b) {
  if (a.direction() != b.direction()) throw ContractError("adding expansions at different points");
  const double k = std::min(a.cutoff(), b.cutoff());
  BasicExpansion<R> out(a.direction(), k);
  for (const auto* e : {&a, &b}) {
    for (const auto& [key, c] : e->terms()) {
      if (in_window<R>(a.direction(), key.alpha.re, k)) out.add(key.alpha, key.k, c);
    }
  }
  return out;
}

template <class R>
BasicExpansion<R> multiply(const BasicExpansion<R>& a, const BasicExpansion<R>& b) {
  if (a.direction() != b.direction()) {
    throw ContractError("multiplying expansions at different points");
  }
  const bool at_zero = a.direction() == Direction::AtZero;
  // Leading real exponent, clamped by the cutoff when the expansion is empty.
  auto lead = [&](const BasicExpansion<R>& e) {
    double m = at_zero ? e.cutoff() : -e.cutoff();
    for (const auto& [key, c] : e.terms()) {
      const double v = key.alpha.re.to_double();
      m = at_zero ? std::min(m, v) : std::max(m, v);
    }
    return m;
  };
  const double la = lead(a), lb = lead(b);
  const double k = at_zero ? std::min(a.cutoff() + lb, b.cutoff() + la)
                           : std::min(a.cutoff() - lb, b.cutoff() - la);
  BasicExpansion<R> out(a.direction(), k);
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      const Exponent alpha = ka.alpha + kb.alpha;
      if (in_window<R>(a.direction(), alpha.re, k)) out.add(alpha, ka.k + kb.k, ca * cb);
    }
  }
  return out;
}

template <class R>
BasicExpansion<R> scale(const BasicExpansion<R>& a, Cx<R> s) {
  BasicExpansion<R> out(a.direction(), a.cutoff());
  for (const auto& [key, c] : a.terms()) out.add(key.alpha, key.k, c * s);
  return out;
}

template <class R>
BasicExpansion<R> exp_taylor(Cx<R> z, int order) {
  BasicExpansion<R> out(Direction::AtZero, order);
  Cx<R> c(1);
  for (int n = 0; n <= order; ++n) {
    out.add(Exponent(n), 0, c);
    c *= -z / R(n + 1);
  }
  return out;
}

template <class R>
BasicExpansion<R> dilate(const BasicExpansion<R>& e, R lambda) {
  if (!(lambda > 0)) throw ContractError("dilation factor must be positive");
  using std::log;
  const R ll = log(lambda);
  BasicExpansion<R> out(e.direction(), e.cutoff());
  for (const auto& [key, c] : e.terms()) {
    const Cx<R> lam_pow = std::exp((key.alpha.template to<R>() + Cx<R>(1)) * Cx<R>(ll));
    R lpow(1);
    for (int j = key.k; j >= 0; --j) {
      // C(k, j) log^{k-j}(lambda) u^alpha log^j u
      out.add(key.alpha, j, c * lam_pow * binomial<R>(key.k, j) * lpow);
      lpow *= ll;
    }
  }
  return out;
}

template <class R>
Cx<R> regularized_limit(const BasicExpansion<R>& e) {
  if (e.cutoff() < 0) {
    throw InsufficientExpansionError("regularized limit needs an expansion complete through x^0");
  }
  return e.coeff(Exponent(0), 0);
}

template <class R>
Cx<R> regint_unit(Cx<R> alpha, int k, bool at_zero) {
  const Cx<R> beta = alpha + Cx<R>(1);
  if (beta == Cx<R>(0)) return Cx<R>(0);
  Cx<R> v = factorial<R>(k) / power_of_log(beta, k + 1);
  if (k % 2 == 1) v = -v;
  return at_zero ? v : -v;
}

template <class R>
Cx<R> regint_term(const Exponent& alpha, int k, bool at_zero) {
  return regint_unit<R>(alpha.template to<R>(), k, at_zero);
}

template <class R>
Cx<R> dilation_correction(const BasicExpansion<R>& at_zero, const BasicExpansion<R>& at_inf,
                          R lambda) {
  if (!(lambda > 0)) throw ContractError("dilation factor must be positive");
  using std::log;
  const R ll = log(lambda);
  const Exponent m1(-1);
  const int kmax = std::max(at_zero.max_log_power(m1), at_inf.max_log_power(m1));
  Cx<R> s(0);
  for (int k = 0; k <= kmax; ++k) {
    const Cx<R> d = at_inf.coeff(m1, k) - at_zero.coeff(m1, k);
    R p(1);
    for (int i = 0; i <= k; ++i) p *= ll;
    s += d * p / R(k + 1);
  }
  return s;
}

template <class R>
BasicLaurentData<R> mellin_pf(const BasicExpansion<R>& at_zero, const Exponent& s) {
  if (at_zero.direction() != Direction::AtZero) {
    throw ContractError("mellin_pf needs an expansion at zero");
  }
  const Exponent alpha = -s;
  if (at_zero.cutoff() < alpha.re.to_double()) {
    throw InsufficientExpansionError("expansion cutoff below the requested Mellin point");
  }
  const int kmax = at_zero.max_log_power(alpha);
  BasicLaurentData<R> out{s.template to<R>(), LaurentSeries<R>(0, {})};
  if (kmax < 0) return out;
  std::vector<Cx<R>> c(kmax + 1, Cx<R>(0));
  // integral_0^1 x^{eps-1} log^k x dx = (-1)^k k! eps^{-k-1}
  for (int k = 0; k <= kmax; ++k) {
    Cx<R> v = at_zero.coeff(alpha, k) * factorial<R>(k);
    if (k % 2 == 1) v = -v;
    c[kmax - k] = v;
  }
  out.series = LaurentSeries<R>(-(kmax + 1), std::move(c));
  return out;
}

Rational parse_rational_json(const nlohmann::json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number()) return Rational::from_double(j.get<double>());
  throw ValidationError("expected a number or a \"p/q\" string for an exponent");
}

template <class R>
R parse_real_json(const nlohmann::json& j) {
  if (j.is_number()) return R(j.get<double>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    try {
      if (s.find('/') != std::string::npos) return Rational::parse(s).to<R>();
      if constexpr (std::is_same_v<R, double>) {
        return std::stod(s);
      } else {
        return R(s.c_str());
      }
    } catch (const std::exception&) {
      throw ValidationError("cannot parse real value \"" + s + "\"");
    }
  }
  throw ValidationError("expected a real number");
}

namespace {

nlohmann::json rational_json(const Rational& r) {
  if (r.is_integer()) return r.num();
  // Dyadic fractions are exact in binary floating point.
  const auto d = r.den();
  if ((d & (d - 1)) == 0) return r.to_double();
  return r.str();
}

template <class R>
nlohmann::json real_json(const R& x) {
  if constexpr (std::is_same_v<R, double>) {
    return x;
  } else {
    if (static_cast<R>(static_cast<double>(x)) == x) return static_cast<double>(x);
    std::ostringstream os;
    os.precision(36);
    os << x;
    return os.str();
  }
}

}  // namespace

template <class R>
nlohmann::json to_json(const BasicExpansion<R>& e) {
  nlohmann::json j;
  j["direction"] = e.direction() == Direction::AtZero ? "zero" : "infinity";
  if (std::isinf(e.cutoff())) {
    j["cutoff"] = "inf";
  } else {
    j["cutoff"] = e.cutoff();
  }
  auto terms = nlohmann::json::array();
  for (const auto& [key, c] : e.terms()) {
    terms.push_back({{"re_alpha", rational_json(key.alpha.re)},
                     {"im_alpha", rational_json(key.alpha.im)},
                     {"k", key.k},
                     {"re_c", real_json(c.real())},
                     {"im_c", real_json(c.imag())}});
  }
  j["terms"] = terms;
  return j;
}

template <class R>
BasicExpansion<R> expansion_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("expansion must be a JSON object");
  Direction d = Direction::AtZero;
  if (j.contains("direction")) {
    const auto s = j.at("direction").get<std::string>();
    if (s == "zero") {
      d = Direction::AtZero;
    } else if (s == "infinity") {
      d = Direction::AtInfinity;
    } else {
      throw ValidationError("unknown expansion direction \"" + s + "\"");
    }
  }
  double cutoff = std::numeric_limits<double>::infinity();
  if (j.contains("cutoff")) {
    const auto& c = j.at("cutoff");
    if (c.is_string()) {
      if (c.get<std::string>() != "inf") throw ValidationError("cutoff must be a number or \"inf\"");
    } else {
      cutoff = c.get<double>();
    }
  }
  BasicExpansion<R> out(d, cutoff);
  if (!j.contains("terms") || !j.at("terms").is_array()) {
    throw ValidationError("expansion needs a \"terms\" array");
  }
  for (const auto& t : j.at("terms")) {
    Exponent alpha(parse_rational_json(t.at("re_alpha")),
                   t.contains("im_alpha") ? parse_rational_json(t.at("im_alpha")) : Rational(0));
    const int k = t.value("k", 0);
    if (k < 0) throw ValidationError("negative log power");
    const R re = parse_real_json<R>(t.at("re_c"));
    const R im = t.contains("im_c") ? parse_real_json<R>(t.at("im_c")) : R(0);
    out.add(alpha, k, Cx<R>(re, im));
  }
  return out;
}

#define ZETAFRED_EXPANSION_INST(R)                                                       \
  template class BasicExpansion<R>;                                                      \
  template BasicExpansion<R> add(const BasicExpansion<R>&, const BasicExpansion<R>&);    \
  template BasicExpansion<R> multiply(const BasicExpansion<R>&, const BasicExpansion<R>&); \
  template BasicExpansion<R> scale(const BasicExpansion<R>&, Cx<R>);                     \
  template BasicExpansion<R> exp_taylor(Cx<R>, int);                                     \
  template BasicExpansion<R> dilate(const BasicExpansion<R>&, R);                        \
  template Cx<R> regularized_limit(const BasicExpansion<R>&);                            \
  template Cx<R> regint_term<R>(const Exponent&, int, bool);                             \
  template Cx<R> regint_unit<R>(Cx<R>, int, bool);                                       \
  template Cx<R> dilation_correction(const BasicExpansion<R>&, const BasicExpansion<R>&, R); \
  template BasicLaurentData<R> mellin_pf(const BasicExpansion<R>&, const Exponent&);     \
  template nlohmann::json to_json(const BasicExpansion<R>&);                             \
  template BasicExpansion<R> expansion_from_json<R>(const nlohmann::json&);              \
  template R parse_real_json<R>(const nlohmann::json&);

ZETAFRED_EXPANSION_INST(double)
ZETAFRED_EXPANSION_INST(Extended)

}  // namespace zetafred

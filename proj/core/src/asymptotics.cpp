#include "zetafred/asymptotics.hpp"

#include <cmath>
#include <sstream>

#include "zetafred/errors.hpp"
#include "zetafred/fredholm.hpp"
#include "zetafred/regint.hpp"
#include "zetafred/special_functions.hpp"

namespace zetafred {

// ---------------------------------------------------------------------------
// BasicLargeZExpansion

template <class R>
void BasicLargeZExpansion<R>::add(const Exponent& alpha, int k, Cx<R> c,
                                  const std::string& source) {
  if (c == Cx<R>(0)) return;
  auto& t = terms_[{alpha, k}];
  t.coeff += c;
  if (!source.empty()) t.sources.push_back(source);
}

template <class R>
Cx<R> BasicLargeZExpansion<R>::remove(const Exponent& alpha, int k) {
  auto it = terms_.find({alpha, k});
  if (it == terms_.end()) return Cx<R>(0);
  const Cx<R> c = it->second.coeff;
  terms_.erase(it);
  return c;
}

template <class R>
Cx<R> BasicLargeZExpansion<R>::coeff(const Exponent& alpha, int k) const {
  auto it = terms_.find({alpha, k});
  return it == terms_.end() ? Cx<R>(0) : it->second.coeff;
}

template <class R>
std::vector<TermKey> BasicLargeZExpansion<R>::keys() const {
  std::vector<TermKey> out;
  for (const auto& [key, t] : terms_) out.push_back(key);
  return out;
}

template <class R>
BasicLargeZExpansion<R> BasicLargeZExpansion<R>::truncated(double max_re_alpha) const {
  BasicLargeZExpansion out(provenance_, std::min(complete_to_, max_re_alpha));
  for (const auto& [key, t] : terms_) {
    if (key.alpha.re.to_double() <= max_re_alpha) out.terms_[key] = t;
  }
  out.diagnostics = diagnostics;
  return out;
}

template <class R>
Cx<R> BasicLargeZExpansion<R>::evaluate(Cx<R> z) const {
  const Cx<R> lz = std::log(z);
  Cx<R> sum(0);
  for (const auto& [key, t] : terms_) {
    Cx<R> v = t.coeff * std::exp(-key.alpha.template to<R>() * lz);
    for (int i = 0; i < key.k; ++i) v *= lz;
    sum += v;
  }
  return sum;
}

namespace {

/// Polynomial in l = log z, coefficient of l^i at index i.
template <class R>
using LogPoly = std::vector<Cx<R>>;

/// Laurent coefficients in eps of Gamma(a + eps) exp(-eps l) for eps powers
/// -1..top, each a polynomial in l.  Entry m + 1 holds eps^m.
template <class R>
std::vector<LogPoly<R>> gamma_exp_log(Cx<R> a, int top) {
  const LaurentSeries<R> g = gamma_series<R>(a, top);
  std::vector<LogPoly<R>> c(top + 2);
  for (int m = -1; m <= top; ++m) {
    LogPoly<R> p(m + 2, Cx<R>(0));
    R fact(1);
    for (int i = 0; m - i >= -1; ++i) {
      if (i > 0) fact *= R(i);
      const Cx<R> gi = g[m - i];
      p[i] = ((i % 2 == 0) ? gi : -gi) / fact;
    }
    c[m + 1] = std::move(p);
  }
  return c;
}

template <class R>
R factorial(int n) {
  R f(1);
  for (int i = 2; i <= n; ++i) f *= R(i);
  return f;
}

/// k! [eps^k] Gamma(a + eps) z^{-eps}: the log-polynomial multiplying z^{-a}
/// in the expansion of regint t^{a-1} log^k t e^{-zt} dt.
template <class R>
LogPoly<R> laplace_logpoly(const Exponent& a, int k) {
  auto c = gamma_exp_log<R>(a.template to<R>(), k);
  LogPoly<R> p = c[k + 1];
  const R kf = factorial<R>(k);
  for (auto& v : p) v *= kf;
  return p;
}

template <class R>
std::string source_tag(const char* what, const TermKey& key) {
  return std::string(what) + "(" + key.alpha.str() + "," + std::to_string(key.k) + ")";
}

}  // namespace

template <class R>
BasicLargeZExpansion<R> watson_regint(const BasicExpansion<R>& q) {
  if (q.direction() != Direction::AtZero) {
    throw ContractError("watson_regint needs an expansion at t = 0");
  }
  BasicLargeZExpansion<R> out(Provenance::Predicted, q.cutoff() + 1);
  for (const auto& [key, c] : q.terms()) {
    const Exponent a = key.alpha + Exponent(1);
    const LogPoly<R> p = laplace_logpoly<R>(a, key.k);
    for (std::size_t i = 0; i < p.size(); ++i) {
      out.add(a, static_cast<int>(i), c * p[i], source_tag<R>("q", key));
    }
  }
  return out;
}

template <class R>
BasicLargeZExpansion<R> predict_log_det_zeta_expansion(const SpectrumModel& m) {
  const BasicExpansion<R> heat = m.heat_as<R>();
  BasicLargeZExpansion<R> out(Provenance::Predicted, heat.cutoff());
  for (const auto& [key, A] : heat.terms()) {
    const int k = key.k;
    const auto c = gamma_exp_log<R>(key.alpha.template to<R>(), k + 1);
    const LaurentSeries<R> r = inv_gamma_series<R>(Cx<R>(0), k + 2);
    // h_j = c_{j+k} prod_{i=1}^k (j + i) are the Laurent coefficients of the
    // k-th derivative; the s^1 coefficient of r(s) h(s) is sum_i r_i h_{1-i}.
    LogPoly<R> acc;
    for (int i = 1; i <= k + 2; ++i) {
      const int j = 1 - i;
      const int idx = j + k;
      if (idx < -1) continue;
      R ff(1);
      for (int q = 1; q <= k; ++q) ff *= R(j + q);
      if (ff == R(0)) continue;
      const LogPoly<R>& cp = c[idx + 1];
      if (acc.size() < cp.size()) acc.resize(cp.size(), Cx<R>(0));
      for (std::size_t e = 0; e < cp.size(); ++e) acc[e] += r[i] * ff * cp[e];
    }
    for (std::size_t e = 0; e < acc.size(); ++e) {
      out.add(key.alpha, static_cast<int>(e), -A * acc[e], source_tag<R>("A", key));
    }
  }
  const Cx<R> c00 = out.remove(Exponent(0), 0);
  using std::abs;
  if (abs(c00) > R(1e-12)) {
    std::ostringstream os;
    os << "log det_zeta expansion has a nonzero z^0 coefficient " << static_cast<double>(abs(c00))
       << "; the heat expansion violates the regularity assumptions";
    throw ConsistencyError(os.str(), static_cast<double>(abs(c00)));
  }
  return out;
}

template <class R>
BasicLargeZExpansion<R> predict_resolvent_expansion(const SpectrumModel& m, int N) {
  if (N < m.schatten_p || N < 1) {
    throw ContractError("resolvent expansion needs N >= p");
  }
  const BasicExpansion<R> heat = m.heat_as<R>();
  BasicLargeZExpansion<R> out(Provenance::Predicted, heat.cutoff() + N);
  const R inv = R(1) / factorial<R>(N - 1);
  for (const auto& [key, A] : heat.terms()) {
    const Exponent a = key.alpha + Exponent(N);
    const LogPoly<R> p = laplace_logpoly<R>(a, key.k);
    for (std::size_t i = 0; i < p.size(); ++i) {
      out.add(a, static_cast<int>(i), A * inv * p[i], source_tag<R>("A", key));
    }
  }
  return out;
}

template <class R>
BasicExpansion<R> heat_from_resolvent(const BasicLargeZExpansion<R>& res, int N) {
  if (N < 1) throw ContractError("heat_from_resolvent needs N >= 1");
  BasicExpansion<R> out(Direction::AtZero, res.complete_to() - N);
  const R nf = factorial<R>(N - 1);
  std::map<Exponent, int> kmax;
  for (const auto& [key, t] : res.terms()) {
    auto [it, fresh] = kmax.try_emplace(key.alpha, key.k);
    if (!fresh) it->second = std::max(it->second, key.k);
  }
  for (const auto& [g, K] : kmax) {
    // (1/Gamma)^{(j)}(g) = j! [eps^j] 1/Gamma(g + eps)
    const LaurentSeries<R> ig = inv_gamma_series<R>(g.template to<R>(), K);
    for (int mm = 0; mm <= K; ++mm) {
      Cx<R> s(0);
      R binom(1);  // C(i, mm)
      for (int i = mm; i <= K; ++i) {
        if (i > mm) binom = binom * R(i) / R(i - mm);
        const Cx<R> d = ig[i - mm] * factorial<R>(i - mm);
        const Cx<R> term = binom * d * res.coeff(g, i);
        s += (i % 2 == 0) ? term : -term;
      }
      out.add(g - Exponent(N), mm, nf * s);
    }
  }
  return out;
}

LargeZExpansion predict_fredholm_expansion(const SpectrumModel& m, const ZetaOptions& opt) {
  if (m.dim_ker != 0) {
    throw ContractError("Fredholm expansion needs an invertible operator");
  }
  LargeZExpansion out = predict_log_det_zeta_expansion<double>(m);
  SpectralZeta sz(m, opt);
  double jf = 1;
  for (int j = 0; j < m.schatten_p; ++j) {
    if (j > 0) jf *= j;
    const Cx<double> c = (j == 0) ? sz.log_det(0).value : sz.taylor(j);
    out.add(Exponent(-j), 0, -c / jf, "taylor(" + std::to_string(j) + ")");
  }
  return out;
}

Cx<double> zeta_via_resolvent(const SpectrumModel& m, const Exponent& s, int N, double tol) {
  if (N < m.schatten_p || N < 1) throw ContractError("zeta_via_resolvent needs N >= p");
  if (m.dim_ker != 0) throw ContractError("zeta_via_resolvent needs an invertible operator");
  const Cx<double> sd = s.to<double>();
  const Cx<double> pref = factorial<double>(N - 1) *
                          inv_gamma_series<double>(sd, 0)[0] *
                          inv_gamma_series<double>(Cx<double>(N) - sd, 0)[0];
  if (pref == Cx<double>(0)) {
    throw ContractError("zeta_via_resolvent: s is a zero of the prefactor");
  }
  const Exponent w = Exponent(N - 1) - s;  // z^{N-1-s}

  // Taylor series of tr (L+z)^{-N} at 0: sum_j (-1)^j C(N+j-1, j) zeta(N+j) z^j.
  const int J = std::max(4, static_cast<int>(std::ceil(sd.real())) - N + 4);
  BasicExpansion<double> at_zero(Direction::AtZero, w.re.to_double() + J - 1);
  FredholmOptions fo;
  fo.tol = 1e-15;
  double binom = 1;
  for (int j = 0; j < J; ++j) {
    if (j > 0) binom = binom * (N + j - 1) / j;
    const Cx<double> zj = resolvent_power_trace(m, 0.0, N + j, fo).value;
    at_zero.add(w + Exponent(j), 0, ((j % 2 == 0) ? binom : -binom) * zj);
  }

  const LargeZExpansion res = predict_resolvent_expansion<double>(m, N);
  // A resolvent term z^{-g} becomes z^{w-g}; completeness for Re g <= G means
  // completeness for x-exponents >= w - G.
  BasicExpansion<double> at_inf(Direction::AtInfinity, res.complete_to() - w.re.to_double());
  for (const auto& [key, t] : res.terms()) at_inf.add(w - key.alpha, key.k, t.coeff);

  auto f = [&](double z) -> Cx<double> {
    const Cx<double> zp = std::exp(w.to<double>() * std::log(z));
    return zp * resolvent_power_trace(m, z, N, fo).value;
  };
  RegintOptions ro;
  ro.abs_tol = tol;
  ro.outer_ceiling = 1e5;
  ro.inner_floor = 1e-8;
  const auto r = regint_numeric<double>(f, at_zero, at_inf, ro);
  return pref * r.value;
}

std::vector<double> geometric_grid(double z0, int n) {
  std::vector<double> g;
  for (int j = 0; j < n; ++j) g.push_back(std::ldexp(z0, j));
  return g;
}

template <class R>
nlohmann::json to_json(const BasicLargeZExpansion<R>& e) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [key, t] : e.terms()) {
    nlohmann::json j{{"alpha", key.alpha.str()},
                     {"k", key.k},
                     {"re", static_cast<double>(t.coeff.real())},
                     {"im", static_cast<double>(t.coeff.imag())}};
    if (!t.sources.empty()) j["sources"] = t.sources;
    if (e.provenance() == Provenance::Fitted) j["sensitivity"] = t.sensitivity;
    terms.push_back(std::move(j));
  }
  nlohmann::json out{{"provenance", e.provenance() == Provenance::Predicted ? "predicted" : "fitted"},
                     {"convention", "coeff * z^-alpha * log^k z"},
                     {"terms", terms}};
  if (std::isfinite(e.complete_to())) {
    out["complete_to"] = e.complete_to();
  } else {
    out["complete_to"] = "inf";
  }
  if (e.diagnostics) {
    out["diagnostics"] = {{"condition", e.diagnostics->condition},
                          {"max_residual", e.diagnostics->max_residual},
                          {"rms_residual", e.diagnostics->rms_residual},
                          {"flagged", e.diagnostics->flagged},
                          {"message", e.diagnostics->message}};
  }
  return out;
}

#define ZETAFRED_ASYMP_INST(R)                                                             \
  template class BasicLargeZExpansion<R>;                                                  \
  template BasicLargeZExpansion<R> watson_regint<R>(const BasicExpansion<R>&);             \
  template BasicLargeZExpansion<R> predict_log_det_zeta_expansion<R>(const SpectrumModel&); \
  template BasicLargeZExpansion<R> predict_resolvent_expansion<R>(const SpectrumModel&, int); \
  template BasicExpansion<R> heat_from_resolvent<R>(const BasicLargeZExpansion<R>&, int);  \
  template nlohmann::json to_json<R>(const BasicLargeZExpansion<R>&);

ZETAFRED_ASYMP_INST(double)
ZETAFRED_ASYMP_INST(Extended)

}  // namespace zetafred

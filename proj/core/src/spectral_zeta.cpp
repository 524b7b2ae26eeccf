#include "zetafred/spectral_zeta.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>

#include "detail/cuts.hpp"
#include "zetafred/errors.hpp"
#include "zetafred/regint.hpp"
#include "zetafred/special_functions.hpp"

namespace zetafred {
namespace {

template <class R>
R factorial(int n) {
  R f(1);
  for (int i = 2; i <= n; ++i) f *= R(i);
  return f;
}

/// Point s given either exactly (snapped to a rational) or in floating point.
template <class R>
struct Point {
  Cx<R> value;
  std::optional<Exponent> exact;
};

/// Laurent data of M(s) = Gamma(s) zeta(s; L + z) at a point: principal
/// part coefficients (index j holds eps^{-j}) and the finite part.
template <class R>
struct MData {
  std::vector<Cx<R>> principal;  // principal[0] unused
  Cx<R> finite;
  int order() const {
    for (int j = static_cast<int>(principal.size()) - 1; j >= 1; --j) {
      if (principal[j] != Cx<R>(0)) return j;
    }
    return 0;
  }
};

template <class R>
class Engine {
 public:
  Engine(const SpectrumModel& m, double tol)
      : m_(m), heat_(m.heat_as<R>()), tol_(tol > 0 ? R(tol) : R(default_tolerance<R>())) {
    lambda1_ = m_.eigenvalue<R>(1);
  }

  R tol() const { return tol_; }

  /// Snaps s to a rational point when it lies within 1e-12 of a pole
  /// candidate -alpha - n, so that pole bookkeeping is exact.
  Point<R> point(Cx<double> s) const {
    Point<R> p{cx_cast<R>(s), std::nullopt};
    if (s.imag() != 0.0) return p;
    for (const auto& [key, c] : heat_.terms()) {
      if (!key.alpha.is_real()) continue;
      const double x = -key.alpha.re.to_double() - s.real();
      const double n = std::round(x);
      if (n >= 0 && std::fabs(x - n) < 1e-12) {
        p.exact = Exponent(-key.alpha.re - Rational(static_cast<std::int64_t>(n)));
        p.value = p.exact->template to<R>();
        return p;
      }
    }
    const double n = std::round(s.real());
    if (std::fabs(s.real() - n) < 1e-12) {
      p.exact = Exponent(static_cast<std::int64_t>(n));
      p.value = Cx<R>(R(n));
    }
    return p;
  }

  MData<R> mellin(const Point<R>& s, Cx<R> z) {
    using std::abs;
    if (!(z.real() > -lambda1_)) {
      throw ContractError("shift must satisfy Re z > -lambda_1");
    }
    const double K = heat_.cutoff();
    if (std::isfinite(K) && !(static_cast<double>(s.value.real()) > -K)) {
      std::ostringstream msg;
      msg << "zeta at Re s = " << static_cast<double>(s.value.real())
          << " needs a heat expansion beyond cutoff " << K;
      throw InsufficientExpansionError(msg.str());
    }
    MData<R> out;
    out.principal.assign(2, Cx<R>(0));
    out.finite = Cx<R>(0);
    const bool unshifted = (z == Cx<R>(0));
    for (const auto& [key, a] : heat_.terms()) {
      Cx<R> beta;
      if (s.exact) {
        const Exponent b = key.alpha + *s.exact;
        beta = b.template to<R>();
        if (b.is_nonpositive_integer()) {
          const int n = static_cast<int>(-b.re.num());
          if (!unshifted || n == 0) {
            Cx<R> w(1);
            for (int i = 1; i <= n; ++i) w *= -z / R(i);
            const int order = key.k + 1;
            if (static_cast<int>(out.principal.size()) <= order) {
              out.principal.resize(order + 1, Cx<R>(0));
            }
            const R sign = (key.k % 2 == 0) ? R(1) : R(-1);
            out.principal[order] += a * w * sign * factorial<R>(key.k);
          }
        }
      } else {
        beta = key.alpha.template to<R>() + s.value;
      }
      out.finite += a * unit_laplace_pf<R>(beta, key.k, z);
    }
    const int kappa = m_.dim_ker;
    if (unshifted && kappa > 0) {
      // integral_1^infinity t^{s-1} dt continues to -1/s.
      if (s.exact && s.exact->re.is_zero() && s.exact->im.is_zero()) {
        out.principal[1] -= R(kappa);
      } else {
        out.finite -= R(kappa) / s.value;
      }
    }
    out.finite += inner_remainder(s.value, z) + outer_part(s.value, z);
    return out;
  }

  /// Laurent data of zeta(s; L + z) at s through the finite part.
  BasicLaurentData<R> zeta_laurent(const Point<R>& s, Cx<R> z) {
    const MData<R> md = mellin(s, z);
    const int m = md.order();
    std::vector<Cx<R>> c(m + 1);
    for (int j = m; j >= 1; --j) c[m - j] = md.principal[j];
    c[m] = md.finite;
    const LaurentSeries<R> ms(-m, std::move(c));
    const LaurentSeries<R> g = inv_gamma_series<R>(s.value, m);
    return {s.value, (g * ms).truncated(0)};
  }

  Cx<R> zeta_value(Cx<double> s, Cx<R> z) {
    const Point<R> p = point(s);
    return zeta_laurent(p, z).finite_part();
  }

  /// Heat route: -zeta'(0; L + z) = -(Pf M(0) + gamma zeta(0; L + z)).
  Cx<R> log_det_heat(Cx<R> z, Cx<R> a00) {
    Point<R> p{Cx<R>(0), Exponent(0)};
    const MData<R> md = mellin(p, z);
    if (md.order() > 1) {
      throw ValidationError("zeta(s; L) has a pole at s = 0; log terms with alpha = 0 present");
    }
    using std::abs;
    const Cx<R> pole = md.principal.size() > 1 ? md.principal[1] : Cx<R>(0);
    if (abs(pole - a00) > R(1e-9) * std::max(R(1), abs(a00))) {
      throw ConsistencyError("residue of Gamma(s) zeta(s) at 0 disagrees with the transported A_00",
                             static_cast<double>(abs(pole - a00)));
    }
    return -(md.finite + euler_gamma<R>() * a00);
  }

  /// Derivative route: Richardson-extrapolated central differences of
  /// zeta(s; L + z) at s = 0 with steps 1e-2, 5e-3, 2.5e-3.
  Cx<R> log_det_derivative(Cx<R> z) {
    const R h0 = R(1) / R(100);
    Cx<R> d[3];
    for (int i = 0; i < 3; ++i) {
      R h = h0;
      for (int j = 0; j < i; ++j) h /= 2;
      const Cx<R> zp = zeta_laurent(Point<R>{Cx<R>(h), std::nullopt}, z).finite_part();
      const Cx<R> zm = zeta_laurent(Point<R>{Cx<R>(-h), std::nullopt}, z).finite_part();
      d[i] = (zp - zm) / (R(2) * h);
    }
    const Cx<R> r1 = (R(4) * d[1] - d[0]) / R(3);
    const Cx<R> r2 = (R(4) * d[2] - d[1]) / R(3);
    return -(R(16) * r2 - r1) / R(15);
  }

 private:
  R heat(R t) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(t);
      if (it != cache_.end()) return it->second;
    }
    HeatOptions ho;
    ho.tol = static_cast<double>(tol_) * 1e-3;
    const R v = heat_trace<R>(m_, t, ho).value;
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(t, v);
    return v;
  }

  Cx<R> inner_remainder(Cx<R> s, Cx<R> z) {
    auto g = [&](R t) -> Cx<R> {
      using std::log;
      const R rem = heat(t) - heat_.evaluate(t).real();
      return std::exp((s - R(1)) * log(t) - z * t) * rem;
    };
    const R floor = std::is_same_v<R, double> ? R(1e-3) : R(1) / R(128);
    const auto cut = detail::inner_cut<R>(g, R(0.5), floor, tol_, "zeta (inner remainder)");
    const auto q = detail::dyadic<R>(g, cut.at, R(1), tol_ / 4);
    return q.value + cut.tail;
  }

  Cx<R> outer_part(Cx<R> s, Cx<R> z) {
    const bool unshifted = (z == Cx<R>(0));
    const R kappa(m_.dim_ker);
    auto g = [&](R t) -> Cx<R> {
      using std::log;
      R h = heat(t);
      if (unshifted) h -= kappa;
      return std::exp((s - R(1)) * log(t) - z * t) * h;
    };
    const auto cut = detail::outer_cut<R>(g, R(2), R(1 << 20), tol_, "zeta (outer part)");
    const auto q = detail::dyadic<R>(g, R(1), cut.at, tol_ / 4);
    return q.value + cut.tail;
  }

  const SpectrumModel& m_;
  BasicExpansion<R> heat_;
  R tol_;
  R lambda1_;
  std::mutex mu_;
  std::map<R, R> cache_;
};

template <class R>
Cx<double> to_double(Cx<R> v) {
  return cx_cast<double>(v);
}

LaurentData laurent_to_double(const BasicLaurentData<Extended>& l) {
  std::vector<Cx<double>> c;
  for (const auto& v : l.series.coeffs()) c.push_back(cx_cast<double>(v));
  return {cx_cast<double>(l.location), LaurentSeries<double>(l.series.lo(), std::move(c))};
}

}  // namespace

struct SpectralZeta::Impl {
  SpectrumModel model;
  ZetaOptions opt;
  std::unique_ptr<Engine<double>> dbl;
  std::unique_ptr<Engine<Extended>> ext;
  std::once_flag dbl_once, ext_once;

  Engine<double>& d() {
    std::call_once(dbl_once, [&] { dbl = std::make_unique<Engine<double>>(model, opt.tol); });
    return *dbl;
  }
  Engine<Extended>& e() {
    std::call_once(ext_once, [&] {
      // The extended engine serves the derivative route, whose target is
      // tighter than any double tolerance.
      const double tol = opt.precision == Precision::Extended && opt.tol > 0 ? opt.tol : 0.0;
      ext = std::make_unique<Engine<Extended>>(model, tol);
    });
    return *ext;
  }
};

SpectralZeta::SpectralZeta(SpectrumModel m, ZetaOptions opt) : impl_(std::make_shared<Impl>()) {
  check_model(m);
  impl_->model = std::move(m);
  impl_->opt = opt;
}

const SpectrumModel& SpectralZeta::model() const { return impl_->model; }
const ZetaOptions& SpectralZeta::options() const { return impl_->opt; }

ZetaValue SpectralZeta::zeta(Cx<double> s, Cx<double> z) const {
  ZetaValue out;
  out.s = s;
  if (impl_->opt.precision == Precision::Extended) {
    auto& eng = impl_->e();
    out.laurent = laurent_to_double(eng.zeta_laurent(eng.point(s), cx_cast<Extended>(z)));
  } else {
    auto& eng = impl_->d();
    out.laurent = eng.zeta_laurent(eng.point(s), z);
  }
  out.pole = out.laurent.pole_order() > 0;
  out.value = out.laurent.finite_part();
  return out;
}

PositiveIntegerData SpectralZeta::at_positive_integer(int n) const {
  if (n < 1) throw ContractError("at_positive_integer needs n >= 1");
  const ZetaValue v = zeta(Cx<double>(n, 0));
  if (v.laurent.pole_order() > 1) {
    throw ValidationError("zeta has a higher-order pole at a positive integer");
  }
  return {v.laurent.residue(), v.laurent.finite_part()};
}

AsymptoticExpansion shifted_heat_expansion(const SpectrumModel& m, Cx<double> z) {
  const AsymptoticExpansion h = m.heat_expansion();
  double lowest = 0;
  for (const auto& [key, c] : h.terms()) lowest = std::min(lowest, key.alpha.re.to_double());
  const int order = static_cast<int>(std::ceil(-lowest)) + 1;
  AsymptoticExpansion out = multiply(h, exp_taylor<double>(z, order));
  return out.truncated(std::min(out.cutoff(), 0.0));
}

namespace {

template <class R>
Cx<R> shifted_a00(const SpectrumModel& m, Cx<R> z) {
  // sum_n Res_{-n}Gamma A_{-n,0} z^n, minus the kernel when unshifted.
  Cx<R> s(0);
  for (const auto& [key, c] : m.heat.terms()) {
    if (key.k != 0 || !key.alpha.is_nonpositive_integer()) continue;
    const int n = static_cast<int>(-key.alpha.re.num());
    Cx<R> zn(1);
    for (int i = 0; i < n; ++i) zn *= z;
    s += cx_cast<R>(Cx<Extended>(c)) * gamma_pole_residue<R>(n) * zn;
  }
  if (z == Cx<R>(0)) s -= R(m.dim_ker);
  return s;
}

}  // namespace

Cx<double> SpectralZeta::log_det_heat(Cx<double> z) const {
  if (impl_->opt.precision == Precision::Extended) {
    return cx_cast<double>(log_det_heat_extended(cx_cast<Extended>(z)));
  }
  return impl_->d().log_det_heat(z, shifted_a00<double>(impl_->model, z));
}

Cx<Extended> SpectralZeta::log_det_heat_extended(Cx<Extended> z) const {
  return impl_->e().log_det_heat(z, shifted_a00<Extended>(impl_->model, z));
}

Cx<double> SpectralZeta::log_det_derivative(Cx<double> z) const {
  return cx_cast<double>(impl_->e().log_det_derivative(cx_cast<Extended>(z)));
}

DetZetaValue SpectralZeta::log_det(Cx<double> z) const {
  DetZetaValue out;
  out.z = z;
  out.zeta_at_zero = shifted_a00<double>(impl_->model, z);
  out.route_heat = log_det_heat(z);
  out.value = out.route_heat;
  if (impl_->opt.check_routes) {
    out.route_derivative = log_det_derivative(z);
    out.residual = std::abs(out.route_heat - out.route_derivative);
    if (!(out.residual <= impl_->opt.route_tol)) {
      std::ostringstream msg;
      msg << "log det_zeta routes disagree for " << impl_->model.name << " at z = " << z
          << ": heat " << out.route_heat << ", derivative " << out.route_derivative;
      throw ConsistencyError(msg.str(), out.residual);
    }
  }
  return out;
}

int taylor_sign(int n) { return (n % 2 == 1) ? 1 : -1; }

Cx<double> SpectralZeta::taylor(int n) const {
  if (n < 0) throw ContractError("Taylor order must be nonnegative");
  if (impl_->model.dim_ker != 0) {
    throw ContractError("Taylor coefficients at z = 0 need an invertible operator");
  }
  if (n == 0) return log_det_heat(0);
  const PositiveIntegerData d = at_positive_integer(n);
  // (n-1)! Pf_{s=n} zeta + A_{-n,0} L_{n-1}
  double fact = 1;
  for (int i = 2; i < n; ++i) fact *= i;
  const Cx<double> a = impl_->model.heat_expansion().coeff(Exponent(-n), 0);
  return double(taylor_sign(n)) * (fact * d.pf + a * harmonic(n - 1).to_double());
}

ZetaValue zeta(const SpectrumModel& m, Cx<double> s, const ZetaOptions& opt) {
  return SpectralZeta(m, opt).zeta(s);
}

PositiveIntegerData zeta_pf_at_positive_integer(const SpectrumModel& m, int n,
                                                const ZetaOptions& opt) {
  return SpectralZeta(m, opt).at_positive_integer(n);
}

DetZetaValue log_det_zeta(const SpectrumModel& m, const ZetaOptions& opt) {
  return SpectralZeta(m, opt).log_det(0);
}

DetZetaValue log_det_zeta_shifted(const SpectrumModel& m, Cx<double> z, const ZetaOptions& opt) {
  return SpectralZeta(m, opt).log_det(z);
}

Cx<double> taylor_log_det_zeta(const SpectrumModel& m, int n, const ZetaOptions& opt) {
  return SpectralZeta(m, opt).taylor(n);
}

}  // namespace zetafred

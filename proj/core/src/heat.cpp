#include <algorithm>
#include <cmath>
#include <sstream>

#include "zetafred/errors.hpp"
#include "zetafred/models.hpp"
#include "zetafred/special_functions.hpp"

namespace zetafred {
namespace {

// Neumaier compensated summation.
template <class R>
struct CompensatedSum {
  R sum = 0;
  R comp = 0;
  void add(R x) {
    using std::abs;
    const R t = sum + x;
    if (abs(sum) >= abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  R value() const { return sum + comp; }
};

// Upper bound for integral_{n}^{inf} exp(-t c (x + d)^r) dx, using
// Gamma(a, X) <= X^{a-1} e^{-X} / (1 - (a-1)/X) for a > 1, X > a-1.
template <class R>
R law_tail_bound(const EigenLaw& law, R t, R n) {
  using std::exp;
  using std::log;
  using std::pow;
  const R r = law.r.to<R>();
  const R a = R(1) / r;
  const R u0 = n + law.d.to<R>();
  const R tc = t * static_cast<R>(law.c);
  const R X = tc * pow(u0, r);
  R factor = 1;
  if (a > R(1)) {
    if (!(X > R(2) * (a - R(1)))) return std::numeric_limits<R>::infinity();
    factor = R(1) / (R(1) - (a - R(1)) / X);
  }
  // (1/r) (tc)^{-1/r} X^{a-1} e^{-X}
  return a * exp(-a * log(tc) + (a - R(1)) * log(X) - X) * factor;
}

}  // namespace

template <class R>
HeatValue<R> heat_trace(const SpectrumModel& m, R t, const HeatOptions& opt) {
  if (!(t > R(0))) throw ContractError("heat_trace needs t > 0");
  if (t < R(opt.t_floor)) {
    std::ostringstream os;
    os << "heat_trace: t = " << static_cast<double>(t) << " is below the configured floor "
       << opt.t_floor << "; no tail bound is produced there";
    throw NumericError(os.str());
  }
  using std::exp;
  const R tol = R(opt.tol > 0 ? opt.tol : default_tolerance<R>() * 1e-3);
  CompensatedSum<R> acc;
  long n = 1;
  for (; n <= m.table_size(); ++n) {
    acc.add(R(m.multiplicity(n)) * exp(-t * m.eigenvalue<R>(n)));
  }
  // Tail law part.  Integer exponents r = 1, 2 use multiplicative
  // recurrences, re-anchored with a direct exp every 32 steps.
  const R mult = R(m.law_mult);
  const bool r1 = m.law.r == Rational(1);
  const bool r2 = m.law.r == Rational(2);
  const R tc = t * static_cast<R>(m.law.c);
  const R dd = m.law.d.to<R>();
  R term = 0, ratio = 0, ratio_step = 0;
  R bound = std::numeric_limits<R>::infinity();
  const long start = n;
  for (;; ++n) {
    const long j = n - start;
    if (j % 32 == 0 || !(r1 || r2)) {
      term = exp(-t * m.eigenvalue<R>(n));
      if (r1) ratio = exp(-tc);
      if (r2) {
        ratio = exp(-tc * (R(2) * (R(n) + dd) + R(1)));
        ratio_step = exp(-R(2) * tc);
      }
    } else {
      term *= ratio;
      if (r2) ratio *= ratio_step;
    }
    acc.add(mult * term);
    if (mult * term < tol) {
      bound = mult * law_tail_bound<R>(m.law, t, R(n));
      if (bound < tol / 2) break;
    }
    if (j > 50000000) throw NumericError("heat_trace: summation did not terminate");
  }
  return HeatValue<R>{acc.value() + R(m.dim_ker), bound, n};
}

ExpansionComparison validate_heat_expansion(const SpectrumModel& m,
                                            const std::vector<double>& t_grid_in, double K) {
  if (K > m.heat.cutoff()) {
    throw InsufficientExpansionError("validation order K exceeds the declared cutoff");
  }
  std::vector<double> t_grid = t_grid_in;
  if (t_grid.empty()) t_grid = {0.5, 0.25, 0.125, 0.0625, 0.03125};
  for (double t : t_grid) {
    if (!(t > 0)) throw ContractError("t-grid must be positive");
  }
  const BasicExpansion<Extended> partial = m.heat.truncated(K);

  ExpansionComparison out;
  std::vector<double> xs, ys;
  for (double t : t_grid) {
    const Extended te(t);
    const Extended h = heat_trace<Extended>(m, te).value;
    const Extended rem = h - partial.evaluate(te).real();
    out.samples.push_back({t, static_cast<double>(rem)});
    const Extended noise = Extended(1e4) * machine_eps<Extended>() * std::max(Extended(1), abs(h));
    if (abs(rem) > noise) {
      xs.push_back(t);
      ys.push_back(static_cast<double>(log(abs(rem))));
    }
  }

  // Next declared exponent above K.
  std::optional<double> next;
  for (const auto& [key, c] : m.heat.terms()) {
    const double re = key.alpha.re.to_double();
    if (re > K + 1e-12 && (!next || re < *next)) next = re;
  }

  auto fit = [](const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      sx += x[i];
      sy += y[i];
      sxx += x[i] * x[i];
      sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };

  std::ostringstream msg;
  if (next || std::isfinite(m.heat.cutoff())) {
    out.slope_test = true;
    if (xs.size() < 2) {
      out.pass = !next;
      msg << "remainder below numeric resolution on the grid";
      if (next) msg << "; choose larger t to resolve the t^" << *next << " term";
    } else {
      // Fit on the three smallest resolved t to suppress pre-asymptotic bias.
      std::vector<std::size_t> idx(xs.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return xs[a] < xs[b]; });
      idx.resize(std::min<std::size_t>(idx.size(), 3));
      std::vector<double> lx, ly;
      for (auto i : idx) {
        lx.push_back(std::log(xs[i]));
        ly.push_back(ys[i]);
      }
      out.fitted_slope = fit(lx, ly);
      if (next) {
        out.expected_slope = *next;
        out.pass = std::fabs(out.fitted_slope - *next) <= 0.1;
        msg << "remainder slope " << out.fitted_slope << ", expected " << *next << " +- 0.1";
      } else {
        // Complete through the cutoff, so the remainder is o(t^cutoff); a
        // slope at the cutoff itself means a wrong t^cutoff coefficient.
        out.expected_slope = m.heat.cutoff();
        out.pass = out.fitted_slope >= m.heat.cutoff() + 0.25;
        msg << "remainder slope " << out.fitted_slope << ", expected > " << m.heat.cutoff();
      }
    }
  } else {
    // Complete expansion: the remainder must vanish faster than any power,
    // tested as log|rem| ~ a - b/t with b > 0.
    out.slope_test = false;
    if (xs.size() < 2) {
      out.pass = true;
      msg << "remainder below numeric resolution on the grid";
    } else {
      std::vector<double> ix;
      for (double x : xs) ix.push_back(1.0 / x);
      const double b = -fit(ix, ys);
      out.fitted_slope = b;
      out.expected_slope = 1.0;
      out.pass = b >= 1.0;
      msg << "exponential decay rate " << b << " in 1/t (required >= 1)";
    }
  }
  out.message = msg.str();
  return out;
}

template HeatValue<double> heat_trace(const SpectrumModel&, double, const HeatOptions&);
template HeatValue<Extended> heat_trace(const SpectrumModel&, Extended, const HeatOptions&);

}  // namespace zetafred

#pragma once

#include <cmath>
#include <algorithm>
#include <string>
#include <utility>

#include "zetafred/errors.hpp"
#include "zetafred/precision.hpp"
#include "zetafred/quadrature.hpp"

namespace zetafred::detail {

/// A cut point for a remainder integrand together with the estimated
/// contribution of the discarded end piece.
template <class R>
struct Cut {
  R at;
  Cx<R> tail;      // estimated integral over the discarded piece (already added)
  R tail_error;    // size of the uncertainty left in the discarded piece
};

/// Integral of C t^sigma over (0, t] (inner) or [t, infinity) (outer)
/// fitted through r(t) and r(t*ratio).  Zero when the fit is not usable.
template <class R>
Cx<R> power_tail(Cx<R> r_t, Cx<R> r_other, R t, R ratio, bool inner) {
  using std::abs;
  using std::log;
  if (r_t == Cx<R>(0) || r_other == Cx<R>(0)) return Cx<R>(0);
  const R sigma = log(abs(r_other) / abs(r_t)) / log(ratio);
  if (inner && sigma > R(-0.95)) return r_t * t / (sigma + R(1));
  if (!inner && sigma < R(-1.05)) return -r_t * t / (sigma + R(1));
  return Cx<R>(0);
}

/// Chooses a cut in {start * step^j} so that the remainder r is negligible
/// beyond it: (0, cut] for step = 1/2, [cut, infinity) for step = 2.  The
/// end piece is estimated by a power law C t^sigma fitted through two
/// neighbouring points and added as a correction.  If no point meets the
/// tolerance before the limit, the point with the smallest |t r(t)| is
/// used and the result is rejected unless that estimate is below 100 tol.
template <class R, class F>
Cut<R> ladder_cut(F&& r, R start, R limit, R step, R tol, const char* what) {
  using std::abs;
  const bool inner = step < R(1);
  auto beyond = [&](R t) { return inner ? t < limit : t > limit; };
  R t = start;
  Cx<R> r1 = r(t);
  R best_t = t;
  Cx<R> best_r = r1, best_next(0);
  R best_size = t * abs(r1);
  for (;;) {
    const R tn = t * step;
    if (beyond(tn)) break;
    const Cx<R> r2 = r(tn);
    if (t * abs(r1) <= tol / 4 && tn * abs(r2) <= tol / 4) {
      return {t, power_tail<R>(r1, r2, t, step, inner), t * abs(r1)};
    }
    if (tn * abs(r2) < best_size) {
      best_size = tn * abs(r2);
      best_t = tn;
      best_r = r2;
      best_next = Cx<R>(0);
    } else if (best_t == t) {
      best_next = r2;
    }
    t = tn;
    r1 = r2;
  }
  const Cx<R> tail = power_tail<R>(best_r, best_next, best_t, step, inner);
  const R err = std::max(best_size, abs(tail));
  if (err > R(100) * tol) {
    throw NumericError(std::string(what) + (inner ? ": remainder near 0" : ": remainder at infinity") +
                           " does not fall below tolerance; declared expansion too short",
                       static_cast<double>(err));
  }
  return {best_t, tail, err};
}

template <class R, class F>
Cut<R> inner_cut(F&& r, R start, R floor, R tol, const char* what) {
  return ladder_cut<R>(std::forward<F>(r), start, floor, R(0.5), tol, what);
}

template <class R, class F>
Cut<R> outer_cut(F&& r, R start, R ceiling, R tol, const char* what) {
  return ladder_cut<R>(std::forward<F>(r), start, ceiling, R(2), tol, what);
}

/// Integral over [a, b] (0 < a < b) split into pieces with ratio at most 2,
/// which keeps a fixed-order rule accurate for integrands that vary on the
/// scale of t.  Each piece gets a share of abs_tol proportional to its
/// logarithmic length.
template <class R, class F>
quad::Result<R> dyadic(F&& f, R a, R b, R abs_tol) {
  using std::log;
  quad::Result<R> out{Cx<R>(0), R(0), R(0)};
  const R total = log(b / a);
  R lo = a;
  while (lo < b) {
    R hi = lo * 2;
    if (hi > b || b - hi < lo / 4) hi = b;
    const R share = total > 0 ? abs_tol * log(hi / lo) / total : abs_tol;
    const auto piece = quad::adaptive<R>(f, lo, hi, share);
    out.value += piece.value;
    out.error += piece.error;
    out.l1_norm += piece.l1_norm;
    lo = hi;
  }
  return out;
}

}  // namespace zetafred::detail

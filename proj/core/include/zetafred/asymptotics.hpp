#pragma once

#include <complex>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "zetafred/expansion.hpp"
#include "zetafred/models.hpp"
#include "zetafred/precision.hpp"
#include "zetafred/spectral_zeta.hpp"

namespace zetafred {

enum class Provenance { Predicted, Fitted };

template <class R>
struct LargeZTerm {
  Cx<R> coeff;
  /// Predicted terms: the heat coefficients (or input terms) that fed this
  /// coefficient, e.g. "A(-1,0)".  Fitted terms: empty.
  std::vector<std::string> sources;
  /// Fitted terms: norm of the matching row of the pseudo-inverse of the
  /// column-scaled basis, i.e. the amplification of sample noise.
  double sensitivity = 0;
};

struct FitDiagnostics {
  double condition = 0;     // of the column-scaled basis
  double max_residual = 0;  // max over samples of |value - fitted expansion|
  double rms_residual = 0;
  bool flagged = false;     // max_residual above the residual tolerance
  std::string message;
};

/// Expansion sum coeff * z^{-alpha} log^k z as Re z -> infinity.
///
/// Keys use the z^{-alpha} convention.  complete_to records that every
/// term with Re alpha <= complete_to is present, so the remainder is
/// o(z^{-complete_to}) up to logarithms.
template <class R>
class BasicLargeZExpansion {
 public:
  using Map = std::map<TermKey, LargeZTerm<R>>;

  explicit BasicLargeZExpansion(Provenance p = Provenance::Predicted,
                                double complete_to = std::numeric_limits<double>::infinity())
      : provenance_(p), complete_to_(complete_to) {}

  Provenance provenance() const { return provenance_; }
  double complete_to() const { return complete_to_; }
  void set_complete_to(double v) { complete_to_ = v; }

  /// Accumulates c into the (alpha, k) coefficient; source is appended to
  /// the provenance chain when nonempty.
  void add(const Exponent& alpha, int k, Cx<R> c, const std::string& source = {});
  /// Removes a term, returning its coefficient (0 if absent).
  Cx<R> remove(const Exponent& alpha, int k);
  Cx<R> coeff(const Exponent& alpha, int k) const;
  bool has(const Exponent& alpha, int k) const { return terms_.count({alpha, k}) != 0; }
  const Map& terms() const { return terms_; }
  Map& mutable_terms() { return terms_; }
  std::vector<TermKey> keys() const;
  std::size_t size() const { return terms_.size(); }

  /// Terms with Re alpha <= max_re_alpha.
  BasicLargeZExpansion truncated(double max_re_alpha) const;
  /// Sum of the terms, principal branch of log z.
  Cx<R> evaluate(Cx<R> z) const;

  std::optional<FitDiagnostics> diagnostics;

 private:
  Provenance provenance_;
  double complete_to_;
  Map terms_;
};

using LargeZExpansion = BasicLargeZExpansion<double>;

/// Expansion of regint_0^inf q(t) e^{-zt} dt as z -> infinity, given
/// q(t) ~ sum a_{b,k} t^b log^k t at t = 0 and exponential integrability
/// at infinity.  Each term contributes k! [eps^k] Gamma(a + eps) z^{-a-eps}
/// with a = b + 1, which is Watson's lemma off the poles of Gamma and the
/// regularized closed form (with a log^{k+1} z term) on them.
template <class R>
BasicLargeZExpansion<R> watson_regint(const BasicExpansion<R>& q_at_zero);

/// Expansion of log det_zeta(L + z) from the heat coefficients of the
/// model.  Each heat term A t^a log^k t contributes
///   -A [s^1] (1/Gamma(s)) d^k/da^k (Gamma(a) z^{-a}) at a -> a + s,
/// which covers the power, log z and z^n log z families uniformly.  The
/// z^0 log^0 z coefficient vanishes; a nonzero value throws
/// ConsistencyError.
template <class R>
BasicLargeZExpansion<R> predict_log_det_zeta_expansion(const SpectrumModel& m);

/// Expansion of tr (L + z)^{-N} for N >= p.  Keys carry the total
/// exponent: a heat term t^a log^k t lands on z^{-(a+N)}.
template <class R>
BasicLargeZExpansion<R> predict_resolvent_expansion(const SpectrumModel& m, int N);

/// Inverse of predict_resolvent_expansion: heat coefficients from the
/// resolvent expansion of order N (keys with the total exponent a + N):
///   A_{a,m} = (N-1)! sum_{i>=m} (-1)^i C(i, m) (1/Gamma)^{(i-m)}(a + N) R_{a+N,i}.
template <class R>
BasicExpansion<R> heat_from_resolvent(const BasicLargeZExpansion<R>& resolvent, int N);

/// Expansion of log det_p(I + z L^{-1}), p the Schatten order of the model:
/// the log det_zeta expansion minus sum_{j<p} z^j/j! d^j log det_zeta(L+z)|_0.
/// Its constant term is -log det_zeta(L) and its log z coefficient A_00.
LargeZExpansion predict_fredholm_expansion(const SpectrumModel& m, const ZetaOptions& opt = {});

/// zeta(s; L) = Gamma(N) / (Gamma(s) Gamma(N - s)) regint_0^inf z^{N-1-s} tr (L+z)^{-N} dz,
/// evaluated numerically from resolvent traces with the Taylor expansion
/// at z = 0 and the predicted expansion at infinity subtracted.  A
/// validation route only; N >= p and s must avoid the poles of the prefactor.
Cx<double> zeta_via_resolvent(const SpectrumModel& m, const Exponent& s, int N,
                              double tol = 1e-9);

struct FitOptions {
  double condition_limit = 1e10;
  double residual_tol = 1e-6;
};

/// Least-squares fit of sum c_{alpha,k} z^{-alpha} log^k z to samples at
/// real z > 0.  Needs at least template size + 2 samples.  Throws
/// NumericError when the column-scaled basis has condition above the limit.
/// The result carries diagnostics; flagged is set when the residual exceeds
/// residual_tol, which is how an incomplete template shows up.
LargeZExpansion fit_expansion(const std::vector<std::pair<double, Cx<double>>>& samples,
                              const std::vector<TermKey>& templ, const FitOptions& opt = {});

/// Geometric grid z0 * 2^j, j = 0..n-1.
std::vector<double> geometric_grid(double z0, int n);

template <class R>
nlohmann::json to_json(const BasicLargeZExpansion<R>& e);

#define ZETAFRED_ASYMP_EXTERN(R)                                                           \
  extern template class BasicLargeZExpansion<R>;                                           \
  extern template BasicLargeZExpansion<R> watson_regint<R>(const BasicExpansion<R>&);      \
  extern template BasicLargeZExpansion<R> predict_log_det_zeta_expansion<R>(               \
      const SpectrumModel&);                                                               \
  extern template BasicLargeZExpansion<R> predict_resolvent_expansion<R>(const SpectrumModel&, \
                                                                         int);             \
  extern template BasicExpansion<R> heat_from_resolvent<R>(const BasicLargeZExpansion<R>&, int); \
  extern template nlohmann::json to_json<R>(const BasicLargeZExpansion<R>&);

ZETAFRED_ASYMP_EXTERN(double)
ZETAFRED_ASYMP_EXTERN(Extended)
#undef ZETAFRED_ASYMP_EXTERN

}  // namespace zetafred

#pragma once

#include <complex>
#include <memory>

#include "zetafred/expansion.hpp"
#include "zetafred/laurent.hpp"
#include "zetafred/models.hpp"
#include "zetafred/precision.hpp"

namespace zetafred {

struct ZetaOptions {
  /// Working precision of zeta values and of the heat-route determinant.
  /// The derivative route always runs in extended precision.
  Precision precision = Precision::Double;
  /// Absolute accuracy target; 0 selects the precision default.
  double tol = 0;
  /// Largest accepted disagreement between the two determinant routes.
  double route_tol = 1e-7;
  /// Compute the derivative route and enforce route_tol.
  bool check_routes = true;
};

/// zeta(s; L + z).  At a pole, value holds the finite part and laurent the
/// principal part; elsewhere laurent is the one-term series of value.
struct ZetaValue {
  Cx<double> s;
  bool pole = false;
  Cx<double> value;
  LaurentData laurent;
};

struct PositiveIntegerData {
  Cx<double> residue;  // Res_{s=n} zeta(s; L)
  Cx<double> pf;       // Pf_{s=n} zeta(s; L)
};

struct DetZetaValue {
  Cx<double> z;
  Cx<double> value;             // log det_zeta(L + z) from the heat route
  Cx<double> route_heat;
  Cx<double> route_derivative;  // -zeta'(0; L + z) by extrapolated differences
  double residual = 0;          // |route_heat - route_derivative|, 0 if unchecked
  Cx<double> zeta_at_zero;      // zeta(0; L + z) = A'_00(L + z)
};

/// Evaluator for zeta(s; L + z) and log det_zeta(L + z) of one model.
///
/// zeta(s; L + z) Gamma(s) is split at t = 1: the declared heat terms are
/// integrated against t^{s-1} e^{-tz} in closed form on (0, 1], the
/// remainder heat(t) - terms numerically, and the whole heat trace on
/// [1, infinity).  Heat-trace samples are cached, so repeated queries on
/// the same model are cheap.  Instances are safe to share between threads.
class SpectralZeta {
 public:
  explicit SpectralZeta(SpectrumModel m, ZetaOptions opt = {});

  const SpectrumModel& model() const;
  const ZetaOptions& options() const;

  ZetaValue zeta(Cx<double> s, Cx<double> z = 0) const;
  PositiveIntegerData at_positive_integer(int n) const;

  /// Both routes; throws ConsistencyError when they disagree beyond
  /// route_tol (if check_routes is set).
  DetZetaValue log_det(Cx<double> z = 0) const;
  /// Heat route only.
  Cx<double> log_det_heat(Cx<double> z = 0) const;
  /// Heat route in extended precision.
  Cx<Extended> log_det_heat_extended(Cx<Extended> z) const;
  /// Derivative route (extended precision).
  Cx<double> log_det_derivative(Cx<double> z = 0) const;

  /// n-th z-derivative of log det_zeta(L + z) at z = 0; n = 0 gives
  /// log det_zeta(L).
  Cx<double> taylor(int n) const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

/// Sign of the n-th Taylor coefficient formula, (-1)^{n+1}; fixed against
/// finite differences of log det_zeta(L + z) on the model lambda_n = n.
int taylor_sign(int n);

/// Expansion at t = 0 of tr exp(-t(L + z)) = e^{-tz} tr exp(-tL),
/// complete through t^0.  Its t^0 coefficient is
/// A_00(L + z) = sum_n Res_{-n}Gamma A_{-n,0}(L) z^n.
AsymptoticExpansion shifted_heat_expansion(const SpectrumModel& m, Cx<double> z);

ZetaValue zeta(const SpectrumModel& m, Cx<double> s, const ZetaOptions& opt = {});
PositiveIntegerData zeta_pf_at_positive_integer(const SpectrumModel& m, int n,
                                                const ZetaOptions& opt = {});
DetZetaValue log_det_zeta(const SpectrumModel& m, const ZetaOptions& opt = {});
DetZetaValue log_det_zeta_shifted(const SpectrumModel& m, Cx<double> z,
                                  const ZetaOptions& opt = {});
Cx<double> taylor_log_det_zeta(const SpectrumModel& m, int n, const ZetaOptions& opt = {});

}  // namespace zetafred

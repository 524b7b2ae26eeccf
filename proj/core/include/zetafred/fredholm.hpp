#pragma once

#include <complex>

#include "zetafred/models.hpp"
#include "zetafred/precision.hpp"

namespace zetafred {

struct FredholmOptions {
  /// Absolute target for the truncated tail of every sum.
  double tol = 1e-15;
  Precision precision = Precision::Double;
};

/// Regularized Fredholm determinant det_{N+1}(I + z L^{-1}).
///
/// log_value is the sum of principal-branch factor logarithms; it is the
/// analytic continuation along [0, z] except for real z < -lambda_1, where
/// it is the boundary value from Im z > 0.  At a zero of the determinant
/// value is 0 and log_defined is false.
struct FredholmEval {
  Cx<double> z;
  int order = 1;  // N + 1
  Cx<double> value;
  Cx<double> log_value;
  bool log_defined = true;
  long truncation_n = 0;  // eigenvalue indices summed explicitly
  double tail_bound = 0;  // bound on the neglected part of the tail series
};

/// A trace-type eigenvalue sum with its truncation data.
struct TraceEval {
  Cx<double> value;
  long truncation_n = 0;
  double tail_bound = 0;
};

/// Sum over q of mult(q) [log(1 + z/lambda_q) + sum_{k=1}^{N} (-1)^k (z/lambda_q)^k / k].
/// The explicit head runs until |z|/lambda_q <= 1/4; the rest is summed as
/// a power series in z with Hurwitz-zeta power sums of the tail law.
FredholmEval det_fredholm(const SpectrumModel& m, Cx<double> z, int order,
                          const FredholmOptions& opt = {});

/// d/dz log det_{N+1}(I + z L^{-1}) = (-z)^N tr(L^{-N} (L + z)^{-1}).
TraceEval log_derivative(const SpectrumModel& m, Cx<double> z, int order,
                         const FredholmOptions& opt = {});

/// tr (L + z)^{-N}.
TraceEval resolvent_power_trace(const SpectrumModel& m, Cx<double> z, int N,
                                const FredholmOptions& opt = {});

/// Extended-precision variants used where differences of determinants are
/// taken (finite-difference checks).
Cx<Extended> det_fredholm_log_extended(const SpectrumModel& m, Cx<Extended> z, int order,
                                       double tol = 1e-30);

}  // namespace zetafred

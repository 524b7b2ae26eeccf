#pragma once

#include <functional>

#include "zetafred/expansion.hpp"
#include "zetafred/precision.hpp"

namespace zetafred {

struct RegintOptions {
  double abs_tol = 1e-10;
  double inner_floor = 1e-12;  // smallest cut tried near 0
  double outer_ceiling = 1e12; // largest cut tried near infinity
};

template <class R>
struct RegintResult {
  Cx<R> value;
  R error;      // quadrature error plus the discarded end pieces
  R inner_cut;  // remainder integrated numerically on [inner_cut, 1]
  R outer_cut;  // and on [1, outer_cut]
};

/// Regularized integral of f over (0, infinity).
///
/// The declared expansions are subtracted on (0, 1] and [1, infinity);
/// the remainders are integrated numerically and the subtracted terms are
/// added back through their closed-form regularized integrals.  at_zero
/// must have cutoff >= 0 and at_inf cutoff >= 1 (an empty expansion with
/// infinite cutoff declares faster than polynomial decay).
template <class R>
RegintResult<R> regint_numeric(const std::function<Cx<R>(R)>& f,
                               const BasicExpansion<R>& at_zero,
                               const BasicExpansion<R>& at_inf,
                               const RegintOptions& opt = {});

/// Finite part at eps = 0 of integral_0^1 t^{beta+eps-1} log^k t e^{-tz} dt.
/// Its principal part is (-z)^n/n! (-1)^k k! eps^{-k-1} when beta = -n.
template <class R>
Cx<R> unit_laplace_pf(Cx<R> beta, int k, Cx<R> z);

extern template RegintResult<double> regint_numeric(const std::function<Cx<double>(double)>&,
                                                    const BasicExpansion<double>&,
                                                    const BasicExpansion<double>&,
                                                    const RegintOptions&);
extern template RegintResult<Extended> regint_numeric(
    const std::function<Cx<Extended>(Extended)>&, const BasicExpansion<Extended>&,
    const BasicExpansion<Extended>&, const RegintOptions&);
extern template Cx<double> unit_laplace_pf<double>(Cx<double>, int, Cx<double>);
extern template Cx<Extended> unit_laplace_pf<Extended>(Cx<Extended>, int, Cx<Extended>);

}  // namespace zetafred

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "zetafred/asymptotics.hpp"
#include "zetafred/errors.hpp"

namespace zetafred {

LargeZExpansion fit_expansion(const std::vector<std::pair<double, Cx<double>>>& samples,
                              const std::vector<TermKey>& templ, const FitOptions& opt) {
  const auto n = static_cast<Eigen::Index>(samples.size());
  const auto m = static_cast<Eigen::Index>(templ.size());
  if (m == 0) throw ContractError("fit_expansion: empty template");
  if (n < m + 2) {
    throw ContractError("fit_expansion: needs at least template size + 2 samples, got " +
                        std::to_string(n) + " for " + std::to_string(m) + " terms");
  }
  for (const auto& key : templ) {
    if (!key.alpha.is_real()) throw ContractError("fit_expansion: complex exponents unsupported");
  }

  Eigen::MatrixXd A(n, m);
  Eigen::MatrixXd b(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double z = samples[i].first;
    if (!(z > 0)) throw ContractError("fit_expansion: sample points must be positive");
    const double lz = std::log(z);
    for (Eigen::Index j = 0; j < m; ++j) {
      A(i, j) = std::pow(z, -templ[j].alpha.re.to_double()) * std::pow(lz, templ[j].k);
    }
    b(i, 0) = samples[i].second.real();
    b(i, 1) = samples[i].second.imag();
  }
  // Column scaling keeps the condition number about the shape of the basis
  // rather than the magnitudes of z^{-alpha}.
  Eigen::VectorXd scale(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    scale(j) = A.col(j).norm();
    if (scale(j) == 0) throw NumericError("fit_expansion: basis column vanishes on the grid");
    A.col(j) /= scale(j);
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cond = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1)
                                            : std::numeric_limits<double>::infinity();
  if (!(cond <= opt.condition_limit)) {
    std::ostringstream os;
    os << "fit_expansion: basis condition number " << cond << " exceeds " << opt.condition_limit
       << "; widen the z-grid or drop nearly collinear template terms";
    throw NumericError(os.str(), cond);
  }
  const Eigen::MatrixXd x = svd.solve(b);
  // Rows of the pseudo-inverse V S^{-1} U^T have norms |V_j S^{-1}|.
  const Eigen::MatrixXd vs = svd.matrixV() * sv.cwiseInverse().asDiagonal();

  LargeZExpansion out(Provenance::Fitted);
  for (Eigen::Index j = 0; j < m; ++j) {
    const Cx<double> c(x(j, 0) / scale(j), x(j, 1) / scale(j));
    auto& t = out.mutable_terms()[templ[j]];
    t.coeff = c;
    t.sensitivity = vs.row(j).norm() / scale(j);
  }

  FitDiagnostics d;
  d.condition = cond;
  const Eigen::MatrixXd r = A * x - b;
  double ss = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double ri = std::hypot(r(i, 0), r(i, 1));
    d.max_residual = std::max(d.max_residual, ri);
    ss += ri * ri;
  }
  d.rms_residual = std::sqrt(ss / static_cast<double>(n));
  d.flagged = d.max_residual > opt.residual_tol;
  if (d.flagged) {
    std::ostringstream os;
    os << "fit residual " << d.max_residual << " exceeds " << opt.residual_tol
       << "; the template is probably missing a term";
    d.message = os.str();
  } else {
    d.message = "ok";
  }
  out.diagnostics = d;
  return out;
}

}  // namespace zetafred

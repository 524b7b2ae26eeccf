#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zetafred/expansion.hpp"
#include "zetafred/precision.hpp"
#include "zetafred/rational.hpp"

namespace zetafred {

/// Power law lambda(n) = c (n + d)^r for real n >= 1.
struct EigenLaw {
  Extended c = 1;
  Rational r = 1;
  Rational d = 0;

  template <class R>
  R operator()(R n) const;
  std::string str() const;
};

/// Spectrum of a positive self-adjoint operator given by its eigenvalues.
///
/// The first table.size() eigenvalues come from the table; later ones
/// follow the declared tail law.  Multiplicities default to 1.  Shifted
/// operators L + z are never materialized: the numeric engines carry the
/// shift alongside the model.
struct SpectrumModel {
  std::string name;
  std::string description;
  std::vector<Extended> table;
  std::vector<int> table_mult;  // empty means all ones
  EigenLaw law;
  int law_mult = 1;
  int dim_ker = 0;
  int schatten_p = 1;
  /// Expansion of tr exp(-tL) at t = 0 (nonzero eigenvalues plus kernel).
  BasicExpansion<Extended> heat{Direction::AtZero};
  /// Closed-form reference values, used only for reporting and tests.
  std::map<std::string, double> oracles;

  template <class R>
  R eigenvalue(long n) const;
  int multiplicity(long n) const;
  long table_size() const { return static_cast<long>(table.size()); }

  AsymptoticExpansion heat_expansion() const { return heat.cast<double>(); }
  template <class R>
  BasicExpansion<R> heat_as() const {
    if constexpr (std::is_same_v<R, Extended>) {
      return heat;
    } else {
      return heat.template cast<R>();
    }
  }
};

const std::vector<std::string>& catalog_names();
/// Built-in model by name: "N1", "N2" or "HO".
SpectrumModel catalog_model(const std::string& name);
/// Catalog name or path to a JSON model file.
SpectrumModel resolve_model(const std::string& name_or_path);

/// Throws ValidationError describing the first violated invariant.
void check_model(const SpectrumModel& m);

SpectrumModel load_model(const nlohmann::json& j);
SpectrumModel load_model_file(const std::string& path);
nlohmann::json model_to_json(const SpectrumModel& m);

/// Copy of m with the (alpha, k) heat coefficient shifted by delta.  Used by
/// negative controls; the result is not re-validated.
SpectrumModel with_heat_perturbation(const SpectrumModel& m, const Exponent& alpha, int k,
                                     double delta);

struct HeatOptions {
  double tol = 0;          // absolute; 0 selects the precision default
  double t_floor = 1e-4;   // smallest t for which a tail bound is produced
};

template <class R>
struct HeatValue {
  R value;
  R tail_bound;
  long terms;  // eigenvalues summed explicitly
};

/// tr exp(-tL) = sum mult(n) exp(-t lambda_n), ascending n, compensated sum.
template <class R>
HeatValue<R> heat_trace(const SpectrumModel& m, R t, const HeatOptions& opt = {});

/// Result of comparing a declared expansion against numeric data.
struct ExpansionComparison {
  struct Sample {
    double x;
    double remainder;
  };
  std::vector<Sample> samples;
  double fitted_slope = 0;
  double expected_slope = 0;
  bool slope_test = true;  // false when an exponential-decay test was used
  bool pass = false;
  std::string message;
};

/// Checks that heat_trace(t) minus the declared terms with Re alpha <= K
/// decays like t^{K'} (K' the next declared exponent).  With no further
/// term declared the remainder must decay faster than t^{cutoff + 1/4}, or
/// faster than any power when the cutoff is infinite.
ExpansionComparison validate_heat_expansion(const SpectrumModel& m,
                                            const std::vector<double>& t_grid, double K);

extern template Extended EigenLaw::operator()<Extended>(Extended) const;
extern template double EigenLaw::operator()<double>(double) const;
extern template double SpectrumModel::eigenvalue<double>(long) const;
extern template Extended SpectrumModel::eigenvalue<Extended>(long) const;
extern template HeatValue<double> heat_trace(const SpectrumModel&, double, const HeatOptions&);
extern template HeatValue<Extended> heat_trace(const SpectrumModel&, Extended, const HeatOptions&);

}  // namespace zetafred

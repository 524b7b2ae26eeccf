#pragma once

#include <compare>
#include <complex>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zetafred/laurent.hpp"
#include "zetafred/precision.hpp"
#include "zetafred/rational.hpp"

namespace zetafred {

/// Complex exponent with exact rational real and imaginary parts.
struct Exponent {
  Rational re;
  Rational im;

  Exponent() = default;
  Exponent(Rational r) : re(r) {}  // NOLINT(google-explicit-constructor)
  Exponent(Rational r, Rational i) : re(r), im(i) {}
  Exponent(std::int64_t n) : re(n) {}  // NOLINT(google-explicit-constructor)

  bool is_real() const { return im.is_zero(); }
  bool is_integer() const { return im.is_zero() && re.is_integer(); }
  /// True when -alpha is in {0, 1, 2, ...}.
  bool is_nonpositive_integer() const { return is_integer() && re.num() <= 0; }

  template <class R>
  Cx<R> to() const {
    return Cx<R>(re.to<R>(), im.to<R>());
  }

  Exponent operator-() const { return {-re, -im}; }
  friend Exponent operator+(const Exponent& a, const Exponent& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend Exponent operator-(const Exponent& a, const Exponent& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend bool operator==(const Exponent&, const Exponent&) = default;
  friend std::strong_ordering operator<=>(const Exponent& a, const Exponent& b) {
    if (auto c = a.re <=> b.re; c != 0) return c;
    return a.im <=> b.im;
  }

  std::string str() const;
};

/// Key of an expansion term x^alpha log^k x.
struct TermKey {
  Exponent alpha;
  int k = 0;
  friend bool operator==(const TermKey&, const TermKey&) = default;
  friend std::strong_ordering operator<=>(const TermKey& a, const TermKey& b) {
    if (auto c = a.alpha <=> b.alpha; c != 0) return c;
    return a.k <=> b.k;
  }
};

enum class Direction { AtZero, AtInfinity };

/// Finite asymptotic expansion sum a_{alpha,k} x^alpha log^k x.
///
/// At zero the expansion is complete for Re alpha <= cutoff, so the
/// remainder is O(x^{cutoff+delta}).  At infinity it is complete for
/// Re alpha >= -cutoff.  A cutoff of +infinity means the remainder is
/// smaller than any power.  Zero coefficients are never stored.
template <class R>
class BasicExpansion {
 public:
  using Map = std::map<TermKey, Cx<R>>;

  BasicExpansion() = default;
  explicit BasicExpansion(Direction d, double cutoff = std::numeric_limits<double>::infinity())
      : dir_(d), cutoff_(cutoff) {}

  Direction direction() const { return dir_; }
  double cutoff() const { return cutoff_; }
  void set_cutoff(double k) { cutoff_ = k; }

  /// Accumulates c into the (alpha, k) coefficient.
  BasicExpansion& add(const Exponent& alpha, int k, Cx<R> c);
  Cx<R> coeff(const Exponent& alpha, int k) const;
  const Map& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Largest power of log x attached to alpha, or -1 if absent.
  int max_log_power(const Exponent& alpha) const;
  /// Distinct exponents in increasing order.
  std::vector<Exponent> exponents() const;

  /// Drops terms outside the completeness window for the new cutoff.
  BasicExpansion truncated(double new_cutoff) const;

  /// Sum of the terms at a positive real point.
  Cx<R> evaluate(R x) const;
  Cx<R> evaluate(Cx<R> x) const;

  template <class R2>
  BasicExpansion<R2> cast() const {
    BasicExpansion<R2> out(dir_, cutoff_);
    for (const auto& [key, c] : terms_) out.add(key.alpha, key.k, cx_cast<R2>(c));
    return out;
  }

  friend bool operator==(const BasicExpansion&, const BasicExpansion&) = default;

 private:
  Direction dir_ = Direction::AtZero;
  double cutoff_ = std::numeric_limits<double>::infinity();
  Map terms_;
};

using AsymptoticExpansion = BasicExpansion<double>;

/// Sum; the cutoff is the weaker of the two.  Directions must agree.
template <class R>
BasicExpansion<R> add(const BasicExpansion<R>& a, const BasicExpansion<R>& b);

/// Product, truncated to the window where the product is complete.
template <class R>
BasicExpansion<R> multiply(const BasicExpansion<R>& a, const BasicExpansion<R>& b);

template <class R>
BasicExpansion<R> scale(const BasicExpansion<R>& a, Cx<R> s);

/// Expansion at zero of exp(-x z) to order x^order (complete up to it).
template <class R>
BasicExpansion<R> exp_taylor(Cx<R> z, int order);

/// Expansion of u -> lambda f(lambda u) given the expansion of f.
template <class R>
BasicExpansion<R> dilate(const BasicExpansion<R>& e, R lambda);

/// Coefficient of x^0 log^0 x.  At zero it requires cutoff >= 0.
template <class R>
Cx<R> regularized_limit(const BasicExpansion<R>& e);

/// Regularized integral of x^alpha log^k x over (0,1] (at zero) or
/// [1,infinity) (at infinity).  Zero when alpha = -1.
template <class R>
Cx<R> regint_term(const Exponent& alpha, int k, bool at_zero);
/// Regularized integral of x^alpha log^k x over (0, infinity): the two
/// half-line pieces cancel exactly, so the result is always zero.
template <class R>
Cx<R> regint_term(const Exponent& alpha, int k) {
  return regint_term<R>(alpha, k, true) + regint_term<R>(alpha, k, false);
}
/// Same, for a complex exponent given in floating point.
template <class R>
Cx<R> regint_unit(Cx<R> alpha, int k, bool at_zero);

/// Correction term of the dilation law:
///   lambda * regint f(lambda u) du - regint f
///     = sum_k (a^inf_{-1,k} - a^0_{-1,k}) log^{k+1}(lambda) / (k+1).
template <class R>
Cx<R> dilation_correction(const BasicExpansion<R>& at_zero,
                          const BasicExpansion<R>& at_inf, R lambda);

/// Principal part at s of the Mellin-type transform
/// integral_0^1 x^{s-1} f(x) dx contributed by the terms with alpha = -s.
template <class R>
BasicLaurentData<R> mellin_pf(const BasicExpansion<R>& at_zero, const Exponent& s);

/// JSON form: {"direction": "zero"|"infinity", "cutoff": K|"inf",
///  "terms": [{"re_alpha","im_alpha","k","re_c","im_c"}, ...]}.
/// Exponents may be numbers or "p/q" strings; coefficients may be numbers
/// or decimal strings (parsed at full precision).
template <class R>
nlohmann::json to_json(const BasicExpansion<R>& e);
template <class R>
BasicExpansion<R> expansion_from_json(const nlohmann::json& j);

Rational parse_rational_json(const nlohmann::json& j);
template <class R>
R parse_real_json(const nlohmann::json& j);

#define ZETAFRED_EXPANSION_EXTERN(R)                                                   \
  extern template class BasicExpansion<R>;                                             \
  extern template BasicExpansion<R> add(const BasicExpansion<R>&, const BasicExpansion<R>&); \
  extern template BasicExpansion<R> multiply(const BasicExpansion<R>&,                 \
                                             const BasicExpansion<R>&);                \
  extern template BasicExpansion<R> scale(const BasicExpansion<R>&, Cx<R>);            \
  extern template BasicExpansion<R> exp_taylor(Cx<R>, int);                            \
  extern template BasicExpansion<R> dilate(const BasicExpansion<R>&, R);               \
  extern template Cx<R> regularized_limit(const BasicExpansion<R>&);                   \
  extern template Cx<R> regint_term<R>(const Exponent&, int, bool);                    \
  extern template Cx<R> regint_unit<R>(Cx<R>, int, bool);                              \
  extern template Cx<R> dilation_correction(const BasicExpansion<R>&,                  \
                                            const BasicExpansion<R>&, R);              \
  extern template BasicLaurentData<R> mellin_pf(const BasicExpansion<R>&, const Exponent&); \
  extern template nlohmann::json to_json(const BasicExpansion<R>&);                    \
  extern template BasicExpansion<R> expansion_from_json<R>(const nlohmann::json&);     \
  extern template R parse_real_json<R>(const nlohmann::json&);

ZETAFRED_EXPANSION_EXTERN(double)
ZETAFRED_EXPANSION_EXTERN(Extended)
#undef ZETAFRED_EXPANSION_EXTERN

}  // namespace zetafred

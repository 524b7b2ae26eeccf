#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace zetafred {

/// Exact rational number with 64-bit numerator and denominator.
/// Always normalized: gcd(num, den) == 1 and den > 0.  Arithmetic that
/// would overflow throws std::overflow_error.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t n);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  /// True for 1, 2, 3, ...
  bool is_positive_integer() const { return den_ == 1 && num_ > 0; }
  /// True for 0, 1, 2, ...
  bool is_nonnegative_integer() const { return den_ == 1 && num_ >= 0; }

  template <class R>
  R to() const {
    return R(num_) / R(den_);
  }
  double to_double() const { return to<double>(); }

  /// Largest integer not greater than this value.
  std::int64_t floor() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// "p/q" or "p"; whitespace tolerated.
  static Rational parse(const std::string& text);
  /// Best rational approximation with denominator <= max_den, accepted only
  /// when it reproduces x to within tol.
  static Rational from_double(double x, std::int64_t max_den = 1000000,
                              double tol = 1e-12);

  std::string str() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Harmonic number L_n = 1 + 1/2 + ... + 1/n (L_0 = 0), exact.
Rational harmonic(int n);

/// Bernoulli number B_n for n <= 30, exact (B_1 = -1/2).
Rational bernoulli_exact(int n);

}  // namespace zetafred

#include "zetafred/rational.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace zetafred {
namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) {
    throw std::overflow_error("rational arithmetic overflow");
  }
  return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational make(i128 n, i128 d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return Rational(narrow(n), narrow(d));
}

}  // namespace

Rational::Rational(std::int64_t n) : num_(n), den_(1) {}

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  if (d < 0) {
    if (n == INT64_MIN || d == INT64_MIN) {
      throw std::overflow_error("rational arithmetic overflow");
    }
    n = -n;
    d = -d;
  }
  std::int64_t g = std::gcd(n, d);
  num_ = g > 1 ? n / g : n;
  den_ = g > 1 ? d / g : d;
}

std::int64_t Rational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

Rational Rational::operator-() const {
  if (num_ == INT64_MIN) throw std::overflow_error("rational arithmetic overflow");
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  return *this = make(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_);
}

Rational& Rational::operator-=(const Rational& o) {
  return *this = make(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_);
}

Rational& Rational::operator*=(const Rational& o) {
  return *this = make(i128(num_) * o.num_, i128(den_) * o.den_);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("rational division by zero");
  return *this = make(i128(num_) * o.den_, i128(den_) * o.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return i128(a.num_) * b.den_ <=> i128(b.num_) * a.den_;
}

Rational Rational::parse(const std::string& text) {
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  const std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto to_int = [&](const std::string& part) {
    std::size_t pos = 0;
    long long v = std::stoll(trim(part), &pos);
    if (pos != trim(part).size()) throw std::invalid_argument("bad rational: " + text);
    return static_cast<std::int64_t>(v);
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (s.find_first_of(".eE") != std::string::npos) return from_double(std::stod(s));
    return Rational(to_int(s));
  }
  return Rational(to_int(s.substr(0, slash)), to_int(s.substr(slash + 1)));
}

Rational Rational::from_double(double x, std::int64_t max_den, double tol) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite exponent");
  // Continued fraction convergents.
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double v = x;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(v);
    if (std::fabs(a) > 9e15) break;
    auto ai = static_cast<std::int64_t>(a);
    i128 h2 = i128(ai) * h1 + h0;
    i128 k2 = i128(ai) * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    k0 = k1;
    h1 = narrow(h2);
    k1 = narrow(k2);
    if (std::fabs(double(h1) / double(k1) - x) <= tol * std::max(1.0, std::fabs(x))) {
      return Rational(h1, k1);
    }
    double frac = v - a;
    if (frac == 0.0) break;
    v = 1.0 / frac;
  }
  throw std::invalid_argument("exponent " + std::to_string(x) +
                              " has no small rational representation");
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_)
                   : std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational harmonic(int n) {
  Rational h(0);
  for (int j = 1; j <= n; ++j) h += Rational(1, j);
  return h;
}

Rational bernoulli_exact(int n) {
  static const std::pair<std::int64_t, std::int64_t> even[] = {
      {1, 1},           {1, 6},           {-1, 30},          {1, 42},
      {-1, 30},         {5, 66},          {-691, 2730},      {7, 6},
      {-3617, 510},     {43867, 798},     {-174611, 330},    {854513, 138},
      {-236364091, 2730}, {8553103, 6},   {-23749461029LL, 870},
      {8615841276005LL, 14322}};
  if (n < 0 || n > 30) throw std::out_of_range("bernoulli_exact: n outside [0, 30]");
  if (n == 1) return Rational(-1, 2);
  if (n % 2 == 1) return Rational(0);
  return Rational(even[n / 2].first, even[n / 2].second);
}

}  // namespace zetafred

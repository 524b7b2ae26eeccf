#pragma once

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <vector>

#include "zetafred/precision.hpp"

namespace zetafred {

/// Truncated Laurent series sum_{m=lo}^{top} c_m eps^m, exact up to
/// O(eps^{top+1}).
template <class R>
class LaurentSeries {
 public:
  LaurentSeries() = default;
  LaurentSeries(int lo, std::vector<Cx<R>> coeffs) : lo_(lo), c_(std::move(coeffs)) {}

  /// Constant c known up to O(eps^{top+1}).
  static LaurentSeries constant(Cx<R> c, int top) {
    if (top < 0) return LaurentSeries(0, {});
    std::vector<Cx<R>> v(top + 1, Cx<R>(0));
    v[0] = c;
    return LaurentSeries(0, std::move(v));
  }

  int lo() const { return lo_; }
  int top() const { return lo_ + static_cast<int>(c_.size()) - 1; }
  bool empty() const { return c_.empty(); }

  /// Coefficient of eps^m (zero outside the stored window below lo).
  Cx<R> operator[](int m) const {
    if (m < lo_) return Cx<R>(0);
    if (m > top()) throw std::out_of_range("Laurent coefficient beyond truncation order");
    return c_[m - lo_];
  }
  void set(int m, Cx<R> v) { c_.at(m - lo_) = v; }
  const std::vector<Cx<R>>& coeffs() const { return c_; }

  /// Index of the first nonzero coefficient (top()+1 if all vanish).
  int valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] != Cx<R>(0)) return lo_ + static_cast<int>(i);
    }
    return top() + 1;
  }

  LaurentSeries truncated(int new_top) const {
    if (new_top >= top()) return *this;
    if (new_top < lo_) return LaurentSeries(lo_, {});
    return LaurentSeries(lo_, std::vector<Cx<R>>(c_.begin(), c_.begin() + (new_top - lo_ + 1)));
  }

  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    const int lo = std::min(a.lo_, b.lo_);
    const int tp = std::min(a.top(), b.top());
    std::vector<Cx<R>> v;
    for (int m = lo; m <= tp; ++m) v.push_back(a[m] + b[m]);
    return LaurentSeries(lo, std::move(v));
  }

  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    const int lo = a.lo_ + b.lo_;
    const int tp = std::min(a.top() + b.lo_, b.top() + a.lo_);
    std::vector<Cx<R>> v;
    for (int m = lo; m <= tp; ++m) {
      Cx<R> s(0);
      for (int i = a.lo_; i <= a.top(); ++i) {
        const int j = m - i;
        if (j < b.lo_ || j > b.top()) continue;
        s += a[i] * b[j];
      }
      v.push_back(s);
    }
    return LaurentSeries(lo, std::move(v));
  }

  friend LaurentSeries operator*(Cx<R> s, LaurentSeries a) {
    for (auto& c : a.c_) c *= s;
    return a;
  }

  /// Multiplicative inverse; requires a nonzero known leading coefficient.
  LaurentSeries reciprocal() const {
    const int v = valuation();
    if (v > top()) throw std::domain_error("reciprocal of a series with no known nonzero term");
    const int n = top() - v;  // number of known orders past the leading one
    std::vector<Cx<R>> a(n + 1), b(n + 1);
    for (int i = 0; i <= n; ++i) a[i] = (*this)[v + i];
    b[0] = Cx<R>(1) / a[0];
    for (int m = 1; m <= n; ++m) {
      Cx<R> s(0);
      for (int i = 1; i <= m; ++i) s += a[i] * b[m - i];
      b[m] = -s / a[0];
    }
    return LaurentSeries(-v, std::move(b));
  }

  /// exp of a power series (lo >= 0).
  LaurentSeries exp() const {
    if (lo_ < 0) throw std::domain_error("exp of a series with a pole");
    const int n = top();
    std::vector<Cx<R>> a(n + 1, Cx<R>(0)), e(n + 1, Cx<R>(0));
    for (int i = 0; i <= n; ++i) a[i] = (*this)[i];
    if (n < 0) return LaurentSeries(0, {});
    e[0] = std::exp(a[0]);
    // e' = a' e  =>  m e_m = sum_{i=1}^m i a_i e_{m-i}
    for (int m = 1; m <= n; ++m) {
      Cx<R> s(0);
      for (int i = 1; i <= m; ++i) s += R(i) * a[i] * e[m - i];
      e[m] = s / R(m);
    }
    return LaurentSeries(0, std::move(e));
  }

 private:
  int lo_ = 0;
  std::vector<Cx<R>> c_;
};

/// Laurent data of a meromorphic function at a point: coefficients of
/// (s - location)^m for m in [lo, top].  Res^m in the usual notation is the
/// coefficient of (s - location)^{-m}; the finite part is the m = 0 entry.
template <class R>
struct BasicLaurentData {
  Cx<R> location;
  LaurentSeries<R> series;

  int pole_order() const { return std::max(0, -series.valuation()); }
  /// Coefficient of (s - location)^{-m}.
  Cx<R> res(int m) const { return series[-m]; }
  Cx<R> residue() const { return res(1); }
  Cx<R> finite_part() const { return series[0]; }
};

using LaurentData = BasicLaurentData<double>;

}  // namespace zetafred

#pragma once

#include <complex>
#include <limits>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/float128.hpp>

namespace zetafred {

/// 113-bit binary floating point (about 34 decimal digits).
using Extended = boost::multiprecision::float128;

template <class R>
using Cx = std::complex<R>;

enum class Precision { Double, Extended };

/// Default absolute tolerance used by the numeric kernels for a given real type.
template <class R>
constexpr double default_tolerance() {
  if constexpr (std::is_same_v<R, double>) {
    return 1e-13;
  } else {
    return 1e-28;
  }
}

template <class R>
inline R pi() {
  if constexpr (std::is_same_v<R, double>) {
    return 3.141592653589793238462643383279502884;
  } else {
    return boost::math::constants::pi<R>();
  }
}

template <class R>
inline R euler_gamma() {
  if constexpr (std::is_same_v<R, double>) {
    return 0.577215664901532860606512090082402431;
  } else {
    return boost::math::constants::euler<R>();
  }
}

template <class R>
inline R machine_eps() {
  return std::numeric_limits<R>::epsilon();
}

template <class To, class From>
inline Cx<To> cx_cast(const Cx<From>& z) {
  return Cx<To>(static_cast<To>(z.real()), static_cast<To>(z.imag()));
}

}  // namespace zetafred

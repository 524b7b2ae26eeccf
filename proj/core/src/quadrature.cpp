#include "zetafred/quadrature.hpp"

namespace zetafred::quad {

// Boost declares integrate() non-const for some overloads, so each thread
// keeps its own rule instances.

template <class R>
boost::math::quadrature::tanh_sinh<R>& tanh_sinh_rule() {
  thread_local boost::math::quadrature::tanh_sinh<R> rule(std::is_same_v<R, double> ? 15 : 20);
  return rule;
}

template <class R>
boost::math::quadrature::exp_sinh<R>& exp_sinh_rule() {
  thread_local boost::math::quadrature::exp_sinh<R> rule(std::is_same_v<R, double> ? 9 : 12);
  return rule;
}

template boost::math::quadrature::tanh_sinh<double>& tanh_sinh_rule<double>();
template boost::math::quadrature::tanh_sinh<Extended>& tanh_sinh_rule<Extended>();
template boost::math::quadrature::exp_sinh<double>& exp_sinh_rule<double>();
template boost::math::quadrature::exp_sinh<Extended>& exp_sinh_rule<Extended>();

}  // namespace zetafred::quad

#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <string>

namespace lenstheta {

// 50 decimal digits; every real-valued quantity targets 1e-12 absolute, so the
// working precision leaves a wide margin for cancellation.
using Real = boost::multiprecision::cpp_bin_float_50;

struct HighPrecisionReal {
  Real value = 0;
  double err = 0.0;  // bound on |value - exact|

  double to_double() const { return static_cast<double>(value); }
};

inline HighPrecisionReal operator+(const HighPrecisionReal& a, const HighPrecisionReal& b) {
  return {a.value + b.value, a.err + b.err};
}

std::string to_string(const Real& x, int digits = 17);

}  // namespace lenstheta

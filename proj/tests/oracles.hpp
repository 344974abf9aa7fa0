#pragma once
// Independent reference computations for the test suites. Nothing here calls
// into the library's own algorithms.

#include "landau/numeric_types.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstdint>

namespace oracle {

using landau::Integer;
using landau::Rational;
using Float50 = boost::multiprecision::cpp_bin_float_50;

inline Integer factorial(unsigned n) {
  Integer f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

/// C(2k,k)^2 / 16^k from factorials.
inline Rational landau_term(unsigned k) {
  const Integer binom = factorial(2 * k) / (factorial(k) * factorial(k));
  return Rational(binom * binom, boost::multiprecision::pow(Integer(16), k));
}

inline Rational landau_constant(unsigned n) {
  Rational sum = 0;
  for (unsigned k = 0; k <= n; ++k) sum += landau_term(k);
  return sum;
}

/// B_m(2 cos t) sin t = sin((m+1) t) + 3 sin((m-1) t) for m >= 1.  The smallest
/// positive root in x = 2 cos t is the zero with the largest t below pi/2.
inline Float50 boubaker_min_root_trig(unsigned m) {
  using boost::multiprecision::sin;
  const Float50 half_pi = boost::math::constants::half_pi<Float50>();
  auto f = [m](const Float50& t) { return sin((m + 1) * t) + 3 * sin((m - 1) * t); };
  const Float50 step = half_pi / (64 * m);
  Float50 hi = half_pi;
  Float50 lo = hi - step;
  const bool sign_hi = f(hi) > 0;
  while ((f(lo) > 0) == sign_hi) {
    hi = lo;
    lo -= step;
  }
  for (int i = 0; i < 200; ++i) {
    const Float50 mid = (lo + hi) / 2;
    if ((f(mid) > 0) == sign_hi) hi = mid; else lo = mid;
  }
  return 2 * boost::multiprecision::cos((lo + hi) / 2);
}

/// Euler-Maclaurin: gamma = H_N - ln N - 1/(2N) + sum B_2k / (2k N^2k).
inline Float50 euler_gamma_series() {
  const unsigned n = 1000;
  Float50 h = 0;
  for (unsigned k = 1; k <= n; ++k) h += Float50(1) / k;
  const Float50 N = n;
  const Float50 N2 = N * N;
  return h - boost::multiprecision::log(N) - 1 / (2 * N) + 1 / (12 * N2) -
         1 / (120 * N2 * N2) + 1 / (252 * N2 * N2 * N2) - 1 / (240 * N2 * N2 * N2 * N2) +
         1 / (132 * N2 * N2 * N2 * N2 * N2);
}

inline double rational_to_double(const Rational& q) {
  const Float50 num(boost::multiprecision::numerator(q).str());
  const Float50 den(boost::multiprecision::denominator(q).str());
  return static_cast<double>(num / den);
}

}  // namespace oracle

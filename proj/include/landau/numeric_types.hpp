#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace landau {

using Integer = boost::multiprecision::mpz_int;
/// Canonical fraction: GMP keeps gcd(|num|, den) = 1 and den > 0 after every operation.
using Rational = boost::multiprecision::mpq_rational;
/// Variable-precision binary float.
///
/// Every HighReal carries its own precision and arithmetic results inherit the
/// precision of their operands.  The process-wide MPFR default is never
/// consulted, so values must be created through the `to_real` helpers (or from
/// another HighReal) to get a well-defined precision.
using HighReal = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultWorkingDigits = 30;

HighReal to_real(const Integer& value, unsigned digits);
HighReal to_real(const Rational& value, unsigned digits);
HighReal to_real(double value, unsigned digits);
HighReal to_real(long long value, unsigned digits);

/// Correctly rounded conversion of an exact fraction to binary64.
double to_double(const Rational& value);
double to_double(const HighReal& value);

HighReal real_pi(unsigned digits);
HighReal real_euler_gamma(unsigned digits);
HighReal real_log(const HighReal& x);

/// Decimal digits carried by a HighReal.
unsigned digits_of(const HighReal& x);

/// Scientific rendering with `significant` significant digits.
std::string to_scientific(const HighReal& x, unsigned significant);
/// Fixed rendering with `decimals` fractional digits.
std::string to_fixed(const HighReal& x, unsigned decimals);

}  // namespace landau

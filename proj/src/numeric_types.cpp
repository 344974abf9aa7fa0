#include "landau/numeric_types.hpp"

#include <mpfr.h>

#include <sstream>

namespace landau {

namespace {

// MPFR precision in bits for a decimal digit count, with a small guard.
mpfr_prec_t bits_for(unsigned digits) {
  return static_cast<mpfr_prec_t>(digits * 3.3219280948873623) + 8;
}

HighReal blank(unsigned digits) {
  HighReal x(0, digits);
  mpfr_set_prec(x.backend().data(), bits_for(digits));
  mpfr_set_zero(x.backend().data(), 1);
  return x;
}

}  // namespace

HighReal to_real(const Integer& value, unsigned digits) {
  HighReal x = blank(digits);
  mpfr_set_z(x.backend().data(), value.backend().data(), MPFR_RNDN);
  return x;
}

HighReal to_real(const Rational& value, unsigned digits) {
  HighReal x = blank(digits);
  mpfr_set_q(x.backend().data(), value.backend().data(), MPFR_RNDN);
  return x;
}

HighReal to_real(double value, unsigned digits) {
  HighReal x = blank(digits);
  mpfr_set_d(x.backend().data(), value, MPFR_RNDN);
  return x;
}

HighReal to_real(long long value, unsigned digits) {
  HighReal x = blank(digits);
  mpfr_set_si(x.backend().data(), static_cast<long>(value), MPFR_RNDN);
  return x;
}

double to_double(const Rational& value) {
  // 64 bits of headroom so the second rounding to binary64 is exact.
  HighReal x(0, 40);
  mpfr_set_prec(x.backend().data(), 128);
  mpfr_set_q(x.backend().data(), value.backend().data(), MPFR_RNDN);
  return mpfr_get_d(x.backend().data(), MPFR_RNDN);
}

double to_double(const HighReal& value) {
  return mpfr_get_d(value.backend().data(), MPFR_RNDN);
}

HighReal real_pi(unsigned digits) {
  HighReal x = blank(digits);
  mpfr_const_pi(x.backend().data(), MPFR_RNDN);
  return x;
}

HighReal real_euler_gamma(unsigned digits) {
  HighReal x = blank(digits);
  mpfr_const_euler(x.backend().data(), MPFR_RNDN);
  return x;
}

HighReal real_log(const HighReal& x) {
  HighReal y = x;
  mpfr_log(y.backend().data(), x.backend().data(), MPFR_RNDN);
  return y;
}

unsigned digits_of(const HighReal& x) {
  return static_cast<unsigned>(mpfr_get_prec(x.backend().data()) * 0.30102999566398120);
}

std::string to_scientific(const HighReal& x, unsigned significant) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(significant > 0 ? significant - 1 : 0) << x;
  return os.str();
}

std::string to_fixed(const HighReal& x, unsigned decimals) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(decimals) << x;
  return os.str();
}

}  // namespace landau

#include "landau/exact_landau.hpp"

#include "landau/errors.hpp"

#include <fmt/format.h>

#include <utility>

namespace landau {

namespace {

// t_k from t_{k-1}
void advance_term(Rational& t, std::uint64_t k) {
  const Rational ratio(Integer(2 * k - 1), Integer(2 * k));
  t *= ratio * ratio;
}

}  // namespace

Rational landau_term(std::uint64_t k) {
  Rational t = 1;
  for (std::uint64_t j = 1; j <= k; ++j) advance_term(t, j);
  return t;
}

Rational landau_constant(std::uint64_t n) {
  Rational t = 1;
  Rational sum = 1;
  for (std::uint64_t k = 1; k <= n; ++k) {
    advance_term(t, k);
    sum += t;
  }
  return sum;
}

LandauSequence::LandauSequence(std::vector<Rational> values) : values_(std::move(values)) {}

LandauSequence landau_sequence(std::uint64_t n_max, std::uint64_t cap) {
  if (n_max > cap) {
    throw ResourceLimitError(
        fmt::format("landau_sequence: n_max {} exceeds the cap {}", n_max, cap));
  }
  std::vector<Rational> values;
  values.reserve(static_cast<std::size_t>(n_max) + 1);
  Rational t = 1;
  values.emplace_back(1);
  for (std::uint64_t k = 1; k <= n_max; ++k) {
    advance_term(t, k);
    values.push_back(values.back() + t);
  }
  return LandauSequence(std::move(values));
}

std::string to_decimal(const Rational& x, unsigned digits) {
  if (digits == 0) throw DomainError("to_decimal: digits must be >= 1");

  Integer num = boost::multiprecision::numerator(x);
  const Integer den = boost::multiprecision::denominator(x);
  const bool negative = num < 0;
  if (negative) num = -num;

  num *= boost::multiprecision::pow(Integer(10), digits);
  Integer q = num / den;
  const Integer twice_rem = 2 * (num % den);
  if (twice_rem > den || (twice_rem == den && bit_test(q, 0))) ++q;

  std::string body = q.str();
  if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
  body.insert(body.size() - digits, 1, '.');
  if (negative && q != 0) body.insert(0, 1, '-');
  return body;
}

}  // namespace landau

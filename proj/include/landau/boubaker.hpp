#pragma once

#include "landau/numeric_types.hpp"

#include <deque>
#include <mutex>
#include <string>
#include <vector>

namespace landau {

/// Dense polynomial with arbitrary-precision integer coefficients; index = power.
/// The zero polynomial has no coefficients; otherwise the leading one is nonzero.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Integer> coefficients);

  const std::vector<Integer>& coefficients() const { return coefficients_; }
  bool is_zero() const { return coefficients_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  /// Coefficient of x^power, zero past the degree.
  Integer coefficient(std::size_t power) const;

  /// x * p
  IntPolynomial times_x() const;

  friend IntPolynomial operator+(const IntPolynomial& lhs, const IntPolynomial& rhs);
  friend IntPolynomial operator-(const IntPolynomial& lhs, const IntPolynomial& rhs);
  friend bool operator==(const IntPolynomial& lhs, const IntPolynomial& rhs) = default;

  /// "c0,c1,...,cd"; "0" for the zero polynomial.
  std::string to_string() const;

 private:
  void trim();

  std::vector<Integer> coefficients_;
};

IntPolynomial derivative(const IntPolynomial& p);

/// Horner evaluation.  HighReal results carry the precision of `x`.
Integer eval_poly(const IntPolynomial& p, const Integer& x);
Rational eval_poly(const IntPolynomial& p, const Rational& x);
HighReal eval_poly(const IntPolynomial& p, const HighReal& x);

/// Exact integral over [a, b] through the antiderivative; requires a <= b.
Rational definite_integral(const IntPolynomial& p, const Rational& a, const Rational& b);

/// int_0^1 x^power p(scale * x) dx = sum_j c_j scale^j / (j + power + 1).
/// Exact in the coefficients; only `scale` is inexact.
HighReal scaled_moment(const IntPolynomial& p, const HighReal& scale, unsigned power);

/// Extra decimal digits needed to absorb cancellation when evaluating p on
/// [0, 1]: ceil(log10(sum |c_j|)).
unsigned cancellation_digits(const IntPolynomial& p);

inline constexpr unsigned kDefaultMaxOrder = 400;

/// Memoized Boubaker family B_0 = 1, B_1 = x, B_2 = x^2 + 2,
/// B_m = x B_{m-1} - B_{m-2}.  References stay valid for the family's lifetime.
class BoubakerFamily {
 public:
  explicit BoubakerFamily(unsigned max_order = kDefaultMaxOrder);

  /// Throws ResourceLimitError above max_order().
  const IntPolynomial& get(unsigned m);
  unsigned max_order() const { return max_order_; }

 private:
  unsigned max_order_;
  std::mutex mutex_;
  std::deque<IntPolynomial> cache_;
};

/// B_m from the process-wide family (max order kDefaultMaxOrder).
const IntPolynomial& boubaker_poly(unsigned m);

inline constexpr double kDefaultRootTol = 1e-14;

struct RootSearchOptions {
  /// Base working precision; cancellation_digits(B_m) are added on top.
  unsigned digits = kDefaultWorkingDigits;
  /// The forward scan gives up past this abscissa.
  double scan_bound = 10.0;
};

struct RootRecord {
  unsigned order = 0;
  HighReal root;
  /// |B_m(root)|
  HighReal residual;
  HighReal lo;
  HighReal hi;
};

/// Smallest positive root of B_m: forward scan from 0+, bisection down to a
/// bracket of width <= tol, then Newton polishing inside the bracket.
/// Throws NoRootError when the scan reaches options.scan_bound without a sign change.
RootRecord minimal_positive_root(unsigned m, double tol = kDefaultRootTol,
                                 const RootSearchOptions& options = {});

/// sum_{k=1..N} B_{4k}(0), exactly.
Integer zero_sum_property(unsigned n_terms);
/// sum_{k=1..N} B'_{4k}(0), exactly.
Integer derivative_sum_at_zero(unsigned n_terms);

/// B'_{4k}(r_k) at the minimal positive root r_k of B_{4k}.
HighReal derivative_at_root(unsigned k, double tol = kDefaultRootTol,
                            const RootSearchOptions& options = {});

}  // namespace landau

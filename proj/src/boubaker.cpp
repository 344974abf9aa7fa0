#include "landau/boubaker.hpp"

#include "landau/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <utility>

namespace landau {

// ---------------------------------------------------------------------------
// IntPolynomial

IntPolynomial::IntPolynomial(std::vector<Integer> coefficients)
    : coefficients_(std::move(coefficients)) {
  trim();
}

void IntPolynomial::trim() {
  while (!coefficients_.empty() && coefficients_.back() == 0) coefficients_.pop_back();
}

Integer IntPolynomial::coefficient(std::size_t power) const {
  return power < coefficients_.size() ? coefficients_[power] : Integer(0);
}

IntPolynomial IntPolynomial::times_x() const {
  if (is_zero()) return {};
  std::vector<Integer> c;
  c.reserve(coefficients_.size() + 1);
  c.emplace_back(0);
  c.insert(c.end(), coefficients_.begin(), coefficients_.end());
  return IntPolynomial(std::move(c));
}

IntPolynomial operator+(const IntPolynomial& lhs, const IntPolynomial& rhs) {
  const std::size_t n = std::max(lhs.coefficients_.size(), rhs.coefficients_.size());
  std::vector<Integer> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = lhs.coefficient(i) + rhs.coefficient(i);
  return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& lhs, const IntPolynomial& rhs) {
  const std::size_t n = std::max(lhs.coefficients_.size(), rhs.coefficients_.size());
  std::vector<Integer> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = lhs.coefficient(i) - rhs.coefficient(i);
  return IntPolynomial(std::move(c));
}

std::string IntPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (i) out += ',';
    out += coefficients_[i].str();
  }
  return out;
}

IntPolynomial derivative(const IntPolynomial& p) {
  const auto& c = p.coefficients();
  if (c.size() <= 1) return {};
  std::vector<Integer> d(c.size() - 1);
  for (std::size_t j = 1; j < c.size(); ++j) d[j - 1] = c[j] * static_cast<unsigned long>(j);
  return IntPolynomial(std::move(d));
}

Integer eval_poly(const IntPolynomial& p, const Integer& x) {
  Integer acc = 0;
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational eval_poly(const IntPolynomial& p, const Rational& x) {
  Rational acc = 0;
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

HighReal eval_poly(const IntPolynomial& p, const HighReal& x) {
  const unsigned digits = digits_of(x);
  HighReal acc = to_real(0LL, digits);
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + to_real(*it, digits);
  return acc;
}

Rational definite_integral(const IntPolynomial& p, const Rational& a, const Rational& b) {
  if (a > b) throw DomainError("definite_integral: requires a <= b");
  // Antiderivative P(x) = sum c_j x^{j+1}/(j+1), evaluated by Horner at both ends.
  const auto& c = p.coefficients();
  auto antiderivative = [&](const Rational& x) -> Rational {
    Rational acc = 0;
    for (std::size_t j = c.size(); j-- > 0;) {
      acc = acc * x + Rational(c[j], Integer(j + 1));
    }
    return acc * x;
  };
  return antiderivative(b) - antiderivative(a);
}

HighReal scaled_moment(const IntPolynomial& p, const HighReal& scale, unsigned power) {
  const unsigned digits = digits_of(scale);
  HighReal acc = to_real(0LL, digits);
  const auto& c = p.coefficients();
  for (std::size_t j = c.size(); j-- > 0;) {
    acc = acc * scale + to_real(Rational(c[j], Integer(j + power + 1)), digits);
  }
  return acc;
}

unsigned cancellation_digits(const IntPolynomial& p) {
  Integer total = 0;
  for (const auto& c : p.coefficients()) total += abs(c);
  return total == 0 ? 0u : static_cast<unsigned>(total.str().size());
}

// ---------------------------------------------------------------------------
// Boubaker family

BoubakerFamily::BoubakerFamily(unsigned max_order) : max_order_(max_order) {}

const IntPolynomial& BoubakerFamily::get(unsigned m) {
  if (m > max_order_) {
    throw ResourceLimitError(
        fmt::format("Boubaker order {} exceeds the configured maximum {}", m, max_order_));
  }
  std::lock_guard lock(mutex_);
  if (cache_.empty()) {
    cache_.emplace_back(std::vector<Integer>{1});
    cache_.emplace_back(std::vector<Integer>{0, 1});
    cache_.emplace_back(std::vector<Integer>{2, 0, 1});
  }
  while (cache_.size() <= m) {
    const std::size_t k = cache_.size();
    cache_.push_back(cache_[k - 1].times_x() - cache_[k - 2]);
  }
  return cache_[m];
}

const IntPolynomial& boubaker_poly(unsigned m) {
  static BoubakerFamily family;
  return family.get(m);
}

// ---------------------------------------------------------------------------
// Root isolation

namespace {

int sign(const HighReal& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Sign of p on (0, eps) for small eps: the sign of its lowest nonzero coefficient.
int sign_right_of_zero(const IntPolynomial& p) {
  for (const auto& c : p.coefficients()) {
    if (c != 0) return c > 0 ? 1 : -1;
  }
  return 0;
}

// Coefficients converted once so the scan does not reconvert on every call.
class RealPolynomial {
 public:
  RealPolynomial(const IntPolynomial& p, unsigned digits) : digits_(digits) {
    coefficients_.reserve(p.coefficients().size());
    for (const auto& c : p.coefficients()) coefficients_.push_back(to_real(c, digits));
  }

  HighReal operator()(const HighReal& x) const {
    HighReal acc = to_real(0LL, digits_);
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
      acc = acc * x + *it;
    }
    return acc;
  }

 private:
  unsigned digits_;
  std::vector<HighReal> coefficients_;
};

}  // namespace

RootRecord minimal_positive_root(unsigned m, double tol, const RootSearchOptions& options) {
  if (m < 3) throw DomainError("minimal_positive_root: order must be >= 3");
  if (!(tol > 0.0)) throw DomainError("minimal_positive_root: tolerance must be positive");

  const IntPolynomial& poly = boubaker_poly(m);
  const IntPolynomial dpoly = derivative(poly);
  const unsigned digits = std::max(options.digits, 15u) + cancellation_digits(poly) + 5;
  const RealPolynomial p(poly, digits);
  const RealPolynomial dp(dpoly, digits);

  const HighReal width_tol = to_real(tol, digits);
  const HighReal bound = to_real(options.scan_bound, digits);
  // Consecutive positive roots sit roughly 2*pi/m apart, so a step of 1/(8m)
  // leaves at most one extremum per interval.
  const HighReal step = to_real(1.0 / (8.0 * m), digits);
  const int base_sign = sign_right_of_zero(poly);

  HighReal x = to_real(0LL, digits);
  int slope = sign_right_of_zero(dpoly);
  HighReal lo, hi;
  bool bracketed = false;
  while (x < bound) {
    HighReal x1 = x + step;
    if (x1 > bound) x1 = bound;
    const int s1 = sign(p(x1));
    if (s1 != base_sign) {
      lo = x;
      hi = x1;
      if (s1 == 0) {
        // Landed on a root: widen the right end until the sign flips.
        HighReal pad = step / 1024;
        while (sign(p(x1 + pad)) == 0) pad *= 2;
        hi = x1 + pad;
      }
      bracketed = true;
      break;
    }
    // Same sign at both ends; a pair of roots can only hide around an extremum.
    const int slope1 = sign(dp(x1));
    if (slope != 0 && slope1 != 0 && slope != slope1) {
      HighReal a = x;
      HighReal b = x1;
      for (int i = 0; i < 200 && b - a > width_tol; ++i) {
        HighReal mid = (a + b) / 2;
        if (sign(dp(mid)) == slope) a = mid; else b = mid;
      }
      HighReal extremum = (a + b) / 2;
      if (sign(p(extremum)) != base_sign) {
        lo = x;
        hi = extremum;
        bracketed = true;
        break;
      }
    }
    x = x1;
    slope = slope1;
  }
  if (!bracketed) {
    throw NoRootError(fmt::format("B_{} has no sign change on (0, {}]", m, options.scan_bound));
  }

  // Bisection, stopping at the tolerance or at the working-precision floor.
  const int lo_sign = sign(p(lo)) == 0 ? base_sign : sign(p(lo));
  HighReal root;
  bool exact = false;
  const int max_bisections = static_cast<int>(digits * 3.33) + 64;
  for (int i = 0; i < max_bisections && hi - lo > width_tol; ++i) {
    HighReal mid = (lo + hi) / 2;
    const int s = sign(p(mid));
    if (s == 0) {
      root = mid;
      exact = true;
      break;
    }
    if (s == lo_sign) lo = mid; else hi = mid;
  }

  if (!exact) {
    root = (lo + hi) / 2;
    const HighReal step_floor = to_real(10.0, digits) * abs(root) *
                                boost::multiprecision::pow(to_real(10LL, digits),
                                                           -static_cast<int>(digits));
    for (int i = 0; i < 100; ++i) {
      const HighReal f = p(root);
      if (f == 0) break;
      const HighReal d = dp(root);
      if (d == 0) break;
      HighReal next = root - f / d;
      if (next <= lo || next >= hi) break;
      const bool small = abs(next - root) <= step_floor;
      if (abs(p(next)) > abs(f)) break;
      root = next;
      if (small) break;
    }
  }

  RootRecord record;
  record.order = m;
  record.residual = abs(p(root));
  record.root = std::move(root);
  record.lo = std::move(lo);
  record.hi = std::move(hi);
  if (record.residual > width_tol) {
    throw NoRootError(fmt::format("B_{}: polished residual {} exceeds tolerance {}", m,
                                  to_scientific(record.residual, 6), tol));
  }
  return record;
}

Integer zero_sum_property(unsigned n_terms) {
  Integer total = 0;
  for (unsigned k = 1; k <= n_terms; ++k) total += boubaker_poly(4 * k).coefficient(0);
  return total;
}

Integer derivative_sum_at_zero(unsigned n_terms) {
  Integer total = 0;
  // B'(0) is the linear coefficient.
  for (unsigned k = 1; k <= n_terms; ++k) total += boubaker_poly(4 * k).coefficient(1);
  return total;
}

HighReal derivative_at_root(unsigned k, double tol, const RootSearchOptions& options) {
  if (k == 0) throw DomainError("derivative_at_root: k must be >= 1");
  const RootRecord record = minimal_positive_root(4 * k, tol, options);
  return eval_poly(derivative(boubaker_poly(4 * k)), record.root);
}

}  // namespace landau

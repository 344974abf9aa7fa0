#pragma once

#include "landau/numeric_types.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace landau {

inline constexpr std::uint64_t kDefaultSequenceCap = 100000;

/// k-th summand ((2k-1)!!/(2k)!!)^2 = C(2k,k)^2 / 16^k, built from the ratio
/// recurrence t_k = t_{k-1} ((2k-1)/(2k))^2.
Rational landau_term(std::uint64_t k);

/// G_n = sum_{k=0..n} landau_term(k).
Rational landau_constant(std::uint64_t n);

/// Prefix sums G_0..G_{n_max}. Immutable once built.
class LandauSequence {
 public:
  explicit LandauSequence(std::vector<Rational> values);

  const Rational& operator[](std::size_t n) const { return values_[n]; }
  std::size_t size() const { return values_.size(); }
  std::span<const Rational> values() const { return values_; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

 private:
  std::vector<Rational> values_;
};

/// Throws ResourceLimitError when n_max > cap.
LandauSequence landau_sequence(std::uint64_t n_max,
                               std::uint64_t cap = kDefaultSequenceCap);

/// Round-half-even decimal rendering with exactly `digits` fractional digits.
std::string to_decimal(const Rational& x, unsigned digits);

}  // namespace landau

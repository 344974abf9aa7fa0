#pragma once

#include <cstdint>
#include <string>

namespace landau {

/// Offset of the constant-offset logarithmic variant, calibrated as the mean of
/// value - ln(n + 3/4)/pi over the 20 transcribed "Brutman" rows.
inline constexpr double kBrutmanDefaultOffset = 1.06627000;

/// (a, b, c) of G_n ~ ln(n + a)/pi + (gamma + ln 16)/pi - b/(n + c).
struct FitParams {
  double a = 0.75;
  double b = 0.0;
  double c = 1.0;

  friend bool operator==(const FitParams&, const FitParams&) = default;
};

/// (ln(n + 3/4) + gamma + ln 16) / pi
double falaleev(std::uint64_t n);

/// ln(n + 3/4)/pi + offset
double brutman(std::uint64_t n, double offset = kBrutmanDefaultOffset);

/// Three-parameter form. Throws DomainError unless n + a > 0 and n + c != 0.
double fitted_form(std::uint64_t n, double a, double b, double c);
inline double fitted_form(std::uint64_t n, const FitParams& p) {
  return fitted_form(n, p.a, p.b, p.c);
}

class ApproxSpec {
 public:
  enum class Kind { falaleev, brutman, fitted };

  static ApproxSpec make_falaleev();
  static ApproxSpec make_brutman(double offset = kBrutmanDefaultOffset);
  /// Throws DomainError if the parameters are not evaluable at n = 0.
  static ApproxSpec make_fitted(const FitParams& params);

  Kind kind() const { return kind_; }
  double offset() const { return offset_; }
  const FitParams& params() const { return params_; }

  std::string label() const;
  double evaluate(std::uint64_t n) const;

 private:
  ApproxSpec(Kind kind, double offset, FitParams params)
      : kind_(kind), offset_(offset), params_(params) {}

  Kind kind_;
  double offset_;
  FitParams params_;
};

}  // namespace landau

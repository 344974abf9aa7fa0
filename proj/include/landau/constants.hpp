#pragma once

#include "landau/numeric_types.hpp"

namespace landau {

/// gamma, ln 16 and pi rounded from a high-precision evaluation.
struct MathConstants {
  double euler_gamma;
  double ln16;
  double pi;

  /// (gamma + ln 16) / pi, the additive constant of the logarithmic law.
  double log_law_offset() const;

  static const MathConstants& standard();
};

struct HighMathConstants {
  HighReal euler_gamma;
  HighReal ln16;
  HighReal pi;

  HighReal log_law_offset() const;
};

HighMathConstants high_math_constants(unsigned digits);

}  // namespace landau

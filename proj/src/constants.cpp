#include "landau/constants.hpp"

namespace landau {

double MathConstants::log_law_offset() const { return (euler_gamma + ln16) / pi; }

const MathConstants& MathConstants::standard() {
  static const MathConstants constants = [] {
    const HighMathConstants high = high_math_constants(40);
    return MathConstants{to_double(high.euler_gamma), to_double(high.ln16),
                         to_double(high.pi)};
  }();
  return constants;
}

HighReal HighMathConstants::log_law_offset() const { return (euler_gamma + ln16) / pi; }

HighMathConstants high_math_constants(unsigned digits) {
  return HighMathConstants{real_euler_gamma(digits), real_log(to_real(16LL, digits)),
                           real_pi(digits)};
}

}  // namespace landau

#include "landau/approximations.hpp"

#include "landau/constants.hpp"
#include "landau/errors.hpp"

#include <fmt/format.h>

#include <cmath>

namespace landau {

double falaleev(std::uint64_t n) {
  const MathConstants& k = MathConstants::standard();
  return (std::log(static_cast<double>(n) + 0.75) + k.euler_gamma + k.ln16) / k.pi;
}

double brutman(std::uint64_t n, double offset) {
  return std::log(static_cast<double>(n) + 0.75) / MathConstants::standard().pi + offset;
}

double fitted_form(std::uint64_t n, double a, double b, double c) {
  const double x = static_cast<double>(n);
  if (!(x + a > 0.0) || x + c == 0.0) {
    throw DomainError(fmt::format("fitted_form: (a, c) = ({}, {}) not evaluable at n = {}", a, c, n));
  }
  // Summed in the same order as falaleev() so b = 0, a = 3/4 reproduces it bit for bit.
  const MathConstants& k = MathConstants::standard();
  return (std::log(x + a) + k.euler_gamma + k.ln16) / k.pi - b / (x + c);
}

ApproxSpec ApproxSpec::make_falaleev() { return {Kind::falaleev, 0.0, FitParams{}}; }

ApproxSpec ApproxSpec::make_brutman(double offset) { return {Kind::brutman, offset, FitParams{}}; }

ApproxSpec ApproxSpec::make_fitted(const FitParams& params) {
  if (!(params.a > 0.0) || params.c == 0.0) {
    throw DomainError(fmt::format("fitted parameters ({}, {}, {}) not evaluable at n = 0",
                                  params.a, params.b, params.c));
  }
  return {Kind::fitted, 0.0, params};
}

std::string ApproxSpec::label() const {
  switch (kind_) {
    case Kind::falaleev: return "falaleev";
    case Kind::brutman: return "brutman";
    case Kind::fitted: return "fitted";
  }
  return "unknown";
}

double ApproxSpec::evaluate(std::uint64_t n) const {
  switch (kind_) {
    case Kind::falaleev: return falaleev(n);
    case Kind::brutman: return brutman(n, offset_);
    case Kind::fitted: return fitted_form(n, params_);
  }
  return 0.0;
}

}  // namespace landau

#include "landau/bpes_fit.hpp"

#include "landau/constants.hpp"
#include "landau/errors.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace landau {

namespace {

HighReal dot(std::span<const HighReal> u, std::span<const HighReal> v, unsigned digits) {
  HighReal acc = to_real(0LL, digits);
  for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
  return acc;
}

void require_length(std::span<const HighReal> v, unsigned n0, const char* what) {
  if (v.size() != n0) {
    throw DomainError(fmt::format("{}: expected {} coefficients, got {}", what, n0, v.size()));
  }
}

// Root of w^4 - w^3 - d2 on [lo, hi], given a sign change there.
HighReal quartic_root(const HighReal& d2, HighReal lo, HighReal hi, unsigned digits) {
  auto g = [&](const HighReal& w) -> HighReal { return w * w * w * (w - 1) - d2; };
  const bool rising = g(lo) < 0;
  const int iterations = static_cast<int>(digits * 3.33) + 16;
  for (int i = 0; i < iterations; ++i) {
    HighReal mid = (lo + hi) / 2;
    if ((g(mid) < 0) == rising) lo = mid; else hi = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace

BpesCoefficients basis_integrals(unsigned n0, const BpesOptions& options) {
  if (n0 == 0) throw DomainError("basis_integrals: n0 must be >= 1");

  BpesCoefficients coeffs;
  coeffs.n0 = n0;
  coeffs.digits = options.digits;
  const HighReal pi = real_pi(options.digits + 10);
  for (unsigned k = 1; k <= n0; ++k) {
    const RootRecord root =
        minimal_positive_root(4 * k, options.root_tol, RootSearchOptions{options.digits, 10.0});
    const IntPolynomial& b = boubaker_poly(4 * k);
    // The inner sum in the displayed integrands is read per k.
    const HighReal first_moment = scaled_moment(b, root.root, 1);
    const HighReal zeroth_moment = scaled_moment(b, root.root, 0);
    HighReal lambda = first_moment * 3 / 4;
    coeffs.x.push_back(lambda / pi);
    coeffs.lambda.push_back(std::move(lambda));
    coeffs.y.push_back(zeroth_moment);
    coeffs.z.push_back(zeroth_moment);
    coeffs.roots.push_back(root.root);
  }
  return coeffs;
}

HighReal delta_a(const BpesCoefficients& basis, std::span<const HighReal> xi_a) {
  require_length(xi_a, basis.n0, "delta_a");
  const unsigned digits = basis.digits + 10;
  const HighReal offset = high_math_constants(digits).log_law_offset();
  return abs(dot(xi_a, basis.lambda, digits) / (2 * basis.n0) - offset);
}

std::vector<HighReal> solve_xi_a(const BpesCoefficients& basis) {
  const unsigned digits = basis.digits + 10;
  const HighReal norm2 = dot(basis.lambda, basis.lambda, digits);
  if (norm2 == 0) throw DegenerateBasisError("solve_xi_a: every lambda_k vanishes");
  const HighReal offset = high_math_constants(digits).log_law_offset();
  const HighReal t = 2 * basis.n0 * offset / norm2;
  std::vector<HighReal> xi;
  xi.reserve(basis.n0);
  for (const auto& l : basis.lambda) xi.push_back(t * l);
  return xi;
}

HighReal delta_prime(const BpesCoefficients& basis, std::span<const HighReal> xi_a,
                     std::span<const HighReal> xi_b, std::span<const HighReal> xi_c) {
  require_length(xi_a, basis.n0, "delta_prime");
  require_length(xi_b, basis.n0, "delta_prime");
  require_length(xi_c, basis.n0, "delta_prime");
  const unsigned digits = basis.digits + 10;
  const HighReal offset = high_math_constants(digits).log_law_offset();
  const unsigned scale = 2 * basis.n0;
  const HighReal s_a = dot(xi_a, basis.x, digits) / scale;
  const HighReal s_b = dot(xi_b, basis.y, digits) / scale;
  const HighReal s_c = dot(xi_c, basis.z, digits) / scale;
  return abs(s_a - offset + s_b * (1 - s_c));
}

XiBcSolution solve_xi_bc(const BpesCoefficients& basis, std::span<const HighReal> xi_a) {
  require_length(xi_a, basis.n0, "solve_xi_bc");
  const unsigned digits = basis.digits + 10;
  const HighReal norm_y = dot(basis.y, basis.y, digits);
  const HighReal norm_z = dot(basis.z, basis.z, digits);
  if (norm_y == 0 || norm_z == 0) {
    throw DegenerateBasisError("solve_xi_bc: every Y_k vanishes");
  }
  const HighReal offset = high_math_constants(digits).log_law_offset();
  const unsigned scale = 2 * basis.n0;

  // With u = (1/2N0) sum xi^B Y and v = (1/2N0) sum xi^C Z, the condition is
  // u (1 - v) = -d.  For fixed (u, v) the least-norm coefficient vectors are
  // proportional to Y and Z, so the joint norm is proportional to u^2 + v^2
  // (Y = Z).  Stationary points satisfy w^4 - w^3 = d^2 with w = 1 - v.
  const HighReal d = dot(xi_a, basis.x, digits) / scale - offset;
  HighReal u = to_real(0LL, digits);
  HighReal v = to_real(0LL, digits);
  if (d != 0) {
    const HighReal d2 = d * d;
    auto g = [&](const HighReal& w) -> HighReal { return w * w * w * (w - 1) - d2; };
    HighReal upper = to_real(2LL, digits);
    while (g(upper) < 0) upper *= 2;
    HighReal lower = to_real(-1LL, digits);
    while (g(lower) < 0) lower *= 2;
    const HighReal w_pos = quartic_root(d2, to_real(1LL, digits), upper, digits);
    const HighReal w_neg = quartic_root(d2, lower, to_real(0LL, digits), digits);
    auto cost = [&](const HighReal& w) -> HighReal { return d2 / (w * w) + (1 - w) * (1 - w); };
    const HighReal w = cost(w_pos) <= cost(w_neg) ? w_pos : w_neg;
    u = -d / w;
    v = 1 - w;
  }

  XiBcSolution solution;
  solution.xi_b.reserve(basis.n0);
  solution.xi_c.reserve(basis.n0);
  for (unsigned k = 0; k < basis.n0; ++k) {
    solution.xi_b.push_back(scale * u * basis.y[k] / norm_y);
    solution.xi_c.push_back(scale * v * basis.z[k] / norm_z);
  }
  solution.achieved = delta_prime(basis, xi_a, solution.xi_b, solution.xi_c);
  return solution;
}

Estimators estimators_from_xi(const BpesCoefficients& coeffs) {
  require_length(coeffs.xi_a, coeffs.n0, "estimators_from_xi");
  require_length(coeffs.xi_b, coeffs.n0, "estimators_from_xi");
  require_length(coeffs.xi_c, coeffs.n0, "estimators_from_xi");
  const unsigned digits = coeffs.digits + 10;
  const unsigned scale = 2 * coeffs.n0;
  // B_{4k}(x r_k) averaged over x in [0, 1] is exactly the Y_k integral.
  return Estimators{dot(coeffs.xi_a, coeffs.y, digits) / scale,
                    dot(coeffs.xi_b, coeffs.y, digits) / scale,
                    dot(coeffs.xi_c, coeffs.y, digits) / scale};
}

BpesRun run_bpes(unsigned n0, const FitRange& range, const BpesOptions& options) {
  if (range.lo >= range.hi) {
    throw DomainError(fmt::format("fit range [{}, {}] needs lo < hi", range.lo, range.hi));
  }
  BpesRun run;
  run.coeffs = basis_integrals(n0, options);
  run.coeffs.xi_a = solve_xi_a(run.coeffs);
  XiBcSolution bc = solve_xi_bc(run.coeffs, run.coeffs.xi_a);
  run.coeffs.xi_b = std::move(bc.xi_b);
  run.coeffs.xi_c = std::move(bc.xi_c);
  run.delta = delta_a(run.coeffs, run.coeffs.xi_a);
  run.delta_prime = std::move(bc.achieved);
  run.estimators = estimators_from_xi(run.coeffs);

  const FitParams params{to_double(run.estimators.a), to_double(run.estimators.b),
                         to_double(run.estimators.c)};
  if (!evaluable(params, range)) {
    throw DomainError(fmt::format("BPES estimators ({}, {}, {}) are not evaluable on [{}, {}]",
                                  params.a, params.b, params.c, range.lo, range.hi));
  }
  FitResult& fit = run.fit;
  fit.params = params;
  fit.range = range;
  fit.method = FitMethod::bpes;
  fit.objective = log_model_rmse(params, range);
  fit.iterations = 0;
  fit.converged = run.delta <= 1e-12 && run.delta_prime <= 1e-12;
  fit.identifiable = is_identifiable(params, range);
  fit.trace.push_back(fit.objective);
  fit.metadata.emplace_back("delta", to_double(run.delta));
  fit.metadata.emplace_back("delta_prime", to_double(run.delta_prime));
  fit.metadata.emplace_back("n0", static_cast<std::int64_t>(n0));
  return run;
}

}  // namespace landau

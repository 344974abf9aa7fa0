#pragma once

#include "landau/approximations.hpp"
#include "landau/boubaker.hpp"
#include "landau/numeric_types.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace landau {

// ---------------------------------------------------------------------------
// Residual sequence

/// omega_n = G_n - ln(n + a)/pi - (gamma + ln 16)/pi + b/(n + c).
/// Throws DomainError when n + a <= 0 or n + c == 0.
double omega(std::uint64_t n, double a, double b, double c, const Rational& g_exact);
double omega(std::uint64_t n, const FitParams& p, double target);

/// (d omega/da, d omega/db, d omega/dc)
struct OmegaGradient {
  double da;
  double db;
  double dc;
};
OmegaGradient omega_gradient(std::uint64_t n, const FitParams& p);

/// Inclusive index range [lo, hi].
struct FitRange {
  std::uint64_t lo = 0;
  std::uint64_t hi = 200;

  std::size_t size() const { return static_cast<std::size_t>(hi - lo + 1); }
};

/// True when n + a > 0 and n + c != 0 for every n in the range.
bool evaluable(const FitParams& p, const FitRange& range);

// ---------------------------------------------------------------------------
// Fit results

enum class FitMethod { direct, bpes };
std::string to_string(FitMethod method);

using MetaValue = std::variant<bool, std::int64_t, double>;

struct FitResult {
  FitParams params;
  /// RMSE of omega over the range at `params`.
  double objective = 0.0;
  unsigned iterations = 0;
  bool converged = false;
  FitRange range;
  FitMethod method = FitMethod::direct;
  /// Numerical rank of the column-normalized Jacobian at `params` is 3.
  bool identifiable = true;
  /// Objective at the seed followed by the objective after each accepted step.
  std::vector<double> trace;
  /// Extra flat fields (achieved residuals of the BPES protocol, ...).
  std::vector<std::pair<std::string, MetaValue>> metadata;
};

/// Damped Gauss-Newton.  A rejected trial step doubles the Marquardt damping
/// (halving the step once damping dominates); at most `max_halvings` rejections
/// per iteration.
struct GaussNewtonOptions {
  unsigned max_iterations = 500;
  unsigned max_halvings = 60;
  double initial_damping = 1e-3;
  double min_damping = 1e-15;
  double gradient_tol = 1e-12;
  /// Relative: |step_i| < step_tol * max(1, |p_i|).
  double step_tol = 1e-14;
};

/// Numerical rank of the column-normalized Jacobian of omega over `range` is 3.
bool is_identifiable(const FitParams& p, const FitRange& range);

/// RMSE of omega over `range` against the exact Landau constants.
double log_model_rmse(const FitParams& p, const FitRange& range);

/// Damped Gauss-Newton on sum omega_n^2 over `range` with exact G_n targets.
FitResult fit_direct(const FitRange& range, const FitParams& seed = {},
                     const GaussNewtonOptions& options = {});

/// Same model fitted to an arbitrary column indexed by n = 0, 1, ... in place
/// of the exact constants.  Requires at least 4 values.
FitResult recover_parameters(std::span<const double> column, const FitParams& seed = {},
                             const GaussNewtonOptions& options = {});

/// RMSE of the model against `column` (n = 0, 1, ...).
double column_rmse(const FitParams& p, std::span<const double> column);

// ---------------------------------------------------------------------------
// Boubaker expansion protocol

struct BpesCoefficients {
  unsigned n0 = 0;
  unsigned digits = kDefaultWorkingDigits;
  /// Minimal positive roots r_k of B_{4k}, k = 1..n0.
  std::vector<HighReal> roots;
  /// (3/4) int_0^1 x B_{4k}(x r_k) dx
  std::vector<HighReal> lambda;
  /// lambda_k / pi
  std::vector<HighReal> x;
  /// int_0^1 B_{4k}(x r_k) dx
  std::vector<HighReal> y;
  /// Same integral as y.
  std::vector<HighReal> z;
  std::vector<HighReal> xi_a;
  std::vector<HighReal> xi_b;
  std::vector<HighReal> xi_c;
};

struct BpesOptions {
  unsigned digits = kDefaultWorkingDigits;
  double root_tol = kDefaultRootTol;
};

/// Roots and basis integrals for k = 1..n0; the xi lists are left empty.
BpesCoefficients basis_integrals(unsigned n0, const BpesOptions& options = {});

/// |(1/2N0) sum xi_k lambda_k - (gamma + ln 16)/pi|
HighReal delta_a(const BpesCoefficients& basis, std::span<const HighReal> xi_a);

/// Minimum-norm xi^A zeroing delta_a: xi_k = t lambda_k.
/// Throws DegenerateBasisError if every lambda_k vanishes.
std::vector<HighReal> solve_xi_a(const BpesCoefficients& basis);

/// |(1/2N0) sum xi^A_k X_k - (gamma + ln 16)/pi
///   + (1/2N0) sum xi^B_k Y_k (1 - (1/2N0) sum xi^C_k Z_k)|
HighReal delta_prime(const BpesCoefficients& basis, std::span<const HighReal> xi_a,
                     std::span<const HighReal> xi_b, std::span<const HighReal> xi_c);

struct XiBcSolution {
  std::vector<HighReal> xi_b;
  std::vector<HighReal> xi_c;
  HighReal achieved;
};

/// (xi^B, xi^C) of least joint Euclidean norm among the zeros of delta_prime.
/// Throws DegenerateBasisError if every Y_k vanishes.
XiBcSolution solve_xi_bc(const BpesCoefficients& basis, std::span<const HighReal> xi_a);

struct Estimators {
  HighReal a;
  HighReal b;
  HighReal c;
};

/// A = (1/2N0) sum xi^A_k int_0^1 B_{4k}(x r_k) dx, and likewise for B, C.
Estimators estimators_from_xi(const BpesCoefficients& coeffs);

struct BpesRun {
  BpesCoefficients coeffs;
  Estimators estimators;
  HighReal delta;
  HighReal delta_prime;
  FitResult fit;
};

/// Full protocol: basis, xi^A, (xi^B, xi^C), estimators, then the omega RMSE of
/// the estimated (A, B, C) over `range`.
BpesRun run_bpes(unsigned n0, const FitRange& range, const BpesOptions& options = {});

}  // namespace landau

#include "landau/analysis.hpp"
#include "landau/approximations.hpp"
#include "landau/bpes_fit.hpp"
#include "landau/constants.hpp"
#include "landau/errors.hpp"
#include "landau/exact_landau.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace landau;

namespace {

double log_law_offset() { return MathConstants::standard().log_law_offset(); }

double max_abs_omega(const FitParams& p, const FitRange& range) {
  double worst = 0;
  for (std::uint64_t n = range.lo; n <= range.hi; ++n) {
    worst = std::max(worst, std::abs(omega(n, p, oracle::rational_to_double(landau_constant(n)))));
  }
  return worst;
}

// RMSE of G_n - falaleev(n) computed without the fitting code.
double falaleev_rmse(const FitRange& range) {
  double sum = 0;
  for (std::uint64_t n = range.lo; n <= range.hi; ++n) {
    const double e = oracle::rational_to_double(landau_constant(n)) - falaleev(n);
    sum += e * e;
  }
  return std::sqrt(sum / static_cast<double>(range.size()));
}

std::vector<HighReal> scaled(std::span<const HighReal> v, int factor) {
  std::vector<HighReal> out;
  for (const auto& x : v) out.push_back(x * factor);
  return out;
}

std::vector<HighReal> zeros(unsigned n, unsigned digits) {
  return std::vector<HighReal>(n, to_real(0LL, digits));
}

}  // namespace

TEST_CASE("omega examples") {
  CHECK(omega(2, 0.75, 0.0, 1.0, Rational(89, 64)) == doctest::Approx(0.0023460).epsilon(5e-5));
  CHECK(omega(0, 0.75, 0.0, 1.0, Rational(1)) == doctest::Approx(0.0252962).epsilon(5e-6));
  CHECK_THROWS_AS(omega(0, 0.0, 0.0, 1.0, Rational(1)), DomainError);
  CHECK_THROWS_AS(omega(3, 0.75, 0.1, -3.0, Rational(1)), DomainError);
}

TEST_CASE("Falaleev point reproduces G_n - falaleev(n)") {
  for (double c : {1.0, 0.5, 7.0, -0.5}) {
    for (std::uint64_t n = 0; n <= 200; ++n) {
      const Rational g = landau_constant(n);
      const double expected = oracle::rational_to_double(g) - falaleev(n);
      REQUIRE(std::abs(omega(n, 0.75, 0.0, c, g) - expected) <= 1e-15);
    }
  }
}

TEST_CASE("omega is linear in b") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> a_dist(0.2, 3.0), b_dist(-2.0, 2.0), c_dist(0.2, 4.0);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t n = static_cast<std::uint64_t>(i % 60);
    const double a = a_dist(rng), c = c_dist(rng), b1 = b_dist(rng), b2 = b_dist(rng);
    const Rational g = landau_constant(n);
    const double lhs = omega(n, a, b1, c, g) - omega(n, a, b2, c, g);
    REQUIRE(std::abs(lhs - (b1 - b2) / (static_cast<double>(n) + c)) < 1e-14);
  }
}

TEST_CASE("analytic gradient matches central differences") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> a_dist(0.3, 2.5), b_dist(-1.0, 1.0), c_dist(0.3, 3.0);
  std::uniform_int_distribution<int> n_dist(0, 200);
  const double h = 1e-6;
  // Differencing an O(1) residual at this step leaves roughly 1e-9 of roundoff.
  auto close = [](double fd, double analytic) {
    return std::abs(fd - analytic) <= 1e-6 * std::abs(analytic) + 1e-9;
  };
  for (int i = 0; i < 10; ++i) {
    const FitParams p{a_dist(rng), b_dist(rng), c_dist(rng)};
    const auto n = static_cast<std::uint64_t>(n_dist(rng));
    const OmegaGradient g = omega_gradient(n, p);
    const double fa = (omega(n, {p.a + h, p.b, p.c}, 0.0) - omega(n, {p.a - h, p.b, p.c}, 0.0)) / (2 * h);
    const double fb = (omega(n, {p.a, p.b + h, p.c}, 0.0) - omega(n, {p.a, p.b - h, p.c}, 0.0)) / (2 * h);
    const double fc = (omega(n, {p.a, p.b, p.c + h}, 0.0) - omega(n, {p.a, p.b, p.c - h}, 0.0)) / (2 * h);
    CAPTURE(n);
    CHECK(close(fa, g.da));
    CHECK(close(fb, g.db));
    CHECK(close(fc, g.dc));
    const double nd = static_cast<double>(n);
    CHECK(g.da == doctest::Approx(-1 / (std::acos(-1.0) * (nd + p.a))));
    CHECK(g.db == doctest::Approx(1 / (nd + p.c)));
    CHECK(g.dc == doctest::Approx(-p.b / ((nd + p.c) * (nd + p.c))));
  }
}

TEST_CASE("evaluable region") {
  CHECK(evaluable({0.75, 0.0, 1.0}, {0, 200}));
  CHECK_FALSE(evaluable({0.0, 0.0, 1.0}, {0, 200}));
  CHECK(evaluable({-0.5, 0.0, 1.0}, {1, 200}));
  CHECK_FALSE(evaluable({0.75, 0.0, -5.0}, {0, 200}));
  CHECK(evaluable({0.75, 0.0, -5.5}, {0, 200}));
  CHECK(evaluable({0.75, 0.0, -300.0}, {0, 200}));
}

TEST_CASE("fit_direct on [0, 200]") {
  const FitRange range{0, 200};
  const FitResult fit = fit_direct(range, {0.75, 0.0, 1.0});
  CHECK(fit.converged);
  CHECK(fit.method == FitMethod::direct);
  CHECK(fit.objective <= falaleev_rmse(range));
  CHECK(fit.objective == doctest::Approx(log_model_rmse(fit.params, range)).epsilon(1e-12));
  CHECK(max_abs_omega(fit.params, range) < 1e-2);
  CHECK(evaluable(fit.params, range));
  CHECK(fit.objective >= 0);
  REQUIRE_FALSE(fit.trace.empty());
  CHECK(fit.trace.front() == doctest::Approx(falaleev_rmse(range)).epsilon(1e-12));
  for (std::size_t i = 1; i < fit.trace.size(); ++i) REQUIRE(fit.trace[i] <= fit.trace[i - 1]);
  CHECK(fit.trace.back() == fit.objective);

  const FitResult tail = fit_direct({10, 200}, {0.75, 0.0, 1.0});
  CHECK(tail.converged);
  CHECK(tail.objective < fit.objective);
}

TEST_CASE("fit_direct argument validation") {
  CHECK_THROWS_AS(fit_direct({5, 5}), DomainError);
  CHECK_THROWS_AS(fit_direct({6, 5}), DomainError);
  CHECK_THROWS_AS(fit_direct({0, 10}, {0.0, 0.0, 1.0}), DomainError);
}

TEST_CASE("recover_parameters round-trips synthetic data") {
  const FitParams truth{0.8, 0.05, 2.0};
  std::vector<double> column;
  for (std::uint64_t n = 0; n < 20; ++n) column.push_back(fitted_form(n, truth));
  const FitResult fit = recover_parameters(column);
  CHECK(fit.converged);
  CHECK(fit.identifiable);
  CHECK(std::abs(fit.params.a - truth.a) < 1e-6);
  CHECK(std::abs(fit.params.b - truth.b) < 1e-6);
  CHECK(std::abs(fit.params.c - truth.c) < 1e-6);
  CHECK(fit.objective < 1e-12);
}

TEST_CASE("recover_parameters on the table's BPES column") {
  const std::vector<double> column = PaperTable::embedded().bpes_column();
  const FitResult fit = recover_parameters(column);
  CHECK(fit.converged);
  CHECK(fit.objective == doctest::Approx(column_rmse(fit.params, column)).epsilon(1e-12));

  // Verified local minimum under coordinate perturbations of 1e-3.
  for (int axis = 0; axis < 3; ++axis) {
    for (double delta : {-1e-3, 1e-3}) {
      FitParams q = fit.params;
      (axis == 0 ? q.a : axis == 1 ? q.b : q.c) += delta;
      if (!evaluable(q, {0, column.size() - 1})) continue;
      CAPTURE(axis);
      CAPTURE(delta);
      CHECK(column_rmse(q, column) >= fit.objective * (1 - 1e-12));
    }
  }

  // Best pure-log model: a = 3/4, b = 0, free offset; solved in closed form here.
  const double pi = std::acos(-1.0);
  double mean = 0;
  for (std::size_t n = 0; n < column.size(); ++n) mean += column[n] - std::log(n + 0.75) / pi;
  mean /= static_cast<double>(column.size());
  double sum = 0;
  for (std::size_t n = 0; n < column.size(); ++n) {
    const double r = column[n] - std::log(n + 0.75) / pi - mean;
    sum += r * r;
  }
  const double pure_log_rmse = std::sqrt(sum / static_cast<double>(column.size()));
  CHECK(fit.objective < pure_log_rmse);
}

TEST_CASE("recover_parameters on a constant column") {
  const std::vector<double> column(20, 1.5);
  const FitResult fit = recover_parameters(column);
  CHECK(std::isfinite(fit.objective));
  CHECK(fit.identifiable == is_identifiable(fit.params, {0, 19}));
  CHECK(fit.objective <= column_rmse(FitParams{}, column));
}

TEST_CASE("recover_parameters validation") {
  const std::vector<double> short_column{1.0, 1.2, 1.3};
  CHECK_THROWS_AS(recover_parameters(short_column), DomainError);
  const std::vector<double> column(10, 1.0);
  CHECK_THROWS_AS(recover_parameters(column, {-1.0, 0.0, 1.0}), DomainError);
}

TEST_CASE("identifiability") {
  CHECK(is_identifiable({0.8, 0.05, 2.0}, {0, 19}));
  // b = 0 leaves c without influence.
  CHECK_FALSE(is_identifiable({0.75, 0.0, 1.0}, {0, 19}));
}

TEST_CASE("BPES basis integrals for n0 = 1") {
  const BpesCoefficients basis = basis_integrals(1);
  REQUIRE(basis.lambda.size() == 1);
  CHECK(to_double(basis.lambda[0]) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(to_double(basis.x[0]) == doctest::Approx(-0.5 / std::acos(-1.0)).epsilon(1e-15));
  CHECK(to_double(basis.x[0]) == doctest::Approx(-0.1591549).epsilon(1e-7));
  CHECK(to_double(basis.y[0]) == doctest::Approx(-1.6).epsilon(1e-15));
  CHECK(to_double(basis.roots[0]) == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-15));
  CHECK_THROWS_AS(basis_integrals(0), DomainError);
}

TEST_CASE("BPES basis list shapes") {
  const BpesCoefficients basis = basis_integrals(5);
  CHECK(basis.roots.size() == 5);
  CHECK(basis.lambda.size() == 5);
  CHECK(basis.x.size() == 5);
  CHECK(basis.y.size() == 5);
  CHECK(basis.z.size() == 5);
  for (std::size_t k = 0; k < 5; ++k) REQUIRE(basis.y[k] == basis.z[k]);
}

TEST_CASE("solve_xi_a") {
  const BpesCoefficients one = basis_integrals(1);
  const std::vector<HighReal> xi = solve_xi_a(one);
  REQUIRE(xi.size() == 1);
  // 2 (gamma + ln 16) / (pi * lambda_1)
  CHECK(to_double(xi[0]) == doctest::Approx(2 * log_law_offset() / -0.5).epsilon(1e-14));
  CHECK(to_double(xi[0]) == doctest::Approx(-4.2651034).epsilon(1e-7));

  for (unsigned n0 : {1u, 2u, 4u, 8u}) {
    const BpesCoefficients basis = basis_integrals(n0);
    CAPTURE(n0);
    CHECK(to_double(delta_a(basis, solve_xi_a(basis))) <= 1e-12);
  }

  const BpesCoefficients three = basis_integrals(3);
  const std::vector<HighReal> xi3 = solve_xi_a(three);
  const HighReal ratio = xi3[0] / three.lambda[0];
  for (std::size_t k = 1; k < 3; ++k) {
    CHECK(to_double(abs(xi3[k] - ratio * three.lambda[k])) < 1e-25);
  }
}

TEST_CASE("solve_xi_bc") {
  for (unsigned n0 : {1u, 2u, 3u, 4u}) {
    const BpesCoefficients basis = basis_integrals(n0);
    const std::vector<HighReal> xi_a = solve_xi_a(basis);
    const XiBcSolution bc = solve_xi_bc(basis, xi_a);
    CAPTURE(n0);
    CHECK(bc.xi_b.size() == n0);
    CHECK(bc.xi_c.size() == n0);
    CHECK(to_double(bc.achieved) <= 1e-12);
    CHECK(to_double(abs(bc.achieved - delta_prime(basis, xi_a, bc.xi_b, bc.xi_c))) < 1e-25);
    const auto zero = zeros(n0, basis.digits);
    CHECK(bc.achieved <= delta_prime(basis, xi_a, zero, zero));
  }
}

TEST_CASE("delta_prime with xi_b = 0 drops the product term") {
  const BpesCoefficients basis = basis_integrals(2);
  const std::vector<HighReal> xi_a = solve_xi_a(basis);
  const auto zero = zeros(2, basis.digits);
  const std::vector<HighReal> some_c{to_real(3LL, 40), to_real(-7LL, 40)};
  const double expected =
      std::abs((to_double(xi_a[0]) * to_double(basis.x[0]) + to_double(xi_a[1]) * to_double(basis.x[1])) / 4 -
               log_law_offset());
  CHECK(to_double(delta_prime(basis, xi_a, zero, some_c)) == doctest::Approx(expected).epsilon(1e-12));
  CHECK_THROWS_AS(delta_prime(basis, xi_a, zeros(1, 30), zero), DomainError);
}

TEST_CASE("estimators are linear in the coefficients") {
  BpesCoefficients coeffs = basis_integrals(1);
  coeffs.xi_a = solve_xi_a(coeffs);
  const XiBcSolution bc = solve_xi_bc(coeffs, coeffs.xi_a);
  coeffs.xi_b = bc.xi_b;
  coeffs.xi_c = bc.xi_c;
  const Estimators e = estimators_from_xi(coeffs);
  CHECK(to_double(e.a) == doctest::Approx(to_double(coeffs.xi_a[0]) * -1.6 / 2).epsilon(1e-14));
  CHECK(to_double(e.a) == doctest::Approx(3.4120827).epsilon(1e-7));

  BpesCoefficients doubled = coeffs;
  doubled.xi_a = scaled(coeffs.xi_a, 2);
  CHECK(to_double(estimators_from_xi(doubled).a) == doctest::Approx(2 * to_double(e.a)).epsilon(1e-15));
  CHECK(to_double(estimators_from_xi(doubled).b) == doctest::Approx(to_double(e.b)).epsilon(1e-15));

  BpesCoefficients nulled = coeffs;
  nulled.xi_a = zeros(1, coeffs.digits);
  CHECK(estimators_from_xi(nulled).a == 0);
}

TEST_CASE("degenerate bases") {
  BpesCoefficients basis;
  basis.n0 = 2;
  basis.lambda = zeros(2, 30);
  basis.x = zeros(2, 30);
  basis.y = zeros(2, 30);
  basis.z = zeros(2, 30);
  CHECK_THROWS_AS(solve_xi_a(basis), DegenerateBasisError);
  CHECK_THROWS_AS(solve_xi_bc(basis, zeros(2, 30)), DegenerateBasisError);
}

TEST_CASE("run_bpes") {
  for (unsigned n0 : {1u, 2u, 4u, 8u}) {
    const BpesRun run = run_bpes(n0, {0, 200});
    CAPTURE(n0);
    CHECK(to_double(run.delta) <= 1e-12);
    CHECK(to_double(run.delta_prime) <= 1e-12);
    CHECK(run.fit.method == FitMethod::bpes);
    CHECK(run.fit.converged);
    CHECK(run.fit.params.a == doctest::Approx(to_double(run.estimators.a)));
    if (evaluable(run.fit.params, {0, 200})) {
      CHECK(run.fit.objective == doctest::Approx(log_model_rmse(run.fit.params, {0, 200})));
    }
    const auto has_key = [&](std::string_view key) {
      return std::any_of(run.fit.metadata.begin(), run.fit.metadata.end(),
                         [&](const auto& kv) { return kv.first == key; });
    };
    CHECK(has_key("delta"));
    CHECK(has_key("delta_prime"));
  }
  CHECK(to_double(run_bpes(4, {0, 200}).estimators.a) == doctest::Approx(3.6849976).epsilon(1e-7));
}

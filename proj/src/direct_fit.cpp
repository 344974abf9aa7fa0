#include "landau/bpes_fit.hpp"

#include "landau/constants.hpp"
#include "landau/errors.hpp"
#include "landau/exact_landau.hpp"

#include <Eigen/Dense>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace landau {

double omega(std::uint64_t n, const FitParams& p, double target) {
  const double x = static_cast<double>(n);
  if (!(x + p.a > 0.0) || x + p.c == 0.0) {
    throw DomainError(
        fmt::format("omega: (a, c) = ({}, {}) not evaluable at n = {}", p.a, p.c, n));
  }
  // Grouped like falaleev() so the b = 0, a = 3/4 case subtracts the identical double.
  const MathConstants& k = MathConstants::standard();
  return target - (std::log(x + p.a) + k.euler_gamma + k.ln16) / k.pi + p.b / (x + p.c);
}

double omega(std::uint64_t n, double a, double b, double c, const Rational& g_exact) {
  return omega(n, FitParams{a, b, c}, to_double(g_exact));
}

OmegaGradient omega_gradient(std::uint64_t n, const FitParams& p) {
  const double x = static_cast<double>(n);
  const double pi = MathConstants::standard().pi;
  const double inv = 1.0 / (x + p.c);
  return {-1.0 / (pi * (x + p.a)), inv, -p.b * inv * inv};
}

bool evaluable(const FitParams& p, const FitRange& range) {
  if (!std::isfinite(p.a) || !std::isfinite(p.b) || !std::isfinite(p.c)) return false;
  if (!(static_cast<double>(range.lo) + p.a > 0.0)) return false;
  // n + c == 0 only for a non-positive integral c inside [-hi, -lo].
  if (p.c == std::floor(p.c) && -p.c >= static_cast<double>(range.lo) &&
      -p.c <= static_cast<double>(range.hi)) {
    return false;
  }
  return true;
}

std::string to_string(FitMethod method) {
  return method == FitMethod::direct ? "direct" : "bpes";
}

namespace {

// Least-squares problem: targets[i] is the value at n = range.lo + i.
struct Problem {
  FitRange range;
  std::vector<double> targets;
};

Eigen::VectorXd residuals(const Problem& problem, const FitParams& p) {
  Eigen::VectorXd r(static_cast<Eigen::Index>(problem.targets.size()));
  for (std::size_t i = 0; i < problem.targets.size(); ++i) {
    r[static_cast<Eigen::Index>(i)] = omega(problem.range.lo + i, p, problem.targets[i]);
  }
  return r;
}

Eigen::MatrixXd jacobian(const FitRange& range, const FitParams& p) {
  Eigen::MatrixXd j(static_cast<Eigen::Index>(range.size()), 3);
  for (std::size_t i = 0; i < range.size(); ++i) {
    const OmegaGradient g = omega_gradient(range.lo + i, p);
    const auto row = static_cast<Eigen::Index>(i);
    j(row, 0) = g.da;
    j(row, 1) = g.db;
    j(row, 2) = g.dc;
  }
  return j;
}

// Fixed summation order keeps the objective bit-reproducible.
double sum_of_squares(const Eigen::VectorXd& r) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) s += r[i] * r[i];
  return s;
}

double rmse(double sum_sq, std::size_t count) {
  return std::sqrt(sum_sq / static_cast<double>(count));
}

Eigen::VectorXd column_norms(const Eigen::MatrixXd& j) {
  Eigen::VectorXd norms = j.colwise().norm().transpose();
  for (Eigen::Index i = 0; i < norms.size(); ++i) {
    if (norms[i] == 0.0 || !std::isfinite(norms[i])) norms[i] = 1.0;
  }
  return norms;
}

bool full_rank(const Eigen::MatrixXd& j) {
  const Eigen::MatrixXd scaled = j * column_norms(j).cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled);
  const auto& s = svd.singularValues();
  return s.size() == 3 && s[2] > 1e-8 * s[0];
}

FitParams add(const FitParams& p, const Eigen::Vector3d& step, double t) {
  return {p.a + t * step[0], p.b + t * step[1], p.c + t * step[2]};
}

FitResult gauss_newton(const Problem& problem, const FitParams& seed,
                       const GaussNewtonOptions& options) {
  if (!evaluable(seed, problem.range)) {
    throw DomainError(fmt::format("seed ({}, {}, {}) is not evaluable on [{}, {}]", seed.a,
                                  seed.b, seed.c, problem.range.lo, problem.range.hi));
  }
  const std::size_t count = problem.targets.size();

  FitResult result;
  result.range = problem.range;
  result.method = FitMethod::direct;

  FitParams p = seed;
  Eigen::VectorXd r = residuals(problem, p);
  double s = sum_of_squares(r);
  double damping = options.initial_damping;
  result.trace.push_back(rmse(s, count));

  for (unsigned it = 0; it < options.max_iterations; ++it) {
    const Eigen::MatrixXd j = jacobian(problem.range, p);
    const Eigen::Vector3d gradient = j.transpose() * r;
    if (gradient.cwiseAbs().maxCoeff() < options.gradient_tol) {
      result.converged = true;
      break;
    }

    // Marquardt-damped Gauss-Newton step: (J^T J + mu diag(J^T J)) step = -J^T r.
    // Each rejected attempt doubles mu, which halves the step in the damped
    // regime; mu relaxes again after an accepted step.
    const Eigen::Matrix3d normal = j.transpose() * j;
    Eigen::Vector3d scale = normal.diagonal();
    for (int i = 0; i < 3; ++i) {
      if (!(scale[i] > std::numeric_limits<double>::min())) scale[i] = 1.0;
    }

    bool any_evaluable = false;
    bool accepted = false;
    FitParams candidate;
    Eigen::Vector3d step;
    Eigen::VectorXd r_candidate;
    double s_candidate = 0.0;
    for (unsigned h = 0; h <= options.max_halvings; ++h, damping *= 2.0) {
      const Eigen::Matrix3d damped = normal + damping * Eigen::Matrix3d(scale.asDiagonal());
      step = damped.ldlt().solve(-gradient);
      candidate = add(p, step, 1.0);
      if (!evaluable(candidate, problem.range)) continue;
      any_evaluable = true;
      r_candidate = residuals(problem, candidate);
      s_candidate = sum_of_squares(r_candidate);
      if (s_candidate < s) {
        accepted = true;
        break;
      }
    }
    if (!any_evaluable) {
      throw DomainError(fmt::format("no evaluable Gauss-Newton step from ({}, {}, {})", p.a,
                                    p.b, p.c));
    }
    if (!accepted) break;

    double relative_step = 0.0;
    const double current[3] = {p.a, p.b, p.c};
    for (int i = 0; i < 3; ++i) {
      relative_step =
          std::max(relative_step, std::abs(step[i]) / std::max(1.0, std::abs(current[i])));
    }
    damping = std::max(damping / 3.0, options.min_damping);
    p = candidate;
    r = std::move(r_candidate);
    s = s_candidate;
    ++result.iterations;
    result.trace.push_back(rmse(s, count));
    if (relative_step < options.step_tol) {
      result.converged = true;
      break;
    }
  }

  result.params = p;
  result.objective = rmse(s, count);
  result.identifiable = full_rank(jacobian(problem.range, p));
  return result;
}

}  // namespace

bool is_identifiable(const FitParams& p, const FitRange& range) {
  return full_rank(jacobian(range, p));
}

double log_model_rmse(const FitParams& p, const FitRange& range) {
  const LandauSequence g = landau_sequence(range.hi);
  double s = 0.0;
  for (std::uint64_t n = range.lo; n <= range.hi; ++n) {
    const double w = omega(n, p, to_double(g[n]));
    s += w * w;
  }
  return rmse(s, range.size());
}

double column_rmse(const FitParams& p, std::span<const double> column) {
  double s = 0.0;
  for (std::size_t n = 0; n < column.size(); ++n) {
    const double w = omega(n, p, column[n]);
    s += w * w;
  }
  return rmse(s, column.size());
}

FitResult fit_direct(const FitRange& range, const FitParams& seed,
                     const GaussNewtonOptions& options) {
  if (range.lo >= range.hi) {
    throw DomainError(fmt::format("fit range [{}, {}] needs lo < hi", range.lo, range.hi));
  }
  Problem problem{range, {}};
  const LandauSequence g = landau_sequence(range.hi);
  problem.targets.reserve(range.size());
  for (std::uint64_t n = range.lo; n <= range.hi; ++n) problem.targets.push_back(to_double(g[n]));
  return gauss_newton(problem, seed, options);
}

FitResult recover_parameters(std::span<const double> column, const FitParams& seed,
                             const GaussNewtonOptions& options) {
  if (column.size() < 4) {
    throw DomainError("recover_parameters: needs at least 4 values for 3 parameters");
  }
  Problem problem{FitRange{0, column.size() - 1}, {column.begin(), column.end()}};
  return gauss_newton(problem, seed, options);
}

}  // namespace landau

#include "landau/analysis.hpp"

#include "landau/constants.hpp"
#include "landau/errors.hpp"
#include "landau/exact_landau.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace landau {

// ---------------------------------------------------------------------------
// Error tables

ErrorReport error_table(std::uint64_t n_max, std::span<const ApproxSpec> approx_set,
                        unsigned threads) {
  if (approx_set.empty()) throw DomainError("error_table: approximation set is empty");

  const LandauSequence exact = landau_sequence(n_max);
  ErrorReport report;
  report.approximations.assign(approx_set.begin(), approx_set.end());
  report.rows.resize(exact.size());

  auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t n = begin; n < end; ++n) {
      ErrorRow& row = report.rows[n];
      row.n = n;
      row.exact = to_decimal(exact[n], ErrorReport::exact_digits);
      const double g = to_double(exact[n]);
      row.cells.reserve(approx_set.size());
      for (const ApproxSpec& spec : approx_set) {
        ErrorCell cell;
        cell.approx = spec.evaluate(n);
        cell.abs_error = std::abs(g - cell.approx);
        cell.sq_error = cell.abs_error * cell.abs_error;
        row.cells.push_back(cell);
      }
    }
  };

  const std::size_t rows = report.rows.size();
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, rows);
  if (workers == 1) {
    fill(0, rows);
    return report;
  }
  // Disjoint contiguous blocks; rows never interact.
  std::vector<std::exception_ptr> failures(workers);
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (rows + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(rows, begin + chunk);
      pool.emplace_back([&, w, begin, end] {
        try {
          fill(begin, end);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Log-law helpers

namespace {

double log_term(std::size_t n) {
  return std::log(static_cast<double>(n) + 0.75) / MathConstants::standard().pi;
}

}  // namespace

double log_law_offset_fit(std::span<const double> column) {
  if (column.empty()) throw DomainError("log_law_offset_fit: empty column");
  double s = 0.0;
  for (std::size_t n = 0; n < column.size(); ++n) s += column[n] - log_term(n);
  return s / static_cast<double>(column.size());
}

double log_law_max_residual(std::span<const double> column) {
  const double offset = log_law_offset_fit(column);
  double worst = 0.0;
  for (std::size_t n = 0; n < column.size(); ++n) {
    worst = std::max(worst, std::abs(column[n] - log_term(n) - offset));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Table audit

bool AuditReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const AuditCheck& c) { return c.passed; });
}

const AuditCheck& AuditReport::check(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw std::out_of_range(fmt::format("no audit check named '{}'", name));
}

namespace {

// Printed squared-error column against the exact squared difference bpes - column.
AuditCheck squared_difference_check(const PaperTable& table, std::string_view name,
                                    Rational PaperRow::*value, Rational PaperRow::*printed) {
  AuditCheck check;
  check.name = name;
  check.tolerance = 2e-12;
  check.description = "printed error column equals (bpes - value column)^2";
  for (const PaperRow& row : table.rows()) {
    const Rational diff = row.bpes - row.*value;
    const double deviation = to_double(Rational(abs(row.*printed - diff * diff)));
    check.per_row.push_back(deviation);
    check.deviation = std::max(check.deviation, deviation);
  }
  check.passed = check.deviation <= check.tolerance;
  return check;
}

}  // namespace

AuditReport audit_paper_table(const PaperTable& table) {
  AuditReport report;
  report.checks.push_back(squared_difference_check(table, audit_names::kSquaredDiffFalaleev,
                                                   &PaperRow::falaleev, &PaperRow::err_falaleev));
  report.checks.push_back(squared_difference_check(table, audit_names::kSquaredDiffBrutman,
                                                   &PaperRow::brutman, &PaperRow::err_brutman));

  {
    AuditCheck check;
    check.name = audit_names::kConstantOffset;
    check.tolerance = 1e-8;
    check.description = "brutman - falaleev is constant across rows (max - min)";
    Rational lowest;
    Rational highest;
    bool first = true;
    for (const PaperRow& row : table.rows()) {
      const Rational diff = row.brutman - row.falaleev;
      check.per_row.push_back(to_double(diff));
      if (first || diff < lowest) lowest = diff;
      if (first || diff > highest) highest = diff;
      first = false;
    }
    // Exact comparison: the spread of 8-decimal entries is a multiple of 1e-8.
    check.deviation = to_double(Rational(highest - lowest));
    check.passed = highest - lowest <= Rational(1, 100000000);
    report.checks.push_back(std::move(check));
  }

  {
    AuditCheck check;
    check.name = audit_names::kLogLawValueColumns;
    check.tolerance = 5e-8;
    check.description = "falaleev and brutman columns equal ln(n+3/4)/pi + per-column constant";
    const double f = log_law_max_residual(table.falaleev_column());
    const double b = log_law_max_residual(table.brutman_column());
    check.per_row = {f, b};
    check.deviation = std::max(f, b);
    check.passed = check.deviation < check.tolerance;
    report.checks.push_back(std::move(check));
  }

  {
    AuditCheck check;
    check.name = audit_names::kBpesLogLawDrift;
    check.tolerance = 1e-4;
    check.description = "bpes column departs from the log law by more than the tolerance";
    check.deviation = log_law_max_residual(table.bpes_column());
    check.passed = check.deviation > check.tolerance;
    report.checks.push_back(std::move(check));
  }

  {
    AuditCheck check;
    check.name = audit_names::kNotExactSmallN;
    check.tolerance = 1e-3;
    check.description = "no value column matches exact G_n within the tolerance for n <= 3";
    check.deviation = std::numeric_limits<double>::infinity();
    const LandauSequence exact = landau_sequence(3);
    for (const PaperRow& row : table.rows()) {
      if (row.n > 3) break;
      const Rational& g = exact[row.n];
      const double closest = to_double(std::min({Rational(abs(row.falaleev - g)),
                                                 Rational(abs(row.brutman - g)),
                                                 Rational(abs(row.bpes - g))}));
      check.per_row.push_back(closest);
      check.deviation = std::min(check.deviation, closest);
    }
    check.passed = check.deviation > check.tolerance;
    report.checks.push_back(std::move(check));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Convergence order

double convergence_order(std::span<const double> ns, std::span<const double> errors) {
  if (ns.size() != errors.size()) throw DomainError("convergence_order: length mismatch");
  if (ns.size() < 3) throw DomainError("convergence_order: needs at least 3 points");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!(errors[i] > 0.0)) throw DomainError("convergence_order: errors must be positive");
    if (i > 0 && !(ns[i] > ns[i - 1])) {
      throw DomainError("convergence_order: n must be strictly increasing");
    }
    if (!(ns[i] + 0.75 > 0.0)) throw DomainError("convergence_order: n + 3/4 must be positive");
  }
  const auto count = static_cast<double>(ns.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    mean_x += std::log(ns[i] + 0.75);
    mean_y += std::log(errors[i]);
  }
  mean_x /= count;
  mean_y /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double dx = std::log(ns[i] + 0.75) - mean_x;
    sxx += dx * dx;
    sxy += dx * (std::log(errors[i]) - mean_y);
  }
  return -sxy / sxx;
}

}  // namespace landau

#pragma once

#include "landau/approximations.hpp"
#include "landau/bpes_fit.hpp"
#include "landau/paper_table.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace landau {

// ---------------------------------------------------------------------------
// Error tables

struct ErrorCell {
  double approx = 0.0;
  double abs_error = 0.0;
  double sq_error = 0.0;
};

struct ErrorRow {
  std::uint64_t n = 0;
  /// Exact G_n rendered with ErrorReport::exact_digits decimals.
  std::string exact;
  /// One cell per approximation, in ErrorReport::approximations order.
  std::vector<ErrorCell> cells;
};

struct ErrorReport {
  static constexpr unsigned exact_digits = 10;
  /// Approximations are evaluated in binary64.
  static constexpr unsigned working_digits = 17;

  std::vector<ApproxSpec> approximations;
  std::vector<ErrorRow> rows;
  /// Left empty unless the caller stamps it; emission stays byte-stable.
  std::optional<std::string> generated_at;
};

/// Rows n = 0..n_max.  Rows are split across `threads` workers; each row is
/// computed independently so the result does not depend on the thread count.
ErrorReport error_table(std::uint64_t n_max, std::span<const ApproxSpec> approx_set,
                        unsigned threads = 1);

// ---------------------------------------------------------------------------
// Table audit

struct AuditCheck {
  std::string name;
  bool passed = false;
  /// Measured quantity compared against `tolerance`.
  double deviation = 0.0;
  double tolerance = 0.0;
  /// Per-row measurements where the check is row-wise (empty otherwise).
  std::vector<double> per_row;
  std::string description;
};

struct AuditReport {
  std::vector<AuditCheck> checks;

  bool all_passed() const;
  const AuditCheck& check(std::string_view name) const;
};

namespace audit_names {
inline constexpr std::string_view kSquaredDiffFalaleev = "squared_diff_falaleev";
inline constexpr std::string_view kSquaredDiffBrutman = "squared_diff_brutman";
inline constexpr std::string_view kConstantOffset = "constant_offset";
inline constexpr std::string_view kLogLawValueColumns = "log_law_value_columns";
inline constexpr std::string_view kBpesLogLawDrift = "bpes_log_law_drift";
inline constexpr std::string_view kNotExactSmallN = "not_exact_small_n";
}  // namespace audit_names

AuditReport audit_paper_table(const PaperTable& table);

/// Least-squares constant c minimizing sum (col_n - ln(n+3/4)/pi - c)^2, n = 0...
double log_law_offset_fit(std::span<const double> column);
/// max_n |col_n - ln(n+3/4)/pi - c| at the least-squares c.
double log_law_max_residual(std::span<const double> column);

// ---------------------------------------------------------------------------
// Convergence order

/// Negated least-squares slope of log(error) against log(n + 3/4).
/// Throws DomainError on non-positive errors, mismatched or short (< 3) input,
/// or n not strictly increasing.
double convergence_order(std::span<const double> ns, std::span<const double> errors);

// ---------------------------------------------------------------------------
// Emission

enum class Format { csv, json };

/// "csv" | "json"; anything else throws UnsupportedFormatError.
Format parse_format(std::string_view tag);

struct EmitOptions {
  /// CSV floats with 8 decimals instead of 17 significant digits.
  bool paper_compat = false;
  /// JSON: wrap rows as {"metadata": {...}, "rows": [...]}.
  bool with_metadata = false;
};

std::string emit(const ErrorReport& report, Format format, const EmitOptions& options = {});
std::string emit(const AuditReport& report, Format format);
std::string emit(const FitResult& result, Format format);
std::string emit(const RootRecord& record, Format format, unsigned decimals);

/// "%.17g"-style rendering used by every machine format.
std::string format_double(double value);

}  // namespace landau

#include "landau/analysis.hpp"

#include "landau/errors.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <type_traits>

namespace landau {

using nlohmann::json;

Format parse_format(std::string_view tag) {
  if (tag == "csv") return Format::csv;
  if (tag == "json") return Format::json;
  throw UnsupportedFormatError(fmt::format("unsupported output format '{}'", tag));
}

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

namespace {

std::string csv_number(double value, bool paper_compat) {
  return paper_compat ? fmt::format("{:.8f}", value) : format_double(value);
}

// Column names for approximation i: unsuffixed when the report has one.
struct ColumnNames {
  std::string approx;
  std::string abs_error;
  std::string sq_error;
};

ColumnNames column_names(const ErrorReport& report, std::size_t i) {
  if (report.approximations.size() == 1) return {"approx", "abs_error", "sq_error"};
  const std::string label = report.approximations[i].label();
  return {"approx_" + label, "abs_error_" + label, "sq_error_" + label};
}

json approximation_json(const ApproxSpec& spec) {
  json j;
  j["kind"] = spec.label();
  if (spec.kind() == ApproxSpec::Kind::brutman) j["offset"] = spec.offset();
  if (spec.kind() == ApproxSpec::Kind::fitted) {
    j["a"] = spec.params().a;
    j["b"] = spec.params().b;
    j["c"] = spec.params().c;
  }
  return j;
}

json meta_json(const MetaValue& value) {
  return std::visit([](const auto& v) { return json(v); }, value);
}

std::string meta_csv(const MetaValue& value) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else {
          return std::to_string(v);
        }
      },
      value);
}

}  // namespace

std::string emit(const ErrorReport& report, Format format, const EmitOptions& options) {
  const std::size_t count = report.approximations.size();
  if (format == Format::csv) {
    std::string out = "n,exact";
    for (std::size_t i = 0; i < count; ++i) {
      const ColumnNames names = column_names(report, i);
      out += fmt::format(",{},{},{}", names.approx, names.abs_error, names.sq_error);
    }
    out += '\n';
    for (const ErrorRow& row : report.rows) {
      out += fmt::format("{},{}", row.n, row.exact);
      for (const ErrorCell& cell : row.cells) {
        out += ',' + csv_number(cell.approx, options.paper_compat);
        out += ',' + csv_number(cell.abs_error, options.paper_compat);
        out += ',' + csv_number(cell.sq_error, options.paper_compat);
      }
      out += '\n';
    }
    return out;
  }

  json rows = json::array();
  for (const ErrorRow& row : report.rows) {
    json r;
    r["n"] = row.n;
    r["exact"] = row.exact;
    for (std::size_t i = 0; i < row.cells.size(); ++i) {
      const ColumnNames names = column_names(report, i);
      r[names.approx] = row.cells[i].approx;
      r[names.abs_error] = row.cells[i].abs_error;
      r[names.sq_error] = row.cells[i].sq_error;
    }
    rows.push_back(std::move(r));
  }
  if (!options.with_metadata) return rows.dump() + '\n';

  json meta;
  meta["approximations"] = json::array();
  for (const ApproxSpec& spec : report.approximations) {
    meta["approximations"].push_back(approximation_json(spec));
  }
  meta["exact_digits"] = ErrorReport::exact_digits;
  meta["working_digits"] = ErrorReport::working_digits;
  if (report.generated_at) meta["generated_at"] = *report.generated_at;
  json doc;
  doc["metadata"] = std::move(meta);
  doc["rows"] = std::move(rows);
  return doc.dump() + '\n';
}

std::string emit(const AuditReport& report, Format format) {
  if (format == Format::csv) {
    std::string out = "check,passed,deviation,tolerance\n";
    for (const AuditCheck& check : report.checks) {
      out += fmt::format("{},{},{},{}\n", check.name, check.passed ? "true" : "false",
                         format_double(check.deviation), format_double(check.tolerance));
    }
    return out;
  }
  json checks = json::array();
  for (const AuditCheck& check : report.checks) {
    json c;
    c["check"] = check.name;
    c["passed"] = check.passed;
    c["deviation"] = check.deviation;
    c["tolerance"] = check.tolerance;
    c["description"] = check.description;
    c["per_row"] = check.per_row;
    checks.push_back(std::move(c));
  }
  return checks.dump() + '\n';
}

std::string emit(const FitResult& result, Format format) {
  if (format == Format::csv) {
    std::string header = "a,b,c,objective,iterations,converged,method,n_lo,n_hi";
    std::string line = fmt::format("{},{},{},{},{},{},{},{},{}", format_double(result.params.a),
                                   format_double(result.params.b), format_double(result.params.c),
                                   format_double(result.objective), result.iterations,
                                   result.converged ? "true" : "false", to_string(result.method),
                                   result.range.lo, result.range.hi);
    for (const auto& [key, value] : result.metadata) {
      header += ',' + key;
      line += ',' + meta_csv(value);
    }
    return header + '\n' + line + '\n';
  }
  json j;
  j["a"] = result.params.a;
  j["b"] = result.params.b;
  j["c"] = result.params.c;
  j["objective"] = result.objective;
  j["iterations"] = result.iterations;
  j["converged"] = result.converged;
  j["method"] = to_string(result.method);
  j["n_lo"] = result.range.lo;
  j["n_hi"] = result.range.hi;
  for (const auto& [key, value] : result.metadata) j[key] = meta_json(value);
  return j.dump() + '\n';
}

std::string emit(const RootRecord& record, Format format, unsigned decimals) {
  const std::string root = to_fixed(record.root, decimals);
  const std::string residual = to_scientific(record.residual, 6);
  const std::string lo = to_fixed(record.lo, decimals + 2);
  const std::string hi = to_fixed(record.hi, decimals + 2);
  if (format == Format::csv) {
    return fmt::format("order,root,residual,lo,hi\n{},{},{},{},{}\n", record.order, root, residual,
                       lo, hi);
  }
  json j;
  j["order"] = record.order;
  j["root"] = root;
  j["residual"] = residual;
  j["lo"] = lo;
  j["hi"] = hi;
  return j.dump() + '\n';
}

}  // namespace landau

#include "landau/cli.hpp"

#include "landau/analysis.hpp"
#include "landau/boubaker.hpp"
#include "landau/bpes_fit.hpp"
#include "landau/errors.hpp"
#include "landau/exact_landau.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

namespace landau::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  unsigned precision_digits = kDefaultWorkingDigits;
  double root_tol = kDefaultRootTol;
  std::uint64_t n_cap = kDefaultSequenceCap;
  std::string format = "csv";
  std::string out_path;
};

std::uint64_t parse_index(std::string_view text, std::string_view what) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError(fmt::format("invalid {} '{}'", what, text));
  }
  return value;
}

// "lo:hi", inclusive on both ends, lo < hi.
FitRange parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError(fmt::format("range '{}' must be lo:hi", text));
  FitRange range{parse_index(std::string_view(text).substr(0, colon), "range start"),
                 parse_index(std::string_view(text).substr(colon + 1), "range end")};
  if (range.lo >= range.hi) {
    throw UsageError(fmt::format("range '{}' needs lo < hi", text));
  }
  return range;
}

FitParams parse_params(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      throw UsageError(fmt::format("invalid number '{}' in '{}'", item, text));
    }
    values.push_back(v);
  }
  if (values.size() != 3) throw UsageError(fmt::format("expected a,b,c but got '{}'", text));
  return {values[0], values[1], values[2]};
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

Format format_of(const CliConfig& config) {
  try {
    return parse_format(config.format);
  } catch (const UnsupportedFormatError& e) {
    throw UsageError(e.what());
  }
}

void write_output(const CliConfig& config, const std::string& text, std::ostream& out) {
  if (config.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(config.out_path, std::ios::binary);
  if (!file) throw std::runtime_error(fmt::format("cannot open '{}' for writing", config.out_path));
  file << text;
  if (!file) throw std::runtime_error(fmt::format("failed writing '{}'", config.out_path));
}

std::vector<double> read_column(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot read '{}'", path));
  std::vector<double> column;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    column.push_back(to_double(parse_decimal(line)));
  }
  return column;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Landau's constants: exact values, approximations, fitting and table audit",
               "landau"};
  app.require_subcommand(1);
  app.fallthrough();

  CliConfig config;
  app.set_config("--config", "", "key=value file mirroring the global options");
  app.add_option("--precision", config.precision_digits, "working precision in decimal digits")
      ->check(CLI::Range(15u, 10000u));
  app.add_option("--root-tol", config.root_tol, "root bracket tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--n-cap", config.n_cap, "largest n accepted")->check(CLI::Range(1ull, 100000000ull));
  app.add_option("--format", config.format, "output format: csv or json");
  app.add_option("--out", config.out_path, "write results to this file instead of stdout");

  // exact
  std::uint64_t exact_n = 0;
  unsigned exact_digits = 10;
  auto* exact_cmd = app.add_subcommand("exact", "print G_n as a decimal");
  exact_cmd->add_option("--n", exact_n, "index n")->required();
  exact_cmd->add_option("--digits", exact_digits, "fractional digits")->check(CLI::Range(1u, 100000u));

  // table
  std::uint64_t table_n_max = 19;
  std::string table_approx = "falaleev,brutman,fitted";
  std::string table_params;
  std::string table_fit_range = "0:200";
  double table_brutman_offset = kBrutmanDefaultOffset;
  unsigned table_threads = 1;
  bool table_paper_compat = false;
  bool table_metadata = false;
  auto* table_cmd = app.add_subcommand("table", "error table of approximations against exact G_n");
  table_cmd->add_option("--n-max", table_n_max, "last n");
  table_cmd->add_option("--approx", table_approx, "comma list of falaleev, brutman, fitted");
  table_cmd->add_option("--params", table_params, "a,b,c for 'fitted' (default: direct fit)");
  table_cmd->add_option("--fit-range", table_fit_range, "range of the default direct fit");
  table_cmd->add_option("--brutman-offset", table_brutman_offset, "offset of the brutman variant");
  table_cmd->add_option("--threads", table_threads, "worker threads")->check(CLI::Range(1u, 256u));
  table_cmd->add_flag("--paper-compat", table_paper_compat, "8-decimal floats in CSV");
  table_cmd->add_flag("--metadata", table_metadata, "JSON: include a metadata object");

  // fit
  std::string fit_range = "0:200";
  std::string fit_method = "direct";
  std::string fit_seed = "0.75,0,1";
  unsigned fit_n0 = 4;
  auto* fit_cmd = app.add_subcommand("fit", "estimate (A, B, C)");
  fit_cmd->add_option("--range", fit_range, "inclusive n range lo:hi");
  fit_cmd->add_option("--method", fit_method, "direct or bpes")
      ->check(CLI::IsMember({"direct", "bpes"}));
  fit_cmd->add_option("--seed", fit_seed, "a,b,c starting point (direct)");
  fit_cmd->add_option("--n0", fit_n0, "number of basis terms (bpes)")->check(CLI::Range(1u, 100u));

  // recover
  std::string recover_source = "bpes";
  std::string recover_input;
  auto* recover_cmd = app.add_subcommand("recover", "fit the three-parameter form to a column of values");
  recover_cmd->add_option("--source", recover_source, "column of the embedded table")
      ->check(CLI::IsMember({"falaleev", "brutman", "bpes"}));
  recover_cmd->add_option("--input", recover_input, "file with one value per line (n = 0, 1, ...)");

  // audit
  std::string audit_table;
  auto* audit_cmd = app.add_subcommand("audit", "check the relationships inside the comparison table");
  audit_cmd->add_option("--table", audit_table, "CSV table to audit (default: embedded)");

  // boubaker
  unsigned poly_order = 4;
  std::string poly_action = "coeffs";
  unsigned poly_digits = 20;
  auto* poly_cmd = app.add_subcommand("boubaker", "Boubaker polynomial toolkit");
  poly_cmd->add_option("--order", poly_order, "polynomial order m")->required()
      ->check(CLI::Range(0u, kDefaultMaxOrder));
  poly_cmd->add_option("--action", poly_action, "coeffs, root or identities")
      ->check(CLI::IsMember({"coeffs", "root", "identities"}));
  poly_cmd->add_option("--digits", poly_digits, "decimals for the root")->check(CLI::Range(1u, 1000u));

  // roots
  unsigned roots_k_max = 10;
  unsigned roots_digits = 20;
  auto* roots_cmd = app.add_subcommand("roots", "CSV of minimal positive roots of B_4k");
  roots_cmd->add_option("--k-max", roots_k_max, "last k")->check(CLI::Range(1u, kDefaultMaxOrder / 4));
  roots_cmd->add_option("--digits", roots_digits, "decimals for the roots")->check(CLI::Range(1u, 1000u));

  std::vector<const char*> argv;
  argv.push_back("landau");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    const Format format = format_of(config);

    if (*exact_cmd) {
      if (exact_n > config.n_cap) {
        throw ResourceLimitError(fmt::format("n = {} exceeds --n-cap {}", exact_n, config.n_cap));
      }
      write_output(config, to_decimal(landau_constant(exact_n), exact_digits) + '\n', out);
      return kSuccess;
    }

    if (*table_cmd) {
      if (table_n_max > config.n_cap) {
        throw ResourceLimitError(fmt::format("n-max {} exceeds --n-cap {}", table_n_max, config.n_cap));
      }
      std::vector<ApproxSpec> specs;
      for (const auto& name : split_list(table_approx)) {
        if (name == "falaleev") {
          specs.push_back(ApproxSpec::make_falaleev());
        } else if (name == "brutman") {
          specs.push_back(ApproxSpec::make_brutman(table_brutman_offset));
        } else if (name == "fitted") {
          const FitParams params = table_params.empty()
                                       ? fit_direct(parse_range(table_fit_range)).params
                                       : parse_params(table_params);
          specs.push_back(ApproxSpec::make_fitted(params));
        } else {
          throw UsageError(fmt::format("unknown approximation '{}'", name));
        }
      }
      if (specs.empty()) throw UsageError("--approx selects no approximation");
      const ErrorReport report = error_table(table_n_max, specs, table_threads);
      write_output(config, emit(report, format, {table_paper_compat, table_metadata}), out);
      return kSuccess;
    }

    if (*fit_cmd) {
      const FitRange range = parse_range(fit_range);
      if (range.hi > config.n_cap) {
        throw ResourceLimitError(fmt::format("range end {} exceeds --n-cap {}", range.hi, config.n_cap));
      }
      FitResult result;
      if (fit_method == "direct") {
        result = fit_direct(range, parse_params(fit_seed));
      } else {
        result = run_bpes(fit_n0, range, BpesOptions{config.precision_digits, config.root_tol}).fit;
      }
      write_output(config, emit(result, format), out);
      return kSuccess;
    }

    if (*recover_cmd) {
      std::vector<double> column;
      if (!recover_input.empty()) {
        column = read_column(recover_input);
      } else {
        const PaperTable& table = PaperTable::embedded();
        column = recover_source == "falaleev"  ? table.falaleev_column()
                 : recover_source == "brutman" ? table.brutman_column()
                                               : table.bpes_column();
      }
      FitResult result = recover_parameters(column);
      result.metadata.emplace_back("identifiable", result.identifiable);
      write_output(config, emit(result, format), out);
      return kSuccess;
    }

    if (*audit_cmd) {
      const PaperTable table =
          audit_table.empty() ? PaperTable::embedded() : PaperTable::from_file(audit_table);
      const AuditReport report = audit_paper_table(table);
      write_output(config, emit(report, format), out);
      return report.all_passed() ? kSuccess : kCheckFailed;
    }

    if (*poly_cmd) {
      const RootSearchOptions search{config.precision_digits, 10.0};
      if (poly_action == "coeffs") {
        write_output(config, boubaker_poly(poly_order).to_string() + '\n', out);
      } else if (poly_action == "root") {
        const RootRecord record = minimal_positive_root(poly_order, config.root_tol, search);
        std::string text = format == Format::json ? emit(record, format, poly_digits)
                                                  : to_fixed(record.root, poly_digits) + '\n';
        write_output(config, text, out);
      } else {
        const unsigned n_terms = poly_order / 4;
        if (n_terms == 0) throw UsageError("identities need --order >= 4");
        write_output(config,
                     fmt::format("{},{}\n", zero_sum_property(n_terms).str(),
                                 derivative_sum_at_zero(n_terms).str()),
                     out);
      }
      return kSuccess;
    }

    if (*roots_cmd) {
      const RootSearchOptions search{config.precision_digits, 10.0};
      std::string text = "order,root,residual\n";
      for (unsigned k = 1; k <= roots_k_max; ++k) {
        const RootRecord record = minimal_positive_root(4 * k, config.root_tol, search);
        text += fmt::format("{},{},{}\n", record.order, to_fixed(record.root, roots_digits),
                            to_scientific(record.residual, 6));
      }
      write_output(config, text, out);
      return kSuccess;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace landau::cli

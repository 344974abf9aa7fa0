#include "landau/paper_table.hpp"

#include "landau/errors.hpp"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

namespace landau {

namespace detail {
extern const std::string_view kPaperTableCsv;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    fields.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

constexpr std::string_view kHeader = "n,falaleev,brutman,bpes,err_falaleev,err_brutman";

std::vector<double> column(const std::vector<PaperRow>& rows, Rational PaperRow::*field) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(to_double(row.*field));
  return out;
}

}  // namespace

Rational parse_decimal(std::string_view text) {
  text = trim(text);
  const std::string original(text);
  auto fail = [&] { throw MalformedTableError(fmt::format("not a decimal number: '{}'", original)); };
  if (text.empty()) fail();

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = text.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (ec != std::errc() || ptr != exp_text.data() + exp_text.size()) fail();
    text = text.substr(0, e);
  }
  std::string digits;
  bool seen_point = false;
  bool seen_digit = false;
  for (const char ch : text) {
    if (ch == '.' && !seen_point) {
      seen_point = true;
    } else if (ch >= '0' && ch <= '9') {
      digits += ch;
      seen_digit = true;
      if (seen_point) --exponent;
    } else {
      fail();
    }
  }
  if (!seen_digit) fail();

  // GMP reads a leading 0 as an octal prefix.
  const auto first = digits.find_first_not_of('0');
  Integer mantissa(first == std::string::npos ? std::string("0") : digits.substr(first));
  if (negative) mantissa = -mantissa;
  const Integer power = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(std::labs(exponent)));
  return exponent >= 0 ? Rational(mantissa * power) : Rational(mantissa, power);
}

PaperTable::PaperTable(std::vector<PaperRow> rows) : rows_(std::move(rows)) {
  if (rows_.size() != kRows) {
    throw MalformedTableError(fmt::format("expected {} rows, found {}", kRows, rows_.size()));
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].n != i) {
      throw MalformedTableError(fmt::format("row {} has n = {}; expected n = 0..19 in order", i, rows_[i].n));
    }
    if (i > 0) {
      const PaperRow& prev = rows_[i - 1];
      const PaperRow& cur = rows_[i];
      if (!(cur.falaleev > prev.falaleev && cur.brutman > prev.brutman && cur.bpes > prev.bpes)) {
        throw MalformedTableError(fmt::format("value columns not strictly increasing at n = {}", i));
      }
    }
  }
}

PaperTable PaperTable::parse_csv(std::string_view text) {
  std::vector<PaperRow> rows;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    const std::string_view line = trim(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kHeader) {
        throw MalformedTableError(fmt::format("line {}: expected header '{}'", line_no, kHeader));
      }
      header_seen = true;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 6) {
      throw MalformedTableError(fmt::format("line {}: expected 6 fields, found {}", line_no, fields.size()));
    }
    PaperRow row;
    const auto [ptr, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), row.n);
    if (ec != std::errc() || ptr != fields[0].data() + fields[0].size()) {
      throw MalformedTableError(fmt::format("line {}: bad index '{}'", line_no, fields[0]));
    }
    row.falaleev = parse_decimal(fields[1]);
    row.brutman = parse_decimal(fields[2]);
    row.bpes = parse_decimal(fields[3]);
    row.err_falaleev = parse_decimal(fields[4]);
    row.err_brutman = parse_decimal(fields[5]);
    rows.push_back(std::move(row));
  }
  if (!header_seen) throw MalformedTableError("missing header line");
  return PaperTable(std::move(rows));
}

PaperTable PaperTable::from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedTableError(fmt::format("cannot read table file '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str());
}

const PaperTable& PaperTable::embedded() {
  static const PaperTable table = parse_csv(detail::kPaperTableCsv);
  return table;
}

std::string_view embedded_table_csv() { return detail::kPaperTableCsv; }

std::vector<double> PaperTable::falaleev_column() const { return column(rows_, &PaperRow::falaleev); }
std::vector<double> PaperTable::brutman_column() const { return column(rows_, &PaperRow::brutman); }
std::vector<double> PaperTable::bpes_column() const { return column(rows_, &PaperRow::bpes); }

}  // namespace landau

#pragma once

#include "landau/numeric_types.hpp"

#include <filesystem>
#include <string_view>
#include <vector>

namespace landau {

/// One transcribed row of the published comparison table, held exactly.
struct PaperRow {
  unsigned n = 0;
  Rational falaleev;
  Rational brutman;
  Rational bpes;
  Rational err_falaleev;
  Rational err_brutman;
};

/// Exactly 20 rows, n = 0..19, all value columns strictly increasing.
class PaperTable {
 public:
  static constexpr std::size_t kRows = 20;

  /// Throws MalformedTableError.
  explicit PaperTable(std::vector<PaperRow> rows);

  /// CSV with header n,falaleev,brutman,bpes,err_falaleev,err_brutman;
  /// lines starting with '#' are comments.
  static PaperTable parse_csv(std::string_view text);
  static PaperTable from_file(const std::filesystem::path& path);
  /// The transcription compiled into the library.
  static const PaperTable& embedded();

  const std::vector<PaperRow>& rows() const { return rows_; }

  std::vector<double> falaleev_column() const;
  std::vector<double> brutman_column() const;
  std::vector<double> bpes_column() const;

 private:
  std::vector<PaperRow> rows_;
};

/// Exact value of a decimal literal such as "1.30765E-9".
Rational parse_decimal(std::string_view text);

/// The embedded CSV text, byte for byte.
std::string_view embedded_table_csv();

}  // namespace landau

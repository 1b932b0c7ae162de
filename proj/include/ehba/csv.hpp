#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ehba {

// Shortest-round-trip, locale-independent rendering. Deterministic, so
// repeated runs produce byte-identical files.
std::string format_number(double v);
std::string format_number(std::int64_t v);
std::string format_number(std::uint64_t v);
std::string format_number(int v);

// Quotes a field when it contains a comma, quote or newline; embedded
// quotes are doubled.
std::string csv_field(const std::string& s);

// Emits the header on construction and enforces the column count on every
// row.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);

  void row(const std::vector<std::string>& fields);
  int rows() const { return rows_; }

 private:
  std::ostream& out_;
  std::size_t width_;
  int rows_ = 0;
};

}  // namespace ehba

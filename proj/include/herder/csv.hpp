#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace herder {

// Minimal CSV layer for the run artifacts. Files start with '#'-prefixed
// schema comment lines, then a header row, then data rows.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void comment(const std::string& text);
  void row(const std::vector<std::string>& fields);

  static std::string field(const std::string& value);  // quotes when needed
  static std::string field(std::int64_t value);
  static std::string field(std::uint64_t value);
  static std::string field(std::size_t value);
  static std::string field(double value);              // shortest round-trip
  static std::string field(std::optional<double> value);  // empty when unset

 private:
  std::ostream& out_;
};

struct CsvContent {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Parses what CsvWriter produces (quoting included); used by reports and the
// round-trip tests.
CsvContent parse_csv(std::istream& in);
CsvContent load_csv_file(const std::string& path);

}  // namespace herder

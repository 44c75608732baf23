#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "lfi/errors.hpp"
#include "lfi/types.hpp"

namespace lfi::cli {

/// File could not be opened, read or written.
class IoError : public DataError {
 public:
  using DataError::DataError;
};

/// Shortest decimal that parses back to the same double; "inf", "-inf", "nan" otherwise.
std::string format_double(double value);

/// Comma-separated writer: one header row, LF line endings.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);

  CsvWriter& cell(double value);
  CsvWriter& cell(long long value);
  CsvWriter& cell(const std::string& value);
  void end_row();

 private:
  std::ostream& out_;
  std::size_t columns_;
  std::size_t filled_ = 0;
};

/// Numeric CSV, one observation per row. A first line that does not parse as
/// numbers is taken as a header. Throws DataError naming the offending line.
DataMatrix read_numeric_csv(const std::filesystem::path& path);
DataMatrix parse_numeric_csv(std::istream& in);

}  // namespace lfi::cli

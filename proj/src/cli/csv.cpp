#include "lfi/cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

namespace lfi::cli {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

CsvWriter& CsvWriter::cell(double value) { return cell(format_double(value)); }

CsvWriter& CsvWriter::cell(long long value) { return cell(std::to_string(value)); }

CsvWriter& CsvWriter::cell(const std::string& value) {
  if (filled_ == columns_) throw PreconditionError("CSV row has more cells than the header");
  out_ << (filled_ ? "," : "") << value;
  ++filled_;
  return *this;
}

void CsvWriter::end_row() {
  if (filled_ != columns_) throw PreconditionError("CSV row has fewer cells than the header");
  out_ << '\n';
  filled_ = 0;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::optional<double> parse_field(std::string field) {
  const auto first = field.find_first_not_of(" \t");
  const auto last = field.find_last_not_of(" \t");
  if (first == std::string::npos) return std::nullopt;
  field = field.substr(first, last - first + 1);
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) return std::nullopt;
  return v;
}

}  // namespace

DataMatrix parse_numeric_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto fields = split_fields(line);
    std::vector<double> values;
    bool numeric = true;
    for (const auto& f : fields) {
      const auto v = parse_field(f);
      if (!v) {
        numeric = false;
        break;
      }
      values.push_back(*v);
    }
    if (!numeric) {
      if (rows.empty() && width == 0) {
        width = fields.size();  // header
        continue;
      }
      throw DataError("CSV parse error at line " + std::to_string(line_no) + ": non-numeric field");
    }
    if (width == 0) width = values.size();
    if (values.size() != width) {
      throw DataError("CSV parse error at line " + std::to_string(line_no) + ": expected " +
                      std::to_string(width) + " fields, found " + std::to_string(values.size()));
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw DataError("CSV contains no numeric rows");
  DataMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return out;
}

DataMatrix read_numeric_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_numeric_csv(in);
}

}  // namespace lfi::cli

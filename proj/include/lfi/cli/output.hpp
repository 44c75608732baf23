#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "lfi/types.hpp"

namespace lfi::cli {

enum class OutputFormat { csv, json };

using Cell = std::variant<double, long long, std::string>;

/// Column-named table written either as CSV or as a JSON array of row objects.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// Writes `table` to `directory/stem.{csv,json}` and returns the path written.
std::filesystem::path write_table(const Table& table, const std::filesystem::path& directory,
                                  const std::string& stem, OutputFormat format);

/// JSON value for a double; non-finite values become the strings "inf", "-inf", "nan".
nlohmann::json json_number(double value);
nlohmann::json json_vector(const Vector& v);

/// Weighted histogram of each column of `points` over its own range.
/// Rows: parameter, bin, lower, upper, mass, density. Weights must be normalized.
Table weighted_histogram(const Matrix& points, const Vector& weights,
                         const std::vector<std::string>& names, int bins);

}  // namespace lfi::cli

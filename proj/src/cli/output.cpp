#include "lfi/cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "lfi/cli/csv.hpp"
#include "lfi/errors.hpp"

namespace lfi::cli {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != header.size()) throw PreconditionError("table row width does not match header");
  rows.push_back(std::move(row));
}

nlohmann::json json_number(double value) {
  if (std::isfinite(value)) return value;
  return format_double(value);
}

nlohmann::json json_vector(const Vector& v) {
  auto out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(json_number(v(i)));
  return out;
}

std::filesystem::path write_table(const Table& table, const std::filesystem::path& directory,
                                  const std::string& stem, OutputFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw IoError("cannot create output directory " + directory.string() + ": " + ec.message());
  const auto path = directory / (stem + (format == OutputFormat::csv ? ".csv" : ".json"));
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());

  if (format == OutputFormat::csv) {
    CsvWriter writer(out, table.header);
    for (const auto& row : table.rows) {
      for (const auto& c : row) std::visit([&](const auto& v) { writer.cell(v); }, c);
      writer.end_row();
    }
  } else {
    auto arr = nlohmann::json::array();
    for (const auto& row : table.rows) {
      auto obj = nlohmann::json::object();
      for (std::size_t j = 0; j < row.size(); ++j) {
        std::visit(
            [&](const auto& v) {
              using T = std::decay_t<decltype(v)>;
              if constexpr (std::is_same_v<T, double>) {
                obj[table.header[j]] = json_number(v);
              } else {
                obj[table.header[j]] = v;
              }
            },
            row[j]);
      }
      arr.push_back(std::move(obj));
    }
    out << arr.dump(1) << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
  return path;
}

Table weighted_histogram(const Matrix& points, const Vector& weights,
                         const std::vector<std::string>& names, int bins) {
  if (bins < 1) throw PreconditionError("histogram needs at least one bin");
  if (weights.size() != points.rows()) throw PreconditionError("histogram weights size mismatch");
  if (static_cast<Eigen::Index>(names.size()) != points.cols()) {
    throw PreconditionError("histogram names size mismatch");
  }
  Table table{{"parameter", "bin", "lower", "upper", "mass", "density"}, {}};
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    double lo = INFINITY, hi = -INFINITY;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      if (weights(i) <= 0.0) continue;
      lo = std::min(lo, points(i, j));
      hi = std::max(hi, points(i, j));
    }
    if (!(lo <= hi)) continue;
    if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double width = (hi - lo) / bins;
    std::vector<double> mass(static_cast<std::size_t>(bins), 0.0);
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      if (weights(i) <= 0.0) continue;
      auto b = static_cast<int>(std::floor((points(i, j) - lo) / width));
      b = std::clamp(b, 0, bins - 1);
      mass[static_cast<std::size_t>(b)] += weights(i);
    }
    for (int b = 0; b < bins; ++b) {
      const double lower = lo + b * width;
      const double upper = b == bins - 1 ? hi : lo + (b + 1) * width;
      table.add_row({names[static_cast<std::size_t>(j)], static_cast<long long>(b), lower, upper,
                     mass[static_cast<std::size_t>(b)], mass[static_cast<std::size_t>(b)] / width});
    }
  }
  return table;
}

}  // namespace lfi::cli

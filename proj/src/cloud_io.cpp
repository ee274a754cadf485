#include "mgraph/cloud_io.hpp"

#include <charconv>
#include <optional>
#include <sstream>
#include <vector>

#include "mgraph/error.hpp"
#include "mgraph/graph_io.hpp"

namespace mgraph {

namespace {

std::string Trim(std::string s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::optional<std::vector<double>> ParseRow(const std::string& line) {
  std::vector<double> values;
  std::stringstream row(line);
  std::string cell;
  while (std::getline(row, cell, ',')) {
    cell = Trim(cell);
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), x);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) {
      return std::nullopt;
    }
    values.push_back(x);
  }
  return values;
}

std::vector<std::vector<double>> ParseTable(std::string_view text,
                                            bool allow_header) {
  std::vector<std::vector<double>> rows;
  std::stringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = Trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto row = ParseRow(line);
    if (!row) {
      if (allow_header && rows.empty() && line_no == 1) continue;
      throw Error(ErrorCode::kParse,
                  "malformed CSV row " + std::to_string(line_no));
    }
    rows.push_back(std::move(*row));
  }
  return rows;
}

}  // namespace

PointCloud ParseCloudCsv(std::string_view text) {
  auto rows = ParseTable(text, true);
  std::vector<std::vector<double>> points;
  std::vector<double> mass;
  for (auto& row : rows) {
    if (row.size() < 2) {
      throw Error(ErrorCode::kParse,
                  "cloud rows need at least one coordinate and a mass");
    }
    mass.push_back(row.back());
    row.pop_back();
    points.push_back(std::move(row));
  }
  return PointCloud::FromCoordinates(std::move(points), std::move(mass));
}

PointCloud LoadCloudCsv(const std::string& path) {
  return ParseCloudCsv(ReadFile(path));
}

PointCloud ParseDistanceMatrixCsv(std::string_view matrix,
                                  std::string_view masses) {
  auto dist = ParseTable(matrix, false);
  std::vector<double> mass;
  for (const auto& row : ParseTable(masses, true)) {
    mass.insert(mass.end(), row.begin(), row.end());
  }
  return PointCloud::FromDistanceMatrix(std::move(dist), std::move(mass));
}

PointCloud LoadDistanceMatrixCsv(const std::string& matrix_path,
                                 const std::string& masses_path) {
  return ParseDistanceMatrixCsv(ReadFile(matrix_path), ReadFile(masses_path));
}

}  // namespace mgraph

#pragma once

#include <string>
#include <string_view>

#include "mgraph/discretize.hpp"

namespace mgraph {

// Point-cloud CSV: one row per point, columns x1..xd,mass. A first row that
// does not parse as numbers is treated as a header.
PointCloud ParseCloudCsv(std::string_view text);
PointCloud LoadCloudCsv(const std::string& path);

// Square distance-matrix CSV plus a masses sidecar (one value per row, or a
// single comma-separated row).
PointCloud ParseDistanceMatrixCsv(std::string_view matrix,
                                  std::string_view masses);
PointCloud LoadDistanceMatrixCsv(const std::string& matrix_path,
                                 const std::string& masses_path);

}  // namespace mgraph

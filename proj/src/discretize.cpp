#include "mgraph/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "mgraph/error.hpp"
#include "mgraph/mincut.hpp"

namespace mgraph {

namespace {

void RequirePositiveMasses(const std::vector<double>& mass) {
  for (std::size_t i = 0; i < mass.size(); ++i) {
    if (!(mass[i] > 0.0) || !std::isfinite(mass[i])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "non-positive mass at cloud point " + std::to_string(i));
    }
  }
}

}  // namespace

PointCloud PointCloud::FromCoordinates(std::vector<std::vector<double>> points,
                                       std::vector<double> mass) {
  if (points.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "point cloud is empty");
  }
  if (points.size() != mass.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "point and mass counts differ");
  }
  RequirePositiveMasses(mass);
  PointCloud cloud;
  cloud.dimension_ = points.front().size();
  if (cloud.dimension_ == 0) {
    throw Error(ErrorCode::kInvalidArgument, "points need at least one coordinate");
  }
  cloud.coords_.reserve(points.size() * cloud.dimension_);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != cloud.dimension_) {
      throw Error(ErrorCode::kInvalidArgument,
                  "point " + std::to_string(i) + " has dimension " +
                      std::to_string(points[i].size()));
    }
    cloud.coords_.insert(cloud.coords_.end(), points[i].begin(),
                         points[i].end());
  }
  cloud.mass_ = std::move(mass);
  return cloud;
}

PointCloud PointCloud::FromDistanceMatrix(
    std::vector<std::vector<double>> dist, std::vector<double> mass) {
  const std::size_t n = dist.size();
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "point cloud is empty");
  if (mass.size() != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "distance matrix and mass counts differ");
  }
  RequirePositiveMasses(mass);
  PointCloud cloud;
  cloud.matrix_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i].size() != n) {
      throw Error(ErrorCode::kInvalidArgument, "distance matrix is not square");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double d = dist[i][j];
      if (!(d >= 0.0) || !std::isfinite(d)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "invalid distance at (" + std::to_string(i) + ", " +
                        std::to_string(j) + ")");
      }
      cloud.matrix_[i * n + j] = d;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i][i] != 0.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "nonzero diagonal at " + std::to_string(i));
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(dist[i][j] - dist[j][i]) >
          1e-12 * std::max(1.0, dist[i][j])) {
        throw Error(ErrorCode::kInvalidArgument,
                    "distance matrix is not symmetric at (" +
                        std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
  // Deterministic spot check of the triangle inequality.
  const std::size_t stride = std::max<std::size_t>(1, n / 16);
  for (std::size_t i = 0; i < n; i += stride) {
    for (std::size_t j = 0; j < n; j += stride) {
      for (std::size_t k = 0; k < n; k += stride) {
        if (dist[i][k] > dist[i][j] + dist[j][k] + 1e-9) {
          throw Error(ErrorCode::kInvalidArgument,
                      "triangle inequality fails for (" + std::to_string(i) +
                          ", " + std::to_string(j) + ", " +
                          std::to_string(k) + ")");
        }
      }
    }
  }
  cloud.mass_ = std::move(mass);
  return cloud;
}

double PointCloud::TotalMass() const {
  return std::accumulate(mass_.begin(), mass_.end(), 0.0);
}

double PointCloud::Distance(std::size_t i, std::size_t j) const {
  if (dimension_ == 0) return matrix_[i * size() + j];
  const double* a = coords_.data() + i * dimension_;
  const double* b = coords_.data() + j * dimension_;
  double sum = 0.0;
  for (std::size_t k = 0; k < dimension_; ++k) {
    const double diff = a[k] - b[k];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

double PointCloud::BallMass(std::size_t center, double radius,
                            std::span<const double> weights) const {
  if (weights.empty()) weights = mass_;
  double total = 0.0;
  for (std::size_t j = 0; j < size(); ++j) {
    if (Distance(center, j) <= radius) total += weights[j];
  }
  return total;
}

std::size_t PointCloud::Nearest(std::span<const double> coordinates) const {
  if (dimension_ == 0 || coordinates.size() != dimension_) {
    throw Error(ErrorCode::kInvalidArgument,
                "coordinate lookup needs a " + std::to_string(dimension_) +
                    "-dimensional point cloud");
  }
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size(); ++i) {
    double sum = 0.0;
    for (std::size_t k = 0; k < dimension_; ++k) {
      const double diff = coords_[i * dimension_ + k] - coordinates[k];
      sum += diff * diff;
    }
    if (sum < best_d) {
      best_d = sum;
      best = i;
    }
  }
  return best;
}

NetGraph BuildNet(const PointCloud& cloud, double r,
                  std::span<const double> weights) {
  if (!(r > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "net scale r must be positive");
  }
  if (weights.empty()) weights = cloud.masses();
  if (weights.size() != cloud.size()) {
    throw Error(ErrorCode::kInvalidArgument, "weight count differs from cloud");
  }

  NetGraph net;
  net.r = r;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    bool separated = true;
    for (std::size_t v : net.net_indices) {
      if (cloud.Distance(i, v) < r) {
        separated = false;
        break;
      }
    }
    if (separated) net.net_indices.push_back(i);
  }

  const std::size_t k = net.net_indices.size();
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<std::string> labels;
  std::vector<double> mu(k, 0.0);
  labels.reserve(k);
  for (std::size_t a = 0; a < k; ++a) {
    labels.push_back("p" + std::to_string(net.net_indices[a]));
  }
  for (std::size_t j = 0; j < cloud.size(); ++j) {
    for (std::size_t a = 0; a < k; ++a) {
      if (cloud.Distance(net.net_indices[a], j) <= 3.0 * r) mu[a] += weights[j];
    }
  }
  for (double& m : mu) m = std::max(m, 1e-12 * total);

  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      if (cloud.Distance(net.net_indices[a], net.net_indices[b]) <= 3.0 * r) {
        edges.emplace_back(a, b);
      }
    }
  }
  net.graph = MeasureGraph(std::move(labels), std::move(mu), edges);
  return net;
}

VertexSet TransferSet(const PointCloud& cloud, const NetGraph& net,
                      const std::vector<char>& indicator) {
  if (indicator.size() != cloud.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "indicator length differs from cloud size");
  }
  std::vector<std::size_t> marked;
  for (std::size_t j = 0; j < cloud.size(); ++j) {
    if (indicator[j]) marked.push_back(j);
  }
  VertexSet out(net.net_indices.size());
  for (Vertex a = 0; a < net.net_indices.size(); ++a) {
    for (std::size_t j : marked) {
      if (cloud.Distance(net.net_indices[a], j) < 2.0 * net.r) {
        out.insert(a);
        break;
      }
    }
  }
  return out;
}

Vertex NearestNetVertex(const PointCloud& cloud, const NetGraph& net,
                        std::size_t cloud_index) {
  Vertex best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Vertex a = 0; a < net.net_indices.size(); ++a) {
    const double d = cloud.Distance(net.net_indices[a], cloud_index);
    if (d < best_d) {
      best_d = d;
      best = a;
    }
  }
  return best;
}

double RieszWeights::Total() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

namespace {

// Closed-ball masses around a center for every radius d(center, z), via one
// sort of the distances and prefix sums.
std::vector<double> BallMassesAtOwnDistance(const PointCloud& cloud,
                                            std::size_t center) {
  const std::size_t n = cloud.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> dist(n);
  for (std::size_t j = 0; j < n; ++j) dist[j] = cloud.Distance(center, j);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
  std::vector<double> out(n);
  double running = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    double block = 0.0;
    while (j < n && dist[order[j]] == dist[order[i]]) block += cloud.mass(order[j++]);
    running += block;
    for (std::size_t k = i; k < j; ++k) out[order[k]] = running;
    i = j;
  }
  return out;
}

}  // namespace

RieszWeights ComputeRieszWeights(const PointCloud& cloud, std::size_t x,
                                 std::size_t y, double L) {
  if (x >= cloud.size() || y >= cloud.size()) {
    throw Error(ErrorCode::kInvalidArgument, "pole index out of range");
  }
  if (!(L >= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "truncation L must be >= 1");
  }
  const double dxy = cloud.Distance(x, y);
  if (x == y || !(dxy > 0.0)) {
    throw Error(ErrorCode::kCoincidentPoles, "Riesz poles coincide");
  }
  const std::vector<double> ball_x = BallMassesAtOwnDistance(cloud, x);
  const std::vector<double> ball_y = BallMassesAtOwnDistance(cloud, y);
  const double reach = 2.0 * L * dxy;

  RieszWeights out;
  out.x = x;
  out.y = y;
  out.L = L;
  out.weights.assign(cloud.size(), 0.0);
  for (std::size_t z = 0; z < cloud.size(); ++z) {
    if (z == x || z == y) continue;
    const double dx = cloud.Distance(x, z);
    const double dy = cloud.Distance(y, z);
    if (dx > reach && dy > reach) continue;
    const double potential = dx / ball_x[z] + dy / ball_y[z];
    out.weights[z] = potential * cloud.mass(z);
  }
  return out;
}

double EstimateDoubling(const PointCloud& cloud, std::size_t samples,
                        const DoublingOptions& options) {
  const std::size_t n = cloud.size();
  if (n <= 1) return 1.0;

  std::vector<std::size_t> centers = options.centers;
  if (centers.empty()) {
    const std::size_t count = std::clamp<std::size_t>(samples, 1, n);
    for (std::size_t k = 0; k < count; ++k) {
      centers.push_back(count == 1 ? 0 : k * (n - 1) / (count - 1));
    }
  }

  double lo = 0.0;
  double hi = 0.0;
  if (!options.min_radius || !options.max_radius) {
    double min_d = std::numeric_limits<double>::infinity();
    double diameter = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = cloud.Distance(i, j);
        if (d > 0.0) min_d = std::min(min_d, d);
        diameter = std::max(diameter, d);
      }
    }
    if (!(diameter > 0.0)) return 1.0;
    lo = min_d;
    hi = diameter / 2.0;
  }
  if (options.min_radius) lo = *options.min_radius;
  if (options.max_radius) hi = *options.max_radius;
  hi = std::max(hi, lo);

  const std::size_t steps = std::max<std::size_t>(options.radius_steps, 1);
  std::vector<double> radii;
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = steps == 1 ? 0.0 : static_cast<double>(k) / (steps - 1);
    radii.push_back(lo * std::pow(hi / lo, t));
  }

  double best = 1.0;
  std::vector<double> dist(n);
  for (std::size_t c : centers) {
    for (std::size_t j = 0; j < n; ++j) dist[j] = cloud.Distance(c, j);
    for (double rho : radii) {
      double inner = 0.0;
      double outer = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (dist[j] <= rho) inner += cloud.mass(j);
        if (dist[j] <= 2.0 * rho) outer += cloud.mass(j);
      }
      best = std::max(best, outer / inner);
    }
  }
  return best;
}

std::vector<ExperimentRow> RunNetExperiment(const PointCloud& cloud,
                                            const ExperimentConfig& config) {
  if (config.r_schedule.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty r schedule");
  }
  for (std::size_t k = 1; k < config.r_schedule.size(); ++k) {
    if (!(config.r_schedule[k] < config.r_schedule[k - 1])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "r schedule must be strictly decreasing");
    }
  }
  if (config.x >= cloud.size() || config.y >= cloud.size()) {
    throw Error(ErrorCode::kInvalidArgument, "terminal index out of range");
  }

  std::vector<double> weights;
  if (config.weighting == Weighting::kRiesz) {
    weights = ComputeRieszWeights(cloud, config.x, config.y, config.L).weights;
  }

  std::vector<ExperimentRow> rows;
  for (double r : config.r_schedule) {
    NetGraph net = BuildNet(cloud, r, weights);
    TerminalPair t{NearestNetVertex(cloud, net, config.x),
                   NearestNetVertex(cloud, net, config.y)};
    if (t.source == t.sink) {
      throw Error(ErrorCode::kTerminalsMerged,
                  "both terminals map to net vertex " +
                      net.graph.label(t.source) + " at r = " +
                      std::to_string(r));
    }
    VertexSet set = TransferSet(cloud, net, config.indicator);

    ExperimentRow row;
    row.r = r;
    row.net_size = net.graph.vertex_count();
    row.sr = DiscSr(net.graph, t, set);
    row.width = row.sr.width;
    row.sr_over_r = row.sr.value / r;
    row.cut_value = MinVertexCut(net.graph, t).value;
    row.cut_over_r = row.cut_value / r;
    rows.push_back(row);
  }
  return rows;
}

std::vector<char> EvaluateRegion(const PointCloud& cloud,
                                 const std::string& spec) {
  if (!cloud.has_coordinates()) {
    throw Error(ErrorCode::kInvalidArgument,
                "geometric sets need a coordinate point cloud");
  }
  const std::size_t d = cloud.dimension();
  struct Term {
    bool box = true;
    std::vector<double> values;
  };
  std::vector<Term> terms;
  std::stringstream all(spec);
  std::string piece;
  while (std::getline(all, piece, ';')) {
    if (piece.empty()) continue;
    const auto colon = piece.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorCode::kParse, "region term '" + piece + "' lacks a kind");
    }
    Term term;
    const std::string kind = piece.substr(0, colon);
    if (kind == "box") {
      term.box = true;
    } else if (kind == "half") {
      term.box = false;
    } else {
      throw Error(ErrorCode::kParse, "unknown region kind '" + kind + "'");
    }
    std::stringstream numbers(piece.substr(colon + 1));
    std::string token;
    while (std::getline(numbers, token, ',')) {
      try {
        term.values.push_back(std::stod(token));
      } catch (const std::exception&) {
        throw Error(ErrorCode::kParse, "bad number '" + token + "'");
      }
    }
    const std::size_t expected = term.box ? 2 * d : d + 1;
    if (term.values.size() != expected) {
      throw Error(ErrorCode::kParse, "region term '" + piece + "' needs " +
                                         std::to_string(expected) + " numbers");
    }
    terms.push_back(std::move(term));
  }

  std::vector<char> out(cloud.size(), 0);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto p = cloud.point(i);
    for (const Term& term : terms) {
      bool inside = true;
      if (term.box) {
        for (std::size_t k = 0; k < d && inside; ++k) {
          inside = p[k] >= term.values[2 * k] && p[k] <= term.values[2 * k + 1];
        }
      } else {
        double dot = 0.0;
        for (std::size_t k = 0; k < d; ++k) dot += term.values[k] * p[k];
        inside = dot <= term.values[d];
      }
      if (inside) {
        out[i] = 1;
        break;
      }
    }
  }
  return out;
}

}  // namespace mgraph

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mgraph/graph.hpp"
#include "mgraph/separation.hpp"

namespace mgraph {

/// Finite metric measure space: weighted samples with either coordinates
/// (Euclidean distance) or an explicit distance matrix. All balls are closed.
class PointCloud {
 public:
  /// Throws Error(kInvalidArgument) on ragged rows or non-positive masses.
  static PointCloud FromCoordinates(std::vector<std::vector<double>> points,
                                    std::vector<double> mass);
  /// Validates symmetry, zero diagonal, nonnegativity and spot-checks the
  /// triangle inequality on a deterministic sample of triples.
  static PointCloud FromDistanceMatrix(std::vector<std::vector<double>> dist,
                                       std::vector<double> mass);

  std::size_t size() const { return mass_.size(); }
  bool has_coordinates() const { return dimension_ > 0; }
  std::size_t dimension() const { return dimension_; }
  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dimension_, dimension_};
  }
  double mass(std::size_t i) const { return mass_[i]; }
  std::span<const double> masses() const { return mass_; }
  double TotalMass() const;

  double Distance(std::size_t i, std::size_t j) const;
  /// Sum of `weights` over the closed ball; weights default to the masses.
  double BallMass(std::size_t center, double radius,
                  std::span<const double> weights = {}) const;
  /// Nearest sample to an arbitrary coordinate point, ties to lowest index.
  std::size_t Nearest(std::span<const double> coordinates) const;

 private:
  PointCloud() = default;

  std::size_t dimension_ = 0;
  std::vector<double> coords_;
  std::vector<double> matrix_;
  std::vector<double> mass_;
};

/// Measure graph on a maximal r-separated subset of a cloud.
struct NetGraph {
  MeasureGraph graph;
  /// Cloud index of each net vertex.
  std::vector<std::size_t> net_indices;
  double r = 0.0;
};

/// Greedy scan in input order: a point joins the net iff it is at distance
/// >= r from every point already admitted. Net vertices are joined when
/// their distance is <= 3r and carry mu(v) = weight of the closed 3r-ball.
/// `weights` replaces the cloud masses when given (e.g. Riesz weights);
/// vertices whose ball weight vanishes get a floor of 1e-12 times the total
/// weight so the graph stays a measure graph.
NetGraph BuildNet(const PointCloud& cloud, double r,
                  std::span<const double> weights = {});

/// Net vertices at distance < 2r from some indicated cloud point.
VertexSet TransferSet(const PointCloud& cloud, const NetGraph& net,
                      const std::vector<char>& indicator);

/// Nearest net vertex to a cloud point, ties to the lowest vertex index.
Vertex NearestNetVertex(const PointCloud& cloud, const NetGraph& net,
                        std::size_t cloud_index);

struct RieszWeights {
  std::size_t x = 0;
  std::size_t y = 0;
  double L = 1.0;
  /// R^L_{x,y}(z) * mass(z) per cloud point.
  std::vector<double> weights;

  double Total() const;
};

/// L-truncated two-pole Riesz potential times the sample mass:
///   R(z) = d(x,z) / m(B_{d(x,z)}(x)) + d(y,z) / m(B_{d(y,z)}(y))
/// inside B_{2Ld(x,y)}(x) ∪ B_{2Ld(x,y)}(y), zero outside and at the poles.
/// Throws Error(kCoincidentPoles) when d(x, y) = 0 and
/// Error(kInvalidArgument) for L < 1.
RieszWeights ComputeRieszWeights(const PointCloud& cloud, std::size_t x,
                                 std::size_t y, double L);

struct DoublingOptions {
  /// Ball centers; empty selects `samples` evenly spaced cloud indices.
  std::vector<std::size_t> centers;
  /// Radius range; unset selects [min pairwise distance, diameter / 2].
  std::optional<double> min_radius;
  std::optional<double> max_radius;
  std::size_t radius_steps = 24;
};

/// max over sampled (center, radius) of m(B_2rho) / m(B_rho); a lower
/// estimate of the doubling constant. A single point gives 1.
double EstimateDoubling(const PointCloud& cloud, std::size_t samples,
                        const DoublingOptions& options = {});

enum class Weighting { kPlain, kRiesz };

struct ExperimentConfig {
  std::size_t x = 0;
  std::size_t y = 0;
  std::vector<char> indicator;
  /// Strictly decreasing scales.
  std::vector<double> r_schedule;
  Weighting weighting = Weighting::kPlain;
  double L = 1.0;
};

struct ExperimentRow {
  double r = 0.0;
  std::size_t net_size = 0;
  ExtendedCount width;
  RatioValue sr;
  /// disc-SR(A_r) / r, with the ratio conventions carried through.
  double sr_over_r = 0.0;
  double cut_value = 0.0;
  double cut_over_r = 0.0;
};

/// For each r: build the net (optionally Riesz-weighted), map the poles to
/// their nearest net vertices, transfer the set and record width, SR/r and
/// min-cut/r. Throws Error(kTerminalsMerged) when both poles land on the
/// same net vertex and Error(kInvalidArgument) for a non-decreasing
/// schedule.
std::vector<ExperimentRow> RunNetExperiment(const PointCloud& cloud,
                                            const ExperimentConfig& config);

/// Point predicates for sets given geometrically: a union of axis-aligned
/// boxes and half-planes, as ';'-separated terms:
///   box:lo1,hi1,lo2,hi2,...     (one lo/hi pair per coordinate)
///   half:a1,...,ad,c            (a . x <= c)
std::vector<char> EvaluateRegion(const PointCloud& cloud,
                                 const std::string& spec);

}  // namespace mgraph

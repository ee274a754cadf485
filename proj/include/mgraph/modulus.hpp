#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mgraph/graph.hpp"
#include "mgraph/mincut.hpp"

namespace mgraph {

/// Nonnegative vertex density. Admissible for a path family when every path
/// has rho-length (sum over its distinct vertices) at least 1.
struct Density {
  std::vector<double> rho;
};

struct RhoPath {
  GraphPath path;
  double length = 0.0;
};

/// Vertex-weighted Dijkstra from v to w, both endpoints weighted. Ties are
/// broken towards the smaller vertex index. Throws Error(kNoPath).
RhoPath ShortestRhoPath(const MeasureGraph& g, const TerminalPair& t,
                        const Density& rho);

struct ModulusOptions {
  double tol = 1e-6;
  /// Outer cutting-plane rounds; 0 selects 10 |V|^2.
  std::size_t max_iterations = 0;
};

struct ModulusResult {
  double p = 1.0;
  /// sum_z mu(z) rho(z)^p at the admissible density.
  double value = 0.0;
  /// Lower bound from the dual multipliers.
  double dual_value = 0.0;
  Density rho;
  std::vector<GraphPath> active_paths;
  /// One multiplier per active path.
  std::vector<double> multipliers;
  double gap = 0.0;
  std::size_t iterations = 0;
};

/// Discrete p-modulus of the v->w path family with vertex densities.
///
/// For p > 1 this is a cutting-plane method: the restricted problem over the
/// active paths is solved in the dual by exact coordinate ascent on the
/// multipliers, with the primal recovered from the stationarity condition
///   rho(z) = (sum_{c ∋ z} lambda_c / (p mu(z)))^(1 / (p - 1)).
/// The separation oracle is ShortestRhoPath; a violated path joins the active
/// set. On exit rho is rescaled by its shortest path length so that it is
/// admissible for every path, and `gap` is the certified relative gap between
/// that primal value and the dual bound.
///
/// For p = 1 the value is the minimum vertex cut, rho the cut indicator and
/// the multipliers the path flows of the max-flow decomposition.
///
/// Throws Error(kNoPath), Error(kInvalidArgument) for p < 1, and
/// Error(kNonConvergence) when the iteration cap is reached.
ModulusResult ModulusP(const MeasureGraph& g, const TerminalPair& t, double p,
                       const ModulusOptions& options = {});

/// Normalizes the multipliers to a probability measure on the active paths.
/// Throws Error(kDegenerateDuals) when every multiplier is zero.
PathPencil PencilFromDuals(const ModulusResult& result);

struct PencilConstant {
  /// max over sampled g >= 0 of (sum_c alpha(c) sum_{z in c} g(z))^p /
  /// sum_z g(z)^p mu(z).
  double empirical = 0.0;
  /// The Hölder bound on the same ratio; empirical never exceeds it.
  double holder = 0.0;
};

PencilConstant EstimatePencilConstant(const MeasureGraph& g,
                                      const PathPencil& pencil, double p,
                                      std::size_t samples, std::uint64_t seed);

}  // namespace mgraph

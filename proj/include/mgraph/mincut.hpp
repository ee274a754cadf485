#pragma once

#include <vector>

#include "mgraph/graph.hpp"

namespace mgraph {

/// Minimum-mass separating set together with its max-flow certificate.
struct CutResult {
  double value = 0.0;
  VertexSet cut;
  double flow_value = 0.0;
  /// Net flow through each vertex (the load on its split arc).
  std::vector<double> vertex_flow;
};

/// Minimum-mass vertex set meeting every v->w path, terminals included as
/// candidates. Vertex-split network: z_in -> z_out with capacity mu(z), each
/// edge {u, z} as u_out -> z_in and z_out -> u_in with infinite capacity;
/// Dinic from v_in to w_out. Disconnected terminals give value 0 and an
/// empty cut.
CutResult MinVertexCut(const MeasureGraph& g, const TerminalPair& t);

/// Probability measure on v->w paths obtained by decomposing a maximum flow.
struct PathPencil {
  struct Entry {
    GraphPath path;
    double weight = 0.0;
  };
  std::vector<Entry> paths;
  double total_weight = 0.0;
  /// C with sum_c alpha(c) #(c ∩ A) <= C mu(A) for every A.
  double capacity_bound = 0.0;
};

/// Decomposes the maximum flow into simple paths, extracting the
/// lexicographically least path of the acyclic flow support first and
/// subtracting its bottleneck. Weights are normalized to sum to 1 and the
/// bound is 1/F. Throws Error(kZeroFlow) when the max flow is 0.
PathPencil PencilFromFlow(const MeasureGraph& g, const TerminalPair& t);

/// Per-vertex load sum_{c ∋ z} alpha(c).
std::vector<double> PencilLoad(const MeasureGraph& g, const PathPencil& pencil);

/// sum_c alpha(c) #(c ∩ A).
double PencilCrossing(const PathPencil& pencil, const VertexSet& set);

}  // namespace mgraph

#pragma once

// Exhaustive reference implementations. Nothing here calls into the
// production separation, cut or modulus code: these are the ground truth the
// fast paths are checked against, so they stay slow and literal.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mgraph/graph.hpp"

namespace mgraph::oracle {

/// All simple v->w paths, in lexicographic order of their vertex sequences.
struct PathCatalog {
  std::vector<GraphPath> paths;
  /// Vertex-membership bitmask of each path.
  std::vector<std::uint64_t> masks;
};

/// DFS with visited-set pruning. Throws Error(kCapExceeded) above
/// `max_vertices` vertices.
PathCatalog EnumerateSimplePaths(const MeasureGraph& g, const TerminalPair& t,
                                 std::size_t max_vertices = 12);

/// Reachability by boolean transitive closure.
VertexSet BruteComponent(const MeasureGraph& g, Vertex v);

/// min over the catalog of #(c ∩ A); infinity on an empty catalog.
ExtendedCount BruteWidth(const MeasureGraph& g, const TerminalPair& t,
                         const VertexSet& set);
ExtendedCount BruteWidth(const PathCatalog& catalog, const VertexSet& set);

/// Position of every vertex by minimizing, over enumerated simple paths from
/// v, the number of set vertices up to z. Infinite off the component that
/// joins v and w, and everywhere when w is unreachable.
std::vector<ExtendedCount> BrutePositions(const MeasureGraph& g,
                                          const TerminalPair& t,
                                          const VertexSet& set,
                                          std::size_t max_vertices = 12);

struct SubsetOptimum {
  double value = 0.0;
  VertexSet witness;
  ExtendedCount witness_width;
};

/// min mu(A) over all separating subsets; lexicographically least witness
/// among the minimizers. Throws Error(kCapExceeded) above 16 vertices.
SubsetOptimum BruteMinSeparatingMass(const MeasureGraph& g,
                                     const TerminalPair& t);

/// inf over all subsets of disc-SR computed with BruteWidth.
SubsetOptimum BruteMinSr(const MeasureGraph& g, const TerminalPair& t);

/// Mod_p of the v->w family over every enumerated simple path (p > 1: dual
/// projected-gradient ascent, returning the final dual value; p = 1: cheapest
/// vertex set hitting every path). Throws Error(kCapExceeded) above 8 vertices.
double BruteModulus(const MeasureGraph& g, const TerminalPair& t, double p);

/// Mod_p of an explicit finite path family.
double BruteModulus(const MeasureGraph& g, const PathCatalog& family, double p);

/// The four slim conditions for a separating set inside the terminal
/// component, each computed by its own route:
///   (i)   every z in A is the first A-point of some v->w walk
///         (BFS avoiding A up to z, then reachability of w);
///   (ii)  pos_A == 1 on A (caller supplies positions from any source);
///   (iii) pos_A takes values in {0, 1, inf} (enumerated positions);
///   (iv)  every component point lies on a v->w walk whose part up to that
///         point meets A at most once (state-space BFS on walks).
/// `literal_iv` is the stronger reading in which the whole walk meets A at
/// most once.
struct SlimConditions {
  bool i = false;
  bool ii = false;
  bool iii = false;
  bool iv = false;
  bool literal_iv = false;
};

SlimConditions CheckSlimConditions(const MeasureGraph& g,
                                   const TerminalPair& t, const VertexSet& set,
                                   const std::vector<ExtendedCount>& positions);

}  // namespace mgraph::oracle

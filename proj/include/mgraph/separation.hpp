#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mgraph/graph.hpp"

namespace mgraph {

/// Least number of set vertices met by a walk from `source` to each vertex,
/// both endpoints counted. Unreachable vertices get infinity. 0/1 deque
/// relaxation, O(V + E).
std::vector<ExtendedCount> SetHitDistances(const MeasureGraph& g,
                                           Vertex source,
                                           const VertexSet& set);

/// Minimum over v->w paths of the number of distinct set vertices on the
/// path, terminals included. Infinity when no path joins the terminals.
ExtendedCount DiscWidth(const MeasureGraph& g, const TerminalPair& t,
                        const VertexSet& set);

/// Width >= 1. Every set separates terminals that are not connected.
bool IsSeparating(const MeasureGraph& g, const TerminalPair& t,
                  const VertexSet& set);

struct RatioValue {
  enum class Kind {
    kFinite,            // mass / width
    kZeroByConvention,  // no path joins the terminals
    kInfinite,          // set does not separate
  };

  Kind kind = Kind::kFinite;
  double value = 0.0;
  ExtendedCount width;
  double mass = 0.0;

  bool is_infinite() const { return kind == Kind::kInfinite; }
};

RatioValue DiscSr(const MeasureGraph& g, const TerminalPair& t,
                  const VertexSet& set);

/// pos_A: for each z, the least number of A-vertices any v->w path has
/// accumulated up to (and including) a visit of z.
struct PositionField {
  TerminalPair terminals;
  VertexSet set;
  std::vector<ExtendedCount> values;

  ExtendedCount operator[](Vertex z) const { return values[z]; }
};

PositionField ComputePositionField(const MeasureGraph& g, const TerminalPair& t,
                                   const VertexSet& set);

/// Level sets A_i = A ∩ {pos_A = i}, i = 1..width(A).
struct Fibration {
  std::vector<VertexSet> levels;
  /// Smallest index among the minimal-mass levels (0-based).
  std::size_t chosen = 0;
  std::vector<double> level_mass;
};

/// Throws Error(kNoPath) when the terminals are not connected and
/// Error(kNotSeparating) when width(A) = 0.
Fibration Fibrate(const MeasureGraph& g, const TerminalPair& t,
                  const VertexSet& set);

/// A ∩ {pos_A = 1}. Same preconditions and errors as Fibrate.
VertexSet Slimify(const MeasureGraph& g, const TerminalPair& t,
                  const VertexSet& set);

struct SlimCheck {
  bool slim = false;
  /// A vertex of the set whose position differs from 1.
  std::optional<Vertex> set_witness;
  /// A component vertex of position >= 2: every path through it has already
  /// crossed the set twice.
  std::optional<Vertex> component_witness;
};

/// Tests slimness of A ∩ component(v, w) through the position field.
/// Throws Error(kNoPath) for disconnected terminals and
/// Error(kNotSeparating) when the set does not separate.
SlimCheck IsSlim(const MeasureGraph& g, const TerminalPair& t,
                 const VertexSet& set);

}  // namespace mgraph

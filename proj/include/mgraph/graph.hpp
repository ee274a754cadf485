#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mgraph {

using Vertex = std::size_t;

/// A natural number or +infinity. Addition saturates at infinity.
class ExtendedCount {
 public:
  constexpr ExtendedCount() = default;
  constexpr explicit ExtendedCount(std::uint64_t value) : value_(value) {}

  static constexpr ExtendedCount Infinity() {
    ExtendedCount c;
    c.value_ = kInf;
    return c;
  }

  constexpr bool is_infinite() const { return value_ == kInf; }
  constexpr bool is_finite() const { return value_ != kInf; }
  /// Only meaningful when finite.
  constexpr std::uint64_t value() const { return value_; }

  constexpr ExtendedCount operator+(ExtendedCount other) const {
    if (is_infinite() || other.is_infinite()) return Infinity();
    return ExtendedCount(value_ + other.value_);
  }

  constexpr auto operator<=>(const ExtendedCount&) const = default;

  std::string ToString() const;

 private:
  static constexpr std::uint64_t kInf =
      std::numeric_limits<std::uint64_t>::max();
  std::uint64_t value_ = 0;
};

constexpr bool operator==(ExtendedCount a, std::uint64_t b) {
  return a.is_finite() && a.value() == b;
}

/// Dense membership over the vertex indices 0..universe-1.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : bits_(universe, 0) {}
  VertexSet(std::size_t universe, std::initializer_list<Vertex> members);

  static VertexSet FromMembers(std::size_t universe,
                               std::span<const Vertex> members);
  static VertexSet FromMask(std::size_t universe, std::uint64_t mask);

  std::size_t universe() const { return bits_.size(); }
  bool contains(Vertex z) const { return z < bits_.size() && bits_[z] != 0; }
  void insert(Vertex z);
  void erase(Vertex z);

  std::size_t count() const;
  bool empty() const { return count() == 0; }
  /// Members in increasing index order.
  std::vector<Vertex> members() const;
  /// Requires universe() <= 64.
  std::uint64_t mask() const;

  bool IsSubsetOf(const VertexSet& other) const;
  VertexSet Intersect(const VertexSet& other) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<char> bits_;
};

struct TerminalPair {
  Vertex source = 0;
  Vertex sink = 0;
};

/// Vertex sequence q_0..q_N with consecutive vertices adjacent.
struct GraphPath {
  std::vector<Vertex> vertices;

  friend bool operator==(const GraphPath&, const GraphPath&) = default;
  friend auto operator<=>(const GraphPath&, const GraphPath&) = default;
};

/// Undirected graph with strictly positive vertex masses. Immutable once
/// built; vertex indices are dense and follow insertion order.
class MeasureGraph {
 public:
  MeasureGraph() = default;

  /// Validates masses, endpoints, self-loops and duplicate edges/labels and
  /// throws Error(kInvalidArgument) naming the offending id.
  MeasureGraph(std::vector<std::string> labels, std::vector<double> mu,
               const std::vector<std::pair<Vertex, Vertex>>& edges);

  /// Convenience for tests and generators: labels are "0", "1", ...
  static MeasureGraph WithIndexLabels(
      std::vector<double> mu,
      const std::vector<std::pair<Vertex, Vertex>>& edges);

  std::size_t vertex_count() const { return mu_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::string& label(Vertex z) const { return labels_[z]; }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Throws Error(kInvalidArgument) for an unknown label.
  Vertex IndexOf(const std::string& label) const;
  bool HasLabel(const std::string& label) const {
    return index_.contains(label);
  }

  double mu(Vertex z) const { return mu_[z]; }
  std::span<const double> masses() const { return mu_; }
  double Mass(const VertexSet& set) const;
  double TotalMass() const;

  /// Neighbors sorted by increasing index.
  std::span<const Vertex> neighbors(Vertex z) const { return adjacency_[z]; }
  bool Adjacent(Vertex a, Vertex b) const;
  /// Edges in construction order, as given.
  const std::vector<std::pair<Vertex, Vertex>>& edges() const {
    return edges_;
  }

  /// Throws Error(kInvalidArgument) when z is out of range.
  void CheckVertex(Vertex z) const;
  void CheckTerminals(const TerminalPair& t) const;

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Vertex> index_;
  std::vector<double> mu_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
};

bool IsValidPath(const MeasureGraph& g, const GraphPath& path);

/// All vertices reachable from v (BFS), including v.
VertexSet ConnectedComponent(const MeasureGraph& g, Vertex v);

/// Number of distinct vertices of the path that belong to the set.
std::size_t PathIntersectionCount(const GraphPath& path, const VertexSet& set);

/// Unweighted hop distance; SIZE_MAX when unreachable.
std::size_t HopDistance(const MeasureGraph& g, Vertex from, Vertex to);

}  // namespace mgraph

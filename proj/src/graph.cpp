#include "mgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "mgraph/error.hpp"

namespace mgraph {

const char* ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kNoPath: return "NoPath";
    case ErrorCode::kNotSeparating: return "NotSeparating";
    case ErrorCode::kZeroFlow: return "ZeroFlow";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kDegenerateDuals: return "DegenerateDuals";
    case ErrorCode::kCoincidentPoles: return "CoincidentPoles";
    case ErrorCode::kTerminalsMerged: return "TerminalsMerged";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

std::string ExtendedCount::ToString() const {
  return is_infinite() ? std::string("inf") : std::to_string(value_);
}

VertexSet::VertexSet(std::size_t universe,
                     std::initializer_list<Vertex> members)
    : bits_(universe, 0) {
  for (Vertex z : members) insert(z);
}

VertexSet VertexSet::FromMembers(std::size_t universe,
                                 std::span<const Vertex> members) {
  VertexSet s(universe);
  for (Vertex z : members) s.insert(z);
  return s;
}

VertexSet VertexSet::FromMask(std::size_t universe, std::uint64_t mask) {
  VertexSet s(universe);
  for (std::size_t z = 0; z < universe && z < 64; ++z) {
    if ((mask >> z) & 1u) s.bits_[z] = 1;
  }
  return s;
}

void VertexSet::insert(Vertex z) {
  if (z >= bits_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "vertex index " + std::to_string(z) + " out of range");
  }
  bits_[z] = 1;
}

void VertexSet::erase(Vertex z) {
  if (z < bits_.size()) bits_[z] = 0;
}

std::size_t VertexSet::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::vector<Vertex> VertexSet::members() const {
  std::vector<Vertex> out;
  for (std::size_t z = 0; z < bits_.size(); ++z) {
    if (bits_[z]) out.push_back(z);
  }
  return out;
}

std::uint64_t VertexSet::mask() const {
  std::uint64_t m = 0;
  for (std::size_t z = 0; z < bits_.size() && z < 64; ++z) {
    if (bits_[z]) m |= std::uint64_t{1} << z;
  }
  return m;
}

bool VertexSet::IsSubsetOf(const VertexSet& other) const {
  for (std::size_t z = 0; z < bits_.size(); ++z) {
    if (bits_[z] && !other.contains(z)) return false;
  }
  return true;
}

VertexSet VertexSet::Intersect(const VertexSet& other) const {
  VertexSet out(bits_.size());
  for (std::size_t z = 0; z < bits_.size(); ++z) {
    if (bits_[z] && other.contains(z)) out.bits_[z] = 1;
  }
  return out;
}

MeasureGraph::MeasureGraph(std::vector<std::string> labels,
                           std::vector<double> mu,
                           const std::vector<std::pair<Vertex, Vertex>>& edges)
    : labels_(std::move(labels)), mu_(std::move(mu)) {
  if (labels_.size() != mu_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "label and mass arrays differ in length");
  }
  for (Vertex z = 0; z < labels_.size(); ++z) {
    if (!index_.emplace(labels_[z], z).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate vertex id '" + labels_[z] + "'");
    }
    if (!(mu_[z] > 0.0) || !std::isfinite(mu_[z])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "non-positive mass at vertex '" + labels_[z] + "'");
    }
  }
  adjacency_.resize(mu_.size());
  std::set<std::pair<Vertex, Vertex>> seen;
  for (const auto& [a, b] : edges) {
    if (a >= mu_.size() || b >= mu_.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "dangling edge endpoint " +
                      std::to_string(std::max(a, b)));
    }
    if (a == b) {
      throw Error(ErrorCode::kInvalidArgument,
                  "self-loop at vertex '" + labels_[a] + "'");
    }
    if (!seen.emplace(std::min(a, b), std::max(a, b)).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate edge '" + labels_[a] + "'-'" + labels_[b] + "'");
    }
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
    edges_.emplace_back(a, b);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

MeasureGraph MeasureGraph::WithIndexLabels(
    std::vector<double> mu,
    const std::vector<std::pair<Vertex, Vertex>>& edges) {
  std::vector<std::string> labels;
  labels.reserve(mu.size());
  for (std::size_t z = 0; z < mu.size(); ++z) {
    labels.push_back(std::to_string(z));
  }
  return MeasureGraph(std::move(labels), std::move(mu), edges);
}

Vertex MeasureGraph::IndexOf(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) {
    throw Error(ErrorCode::kInvalidArgument, "unknown vertex id '" + label + "'");
  }
  return it->second;
}

double MeasureGraph::Mass(const VertexSet& set) const {
  double total = 0.0;
  for (Vertex z = 0; z < mu_.size(); ++z) {
    if (set.contains(z)) total += mu_[z];
  }
  return total;
}

double MeasureGraph::TotalMass() const {
  double total = 0.0;
  for (double m : mu_) total += m;
  return total;
}

bool MeasureGraph::Adjacent(Vertex a, Vertex b) const {
  const auto& adj = adjacency_[a];
  return std::binary_search(adj.begin(), adj.end(), b);
}

void MeasureGraph::CheckVertex(Vertex z) const {
  if (z >= mu_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "vertex index " + std::to_string(z) + " out of range");
  }
}

void MeasureGraph::CheckTerminals(const TerminalPair& t) const {
  CheckVertex(t.source);
  CheckVertex(t.sink);
}

bool IsValidPath(const MeasureGraph& g, const GraphPath& path) {
  if (path.vertices.empty()) return false;
  for (Vertex z : path.vertices) {
    if (z >= g.vertex_count()) return false;
  }
  for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
    if (!g.Adjacent(path.vertices[i], path.vertices[i + 1])) return false;
  }
  return true;
}

VertexSet ConnectedComponent(const MeasureGraph& g, Vertex v) {
  g.CheckVertex(v);
  VertexSet seen(g.vertex_count());
  std::deque<Vertex> queue{v};
  seen.insert(v);
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Vertex z : g.neighbors(u)) {
      if (!seen.contains(z)) {
        seen.insert(z);
        queue.push_back(z);
      }
    }
  }
  return seen;
}

std::size_t PathIntersectionCount(const GraphPath& path,
                                  const VertexSet& set) {
  std::vector<Vertex> hits;
  for (Vertex z : path.vertices) {
    if (set.contains(z)) hits.push_back(z);
  }
  std::sort(hits.begin(), hits.end());
  return static_cast<std::size_t>(
      std::unique(hits.begin(), hits.end()) - hits.begin());
}

std::size_t HopDistance(const MeasureGraph& g, Vertex from, Vertex to) {
  constexpr auto kUnreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.vertex_count(), kUnreached);
  std::deque<Vertex> queue{from};
  dist[from] = 0;
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    if (u == to) return dist[u];
    for (Vertex z : g.neighbors(u)) {
      if (dist[z] == kUnreached) {
        dist[z] = dist[u] + 1;
        queue.push_back(z);
      }
    }
  }
  return dist[to];
}

}  // namespace mgraph

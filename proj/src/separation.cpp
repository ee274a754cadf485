#include "mgraph/separation.hpp"

#include <deque>
#include <string>

#include "mgraph/error.hpp"

namespace mgraph {

std::vector<ExtendedCount> SetHitDistances(const MeasureGraph& g,
                                           Vertex source,
                                           const VertexSet& set) {
  g.CheckVertex(source);
  const std::size_t n = g.vertex_count();
  std::vector<ExtendedCount> dist(n, ExtendedCount::Infinity());
  std::deque<Vertex> queue;
  dist[source] = ExtendedCount(set.contains(source) ? 1 : 0);
  queue.push_back(source);
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Vertex z : g.neighbors(u)) {
      const bool hit = set.contains(z);
      ExtendedCount candidate = dist[u] + ExtendedCount(hit ? 1 : 0);
      if (candidate < dist[z]) {
        dist[z] = candidate;
        if (hit) {
          queue.push_back(z);
        } else {
          queue.push_front(z);
        }
      }
    }
  }
  return dist;
}

ExtendedCount DiscWidth(const MeasureGraph& g, const TerminalPair& t,
                        const VertexSet& set) {
  g.CheckTerminals(t);
  return SetHitDistances(g, t.source, set)[t.sink];
}

bool IsSeparating(const MeasureGraph& g, const TerminalPair& t,
                  const VertexSet& set) {
  return DiscWidth(g, t, set) >= ExtendedCount(1);
}

RatioValue DiscSr(const MeasureGraph& g, const TerminalPair& t,
                  const VertexSet& set) {
  RatioValue r;
  r.width = DiscWidth(g, t, set);
  r.mass = g.Mass(set);
  if (r.width.is_infinite()) {
    r.kind = RatioValue::Kind::kZeroByConvention;
    r.value = 0.0;
  } else if (r.width.value() == 0) {
    r.kind = RatioValue::Kind::kInfinite;
    r.value = std::numeric_limits<double>::infinity();
  } else {
    r.kind = RatioValue::Kind::kFinite;
    r.value = r.mass / static_cast<double>(r.width.value());
  }
  return r;
}

PositionField ComputePositionField(const MeasureGraph& g, const TerminalPair& t,
                                   const VertexSet& set) {
  g.CheckTerminals(t);
  PositionField field;
  field.terminals = t;
  field.set = set;
  field.values = SetHitDistances(g, t.source, set);
  // Every vertex reachable from v lies on some v->w walk iff w is reachable
  // too; otherwise the path family is empty and all positions are infinite.
  if (field.values[t.sink].is_infinite()) {
    field.values.assign(g.vertex_count(), ExtendedCount::Infinity());
  }
  return field;
}

namespace {

// Shared precondition of Fibrate and Slimify. Returns the width of the set.
std::uint64_t RequireSeparating(const MeasureGraph& g, const TerminalPair& t,
                                const PositionField& pos) {
  ExtendedCount width = pos[t.sink];
  if (width.is_infinite()) {
    throw Error(ErrorCode::kNoPath, "no path joins '" + g.label(t.source) +
                                        "' and '" + g.label(t.sink) + "'");
  }
  if (width.value() == 0) {
    throw Error(ErrorCode::kNotSeparating,
                "set does not separate '" + g.label(t.source) + "' and '" +
                    g.label(t.sink) + "'");
  }
  return width.value();
}

}  // namespace

Fibration Fibrate(const MeasureGraph& g, const TerminalPair& t,
                  const VertexSet& set) {
  PositionField pos = ComputePositionField(g, t, set);
  const std::uint64_t width = RequireSeparating(g, t, pos);

  Fibration fib;
  fib.levels.assign(width, VertexSet(g.vertex_count()));
  fib.level_mass.assign(width, 0.0);
  for (Vertex z = 0; z < g.vertex_count(); ++z) {
    if (!set.contains(z) || pos[z].is_infinite()) continue;
    const std::uint64_t level = pos[z].value();
    if (level >= 1 && level <= width) {
      fib.levels[level - 1].insert(z);
      fib.level_mass[level - 1] += g.mu(z);
    }
  }
  for (std::size_t i = 1; i < width; ++i) {
    if (fib.level_mass[i] < fib.level_mass[fib.chosen]) fib.chosen = i;
  }
  return fib;
}

VertexSet Slimify(const MeasureGraph& g, const TerminalPair& t,
                  const VertexSet& set) {
  PositionField pos = ComputePositionField(g, t, set);
  RequireSeparating(g, t, pos);
  VertexSet out(g.vertex_count());
  for (Vertex z = 0; z < g.vertex_count(); ++z) {
    if (set.contains(z) && pos[z] == 1) out.insert(z);
  }
  return out;
}

SlimCheck IsSlim(const MeasureGraph& g, const TerminalPair& t,
                 const VertexSet& set) {
  g.CheckTerminals(t);
  VertexSet restricted = set.Intersect(ConnectedComponent(g, t.source));
  PositionField pos = ComputePositionField(g, t, restricted);
  RequireSeparating(g, t, pos);

  SlimCheck check;
  for (Vertex z = 0; z < g.vertex_count(); ++z) {
    if (restricted.contains(z) && !(pos[z] == 1) && !check.set_witness) {
      check.set_witness = z;
    }
    if (pos[z].is_finite() && pos[z].value() >= 2 &&
        !check.component_witness) {
      check.component_witness = z;
    }
  }
  check.slim = !check.set_witness.has_value();
  return check;
}

}  // namespace mgraph

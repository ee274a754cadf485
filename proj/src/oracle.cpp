#include "mgraph/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <string>

#include "mgraph/error.hpp"

namespace mgraph::oracle {

namespace {

void RequireAtMost(const MeasureGraph& g, std::size_t cap, const char* what) {
  if (g.vertex_count() > cap) {
    throw Error(ErrorCode::kCapExceeded,
                std::string(what) + ": graph has " +
                    std::to_string(g.vertex_count()) + " vertices, cap is " +
                    std::to_string(cap));
  }
}

std::uint64_t Bit(Vertex z) { return std::uint64_t{1} << z; }

// Ties between minimizers go to the lexicographically least member list,
// which is not mask order.
bool LexLess(const VertexSet& a, const VertexSet& b) {
  return a.members() < b.members();
}

}  // namespace

PathCatalog EnumerateSimplePaths(const MeasureGraph& g, const TerminalPair& t,
                                 std::size_t max_vertices) {
  RequireAtMost(g, std::min<std::size_t>(max_vertices, 64),
                "EnumerateSimplePaths");
  g.CheckTerminals(t);
  PathCatalog catalog;
  std::vector<Vertex> stack{t.source};
  std::function<void(Vertex, std::uint64_t)> dfs = [&](Vertex u,
                                                       std::uint64_t visited) {
    if (u == t.sink) {
      catalog.paths.push_back(GraphPath{stack});
      catalog.masks.push_back(visited);
      return;
    }
    for (Vertex z : g.neighbors(u)) {
      if (visited & Bit(z)) continue;
      stack.push_back(z);
      dfs(z, visited | Bit(z));
      stack.pop_back();
    }
  };
  dfs(t.source, Bit(t.source));
  return catalog;
}

VertexSet BruteComponent(const MeasureGraph& g, Vertex v) {
  g.CheckVertex(v);
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (Vertex a = 0; a < n; ++a) {
    reach[a][a] = 1;
    for (Vertex b : g.neighbors(a)) reach[a][b] = 1;
  }
  for (Vertex k = 0; k < n; ++k) {
    for (Vertex a = 0; a < n; ++a) {
      if (!reach[a][k]) continue;
      for (Vertex b = 0; b < n; ++b) {
        if (reach[k][b]) reach[a][b] = 1;
      }
    }
  }
  VertexSet out(n);
  for (Vertex b = 0; b < n; ++b) {
    if (reach[v][b]) out.insert(b);
  }
  return out;
}

ExtendedCount BruteWidth(const PathCatalog& catalog, const VertexSet& set) {
  const std::uint64_t mask = set.mask();
  ExtendedCount best = ExtendedCount::Infinity();
  for (std::uint64_t path : catalog.masks) {
    best = std::min(best, ExtendedCount(std::popcount(path & mask)));
  }
  return best;
}

ExtendedCount BruteWidth(const MeasureGraph& g, const TerminalPair& t,
                         const VertexSet& set) {
  return BruteWidth(EnumerateSimplePaths(g, t), set);
}

std::vector<ExtendedCount> BrutePositions(const MeasureGraph& g,
                                          const TerminalPair& t,
                                          const VertexSet& set,
                                          std::size_t max_vertices) {
  RequireAtMost(g, std::min<std::size_t>(max_vertices, 64), "BrutePositions");
  g.CheckTerminals(t);
  const std::size_t n = g.vertex_count();
  std::vector<ExtendedCount> pos(n, ExtendedCount::Infinity());
  const VertexSet reach_v = BruteComponent(g, t.source);
  if (!reach_v.contains(t.sink)) return pos;

  const std::uint64_t mask = set.mask();
  std::function<void(Vertex, std::uint64_t)> dfs = [&](Vertex u,
                                                       std::uint64_t visited) {
    pos[u] = std::min(pos[u], ExtendedCount(std::popcount(visited & mask)));
    for (Vertex z : g.neighbors(u)) {
      if (!(visited & Bit(z))) dfs(z, visited | Bit(z));
    }
  };
  dfs(t.source, Bit(t.source));
  return pos;
}

SubsetOptimum BruteMinSeparatingMass(const MeasureGraph& g,
                                     const TerminalPair& t) {
  RequireAtMost(g, 16, "BruteMinSeparatingMass");
  const std::size_t n = g.vertex_count();
  const PathCatalog catalog = EnumerateSimplePaths(g, t, 16);
  const std::uint64_t subsets = std::uint64_t{1} << n;

  std::vector<double> masses(subsets, 0.0);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    bool separating = true;
    for (std::uint64_t path : catalog.masks) {
      if ((path & mask) == 0) {
        separating = false;
        break;
      }
    }
    if (!separating) continue;
    double mass = 0.0;
    for (Vertex z = 0; z < n; ++z) {
      if (mask & Bit(z)) mass += g.mu(z);
    }
    masses[mask] = mass;
    best = std::min(best, mass);
  }

  SubsetOptimum out;
  out.value = best;
  bool found = false;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    bool separating = true;
    for (std::uint64_t path : catalog.masks) {
      if ((path & mask) == 0) {
        separating = false;
        break;
      }
    }
    if (!separating || masses[mask] > best * (1.0 + 1e-12)) continue;
    VertexSet candidate = VertexSet::FromMask(n, mask);
    if (!found || LexLess(candidate, out.witness)) {
      out.witness = std::move(candidate);
      found = true;
    }
  }
  out.witness_width = BruteWidth(catalog, out.witness);
  return out;
}

SubsetOptimum BruteMinSr(const MeasureGraph& g, const TerminalPair& t) {
  RequireAtMost(g, 16, "BruteMinSr");
  const std::size_t n = g.vertex_count();
  const PathCatalog catalog = EnumerateSimplePaths(g, t, 16);
  const std::uint64_t subsets = std::uint64_t{1} << n;

  auto ratio = [&](std::uint64_t mask, ExtendedCount& width) {
    width = BruteWidth(catalog, VertexSet::FromMask(n, mask));
    if (width.is_infinite()) return 0.0;
    if (width.value() == 0) return std::numeric_limits<double>::infinity();
    double mass = 0.0;
    for (Vertex z = 0; z < n; ++z) {
      if (mask & Bit(z)) mass += g.mu(z);
    }
    return mass / static_cast<double>(width.value());
  };

  std::vector<double> values(subsets);
  std::vector<ExtendedCount> widths(subsets);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    values[mask] = ratio(mask, widths[mask]);
    best = std::min(best, values[mask]);
  }

  SubsetOptimum out;
  out.value = best;
  bool found = false;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    if (values[mask] > best * (1.0 + 1e-12)) continue;
    VertexSet candidate = VertexSet::FromMask(n, mask);
    if (!found || LexLess(candidate, out.witness)) {
      out.witness = std::move(candidate);
      out.witness_width = widths[mask];
      found = true;
    }
  }
  return out;
}

double BruteModulus(const MeasureGraph& g, const PathCatalog& family,
                    double p) {
  const std::size_t n = g.vertex_count();
  const std::size_t m = family.masks.size();
  if (m == 0) return 0.0;

  if (p == 1.0) {
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      bool covers = true;
      for (std::uint64_t path : family.masks) {
        if ((path & mask) == 0) {
          covers = false;
          break;
        }
      }
      if (!covers) continue;
      double mass = 0.0;
      for (Vertex z = 0; z < n; ++z) {
        if (mask & Bit(z)) mass += g.mu(z);
      }
      best = std::min(best, mass);
    }
    return best;
  }

  // Dual: maximize D(l) = sum l - (1 - 1/p) sum_z s_z rho_z(s_z) over l >= 0,
  // gradient 1 - rho-length of each path. Projected gradient with Armijo
  // backtracking; the admissible rescaling of rho(s) gives the upper bound
  // used for the stopping test.
  const double exponent = 1.0 / (p - 1.0);
  auto densities = [&](const std::vector<double>& lambda) {
    std::vector<double> s(n, 0.0);
    for (std::size_t c = 0; c < m; ++c) {
      for (Vertex z = 0; z < n; ++z) {
        if (family.masks[c] & Bit(z)) s[z] += lambda[c];
      }
    }
    std::vector<double> rho(n, 0.0);
    for (Vertex z = 0; z < n; ++z) {
      if (s[z] > 0.0) rho[z] = std::pow(s[z] / (p * g.mu(z)), exponent);
    }
    return std::pair{s, rho};
  };
  auto dual_value = [&](const std::vector<double>& lambda) {
    auto [s, rho] = densities(lambda);
    double value = 0.0;
    for (double l : lambda) value += l;
    for (Vertex z = 0; z < n; ++z) value -= (1.0 - 1.0 / p) * s[z] * rho[z];
    return value;
  };
  auto lengths = [&](const std::vector<double>& rho) {
    std::vector<double> len(m, 0.0);
    for (std::size_t c = 0; c < m; ++c) {
      for (Vertex z = 0; z < n; ++z) {
        if (family.masks[c] & Bit(z)) len[c] += rho[z];
      }
    }
    return len;
  };
  auto primal_bound = [&](const std::vector<double>& rho) {
    std::vector<double> len = lengths(rho);
    const double shortest = *std::min_element(len.begin(), len.end());
    if (!(shortest > 0.0)) return std::numeric_limits<double>::infinity();
    double value = 0.0;
    for (Vertex z = 0; z < n; ++z) {
      value += g.mu(z) * std::pow(rho[z] / shortest, p);
    }
    return value;
  };

  double total_mu = 0.0;
  for (Vertex z = 0; z < n; ++z) total_mu += g.mu(z);
  std::vector<double> lambda(m, total_mu / static_cast<double>(m));
  double current = dual_value(lambda);
  double step = 1.0;
  double best_upper = std::numeric_limits<double>::infinity();
  for (std::size_t iter = 0; iter < 2000000; ++iter) {
    auto [s, rho] = densities(lambda);
    std::vector<double> len = lengths(rho);
    best_upper = std::min(best_upper, primal_bound(rho));
    if (best_upper - current <= 1e-8 * best_upper) break;

    std::vector<double> grad(m);
    for (std::size_t c = 0; c < m; ++c) grad[c] = 1.0 - len[c];
    while (true) {
      std::vector<double> trial(m);
      double directional = 0.0;
      for (std::size_t c = 0; c < m; ++c) {
        trial[c] = std::max(0.0, lambda[c] + step * grad[c]);
        directional += grad[c] * (trial[c] - lambda[c]);
      }
      const double value = dual_value(trial);
      if (value >= current + 1e-4 * directional) {
        const double improvement = value - current;
        lambda = std::move(trial);
        current = value;
        step *= 2.0;
        if (improvement <= 0.0 && directional <= 1e-300) iter = 2000000;
        break;
      }
      step *= 0.5;
      if (step < 1e-300) {
        iter = 2000000;
        break;
      }
    }
  }
  // The dual value converges quadratically in the multipliers while the
  // rescaled primal only converges linearly, so the lower bound is the
  // sharper estimate once the iteration stalls.
  return current;
}

double BruteModulus(const MeasureGraph& g, const TerminalPair& t, double p) {
  RequireAtMost(g, 8, "BruteModulus");
  return BruteModulus(g, EnumerateSimplePaths(g, t, 8), p);
}

namespace {

constexpr Vertex kNone = std::numeric_limits<Vertex>::max();

// Walk-state search: a state is (vertex, the single set vertex met so far or
// kNone). Walks that would meet a second distinct set vertex are dropped.
std::vector<char> ReachWithAtMostOneHit(const MeasureGraph& g, Vertex source,
                                        const VertexSet& set) {
  const std::size_t n = g.vertex_count();
  auto index = [n](Vertex u, Vertex hit) {
    return u * (n + 1) + (hit == kNone ? n : hit);
  };
  std::vector<char> seen(n * (n + 1), 0);
  std::deque<std::pair<Vertex, Vertex>> queue;
  const Vertex start_hit = set.contains(source) ? source : kNone;
  seen[index(source, start_hit)] = 1;
  queue.push_back({source, start_hit});
  std::vector<char> reached(n, 0);
  while (!queue.empty()) {
    auto [u, hit] = queue.front();
    queue.pop_front();
    reached[u] = 1;
    for (Vertex z : g.neighbors(u)) {
      Vertex next = hit;
      if (set.contains(z)) {
        if (hit == kNone) {
          next = z;
        } else if (hit != z) {
          continue;
        }
      }
      if (!seen[index(z, next)]) {
        seen[index(z, next)] = 1;
        queue.push_back({z, next});
      }
    }
  }
  return reached;
}

// Whether some v->w walk through `through` meets at most one set vertex.
bool WalkThroughWithAtMostOneHit(const MeasureGraph& g, const TerminalPair& t,
                                 Vertex through, const VertexSet& set) {
  const std::size_t n = g.vertex_count();
  auto index = [n](Vertex u, Vertex hit, bool passed) {
    return (u * (n + 1) + (hit == kNone ? n : hit)) * 2 + (passed ? 1 : 0);
  };
  std::vector<char> seen(n * (n + 1) * 2, 0);
  struct State {
    Vertex u;
    Vertex hit;
    bool passed;
  };
  std::deque<State> queue;
  State start{t.source, set.contains(t.source) ? t.source : kNone,
              t.source == through};
  seen[index(start.u, start.hit, start.passed)] = 1;
  queue.push_back(start);
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    if (s.u == t.sink && s.passed) return true;
    for (Vertex z : g.neighbors(s.u)) {
      Vertex next = s.hit;
      if (set.contains(z)) {
        if (s.hit == kNone) {
          next = z;
        } else if (s.hit != z) {
          continue;
        }
      }
      const bool passed = s.passed || z == through;
      if (!seen[index(z, next, passed)]) {
        seen[index(z, next, passed)] = 1;
        queue.push_back({z, next, passed});
      }
    }
  }
  return false;
}

// BFS from `source` through vertices outside the set, allowing `target` as
// the only set vertex (as the final step).
bool ReachAvoidingSetUntil(const MeasureGraph& g, Vertex source,
                           Vertex target, const VertexSet& set) {
  if (source == target) return true;
  if (set.contains(source)) return false;
  const std::size_t n = g.vertex_count();
  std::vector<char> seen(n, 0);
  std::deque<Vertex> queue{source};
  seen[source] = 1;
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Vertex z : g.neighbors(u)) {
      if (z == target) return true;
      if (seen[z] || set.contains(z)) continue;
      seen[z] = 1;
      queue.push_back(z);
    }
  }
  return false;
}

}  // namespace

SlimConditions CheckSlimConditions(
    const MeasureGraph& g, const TerminalPair& t, const VertexSet& set,
    const std::vector<ExtendedCount>& positions) {
  const std::size_t n = g.vertex_count();
  const VertexSet component = BruteComponent(g, t.source);
  SlimConditions out;

  out.i = true;
  for (Vertex z : set.members()) {
    if (!ReachAvoidingSetUntil(g, t.source, z, set) ||
        !component.contains(z) || !component.contains(t.sink)) {
      out.i = false;
      break;
    }
  }

  out.ii = true;
  for (Vertex z : set.members()) {
    if (!(positions[z] == 1)) {
      out.ii = false;
      break;
    }
  }

  const std::vector<ExtendedCount> brute = BrutePositions(g, t, set);
  out.iii = true;
  for (Vertex z = 0; z < n; ++z) {
    if (brute[z].is_finite() && brute[z].value() > 1) {
      out.iii = false;
      break;
    }
  }

  const std::vector<char> prefix_ok = ReachWithAtMostOneHit(g, t.source, set);
  out.iv = true;
  out.literal_iv = true;
  for (Vertex z : component.members()) {
    if (!prefix_ok[z]) out.iv = false;
    if (!WalkThroughWithAtMostOneHit(g, t, z, set)) out.literal_iv = false;
  }
  return out;
}

}  // namespace mgraph::oracle

#include "mgraph/mincut.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "mgraph/error.hpp"

namespace mgraph {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Dinic on real capacities. Arcs are stored in insertion order per node, so
// level-graph augmentation visits lower-index arcs first.
class FlowNetwork {
 public:
  struct Arc {
    std::size_t to;
    std::size_t reverse;
    double capacity;
    double flow;
  };

  FlowNetwork(std::size_t nodes, double epsilon)
      : arcs_(nodes), level_(nodes), next_(nodes), epsilon_(epsilon) {}

  std::size_t AddArc(std::size_t from, std::size_t to, double capacity) {
    arcs_[from].push_back({to, arcs_[to].size(), capacity, 0.0});
    arcs_[to].push_back({from, arcs_[from].size() - 1, 0.0, 0.0});
    return arcs_[from].size() - 1;
  }

  const Arc& arc(std::size_t node, std::size_t index) const {
    return arcs_[node][index];
  }

  double MaxFlow(std::size_t source, std::size_t sink) {
    double total = 0.0;
    while (BuildLevels(source, sink)) {
      std::fill(next_.begin(), next_.end(), 0);
      while (true) {
        double pushed = Augment(source, sink, kInfinity);
        if (pushed <= epsilon_) break;
        total += pushed;
      }
    }
    return total;
  }

  /// Nodes reachable from source through arcs with positive residual.
  std::vector<char> ResidualReach(std::size_t source) const {
    std::vector<char> seen(arcs_.size(), 0);
    std::queue<std::size_t> queue;
    queue.push(source);
    seen[source] = 1;
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop();
      for (const Arc& a : arcs_[u]) {
        if (!seen[a.to] && Residual(a) > epsilon_) {
          seen[a.to] = 1;
          queue.push(a.to);
        }
      }
    }
    return seen;
  }

 private:
  static double Residual(const Arc& a) { return a.capacity - a.flow; }

  bool BuildLevels(std::size_t source, std::size_t sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> queue;
    level_[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop();
      for (const Arc& a : arcs_[u]) {
        if (level_[a.to] < 0 && Residual(a) > epsilon_) {
          level_[a.to] = level_[u] + 1;
          queue.push(a.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  double Augment(std::size_t u, std::size_t sink, double limit) {
    if (u == sink) return limit;
    for (std::size_t& i = next_[u]; i < arcs_[u].size(); ++i) {
      Arc& a = arcs_[u][i];
      if (level_[a.to] != level_[u] + 1 || Residual(a) <= epsilon_) continue;
      double pushed = Augment(a.to, sink, std::min(limit, Residual(a)));
      if (pushed > epsilon_) {
        a.flow += pushed;
        arcs_[a.to][a.reverse].flow -= pushed;
        return pushed;
      }
    }
    return 0.0;
  }

  std::vector<std::vector<Arc>> arcs_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
  double epsilon_;
};

std::size_t In(Vertex z) { return 2 * z; }
std::size_t Out(Vertex z) { return 2 * z + 1; }

struct SolvedFlow {
  double value = 0.0;
  VertexSet cut;
  std::vector<double> vertex_flow;
  // Net flow along each graph edge, oriented: net[k] > 0 means
  // edges()[k].first -> second.
  std::vector<double> net_edge_flow;
  double epsilon = 0.0;
};

SolvedFlow SolveFlow(const MeasureGraph& g, const TerminalPair& t) {
  g.CheckTerminals(t);
  const std::size_t n = g.vertex_count();
  const double epsilon = 1e-13 * g.TotalMass();
  FlowNetwork net(2 * n, epsilon);

  std::vector<std::size_t> split_arc(n);
  for (Vertex z = 0; z < n; ++z) split_arc[z] = net.AddArc(In(z), Out(z), g.mu(z));

  // Adjacency order keeps augmentation deterministic and index-ordered.
  struct EdgeArcs {
    std::size_t forward;   // first_out -> second_in
    std::size_t backward;  // second_out -> first_in
  };
  std::vector<EdgeArcs> edge_arcs(g.edge_count());
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const auto [a, b] = g.edges()[k];
    edge_arcs[k].forward = net.AddArc(Out(a), In(b), kInfinity);
    edge_arcs[k].backward = net.AddArc(Out(b), In(a), kInfinity);
  }

  SolvedFlow solved;
  solved.epsilon = epsilon;
  solved.value = net.MaxFlow(In(t.source), Out(t.sink));

  std::vector<char> reach = net.ResidualReach(In(t.source));
  solved.cut = VertexSet(n);
  solved.vertex_flow.resize(n);
  for (Vertex z = 0; z < n; ++z) {
    if (reach[In(z)] && !reach[Out(z)]) solved.cut.insert(z);
    solved.vertex_flow[z] = net.arc(In(z), split_arc[z]).flow;
  }
  solved.net_edge_flow.resize(g.edge_count());
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const auto [a, b] = g.edges()[k];
    solved.net_edge_flow[k] = net.arc(Out(a), edge_arcs[k].forward).flow -
                              net.arc(Out(b), edge_arcs[k].backward).flow;
  }
  return solved;
}

}  // namespace

CutResult MinVertexCut(const MeasureGraph& g, const TerminalPair& t) {
  SolvedFlow solved = SolveFlow(g, t);
  CutResult result;
  result.flow_value = solved.value;
  result.cut = std::move(solved.cut);
  result.value = g.Mass(result.cut);
  result.vertex_flow = std::move(solved.vertex_flow);
  return result;
}

PathPencil PencilFromFlow(const MeasureGraph& g, const TerminalPair& t) {
  SolvedFlow solved = SolveFlow(g, t);
  const double total = solved.value;
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kZeroFlow, "maximum flow between '" +
                                          g.label(t.source) + "' and '" +
                                          g.label(t.sink) + "' is zero");
  }

  PathPencil pencil;
  pencil.capacity_bound = 1.0 / total;
  if (t.source == t.sink) {
    pencil.paths.push_back({GraphPath{{t.source}}, 1.0});
    pencil.total_weight = 1.0;
    return pencil;
  }

  // Directed support: flow[u][z] > 0 along u -> z.
  const std::size_t n = g.vertex_count();
  const double eps = std::max(solved.epsilon, 1e-12 * total);
  std::vector<std::vector<double>> flow(n, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const auto [a, b] = g.edges()[k];
    const double f = solved.net_edge_flow[k];
    if (f > eps) flow[a][b] = f;
    if (-f > eps) flow[b][a] = -f;
  }
  auto clear_small = [&](Vertex u, Vertex z) {
    if (flow[u][z] <= eps) flow[u][z] = 0.0;
  };

  // Cancel circulations so the support becomes acyclic.
  while (true) {
    std::vector<int> color(n, 0);
    std::vector<Vertex> parent(n, n);
    std::vector<Vertex> cycle;
    std::vector<std::pair<Vertex, std::size_t>> stack;
    for (Vertex root = 0; root < n && cycle.empty(); ++root) {
      if (color[root] != 0) continue;
      stack.push_back({root, 0});
      color[root] = 1;
      while (!stack.empty() && cycle.empty()) {
        auto& [u, i] = stack.back();
        auto nbrs = g.neighbors(u);
        if (i == nbrs.size()) {
          color[u] = 2;
          stack.pop_back();
          continue;
        }
        Vertex z = nbrs[i++];
        if (flow[u][z] <= 0.0) continue;
        if (color[z] == 1) {
          for (Vertex x = u; x != z; x = parent[x]) cycle.push_back(x);
          cycle.push_back(z);
          std::reverse(cycle.begin(), cycle.end());
        } else if (color[z] == 0) {
          color[z] = 1;
          parent[z] = u;
          stack.push_back({z, 0});
        }
      }
      stack.clear();
    }
    if (cycle.empty()) break;
    double bottleneck = kInfinity;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      bottleneck = std::min(bottleneck,
                            flow[cycle[i]][cycle[(i + 1) % cycle.size()]]);
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      Vertex u = cycle[i], z = cycle[(i + 1) % cycle.size()];
      flow[u][z] -= bottleneck;
      clear_small(u, z);
    }
  }

  // Lexicographically least source-sink path in an acyclic support: DFS in
  // increasing neighbor order, dead ends stay dead.
  double extracted = 0.0;
  while (true) {
    std::vector<char> dead(n, 0);
    std::vector<Vertex> path{t.source};
    std::vector<char> on_path(n, 0);
    on_path[t.source] = 1;
    while (!path.empty() && path.back() != t.sink) {
      Vertex u = path.back();
      bool advanced = false;
      for (Vertex z : g.neighbors(u)) {
        if (flow[u][z] > 0.0 && !dead[z] && !on_path[z]) {
          path.push_back(z);
          on_path[z] = 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        dead[u] = 1;
        on_path[u] = 0;
        path.pop_back();
      }
    }
    if (path.empty()) break;
    double bottleneck = kInfinity;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      bottleneck = std::min(bottleneck, flow[path[i]][path[i + 1]]);
    }
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      flow[path[i]][path[i + 1]] -= bottleneck;
      clear_small(path[i], path[i + 1]);
    }
    extracted += bottleneck;
    pencil.paths.push_back({GraphPath{std::move(path)}, bottleneck});
  }

  for (auto& entry : pencil.paths) entry.weight /= extracted;
  for (const auto& entry : pencil.paths) pencil.total_weight += entry.weight;
  return pencil;
}

std::vector<double> PencilLoad(const MeasureGraph& g,
                               const PathPencil& pencil) {
  std::vector<double> load(g.vertex_count(), 0.0);
  for (const auto& entry : pencil.paths) {
    std::vector<Vertex> distinct = entry.path.vertices;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    for (Vertex z : distinct) load[z] += entry.weight;
  }
  return load;
}

double PencilCrossing(const PathPencil& pencil, const VertexSet& set) {
  double total = 0.0;
  for (const auto& entry : pencil.paths) {
    total += entry.weight *
             static_cast<double>(PathIntersectionCount(entry.path, set));
  }
  return total;
}

}  // namespace mgraph

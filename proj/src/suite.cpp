#include "mgraph/suite.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mgraph/error.hpp"
#include "mgraph/graph_io.hpp"
#include "mgraph/mincut.hpp"
#include "mgraph/modulus.hpp"
#include "mgraph/oracle.hpp"
#include "mgraph/separation.hpp"

namespace mgraph::suite {

namespace {

std::vector<double> RandomMasses(Rng& rng, std::size_t n) {
  std::vector<double> mu(n);
  for (auto& m : mu) m = rng.Uniform(0.1, 10.0);
  return mu;
}

bool Connected(const Instance& inst) {
  return ConnectedComponent(inst.graph, inst.terminals.source)
      .contains(inst.terminals.sink);
}

std::string SetString(const VertexSet& set) {
  std::string out = "{";
  for (Vertex z : set.members()) {
    if (out.size() > 1) out += ",";
    out += std::to_string(z);
  }
  return out + "}";
}

std::string Num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Runs a check, turning library errors into failures.
template <typename Fn>
void Run(Tally& tally, const Instance& inst, Fn&& fn) {
  std::string detail;
  try {
    detail = fn();
  } catch (const Error& e) {
    detail = std::string(ToString(e.code())) + ": " + e.what();
  }
  tally.Record(detail.empty(), inst, detail);
}

}  // namespace

Instance RandomInstance(Rng& rng, std::size_t n,
                        double disconnected_probability) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::vector<char>> present(n, std::vector<char>(n, 0));
  const bool tree = !rng.Bernoulli(disconnected_probability);
  if (tree) {
    for (Vertex i = 1; i < n; ++i) {
      const Vertex j = rng.Below(i);
      edges.emplace_back(j, i);
      present[i][j] = present[j][i] = 1;
    }
  }
  const double density = rng.Uniform(0.1, 0.6);
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (present[a][b]) continue;
      if (rng.Bernoulli(density)) edges.emplace_back(a, b);
    }
  }
  Instance inst{MeasureGraph::WithIndexLabels(RandomMasses(rng, n), edges),
                {0, n - 1}};
  return inst;
}

void ForEachConnectedGraph(std::size_t n, Rng& rng,
                           const std::function<void(const Instance&)>& visit) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  }
  const std::uint64_t subsets = std::uint64_t{1} << pairs.size();
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    // Union-find connectivity test before building the graph.
    std::vector<Vertex> parent(n);
    for (Vertex z = 0; z < n; ++z) parent[z] = z;
    auto find = [&](Vertex z) {
      while (parent[z] != z) z = parent[z] = parent[parent[z]];
      return z;
    };
    edges.clear();
    std::size_t components = n;
    for (std::size_t e = 0; e < pairs.size(); ++e) {
      if (!(mask >> e & 1)) continue;
      edges.push_back(pairs[e]);
      const Vertex a = find(pairs[e].first), b = find(pairs[e].second);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
    if (components != 1) continue;
    visit({MeasureGraph::WithIndexLabels(RandomMasses(rng, n), edges),
           {0, n - 1}});
  }
}

VertexSet RandomSet(Rng& rng, std::size_t n) {
  VertexSet set(n);
  for (Vertex z = 0; z < n; ++z) {
    if (rng.Bernoulli(0.5)) set.insert(z);
  }
  return set;
}

void Tally::Record(bool ok, const Instance& inst, const std::string& detail) {
  ++instances;
  if (ok) return;
  ++failures;
  if (!first) first = Counterexample{name, inst, detail};
}

double RelativeError(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / scale;
}

bool RelativeClose(double a, double b, double tol) {
  return RelativeError(a, b) <= tol;
}

std::string CheckCutEqualsMinSr(const Instance& inst, double tol,
                                double* error) {
  const auto& [g, t] = inst;
  const CutResult cut = MinVertexCut(g, t);
  const oracle::SubsetOptimum sr = oracle::BruteMinSr(g, t);
  const oracle::SubsetOptimum mass = oracle::BruteMinSeparatingMass(g, t);
  const double err = std::max(RelativeError(cut.value, sr.value),
                              RelativeError(cut.value, mass.value));
  if (error) *error = err;
  if (err > tol) {
    return "cut " + Num(cut.value) + " vs brute min SR " + Num(sr.value) +
           " and brute min mass " + Num(mass.value);
  }
  if (!RelativeClose(g.Mass(cut.cut), cut.value, tol)) {
    return "cut set mass " + Num(g.Mass(cut.cut)) + " differs from value";
  }
  if (oracle::BruteWidth(g, t, cut.cut) == 0) {
    return "cut set " + SetString(cut.cut) + " does not separate";
  }
  return {};
}

std::string CheckFibration(const Instance& inst, const VertexSet& set) {
  const auto& [g, t] = inst;
  const oracle::PathCatalog catalog = oracle::EnumerateSimplePaths(g, t);
  const ExtendedCount width = oracle::BruteWidth(catalog, set);
  const Fibration fib = Fibrate(g, t, set);
  if (width.is_infinite() || fib.levels.size() != width.value()) {
    return "level count " + std::to_string(fib.levels.size()) +
           " vs brute width " + width.ToString();
  }
  VertexSet seen(g.vertex_count());
  for (std::size_t i = 0; i < fib.levels.size(); ++i) {
    const VertexSet& level = fib.levels[i];
    if (!level.IsSubsetOf(set)) return "level " + std::to_string(i + 1) + " leaves A";
    if (!(oracle::BruteWidth(catalog, level) == 1)) {
      return "level " + std::to_string(i + 1) + " " + SetString(level) +
             " has width " + oracle::BruteWidth(catalog, level).ToString();
    }
    if (!seen.Intersect(level).empty()) {
      return "level " + std::to_string(i + 1) + " overlaps an earlier level";
    }
    for (Vertex z : level.members()) seen.insert(z);
  }
  const double chosen = g.Mass(fib.levels[fib.chosen]);
  const double bound = g.Mass(set) / static_cast<double>(width.value());
  if (chosen > bound * (1.0 + 1e-12)) {
    return "chosen level mass " + Num(chosen) + " exceeds mu(A)/width " +
           Num(bound);
  }
  return {};
}

std::string CheckSlimEquivalence(const Instance& inst, const VertexSet& set) {
  const auto& [g, t] = inst;
  const PositionField pos = ComputePositionField(g, t, set);
  const oracle::SlimConditions c =
      oracle::CheckSlimConditions(g, t, set, pos.values);
  const bool slim = IsSlim(g, t, set).slim;
  if (c.i == c.ii && c.ii == c.iii && c.iii == c.iv && c.iv == slim) return {};
  std::ostringstream os;
  os << "A=" << SetString(set) << " (i)=" << c.i << " (ii)=" << c.ii
     << " (iii)=" << c.iii << " (iv)=" << c.iv << " IsSlim=" << slim;
  return os.str();
}

std::string CheckSlimOptimum(const Instance& inst, double tol, double* error) {
  const auto& [g, t] = inst;
  if (error) *error = 0.0;
  if (!Connected(inst)) return {};
  const double cut = MinVertexCut(g, t).value;
  const oracle::SubsetOptimum sr = oracle::BruteMinSr(g, t);
  const Fibration fib = Fibrate(g, t, sr.witness);
  const VertexSet slim = Slimify(g, t, fib.levels[fib.chosen]);
  const double err = RelativeError(g.Mass(slim), cut);
  if (error) *error = err;
  if (err > tol) {
    return "slimified optimum " + SetString(slim) + " has mass " +
           Num(g.Mass(slim)) + ", cut " + Num(cut);
  }
  if (!IsSlim(g, t, slim).slim) return "slimified set is not slim";
  if (!(oracle::BruteWidth(g, t, slim) == 1)) {
    return "slimified set has width " + oracle::BruteWidth(g, t, slim).ToString();
  }
  return {};
}

std::string CheckModulusOneDuality(const Instance& inst, double tol,
                                   double* error) {
  const auto& [g, t] = inst;
  if (error) *error = 0.0;
  if (!Connected(inst)) return {};
  const double cut = MinVertexCut(g, t).value;
  const double mod = ModulusP(g, t, 1.0).value;
  double err = RelativeError(mod, cut);
  double brute = cut;
  if (g.vertex_count() <= 8) {
    brute = oracle::BruteModulus(g, t, 1.0);
    err = std::max(err, RelativeError(brute, cut));
  }
  if (error) *error = err;
  if (err > tol) {
    return "Mod_1 " + Num(mod) + ", brute Mod_1 " + Num(brute) + ", cut " +
           Num(cut);
  }
  return {};
}

std::string CheckModulus(const Instance& inst, double p, double tol,
                         double* error) {
  const auto& [g, t] = inst;
  if (error) *error = 0.0;
  if (!Connected(inst)) return {};
  const ModulusResult res = ModulusP(g, t, p, {.tol = 1e-9});
  const double brute = oracle::BruteModulus(g, t, p);
  const double err = RelativeError(res.value, brute);
  if (error) *error = err;
  if (err > tol) {
    return "p=" + Num(p) + " Mod_p " + Num(res.value) + " vs brute " +
           Num(brute);
  }
  return {};
}

std::string CheckPencil(const Instance& inst, Rng& rng, std::size_t sets,
                        double tol, double* violation) {
  const auto& [g, t] = inst;
  if (violation) *violation = 0.0;
  if (!Connected(inst)) return {};
  const PathPencil pencil = PencilFromFlow(g, t);
  double total = 0.0;
  for (const auto& entry : pencil.paths) {
    total += entry.weight;
    const auto& q = entry.path.vertices;
    if (!IsValidPath(g, entry.path) || q.front() != t.source ||
        q.back() != t.sink) {
      return "pencil path is not a v->w path";
    }
  }
  if (std::abs(total - 1.0) > 1e-12) return "pencil weights sum to " + Num(total);

  const CutResult cut = MinVertexCut(g, t);
  std::vector<VertexSet> tested;
  tested.push_back(cut.cut);
  for (std::size_t k = 0; k < sets; ++k) {
    tested.push_back(RandomSet(rng, g.vertex_count()));
  }
  double worst = 0.0;
  std::string detail;
  for (const VertexSet& set : tested) {
    const double excess =
        PencilCrossing(pencil, set) - g.Mass(set) * pencil.capacity_bound;
    if (excess > worst) {
      worst = excess;
      if (excess > tol) {
        detail = "A=" + SetString(set) + " crossing exceeds mu(A)/F by " +
                 Num(excess);
      }
    }
  }
  if (violation) *violation = worst;
  return detail;
}

std::size_t VerifyReport::counterexamples() const {
  std::size_t total = 0;
  for (const auto& tally : tallies) total += tally.failures;
  return total;
}

VerifyReport RunVerify(const VerifyOptions& options) {
  if (options.max_vertices < 2 || options.max_vertices > 10) {
    throw Error(ErrorCode::kInvalidArgument,
                "max_vertices must lie in [2, 10]");
  }
  Rng rng(options.seed);
  Tally cut{"cut_equals_min_sr"};
  Tally fibration{"fibration"};
  Tally slim{"slim_equivalence"};
  Tally slim_optimum{"slim_optimum"};
  Tally duality{"modulus_one_duality"};
  Tally pencil{"pencil_inequality"};
  constexpr double kTol = 1e-9;

  auto graph_checks = [&](const Instance& inst) {
    Run(cut, inst, [&] { return CheckCutEqualsMinSr(inst, kTol); });
    Run(slim_optimum, inst, [&] { return CheckSlimOptimum(inst, kTol); });
    Run(duality, inst, [&] { return CheckModulusOneDuality(inst, 1e-6); });
  };

  const std::size_t exhaustive =
      std::min(options.exhaustive_vertices, options.max_vertices);
  for (std::size_t n = 2; n <= exhaustive; ++n) {
    ForEachConnectedGraph(n, rng, [&](const Instance& inst) {
      graph_checks(inst);
      const std::size_t subsets = std::size_t{1} << n;
      for (std::uint64_t mask = 1; mask < subsets; ++mask) {
        const VertexSet set = VertexSet::FromMask(n, mask);
        if (!IsSeparating(inst.graph, inst.terminals, set)) continue;
        Run(slim, inst, [&] { return CheckSlimEquivalence(inst, set); });
      }
    });
  }

  for (std::size_t k = 0; k < options.instances; ++k) {
    const std::size_t n = 2 + rng.Below(options.max_vertices - 1);
    const Instance inst = RandomInstance(rng, n);
    graph_checks(inst);
    Run(pencil, inst, [&] { return CheckPencil(inst, rng, 200, kTol); });
    if (!Connected(inst)) continue;
    VertexSet set = RandomSet(rng, n);
    if (!IsSeparating(inst.graph, inst.terminals, set)) {
      for (Vertex z : MinVertexCut(inst.graph, inst.terminals).cut.members()) {
        set.insert(z);
      }
    }
    Run(fibration, inst, [&] { return CheckFibration(inst, set); });
    Run(slim, inst, [&] { return CheckSlimEquivalence(inst, set); });
  }

  return {{cut, fibration, slim, slim_optimum, duality, pencil}};
}

nlohmann::json InstanceToJson(const Instance& inst) {
  return {{"graph", GraphToJson(inst.graph)},
          {"v", inst.graph.label(inst.terminals.source)},
          {"w", inst.graph.label(inst.terminals.sink)}};
}

nlohmann::json VerifyToJson(const VerifyOptions& options,
                            const VerifyReport& report) {
  nlohmann::json checks = nlohmann::json::object();
  nlohmann::json first = nullptr;
  for (const auto& tally : report.tallies) {
    checks[tally.name] = {{"instances", tally.instances},
                          {"failures", tally.failures}};
    if (tally.first && first.is_null()) {
      first = InstanceToJson(tally.first->instance);
      first["check"] = tally.first->check;
      first["detail"] = tally.first->detail;
    }
  }
  return {{"seed", options.seed},
          {"max_vertices", options.max_vertices},
          {"instances", options.instances},
          {"exhaustive_vertices", options.exhaustive_vertices},
          {"checks", std::move(checks)},
          {"counterexamples", report.counterexamples()},
          {"first_counterexample", std::move(first)}};
}

}  // namespace mgraph::suite

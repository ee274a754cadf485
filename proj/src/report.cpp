#include "mgraph/report.hpp"

#include <charconv>
#include <cmath>

#include "mgraph/graph_io.hpp"
#include "mgraph/separation.hpp"

namespace mgraph::report {

using nlohmann::json;

json Count(ExtendedCount c) {
  if (c.is_infinite()) return "inf";
  return c.value();
}

namespace {

json Ratio(const RatioValue& r) {
  switch (r.kind) {
    case RatioValue::Kind::kZeroByConvention: return 0;
    case RatioValue::Kind::kInfinite: return "inf";
    case RatioValue::Kind::kFinite: break;
  }
  return r.value;
}

json Levels(const MeasureGraph& g, const mgraph::Fibration& fib) {
  json levels = json::array();
  for (const auto& level : fib.levels) levels.push_back(SetToJson(g, level));
  return levels;
}

json PencilEntries(const MeasureGraph& g, const PathPencil& pencil) {
  json entries = json::array();
  for (const auto& entry : pencil.paths) {
    entries.push_back(
        {{"path", PathToJson(g, entry.path)}, {"alpha", entry.weight}});
  }
  return entries;
}

json VertexOrNull(const MeasureGraph& g, const std::optional<Vertex>& z) {
  if (!z) return nullptr;
  return g.label(*z);
}

}  // namespace

json Analyze(const MeasureGraph& g, const TerminalPair& t,
             const VertexSet& set) {
  RatioValue sr = DiscSr(g, t, set);
  json out = {{"width", Count(sr.width)},
              {"mass", sr.mass},
              {"sr", Ratio(sr)},
              {"separating", IsSeparating(g, t, set)},
              {"levels", json::array()},
              {"chosen", nullptr}};
  if (sr.kind == RatioValue::Kind::kFinite) {
    mgraph::Fibration fib = Fibrate(g, t, set);
    out["levels"] = Levels(g, fib);
    out["chosen"] = fib.chosen;
  }
  return out;
}

json Fibration(const MeasureGraph& g, const TerminalPair& t,
               const VertexSet& set) {
  mgraph::Fibration fib = Fibrate(g, t, set);
  return {{"width", fib.levels.size()},
          {"levels", Levels(g, fib)},
          {"level_mass", fib.level_mass},
          {"chosen", fib.chosen}};
}

json Slim(const MeasureGraph& g, const TerminalPair& t, const VertexSet& set) {
  SlimCheck check = IsSlim(g, t, set);
  VertexSet slim = Slimify(g, t, set);
  return {{"slim", check.slim},
          {"witness", VertexOrNull(g, check.set_witness)},
          {"component_witness", VertexOrNull(g, check.component_witness)},
          {"slim_set", SetToJson(g, slim)},
          {"slim_set_mass", g.Mass(slim)}};
}

json MinCut(const MeasureGraph& g, const TerminalPair& t) {
  CutResult cut = MinVertexCut(g, t);
  json out = {{"cut_value", cut.value},
              {"cut", SetToJson(g, cut.cut)},
              {"flow_value", cut.flow_value},
              {"pencil", json::array()},
              {"C", nullptr}};
  if (cut.flow_value > 0.0) {
    PathPencil pencil = PencilFromFlow(g, t);
    out["pencil"] = PencilEntries(g, pencil);
    out["C"] = pencil.capacity_bound;
  }
  return out;
}

json Modulus(const MeasureGraph& g, const TerminalPair& t, double p,
             double tol) {
  ModulusResult res = ModulusP(g, t, p, {.tol = tol});
  json rho = json::object();
  for (Vertex z = 0; z < g.vertex_count(); ++z) {
    rho[g.label(z)] = res.rho.rho[z];
  }
  json paths = json::array();
  for (const auto& path : res.active_paths) paths.push_back(PathToJson(g, path));
  json out = {{"p", p},
              {"modulus", res.value},
              {"dual_value", res.dual_value},
              {"gap", res.gap},
              {"iterations", res.iterations},
              {"rho", std::move(rho)},
              {"active_paths", std::move(paths)},
              {"multipliers", res.multipliers}};
  if (p == 1.0) out["cut_value"] = MinVertexCut(g, t).value;
  return out;
}

json Pencil(const MeasureGraph& g, const TerminalPair& t, double p, double tol,
            std::uint64_t seed) {
  PathPencil pencil;
  if (p == 1.0) {
    pencil = PencilFromFlow(g, t);
  } else {
    pencil = PencilFromDuals(ModulusP(g, t, p, {.tol = tol}));
  }
  PencilConstant constant = EstimatePencilConstant(g, pencil, p, 100, seed);
  return {{"p", p},
          {"pencil", PencilEntries(g, pencil)},
          {"C", p == 1.0 ? json(pencil.capacity_bound) : json(constant.holder)},
          {"C_empirical", constant.empirical},
          {"C_holder", constant.holder},
          {"seed", seed}};
}

json Net(const NetGraph& net) {
  json out = GraphToJson(net.graph);
  out["net_indices"] = net.net_indices;
  out["r"] = net.r;
  return out;
}

std::string FormatNumber(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string ExperimentCsv(const std::vector<ExperimentRow>& rows,
                          const json& metadata) {
  std::string out = "# " + metadata.dump() + "\n";
  out += "r,width,sr_over_r,cut_over_r\n";
  for (const auto& row : rows) {
    out += FormatNumber(row.r) + "," + row.width.ToString() + "," +
           FormatNumber(row.sr_over_r) + "," + FormatNumber(row.cut_over_r) +
           "\n";
  }
  return out;
}

std::string Schema() {
  return R"(graph (input, JSON):
  {"vertices":[{"id":<string>,"mu":<positive float>}...],"edges":[[<id>,<id>]...]}
  edges are undirected; duplicates and self-loops are rejected.
vertex set (input): comma-separated ids, or a JSON array of ids.
point cloud (input, CSV): one row per point, columns x1..xd,mass (optional header row).
distance matrix (input, CSV): square matrix, plus a masses sidecar file.
geometric set (input): ';'-separated terms, box:lo1,hi1,...,lod,hid or half:a1,...,ad,c (a.x <= c).

analyze  -> {"width":<int|"inf">,"mass":f,"sr":<f|"inf"|0>,"separating":b,"levels":[[ids]...],"chosen":<int|null>}
fibrate  -> {"width":int,"levels":[[ids]...],"level_mass":[f...],"chosen":int}
slim     -> {"slim":b,"witness":<id|null>,"component_witness":<id|null>,"slim_set":[ids],"slim_set_mass":f}
mincut   -> {"cut_value":f,"cut":[ids],"flow_value":f,"pencil":[{"path":[ids],"alpha":f}...],"C":<f|null>}
modulus  -> {"p":f,"modulus":f,"dual_value":f,"gap":f,"iterations":int,"rho":{id:f...},
             "active_paths":[[ids]...],"multipliers":[f...]} (+ "cut_value":f when p = 1)
pencil   -> {"p":f,"pencil":[{"path":[ids],"alpha":f}...],"C":f,"C_empirical":f,"C_holder":f,"seed":int}
discretize -> graph document + {"net_indices":[int...],"r":f}
experiment (CSV) -> "# {metadata JSON}" line, then columns r,width,sr_over_r,cut_over_r
verify   -> {"seed":int,"max_vertices":int,"instances":int,"exhaustive_vertices":int,"checks":{name:{"instances":int,"failures":int}...},
             "counterexamples":int,"first_counterexample":<{"check":s,"detail":s,"graph":<graph>,"v":id,"w":id}|null>}
errors   -> {"error":<kind>,"message":s}; exit 1 for invalid input, 2 for computation errors,
            3 when verify finds a counterexample.
)";
}

}  // namespace mgraph::report

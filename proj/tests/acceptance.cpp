// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. argv[1] is the path of the command-line tool.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mgraph/discretize.hpp"
#include "mgraph/error.hpp"
#include "mgraph/graph_io.hpp"
#include "mgraph/mincut.hpp"
#include "mgraph/modulus.hpp"
#include "mgraph/separation.hpp"
#include "mgraph/suite.hpp"

using namespace mgraph;
using suite::Instance;

namespace {

struct Outcome {
  bool pass = false;
  std::string summary;
};

struct Criterion {
  int id;
  std::string title;
  double time_limit;  // seconds; 0 for none
  std::function<Outcome()> run;
};

std::string Fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

std::string Describe(const suite::Tally& t) {
  std::string s = std::to_string(t.instances) + " checks, " +
                  std::to_string(t.failures) + " failures";
  if (t.first) {
    s += "; first: " + t.first->detail + " on " +
         suite::InstanceToJson(t.first->instance).dump();
  }
  return s;
}

template <typename Fn>
void Guarded(suite::Tally& tally, const Instance& inst, Fn&& fn) {
  std::string detail;
  try {
    detail = fn();
  } catch (const Error& e) {
    detail = std::string(ToString(e.code())) + ": " + e.what();
  }
  tally.Record(detail.empty(), inst, detail);
}

// Exhaustive connected graphs on 2..6 vertices plus 1000 random graphs on
// 2..8 vertices, shared by criteria 1, 4 and 5.
const std::vector<Instance>& Catalog() {
  static const std::vector<Instance> catalog = [] {
    std::vector<Instance> out;
    Rng rng(20240601);
    for (std::size_t n = 2; n <= 6; ++n) {
      suite::ForEachConnectedGraph(
          n, rng, [&](const Instance& inst) { out.push_back(inst); });
    }
    for (int k = 0; k < 1000; ++k) {
      out.push_back(suite::RandomInstance(rng, 2 + rng.Below(7)));
    }
    return out;
  }();
  return catalog;
}

Outcome CutEqualsInfSr() {
  suite::Tally tally{"cut_equals_min_sr"};
  for (const auto& inst : Catalog()) {
    double err = 0;
    Guarded(tally, inst, [&] { return suite::CheckCutEqualsMinSr(inst, 1e-9, &err); });
    tally.max_error = std::max(tally.max_error, err);
  }
  return {tally.ok(), Describe(tally) + ", max rel err " + Fmt(tally.max_error)};
}

Outcome FibrationProcedure() {
  suite::Tally tally{"fibration"};
  Rng rng(777);
  std::size_t wide = 0;
  while (tally.instances < 500) {
    const Instance inst = suite::RandomInstance(rng, 3 + rng.Below(6), 0.0);
    VertexSet set = suite::RandomSet(rng, inst.graph.vertex_count());
    if (!IsSeparating(inst.graph, inst.terminals, set)) {
      for (Vertex z : MinVertexCut(inst.graph, inst.terminals).cut.members()) {
        set.insert(z);
      }
    }
    if (DiscWidth(inst.graph, inst.terminals, set).value() > 1) ++wide;
    Guarded(tally, inst, [&] { return suite::CheckFibration(inst, set); });
  }
  return {tally.ok(), Describe(tally) + " (" + std::to_string(wide) +
                          " sets of width >= 2)"};
}

Outcome SlimEquivalence() {
  suite::Tally tally{"slim_equivalence"};
  Rng rng(4242);
  for (std::size_t n = 2; n <= 6; ++n) {
    suite::ForEachConnectedGraph(n, rng, [&](const Instance& inst) {
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        const VertexSet set = VertexSet::FromMask(n, mask);
        if (!IsSeparating(inst.graph, inst.terminals, set)) continue;
        Guarded(tally, inst,
                [&] { return suite::CheckSlimEquivalence(inst, set); });
      }
    });
  }
  return {tally.ok(), Describe(tally)};
}

Outcome SlimOptimum() {
  suite::Tally tally{"slim_optimum"};
  for (const auto& inst : Catalog()) {
    double err = 0;
    Guarded(tally, inst, [&] { return suite::CheckSlimOptimum(inst, 1e-9, &err); });
    tally.max_error = std::max(tally.max_error, err);
  }
  return {tally.ok(), Describe(tally) + ", max rel err " + Fmt(tally.max_error)};
}

Outcome ModulusOneDuality() {
  suite::Tally tally{"modulus_one_duality"};
  for (const auto& inst : Catalog()) {
    double err = 0;
    Guarded(tally, inst,
            [&] { return suite::CheckModulusOneDuality(inst, 1e-6, &err); });
    tally.max_error = std::max(tally.max_error, err);
  }
  return {tally.ok(), Describe(tally) + ", max rel err " + Fmt(tally.max_error)};
}

Outcome ModulusSolver() {
  suite::Tally tally{"modulus"};
  Rng rng(99);
  for (int k = 0; k < 40; ++k) {
    const Instance inst = suite::RandomInstance(rng, 3 + rng.Below(4), 0.0);
    for (double p : {1.5, 2.0, 3.0}) {
      double err = 0;
      Guarded(tally, inst, [&] { return suite::CheckModulus(inst, p, 1e-5, &err); });
      tally.max_error = std::max(tally.max_error, err);
    }
  }
  const MeasureGraph chain = MeasureGraph(
      {"v", "a", "w"}, {1, 1, 1}, {{0, 1}, {1, 2}});
  const Instance chain_inst{chain, {0, 2}};
  double chain_err = 0;
  for (double p : {1.5, 2.0, 3.0}) {
    Guarded(tally, chain_inst, [&]() -> std::string {
      const double value = ModulusP(chain, {0, 2}, p, {.tol = 1e-12}).value;
      const double exact = 3 * std::pow(1.0 / 3, p);
      const double err = suite::RelativeError(value, exact);
      chain_err = std::max(chain_err, err);
      if (err > 1e-8) return "chain p=" + Fmt(p) + " value " + Fmt(value);
      return {};
    });
  }
  return {tally.ok(), Describe(tally) + ", max rel err vs brute " +
                          Fmt(tally.max_error) + ", chain rel err " +
                          Fmt(chain_err)};
}

Outcome PencilInequality() {
  suite::Tally tally{"pencil"};
  Rng rng(31337);
  for (int k = 0; k < 100; ++k) {
    const Instance inst = suite::RandomInstance(rng, 4 + rng.Below(7), 0.0);
    double violation = 0;
    Guarded(tally, inst,
            [&] { return suite::CheckPencil(inst, rng, 200, 1e-9, &violation); });
    tally.max_error = std::max(tally.max_error, violation);
  }
  return {tally.ok(), Describe(tally) + ", max violation " + Fmt(tally.max_error)};
}

PointCloud RectangleCloud() {
  // 200 x 100 cell centers over [0,1] x [0,0.5], mass = cell area.
  std::vector<std::vector<double>> pts;
  const double h = 0.005;
  for (int j = 0; j < 100; ++j) {
    for (int i = 0; i < 200; ++i) pts.push_back({(i + 0.5) * h, (j + 0.5) * h});
  }
  return PointCloud::FromCoordinates(pts, std::vector<double>(pts.size(), h * h));
}

Outcome NetExperiment() {
  const PointCloud cloud = RectangleCloud();
  const double x[] = {0.05, 0.25};
  const double y[] = {0.95, 0.25};
  ExperimentConfig config;
  config.x = cloud.Nearest(x);
  config.y = cloud.Nearest(y);
  config.r_schedule = {0.05, 0.03, 0.02, 0.012};

  config.indicator = EvaluateRegion(cloud, "box:0.45,0.55,-1,1");
  const auto rect = RunNetExperiment(cloud, config);
  config.indicator = EvaluateRegion(
      cloud, "box:0.45,0.55,-1,1;box:0.3,0.7,-1,0.1;box:0.3,0.7,0.4,1");
  const auto dumbbell = RunNetExperiment(cloud, config);

  bool pass = true;
  std::string series;
  for (std::size_t k = 0; k < rect.size(); ++k) {
    const double ratio = rect[k].cut_value / (2 * rect[k].r);
    const bool in_band = ratio >= 0.5 / 4 && ratio <= 0.5 * 4;
    const bool ordered = dumbbell[k].sr.kind == RatioValue::Kind::kFinite &&
                         rect[k].sr.kind == RatioValue::Kind::kFinite &&
                         dumbbell[k].sr.value > rect[k].sr.value;
    pass = pass && in_band && ordered;
    series += " r=" + Fmt(rect[k].r) + ": cut/2r=" + Fmt(ratio) +
              " SR rect/dumbbell=" + Fmt(rect[k].sr.value) + "/" +
              Fmt(dumbbell[k].sr.value) + (in_band && ordered ? "" : " <-");
    series += ";";
  }
  return {pass, "analytic 0.5, band [0.125, 2];" + series};
}

Outcome RieszBound() {
  std::vector<std::vector<double>> pts;
  const int n = 61;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) pts.push_back({i / 60.0, j / 60.0});
  }
  const PointCloud cloud =
      PointCloud::FromCoordinates(pts, std::vector<double>(pts.size(), 1.0));
  const double px[] = {0.1, 0.5};
  const double py[] = {0.9, 0.5};
  const std::size_t x = cloud.Nearest(px);
  const std::size_t y = cloud.Nearest(py);
  const double cd = EstimateDoubling(cloud, 64);
  const double d = cloud.Distance(x, y);
  bool pass = true;
  std::string s = "C_D estimate " + Fmt(cd) + ";";
  for (double L : {1.0, 2.0}) {
    const double total = ComputeRieszWeights(cloud, x, y, L).Total();
    const double bound = 8 * cd * L * d * 1.25;
    pass = pass && total <= bound;
    s += " L=" + Fmt(L) + ": total " + Fmt(total) + " <= " + Fmt(bound) + ";";
  }
  return {pass, s};
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome Determinism(const std::string& cli) {
  if (cli.empty()) return {false, "no command-line tool path given"};
  const std::string base = cli + " verify --seed 42 --max-vertices 7 --out ";
  const int a = std::system((base + "verify_run_a.json").c_str());
  const int b = std::system((base + "verify_run_b.json").c_str());
  const std::string ra = Slurp("verify_run_a.json");
  const std::string rb = Slurp("verify_run_b.json");
  const bool same = !ra.empty() && ra == rb;
  return {a == 0 && b == 0 && same,
          std::to_string(ra.size()) + " bytes, exit codes " + std::to_string(a) +
              "/" + std::to_string(b) + (same ? ", identical" : ", DIFFERENT")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<Criterion> criteria = {
      {1, "cut value equals inf of separating ratio", 60, CutEqualsInfSr},
      {2, "fibration levels", 0, FibrationProcedure},
      {3, "slim conditions agree", 0, SlimEquivalence},
      {4, "slim optimum attains the cut", 0, SlimOptimum},
      {5, "Mod_1 equals the min cut", 0, ModulusOneDuality},
      {6, "Mod_p matches brute force", 30, ModulusSolver},
      {7, "flow pencil inequality", 0, PencilInequality},
      {8, "rectangle/dumbbell net experiment", 120, NetExperiment},
      {9, "Riesz mass bound", 0, RieszBound},
      {10, "verify output is byte-identical", 0, [&] { return Determinism(cli); }},
  };

  // The shared catalog is built once, outside any timed criterion.
  Catalog();

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    if (c.time_limit > 0 && seconds >= c.time_limit) {
      outcome.pass = false;
      outcome.summary += " (over the " + Fmt(c.time_limit) + " s limit)";
    }
    if (!outcome.pass) ++failed;
    std::printf("criterion %2d %s: %s [%.1f s] %s\n", c.id,
                outcome.pass ? "PASS" : "FAIL", c.title.c_str(), seconds,
                outcome.summary.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

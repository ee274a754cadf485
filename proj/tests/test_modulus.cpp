#include <array>
#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "mgraph/error.hpp"
#include "mgraph/mincut.hpp"
#include "mgraph/modulus.hpp"
#include "mgraph/oracle.hpp"
#include "mgraph/random.hpp"
#include "mgraph/suite.hpp"

using namespace mgraph;

TEST_CASE("shortest rho path") {
  MeasureGraph g = fixtures::Chain3();
  const auto t = fixtures::Ends(g);
  const RhoPath zero = ShortestRhoPath(g, t, {{0, 0, 0}});
  CHECK(zero.length == 0.0);
  const RhoPath p = ShortestRhoPath(g, t, {{0.2, 0.5, 0.1}});
  CHECK(p.length == doctest::Approx(0.8));
  CHECK(p.path.vertices == std::vector<Vertex>{0, 1, 2});

  MeasureGraph isolated = MeasureGraph::WithIndexLabels({1, 1}, {});
  CHECK_THROWS_AS(ShortestRhoPath(isolated, {0, 1}, {{1, 1}}), Error);
}

TEST_CASE("shortest rho path matches enumeration") {
  Rng rng(53);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 2 + rng.Below(6);
    const auto inst = suite::RandomInstance(rng, n, 0.0);
    Density rho{std::vector<double>(n)};
    for (auto& r : rho.rho) r = rng.Uniform();
    double best = INFINITY;
    for (const auto& path :
         oracle::EnumerateSimplePaths(inst.graph, inst.terminals).paths) {
      double len = 0;
      for (Vertex z : path.vertices) len += rho.rho[z];
      best = std::min(best, len);
    }
    CHECK(ShortestRhoPath(inst.graph, inst.terminals, rho).length ==
          doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("single chain closed form") {
  MeasureGraph g = fixtures::Chain3();
  for (double p : {1.5, 2.0, 3.0}) {
    const ModulusResult res = ModulusP(g, fixtures::Ends(g), p, {.tol = 1e-12});
    CHECK(res.value == doctest::Approx(3 * std::pow(1.0 / 3, p)).epsilon(1e-10));
    for (double r : res.rho.rho) CHECK(r == doctest::Approx(1.0 / 3));
  }
}

TEST_CASE("Mod_1 is the min cut") {
  MeasureGraph g = fixtures::Parallel(10, 1, 2, 10);
  const ModulusResult res = ModulusP(g, fixtures::Ends(g), 1.0);
  CHECK(res.value == doctest::Approx(3.0));
  CHECK(res.rho.rho == std::vector<double>{0, 1, 1, 0});
}

TEST_CASE("modulus errors") {
  MeasureGraph isolated = MeasureGraph::WithIndexLabels({1, 1}, {});
  try {
    ModulusP(isolated, {0, 1}, 2.0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoPath);
  }
  MeasureGraph g = fixtures::Chain3();
  CHECK_THROWS_AS(ModulusP(g, fixtures::Ends(g), 0.5), Error);
}

TEST_CASE("modulus certificates on random graphs") {
  Rng rng(59);
  for (int k = 0; k < 60; ++k) {
    const std::size_t n = 2 + rng.Below(6);
    const auto inst = suite::RandomInstance(rng, n, 0.0);
    const auto& [g, t] = inst;
    const double p = std::array{1.5, 2.0, 3.0}[k % 3];
    const ModulusResult res = ModulusP(g, t, p);
    CHECK(res.gap <= 1e-6);
    CHECK(res.dual_value <= res.value * (1 + 1e-12));
    // Admissible on every simple path.
    for (const auto& path : oracle::EnumerateSimplePaths(g, t).paths) {
      double len = 0;
      for (Vertex z : path.vertices) len += res.rho.rho[z];
      CHECK(len >= 1 - 1e-9);
    }
    CHECK(suite::CheckModulus(inst, p, 1e-5) == "");
  }
}

TEST_CASE("stationarity links rho and the multipliers") {
  MeasureGraph g = fixtures::Make(
      {"v", "a", "b", "c", "w"}, {1, 2, 0.5, 3, 1},
      {{"v", "a"}, {"a", "w"}, {"v", "b"}, {"b", "c"}, {"c", "w"}, {"a", "b"}});
  const double p = 2.0;
  const ModulusResult res = ModulusP(g, fixtures::Ends(g), p, {.tol = 1e-10});
  std::vector<double> s(g.vertex_count(), 0.0);
  for (std::size_t k = 0; k < res.active_paths.size(); ++k) {
    for (Vertex z : res.active_paths[k].vertices) s[z] += res.multipliers[k];
  }
  // rho is the stationary point up to the final admissibility rescaling.
  double scale = -1;
  for (Vertex z = 0; z < g.vertex_count(); ++z) {
    const double stationary = std::pow(s[z] / (p * g.mu(z)), 1 / (p - 1));
    if (stationary < 1e-9) {
      CHECK(res.rho.rho[z] < 1e-6);
      continue;
    }
    if (scale < 0) scale = res.rho.rho[z] / stationary;
    CHECK(res.rho.rho[z] == doctest::Approx(scale * stationary).epsilon(1e-6));
  }
  CHECK(scale == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("modulus scales linearly with the masses") {
  Rng rng(61);
  for (int k = 0; k < 20; ++k) {
    const auto inst = suite::RandomInstance(rng, 6, 0.0);
    std::vector<double> mu(inst.graph.masses().begin(),
                           inst.graph.masses().end());
    for (auto& m : mu) m *= 7.5;
    const MeasureGraph scaled(inst.graph.labels(), mu, inst.graph.edges());
    const double base = ModulusP(inst.graph, inst.terminals, 2.0, {.tol = 1e-9}).value;
    const double big = ModulusP(scaled, inst.terminals, 2.0, {.tol = 1e-9}).value;
    CHECK(big == doctest::Approx(7.5 * base).epsilon(1e-7));
  }
}

TEST_CASE("disjoint parallel families add") {
  // Routes that share only heavy terminals: adding the second route never
  // lowers the modulus, and the two nearly add up.
  MeasureGraph both = fixtures::Make(
      {"v", "a", "b", "w"}, {1e6, 1, 1, 1e6},
      {{"v", "a"}, {"a", "w"}, {"v", "b"}, {"b", "w"}});
  MeasureGraph one = fixtures::Make({"v", "a", "w"}, {1e6, 1, 1e6},
                                    {{"v", "a"}, {"a", "w"}});
  for (double p : {1.5, 2.0, 3.0}) {
    const double m2 = ModulusP(both, fixtures::Ends(both), p, {.tol = 1e-9}).value;
    const double m1 = ModulusP(one, fixtures::Ends(one), p, {.tol = 1e-9}).value;
    CHECK(m2 >= m1);
    CHECK(m2 >= 2 * m1 * (1 - 1e-2));
  }
}

TEST_CASE("restricting to a subfamily never increases modulus") {
  Rng rng(67);
  for (int k = 0; k < 30; ++k) {
    const auto inst = suite::RandomInstance(rng, 6, 0.0);
    const auto all = oracle::EnumerateSimplePaths(inst.graph, inst.terminals);
    oracle::PathCatalog through;
    for (std::size_t i = 0; i < all.paths.size(); ++i) {
      if (all.masks[i] >> 2 & 1) {
        through.paths.push_back(all.paths[i]);
        through.masks.push_back(all.masks[i]);
      }
    }
    if (through.paths.empty()) continue;
    const double full = ModulusP(inst.graph, inst.terminals, 2.0, {.tol = 1e-9}).value;
    CHECK(oracle::BruteModulus(inst.graph, through, 2.0) <= full * (1 + 1e-6));
  }
}

TEST_CASE("dual pencils") {
  MeasureGraph chain = fixtures::Chain3();
  const PathPencil dirac =
      PencilFromDuals(ModulusP(chain, fixtures::Ends(chain), 2.0));
  REQUIRE(dirac.paths.size() == 1);
  CHECK(dirac.paths[0].weight == doctest::Approx(1.0));

  MeasureGraph par = fixtures::Parallel();
  const PathPencil split =
      PencilFromDuals(ModulusP(par, fixtures::Ends(par), 2.0, {.tol = 1e-10}));
  REQUIRE(split.paths.size() == 2);
  CHECK(split.paths[0].weight == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(split.paths[1].weight == doctest::Approx(0.5).epsilon(1e-6));

  ModulusResult empty;
  empty.p = 2;
  CHECK_THROWS_AS(PencilFromDuals(empty), Error);
}

TEST_CASE("pencil constant estimate") {
  MeasureGraph par = fixtures::Parallel(1, 2, 3, 1);
  const auto t = fixtures::Ends(par);
  for (double p : {1.0, 2.0, 3.0}) {
    const PathPencil pencil =
        p == 1.0 ? PencilFromFlow(par, t) : PencilFromDuals(ModulusP(par, t, p));
    const PencilConstant a = EstimatePencilConstant(par, pencil, p, 100, 5);
    const PencilConstant b = EstimatePencilConstant(par, pencil, p, 100, 5);
    CHECK(std::isfinite(a.empirical));
    CHECK(a.empirical == b.empirical);
    CHECK(a.empirical <= a.holder * (1 + 1e-12));
  }
}

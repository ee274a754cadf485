#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "mgraph/error.hpp"
#include "mgraph/oracle.hpp"

using namespace mgraph;

TEST_CASE("simple path enumeration") {
  MeasureGraph chain = fixtures::Chain3();
  CHECK(oracle::EnumerateSimplePaths(chain, fixtures::Ends(chain)).paths.size() == 1);

  MeasureGraph par = fixtures::Parallel();
  const auto two = oracle::EnumerateSimplePaths(par, fixtures::Ends(par));
  REQUIRE(two.paths.size() == 2);
  CHECK(two.paths[0] < two.paths[1]);

  MeasureGraph k4 = fixtures::Make(
      {"v", "a", "b", "w"}, {1, 1, 1, 1},
      {{"v", "a"}, {"v", "b"}, {"v", "w"}, {"a", "b"}, {"a", "w"}, {"b", "w"}});
  const auto five = oracle::EnumerateSimplePaths(k4, fixtures::Ends(k4));
  CHECK(five.paths.size() == 5);
  for (std::size_t i = 0; i + 1 < five.paths.size(); ++i) {
    CHECK(five.paths[i] < five.paths[i + 1]);
  }
}

TEST_CASE("oracle caps") {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex z = 0; z + 1 < 17; ++z) edges.emplace_back(z, z + 1);
  MeasureGraph big = MeasureGraph::WithIndexLabels(std::vector<double>(17, 1), edges);
  CHECK_THROWS_AS(oracle::EnumerateSimplePaths(big, {0, 16}), Error);
  CHECK_THROWS_AS(oracle::BruteMinSr(big, {0, 16}), Error);
  CHECK_THROWS_AS(oracle::BruteModulus(big, {0, 16}, 2.0), Error);
  try {
    oracle::BruteMinSeparatingMass(big, {0, 16});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCapExceeded);
  }
}

TEST_CASE("brute width examples") {
  MeasureGraph par = fixtures::Parallel();
  const auto t = fixtures::Ends(par);
  CHECK(oracle::BruteWidth(par, t, VertexSet(4, {1})) == 0);
  CHECK(oracle::BruteWidth(par, t, VertexSet(4, {1, 2})) == 1);
  MeasureGraph isolated = MeasureGraph::WithIndexLabels({1, 1}, {});
  CHECK(oracle::BruteWidth(isolated, {0, 1}, VertexSet(2)).is_infinite());
}

TEST_CASE("brute minimum separating mass") {
  MeasureGraph chain = fixtures::Chain3(5, 3, 7);
  const auto c = oracle::BruteMinSeparatingMass(chain, fixtures::Ends(chain));
  CHECK(c.value == 3.0);
  CHECK(c.witness == VertexSet(3, {1}));

  MeasureGraph par = fixtures::Parallel(10, 1, 2, 10);
  const auto p = oracle::BruteMinSeparatingMass(par, fixtures::Ends(par));
  CHECK(p.value == 3.0);
  CHECK(p.witness == VertexSet(4, {1, 2}));

  MeasureGraph isolated = MeasureGraph::WithIndexLabels({1, 1}, {});
  const auto none = oracle::BruteMinSeparatingMass(isolated, {0, 1});
  CHECK(none.value == 0.0);
  CHECK(none.witness.empty());
}

TEST_CASE("brute minimum separating ratio") {
  MeasureGraph par = fixtures::Parallel(10, 1, 2, 10);
  const auto sr = oracle::BruteMinSr(par, fixtures::Ends(par));
  CHECK(sr.value == 3.0);
  CHECK(sr.witness_width == 1);

  // The single cut {a} ties with the two-level set {a, c}.
  MeasureGraph chain = fixtures::Make({"v", "a", "b", "c", "w"},
                                      {9, 2, 9, 2, 9},
                                      {{"v", "a"}, {"a", "b"}, {"b", "c"}, {"c", "w"}});
  const auto two = oracle::BruteMinSr(chain, fixtures::Ends(chain));
  CHECK(two.value == 2.0);
}

TEST_CASE("brute modulus closed forms") {
  MeasureGraph chain = fixtures::Chain3();
  for (double p : {1.5, 2.0, 3.0}) {
    CHECK(oracle::BruteModulus(chain, fixtures::Ends(chain), p) ==
          doctest::Approx(3 * std::pow(1.0 / 3, p)).epsilon(1e-7));
  }
  // Unit masses with cuttable terminals: {v} alone blocks every path.
  MeasureGraph par = fixtures::Parallel();
  CHECK(oracle::BruteModulus(par, fixtures::Ends(par), 1.0) == 1.0);
  MeasureGraph heavy = fixtures::Parallel(10, 1, 1, 10);
  CHECK(oracle::BruteModulus(heavy, fixtures::Ends(heavy), 1.0) == 2.0);
}

TEST_CASE("subdividing an edge never increases brute modulus") {
  MeasureGraph par = fixtures::Parallel(2, 1, 3, 2);
  MeasureGraph longer = fixtures::Make(
      {"v", "a", "b", "w", "s"}, {2, 1, 3, 2, 1},
      {{"v", "a"}, {"a", "s"}, {"s", "w"}, {"v", "b"}, {"b", "w"}});
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    CHECK(oracle::BruteModulus(longer, fixtures::Ends(longer), p) <=
          oracle::BruteModulus(par, fixtures::Ends(par), p) * (1 + 1e-8));
  }
}

TEST_CASE("brute positions") {
  MeasureGraph g = fixtures::Chain4();
  const auto pos = oracle::BrutePositions(g, fixtures::Ends(g), VertexSet(4, {1, 2}));
  CHECK(pos[0] == 0);
  CHECK(pos[1] == 1);
  CHECK(pos[2] == 2);
  CHECK(pos[3] == 2);
}

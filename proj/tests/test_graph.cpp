#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "mgraph/error.hpp"
#include "mgraph/graph_io.hpp"
#include "mgraph/oracle.hpp"
#include "mgraph/random.hpp"
#include "mgraph/suite.hpp"

using namespace mgraph;

namespace {

ErrorCode CodeOf(const std::string& doc) {
  try {
    LoadGraph(doc);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("document was accepted: " << doc);
  return ErrorCode::kIo;
}

std::string MessageOf(const std::string& doc) {
  try {
    LoadGraph(doc);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("extended count saturates") {
  const ExtendedCount inf = ExtendedCount::Infinity();
  CHECK((ExtendedCount(2) + ExtendedCount(3)) == 5);
  CHECK((inf + ExtendedCount(1)).is_infinite());
  CHECK(ExtendedCount(7) < inf);
  CHECK(inf.ToString() == "inf");
  CHECK(ExtendedCount(4).ToString() == "4");
  CHECK_FALSE(inf == 0);
}

TEST_CASE("vertex set basics") {
  VertexSet s(5, {1, 3});
  CHECK(s.count() == 2);
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(7));
  CHECK(s.mask() == 0b1010);
  CHECK(VertexSet::FromMask(5, 0b1010) == s);
  CHECK(s.IsSubsetOf(VertexSet(5, {1, 2, 3})));
  CHECK(s.Intersect(VertexSet(5, {3, 4})).members() == std::vector<Vertex>{3});
  CHECK_THROWS_AS(s.insert(5), Error);
}

TEST_CASE("load minimal document") {
  MeasureGraph g = LoadGraph(
      R"({"vertices":[{"id":"v","mu":1},{"id":"w","mu":1}],"edges":[["v","w"]]})");
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.Adjacent(0, 1));
}

TEST_CASE("load path document") {
  MeasureGraph g = LoadGraph(R"({"vertices":[{"id":"v","mu":1},{"id":"a","mu":2},
      {"id":"w","mu":3}],"edges":[["v","a"],["a","w"]]})");
  const Vertex a = g.IndexOf("a");
  REQUIRE(g.neighbors(a).size() == 2);
  CHECK(g.neighbors(a)[0] == g.IndexOf("v"));
  CHECK(g.neighbors(a)[1] == g.IndexOf("w"));
  CHECK(g.mu(a) == 2.0);
}

TEST_CASE("integer ids are accepted") {
  MeasureGraph g = LoadGraph(
      R"({"vertices":[{"id":0,"mu":1},{"id":1,"mu":1}],"edges":[[0,1]]})");
  CHECK(g.HasLabel("0"));
  CHECK(g.Adjacent(g.IndexOf("0"), g.IndexOf("1")));
}

TEST_CASE("invalid documents name the offending id") {
  CHECK(CodeOf(R"({"vertices":[{"id":"a","mu":0}],"edges":[]})") ==
        ErrorCode::kInvalidArgument);
  CHECK(MessageOf(R"({"vertices":[{"id":"a","mu":0}],"edges":[]})")
            .find("non-positive mass") != std::string::npos);
  CHECK(MessageOf(R"({"vertices":[{"id":"a","mu":-1}],"edges":[]})")
            .find("'a'") != std::string::npos);
  CHECK(MessageOf(R"({"vertices":[{"id":"a","mu":1}],"edges":[["a","zz"]]})")
            .find("zz") != std::string::npos);
  CHECK(MessageOf(
            R"({"vertices":[{"id":"a","mu":1},{"id":"a","mu":2}],"edges":[]})")
            .find("duplicate vertex") != std::string::npos);
  CHECK(CodeOf(R"({"vertices":[{"id":"a","mu":1},{"id":"b","mu":1}],
      "edges":[["a","b"],["b","a"]]})") == ErrorCode::kInvalidArgument);
  CHECK(CodeOf(R"({"vertices":[{"id":"a","mu":1}],"edges":[["a","a"]]})") ==
        ErrorCode::kInvalidArgument);
  CHECK(CodeOf("{not json") == ErrorCode::kParse);
  CHECK(CodeOf(R"({"vertices":[{"id":"a"}],"edges":[]})") == ErrorCode::kParse);
}

TEST_CASE("graph document round trip") {
  const std::string text =
      R"({"edges":[["v","a"],["a","w"],["v","w"]],"vertices":[{"id":"v","mu":1.5},{"id":"a","mu":2.0},{"id":"w","mu":0.25}]})";
  const nlohmann::json doc = nlohmann::json::parse(text);
  CHECK(GraphToJson(GraphFromJson(doc)) == doc);
}

TEST_CASE("connected component") {
  MeasureGraph chain = fixtures::Chain3();
  CHECK(ConnectedComponent(chain, 0).count() == 3);

  MeasureGraph isolated = MeasureGraph::WithIndexLabels({1, 1}, {});
  CHECK(ConnectedComponent(isolated, 0).members() == std::vector<Vertex>{0});

  Rng rng(5);
  for (int k = 0; k < 50; ++k) {
    const auto inst = suite::RandomInstance(rng, 5, 0.5);
    for (Vertex z = 0; z < 5; ++z) {
      CHECK(ConnectedComponent(inst.graph, z) ==
            oracle::BruteComponent(inst.graph, z));
    }
  }
}

TEST_CASE("connected components partition the vertices") {
  Rng rng(11);
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 2 + rng.Below(63);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex a = 0; a < n; ++a) {
      for (Vertex b = a + 1; b < n; ++b) {
        if (rng.Bernoulli(1.5 / n)) edges.emplace_back(a, b);
      }
    }
    MeasureGraph g =
        MeasureGraph::WithIndexLabels(std::vector<double>(n, 1.0), edges);
    std::vector<VertexSet> comp;
    for (Vertex z = 0; z < n; ++z) comp.push_back(ConnectedComponent(g, z));
    for (Vertex a = 0; a < n; ++a) {
      CHECK(comp[a].contains(a));
      for (Vertex b = 0; b < n; ++b) {
        CHECK(comp[a].contains(b) == comp[b].contains(a));
        if (comp[a].contains(b)) CHECK(comp[a] == comp[b]);
      }
    }
  }
}

TEST_CASE("path intersection counts distinct vertices") {
  MeasureGraph g = fixtures::Chain4();
  const Vertex v = 0, a = 1, b = 2, w = 3;
  CHECK(PathIntersectionCount({{v, a, w}}, VertexSet(4, {a})) == 1);
  CHECK(PathIntersectionCount({{v, a, v, a, w}}, VertexSet(4, {a})) == 1);
  CHECK(PathIntersectionCount({{v, a, b, w}}, VertexSet(4, {a, b, w})) == 3);
  CHECK(IsValidPath(g, {{v, a, b, w}}));
  CHECK_FALSE(IsValidPath(g, {{v, b}}));

  Rng rng(3);
  for (int k = 0; k < 100; ++k) {
    GraphPath path{{v}};
    for (int s = 0; s < 6; ++s) path.vertices.push_back(rng.Below(4));
    const VertexSet set = suite::RandomSet(rng, 4);
    std::vector<Vertex> distinct = path.vertices;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    CHECK(PathIntersectionCount(path, set) <=
          std::min(set.count(), distinct.size()));
  }
}

TEST_CASE("hop distance") {
  MeasureGraph g = fixtures::Chain4();
  CHECK(HopDistance(g, 0, 3) == 3);
  CHECK(HopDistance(g, 2, 2) == 0);
  MeasureGraph isolated = MeasureGraph::WithIndexLabels({1, 1}, {});
  CHECK(HopDistance(isolated, 0, 1) == SIZE_MAX);
}

#include <cstdint>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "mgraph/mgraph.h"

using nlohmann::json;

namespace {

const char* kParallel =
    R"({"vertices":[{"id":"v","mu":4},{"id":"a","mu":1},{"id":"b","mu":2},{"id":"w","mu":4}],
        "edges":[["v","a"],["a","w"],["v","b"],["b","w"]]})";

json Take(char* s) {
  json doc = json::parse(s);
  mg_string_free(s);
  return doc;
}

}  // namespace

TEST_CASE("graph handle lifecycle") {
  mg_graph* g = nullptr;
  REQUIRE(mg_graph_from_json(kParallel, &g) == MG_OK);
  CHECK(mg_graph_vertex_count(g) == 4);
  CHECK(mg_graph_edge_count(g) == 4);
  mg_graph_free(g);
  mg_graph_free(nullptr);
}

TEST_CASE("errors carry status and message") {
  mg_graph* g = nullptr;
  CHECK(mg_graph_from_json(R"({"vertices":[{"id":"a","mu":0}],"edges":[]})",
                           &g) == MG_INVALID_ARGUMENT);
  CHECK(std::string(mg_last_error()).find("non-positive mass") !=
        std::string::npos);
  CHECK(mg_graph_from_json("{oops", &g) == MG_PARSE);
  CHECK(mg_graph_load("/nonexistent/graph.json", &g) == MG_IO);
  CHECK(mg_status_is_input_error(MG_IO));
  CHECK_FALSE(mg_status_is_input_error(MG_NO_PATH));
  CHECK(std::string(mg_status_name(MG_NON_CONVERGENCE)) == "non_convergence");
  CHECK(mg_graph_from_json(nullptr, &g) == MG_INVALID_ARGUMENT);
}

TEST_CASE("numeric queries") {
  mg_graph* g = nullptr;
  REQUIRE(mg_graph_from_json(kParallel, &g) == MG_OK);
  const char* ab[] = {"a", "b"};
  std::uint64_t width = 0;
  CHECK(mg_disc_width(g, "v", "w", ab, 2, &width) == MG_OK);
  CHECK(width == 1);
  double cut = 0;
  CHECK(mg_min_cut_value(g, "v", "w", &cut) == MG_OK);
  CHECK(cut == doctest::Approx(3.0));
  double mod = 0;
  CHECK(mg_modulus_value(g, "v", "w", 1.0, 1e-6, &mod) == MG_OK);
  CHECK(mod == doctest::Approx(cut));
  CHECK(mg_min_cut_value(g, "v", "nope", &cut) == MG_INVALID_ARGUMENT);
  const char* bad[] = {"zz"};
  CHECK(mg_disc_width(g, "v", "w", bad, 1, &width) == MG_INVALID_ARGUMENT);
  mg_graph_free(g);
}

TEST_CASE("json reports") {
  mg_graph* g = nullptr;
  REQUIRE(mg_graph_from_json(kParallel, &g) == MG_OK);
  const char* ab[] = {"a", "b"};
  char* out = nullptr;

  REQUIRE(mg_analyze(g, "v", "w", ab, 2, &out) == MG_OK);
  const json analyze = Take(out);
  CHECK(analyze["width"] == 1);
  CHECK(analyze["sr"] == 3.0);

  REQUIRE(mg_mincut(g, "v", "w", &out) == MG_OK);
  CHECK(Take(out)["cut"] == json::parse(R"(["a","b"])"));

  REQUIRE(mg_modulus(g, "v", "w", 1.0, 1e-6, &out) == MG_OK);
  const json mod = Take(out);
  CHECK(mod["modulus"] == mod["cut_value"]);

  REQUIRE(mg_pencil(g, "v", "w", 2.0, 1e-6, 42, &out) == MG_OK);
  CHECK(Take(out)["pencil"].size() == 2);

  REQUIRE(mg_slim(g, "v", "w", ab, 2, &out) == MG_OK);
  CHECK(Take(out)["slim"] == true);

  const char* a[] = {"a"};
  CHECK(mg_fibrate(g, "v", "w", a, 1, &out) == MG_NOT_SEPARATING);
  mg_graph_free(g);
}

TEST_CASE("no path is a computation error") {
  mg_graph* g = nullptr;
  REQUIRE(mg_graph_from_json(
              R"({"vertices":[{"id":"v","mu":1},{"id":"w","mu":1}],"edges":[]})",
              &g) == MG_OK);
  char* out = nullptr;
  CHECK(mg_modulus(g, "v", "w", 2.0, 1e-6, &out) == MG_NO_PATH);
  CHECK(mg_pencil(g, "v", "w", 1.0, 1e-6, 1, &out) == MG_ZERO_FLOW);
  mg_graph_free(g);
}

TEST_CASE("verify and schema") {
  char* out = nullptr;
  std::size_t failures = 99;
  REQUIRE(mg_verify(7, 4, 10, 3, &out, &failures) == MG_OK);
  CHECK(failures == 0);
  CHECK(Take(out)["counterexamples"] == 0);
  CHECK(mg_verify(7, 40, 10, 3, &out, nullptr) == MG_INVALID_ARGUMENT);
  REQUIRE(mg_schema(&out) == MG_OK);
  CHECK(std::string(out).find("experiment") != std::string::npos);
  mg_string_free(out);
}

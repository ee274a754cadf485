#include "mgraph/graph_io.hpp"

#include <fstream>
#include <sstream>

#include "mgraph/error.hpp"

namespace mgraph {

namespace {

std::string IdString(const nlohmann::json& id) {
  if (id.is_string()) return id.get<std::string>();
  if (id.is_number_integer()) return id.dump();
  throw Error(ErrorCode::kParse, "vertex id must be a string or integer, got " +
                                     id.dump());
}

}  // namespace

MeasureGraph GraphFromJson(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("vertices") ||
      !doc["vertices"].is_array()) {
    throw Error(ErrorCode::kParse, "graph document needs a 'vertices' array");
  }
  std::vector<std::string> labels;
  std::vector<double> mu;
  std::unordered_map<std::string, Vertex> index;
  for (const auto& vertex : doc["vertices"]) {
    if (!vertex.is_object() || !vertex.contains("id") ||
        !vertex.contains("mu") || !vertex["mu"].is_number()) {
      throw Error(ErrorCode::kParse,
                  "vertex entry needs 'id' and numeric 'mu': " + vertex.dump());
    }
    std::string id = IdString(vertex["id"]);
    if (!index.emplace(id, labels.size()).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate vertex id '" + id + "'");
    }
    double m = vertex["mu"].get<double>();
    if (!(m > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "non-positive mass at vertex '" + id + "'");
    }
    labels.push_back(std::move(id));
    mu.push_back(m);
  }

  std::vector<std::pair<Vertex, Vertex>> edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) {
      throw Error(ErrorCode::kParse, "'edges' must be an array");
    }
    for (const auto& edge : doc["edges"]) {
      if (!edge.is_array() || edge.size() != 2) {
        throw Error(ErrorCode::kParse,
                    "edge must be a pair of ids: " + edge.dump());
      }
      Vertex ends[2];
      for (int k = 0; k < 2; ++k) {
        std::string id = IdString(edge[k]);
        auto it = index.find(id);
        if (it == index.end()) {
          throw Error(ErrorCode::kInvalidArgument,
                      "dangling edge endpoint '" + id + "'");
        }
        ends[k] = it->second;
      }
      edges.emplace_back(ends[0], ends[1]);
    }
  }
  return MeasureGraph(std::move(labels), std::move(mu), edges);
}

MeasureGraph LoadGraph(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  return GraphFromJson(doc);
}

MeasureGraph LoadGraphFile(const std::string& path) {
  return LoadGraph(ReadFile(path));
}

nlohmann::json GraphToJson(const MeasureGraph& g) {
  nlohmann::json vertices = nlohmann::json::array();
  for (Vertex z = 0; z < g.vertex_count(); ++z) {
    vertices.push_back({{"id", g.label(z)}, {"mu", g.mu(z)}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [a, b] : g.edges()) {
    edges.push_back({g.label(a), g.label(b)});
  }
  return {{"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

VertexSet SetFromJson(const MeasureGraph& g, const nlohmann::json& ids) {
  if (!ids.is_array()) {
    throw Error(ErrorCode::kParse, "vertex set must be an array of ids");
  }
  VertexSet set(g.vertex_count());
  for (const auto& id : ids) set.insert(g.IndexOf(IdString(id)));
  return set;
}

VertexSet SetFromIds(const MeasureGraph& g,
                     const std::vector<std::string>& ids) {
  VertexSet set(g.vertex_count());
  for (const auto& id : ids) set.insert(g.IndexOf(id));
  return set;
}

nlohmann::json SetToJson(const MeasureGraph& g, const VertexSet& set) {
  nlohmann::json out = nlohmann::json::array();
  for (Vertex z : set.members()) out.push_back(g.label(z));
  return out;
}

nlohmann::json PathToJson(const MeasureGraph& g, const GraphPath& path) {
  nlohmann::json out = nlohmann::json::array();
  for (Vertex z : path.vertices) out.push_back(g.label(z));
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace mgraph

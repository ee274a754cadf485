#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mgraph/graph.hpp"

namespace mgraph {

// Graph document:
//   {"vertices":[{"id":"v","mu":1.0},...],"edges":[["v","w"],...]}
// Integer ids are accepted and stored by their decimal spelling.

MeasureGraph GraphFromJson(const nlohmann::json& doc);
MeasureGraph LoadGraph(std::string_view text);
MeasureGraph LoadGraphFile(const std::string& path);

nlohmann::json GraphToJson(const MeasureGraph& g);

/// Parses an array of vertex ids into a set; unknown ids are rejected.
VertexSet SetFromJson(const MeasureGraph& g, const nlohmann::json& ids);
VertexSet SetFromIds(const MeasureGraph& g, const std::vector<std::string>& ids);
nlohmann::json SetToJson(const MeasureGraph& g, const VertexSet& set);
nlohmann::json PathToJson(const MeasureGraph& g, const GraphPath& path);

/// Reads a whole file; throws Error(kIo).
std::string ReadFile(const std::string& path);

}  // namespace mgraph

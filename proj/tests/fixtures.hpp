#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mgraph/graph.hpp"

namespace fixtures {

using mgraph::MeasureGraph;
using mgraph::TerminalPair;
using mgraph::Vertex;

// Builds a graph from labels, masses and label pairs.
inline MeasureGraph Make(
    const std::vector<std::string>& labels, const std::vector<double>& mu,
    const std::vector<std::pair<std::string, std::string>>& edges) {
  std::vector<std::pair<Vertex, Vertex>> idx;
  auto find = [&](const std::string& s) {
    for (Vertex i = 0; i < labels.size(); ++i) {
      if (labels[i] == s) return i;
    }
    return labels.size();
  };
  for (const auto& [a, b] : edges) idx.emplace_back(find(a), find(b));
  return MeasureGraph(labels, mu, idx);
}

// v - a - w
inline MeasureGraph Chain3(double v = 1, double a = 1, double w = 1) {
  return Make({"v", "a", "w"}, {v, a, w}, {{"v", "a"}, {"a", "w"}});
}

// v - a - b - w
inline MeasureGraph Chain4(double a = 1, double b = 1) {
  return Make({"v", "a", "b", "w"}, {1, a, b, 1},
              {{"v", "a"}, {"a", "b"}, {"b", "w"}});
}

// v - a - w and v - b - w
inline MeasureGraph Parallel(double v = 1, double a = 1, double b = 1,
                             double w = 1) {
  return Make({"v", "a", "b", "w"}, {v, a, b, w},
              {{"v", "a"}, {"a", "w"}, {"v", "b"}, {"b", "w"}});
}

inline TerminalPair Ends(const MeasureGraph& g) {
  return {g.IndexOf("v"), g.IndexOf("w")};
}

}  // namespace fixtures

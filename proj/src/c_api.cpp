#include "mgraph/mgraph.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "mgraph/cloud_io.hpp"
#include "mgraph/discretize.hpp"
#include "mgraph/error.hpp"
#include "mgraph/graph_io.hpp"
#include "mgraph/mincut.hpp"
#include "mgraph/modulus.hpp"
#include "mgraph/report.hpp"
#include "mgraph/separation.hpp"
#include "mgraph/suite.hpp"

struct mg_graph {
  mgraph::MeasureGraph graph;
};

struct mg_cloud {
  mgraph::PointCloud cloud;
};

namespace {

thread_local std::string last_error;

mg_status StatusOf(mgraph::ErrorCode code) {
  using mgraph::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return MG_INVALID_ARGUMENT;
    case ErrorCode::kParse: return MG_PARSE;
    case ErrorCode::kNoPath: return MG_NO_PATH;
    case ErrorCode::kNotSeparating: return MG_NOT_SEPARATING;
    case ErrorCode::kZeroFlow: return MG_ZERO_FLOW;
    case ErrorCode::kNonConvergence: return MG_NON_CONVERGENCE;
    case ErrorCode::kCapExceeded: return MG_CAP_EXCEEDED;
    case ErrorCode::kDegenerateDuals: return MG_DEGENERATE_DUALS;
    case ErrorCode::kCoincidentPoles: return MG_COINCIDENT_POLES;
    case ErrorCode::kTerminalsMerged: return MG_TERMINALS_MERGED;
    case ErrorCode::kIo: return MG_IO;
  }
  return MG_INTERNAL;
}

// Runs `fn`, mapping exceptions to status codes and recording the message.
template <typename Fn>
mg_status Guard(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return MG_OK;
  } catch (const mgraph::Error& e) {
    last_error = e.what();
    return StatusOf(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = e.what();
    return MG_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return MG_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return MG_INTERNAL;
  }
}

void Require(bool condition, const char* message) {
  if (!condition) {
    throw mgraph::Error(mgraph::ErrorCode::kInvalidArgument, message);
  }
}

char* Copy(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void Emit(const nlohmann::json& doc, char** out) {
  Require(out != nullptr, "null output pointer");
  *out = Copy(doc.dump());
}

mgraph::TerminalPair Terminals(const mg_graph* g, const char* v,
                               const char* w) {
  Require(g != nullptr, "null graph");
  Require(v != nullptr && w != nullptr, "terminals are required");
  return {g->graph.IndexOf(v), g->graph.IndexOf(w)};
}

mgraph::VertexSet Set(const mg_graph* g, const char* const* ids,
                      std::size_t count) {
  Require(ids != nullptr || count == 0, "null set");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < count; ++i) {
    Require(ids[i] != nullptr, "null vertex id");
    names.emplace_back(ids[i]);
  }
  return mgraph::SetFromIds(g->graph, names);
}

}  // namespace

extern "C" {

const char* mg_last_error(void) { return last_error.c_str(); }

const char* mg_status_name(mg_status status) {
  switch (status) {
    case MG_OK: return "ok";
    case MG_INVALID_ARGUMENT: return "invalid_argument";
    case MG_PARSE: return "parse_error";
    case MG_NO_PATH: return "no_path";
    case MG_NOT_SEPARATING: return "not_separating";
    case MG_ZERO_FLOW: return "zero_flow";
    case MG_NON_CONVERGENCE: return "non_convergence";
    case MG_CAP_EXCEEDED: return "cap_exceeded";
    case MG_DEGENERATE_DUALS: return "degenerate_duals";
    case MG_COINCIDENT_POLES: return "coincident_poles";
    case MG_TERMINALS_MERGED: return "terminals_merged";
    case MG_IO: return "io_error";
    case MG_INTERNAL: return "internal_error";
  }
  return "unknown";
}

int mg_status_is_input_error(mg_status status) {
  return status == MG_INVALID_ARGUMENT || status == MG_PARSE ||
         status == MG_IO || status == MG_COINCIDENT_POLES;
}

void mg_string_free(char* s) { std::free(s); }

mg_status mg_graph_from_json(const char* text, mg_graph** out) {
  return Guard([&] {
    Require(text != nullptr && out != nullptr, "null argument");
    *out = new mg_graph{mgraph::LoadGraph(text)};
  });
}

mg_status mg_graph_load(const char* path, mg_graph** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    *out = new mg_graph{mgraph::LoadGraphFile(path)};
  });
}

void mg_graph_free(mg_graph* g) { delete g; }

size_t mg_graph_vertex_count(const mg_graph* g) {
  return g ? g->graph.vertex_count() : 0;
}

size_t mg_graph_edge_count(const mg_graph* g) {
  return g ? g->graph.edge_count() : 0;
}

mg_status mg_cloud_load_csv(const char* path, mg_cloud** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    *out = new mg_cloud{mgraph::LoadCloudCsv(path)};
  });
}

mg_status mg_cloud_load_matrix(const char* matrix_path,
                               const char* masses_path, mg_cloud** out) {
  return Guard([&] {
    Require(matrix_path && masses_path && out, "null argument");
    *out = new mg_cloud{mgraph::LoadDistanceMatrixCsv(matrix_path, masses_path)};
  });
}

void mg_cloud_free(mg_cloud* c) { delete c; }

size_t mg_cloud_size(const mg_cloud* c) { return c ? c->cloud.size() : 0; }

mg_status mg_cloud_nearest(const mg_cloud* c, const double* coords,
                           size_t dimension, size_t* out_index) {
  return Guard([&] {
    Require(c && coords && out_index, "null argument");
    Require(c->cloud.has_coordinates(), "cloud has no coordinates");
    Require(dimension == c->cloud.dimension(), "dimension mismatch");
    *out_index = c->cloud.Nearest({coords, dimension});
  });
}

mg_status mg_cloud_region(const mg_cloud* c, const char* spec, char* out) {
  return Guard([&] {
    Require(c && spec && out, "null argument");
    const std::vector<char> indicator = mgraph::EvaluateRegion(c->cloud, spec);
    std::memcpy(out, indicator.data(), indicator.size());
  });
}

mg_status mg_disc_width(const mg_graph* g, const char* v, const char* w,
                        const char* const* set, size_t set_size,
                        uint64_t* out_width) {
  return Guard([&] {
    Require(out_width != nullptr, "null output pointer");
    const auto t = Terminals(g, v, w);
    const auto width = mgraph::DiscWidth(g->graph, t, Set(g, set, set_size));
    *out_width = width.is_infinite() ? UINT64_MAX : width.value();
  });
}

mg_status mg_min_cut_value(const mg_graph* g, const char* v, const char* w,
                           double* out_value) {
  return Guard([&] {
    Require(out_value != nullptr, "null output pointer");
    *out_value = mgraph::MinVertexCut(g->graph, Terminals(g, v, w)).value;
  });
}

mg_status mg_modulus_value(const mg_graph* g, const char* v, const char* w,
                           double p, double tol, double* out_value) {
  return Guard([&] {
    Require(out_value != nullptr, "null output pointer");
    *out_value =
        mgraph::ModulusP(g->graph, Terminals(g, v, w), p, {.tol = tol}).value;
  });
}

mg_status mg_analyze(const mg_graph* g, const char* v, const char* w,
                     const char* const* set, size_t set_size, char** out_json) {
  return Guard([&] {
    const auto t = Terminals(g, v, w);
    Emit(mgraph::report::Analyze(g->graph, t, Set(g, set, set_size)),
         out_json);
  });
}

mg_status mg_fibrate(const mg_graph* g, const char* v, const char* w,
                     const char* const* set, size_t set_size, char** out_json) {
  return Guard([&] {
    const auto t = Terminals(g, v, w);
    Emit(mgraph::report::Fibration(g->graph, t, Set(g, set, set_size)),
         out_json);
  });
}

mg_status mg_slim(const mg_graph* g, const char* v, const char* w,
                  const char* const* set, size_t set_size, char** out_json) {
  return Guard([&] {
    const auto t = Terminals(g, v, w);
    Emit(mgraph::report::Slim(g->graph, t, Set(g, set, set_size)), out_json);
  });
}

mg_status mg_mincut(const mg_graph* g, const char* v, const char* w,
                    char** out_json) {
  return Guard([&] {
    Emit(mgraph::report::MinCut(g->graph, Terminals(g, v, w)), out_json);
  });
}

mg_status mg_modulus(const mg_graph* g, const char* v, const char* w, double p,
                     double tol, char** out_json) {
  return Guard([&] {
    Emit(mgraph::report::Modulus(g->graph, Terminals(g, v, w), p, tol),
         out_json);
  });
}

mg_status mg_pencil(const mg_graph* g, const char* v, const char* w, double p,
                    double tol, uint64_t seed, char** out_json) {
  return Guard([&] {
    Emit(mgraph::report::Pencil(g->graph, Terminals(g, v, w), p, tol, seed),
         out_json);
  });
}

mg_status mg_discretize(const mg_cloud* c, double r, char** out_json) {
  return Guard([&] {
    Require(c != nullptr, "null cloud");
    Require(r > 0.0, "r must be positive");
    Emit(mgraph::report::Net(mgraph::BuildNet(c->cloud, r)), out_json);
  });
}

mg_status mg_experiment(const mg_cloud* c, size_t x, size_t y,
                        const char* indicator, const double* r_schedule,
                        size_t r_count, mg_weighting weighting, double L,
                        char** out_csv) {
  return Guard([&] {
    Require(c && indicator && out_csv, "null argument");
    Require(r_schedule != nullptr && r_count > 0, "empty r schedule");
    Require(x < c->cloud.size() && y < c->cloud.size(),
            "pole index out of range");
    mgraph::ExperimentConfig config;
    config.x = x;
    config.y = y;
    config.indicator.assign(indicator, indicator + c->cloud.size());
    config.r_schedule.assign(r_schedule, r_schedule + r_count);
    config.weighting = weighting == MG_WEIGHTING_RIESZ
                           ? mgraph::Weighting::kRiesz
                           : mgraph::Weighting::kPlain;
    config.L = L;
    const auto rows = mgraph::RunNetExperiment(c->cloud, config);
    nlohmann::json meta = {
        {"x", x},
        {"y", y},
        {"weighting", weighting == MG_WEIGHTING_RIESZ ? "riesz" : "plain"},
        {"L", L},
        {"cloud_size", c->cloud.size()},
        {"r_schedule", config.r_schedule}};
    nlohmann::json net_sizes = nlohmann::json::array();
    for (const auto& row : rows) net_sizes.push_back(row.net_size);
    meta["net_sizes"] = std::move(net_sizes);
    *out_csv = Copy(mgraph::report::ExperimentCsv(rows, meta));
  });
}

mg_status mg_verify(uint64_t seed, size_t max_vertices, size_t instances,
                    size_t exhaustive_vertices, char** out_json,
                    size_t* out_counterexamples) {
  return Guard([&] {
    mgraph::suite::VerifyOptions options{seed, max_vertices, instances,
                                         exhaustive_vertices};
    const auto report = mgraph::suite::RunVerify(options);
    if (out_counterexamples) *out_counterexamples = report.counterexamples();
    Emit(mgraph::suite::VerifyToJson(options, report), out_json);
  });
}

mg_status mg_schema(char** out_text) {
  return Guard([&] {
    Require(out_text != nullptr, "null output pointer");
    *out_text = Copy(mgraph::report::Schema());
  });
}

}  // extern "C"

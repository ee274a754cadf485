#ifndef MGRAPH_MGRAPH_H_
#define MGRAPH_MGRAPH_H_

/*
 * C interface to the measure-graph toolkit.
 *
 * Handles are opaque and owned by the caller (free with the matching
 * *_free function). Functions return an mg_status; on failure the message
 * is available from mg_last_error() on the same thread. Strings returned
 * through char** out-parameters are heap allocated and must be released
 * with mg_string_free.
 *
 * Vertices are named by their ids in the graph document. Vertex sets are
 * arrays of ids.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MG_API __declspec(dllexport)
#else
#define MG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mg_graph mg_graph;
typedef struct mg_cloud mg_cloud;

typedef enum mg_status {
  MG_OK = 0,
  MG_INVALID_ARGUMENT = 1,
  MG_PARSE = 2,
  MG_NO_PATH = 3,
  MG_NOT_SEPARATING = 4,
  MG_ZERO_FLOW = 5,
  MG_NON_CONVERGENCE = 6,
  MG_CAP_EXCEEDED = 7,
  MG_DEGENERATE_DUALS = 8,
  MG_COINCIDENT_POLES = 9,
  MG_TERMINALS_MERGED = 10,
  MG_IO = 11,
  MG_INTERNAL = 12
} mg_status;

typedef enum mg_weighting { MG_WEIGHTING_PLAIN = 0, MG_WEIGHTING_RIESZ = 1 } mg_weighting;

/* Message of the last failed call on this thread ("" if none). */
MG_API const char* mg_last_error(void);
/* Stable snake_case name of a status, e.g. "no_path". */
MG_API const char* mg_status_name(mg_status status);
/* 1 for bad input (argument, parse, io errors), 0 otherwise. */
MG_API int mg_status_is_input_error(mg_status status);
MG_API void mg_string_free(char* s);

/* Graphs */
MG_API mg_status mg_graph_from_json(const char* text, mg_graph** out);
MG_API mg_status mg_graph_load(const char* path, mg_graph** out);
MG_API void mg_graph_free(mg_graph* g);
MG_API size_t mg_graph_vertex_count(const mg_graph* g);
MG_API size_t mg_graph_edge_count(const mg_graph* g);

/* Point clouds */
MG_API mg_status mg_cloud_load_csv(const char* path, mg_cloud** out);
MG_API mg_status mg_cloud_load_matrix(const char* matrix_path,
                                      const char* masses_path, mg_cloud** out);
MG_API void mg_cloud_free(mg_cloud* c);
MG_API size_t mg_cloud_size(const mg_cloud* c);
/* Nearest sample to a coordinate point (coordinate clouds only). */
MG_API mg_status mg_cloud_nearest(const mg_cloud* c, const double* coords,
                                  size_t dimension, size_t* out_index);
/* Indicator of a region spec ("box:lo,hi,...;half:a...,c"), one char per
 * sample, written to `out` which must hold mg_cloud_size(c) chars. */
MG_API mg_status mg_cloud_region(const mg_cloud* c, const char* spec,
                                 char* out);

/* Numeric queries. A width of UINT64_MAX means +infinity. */
MG_API mg_status mg_disc_width(const mg_graph* g, const char* v, const char* w,
                               const char* const* set, size_t set_size,
                               uint64_t* out_width);
MG_API mg_status mg_min_cut_value(const mg_graph* g, const char* v,
                                  const char* w, double* out_value);
MG_API mg_status mg_modulus_value(const mg_graph* g, const char* v,
                                  const char* w, double p, double tol,
                                  double* out_value);

/* JSON reports (see mg_schema for the document shapes). */
MG_API mg_status mg_analyze(const mg_graph* g, const char* v, const char* w,
                            const char* const* set, size_t set_size,
                            char** out_json);
MG_API mg_status mg_fibrate(const mg_graph* g, const char* v, const char* w,
                            const char* const* set, size_t set_size,
                            char** out_json);
MG_API mg_status mg_slim(const mg_graph* g, const char* v, const char* w,
                         const char* const* set, size_t set_size,
                         char** out_json);
MG_API mg_status mg_mincut(const mg_graph* g, const char* v, const char* w,
                           char** out_json);
MG_API mg_status mg_modulus(const mg_graph* g, const char* v, const char* w,
                            double p, double tol, char** out_json);
MG_API mg_status mg_pencil(const mg_graph* g, const char* v, const char* w,
                           double p, double tol, uint64_t seed,
                           char** out_json);
MG_API mg_status mg_discretize(const mg_cloud* c, double r,
                               char** out_json);
/* CSV series with a "# {metadata}" first line. `indicator` holds one char
 * per sample; `r_schedule` must be strictly decreasing. */
MG_API mg_status mg_experiment(const mg_cloud* c, size_t x, size_t y,
                               const char* indicator,
                               const double* r_schedule, size_t r_count,
                               mg_weighting weighting, double L,
                               char** out_csv);
/* Property verification suite. `out_counterexamples` may be NULL. */
MG_API mg_status mg_verify(uint64_t seed, size_t max_vertices,
                           size_t instances, size_t exhaustive_vertices,
                           char** out_json, size_t* out_counterexamples);

/* Human-readable description of all input and output formats. */
MG_API mg_status mg_schema(char** out_text);

#ifdef __cplusplus
}
#endif

#endif  // MGRAPH_MGRAPH_H_

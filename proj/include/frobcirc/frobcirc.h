/* SPDX-License-Identifier: Apache-2.0 */
#ifndef FROBCIRC_FROBCIRC_H
#define FROBCIRC_FROBCIRC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(FROBCIRC_BUILDING)
#define FC_API __declspec(dllexport)
#else
#define FC_API __declspec(dllimport)
#endif
#else
#define FC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fc_status {
    FC_OK = 0,
    FC_ERR_PRECONDITION = 1, /* bad input; see fc_last_error() */
    FC_ERR_INTERNAL = 2,     /* invariant violation or allocation failure; a bug */
    FC_ERR_NULL = 3          /* a required pointer argument was NULL */
} fc_status;

typedef enum fc_format { FC_FORMAT_DOT = 0, FC_FORMAT_EDGES = 1 } fc_format;

/* Pass as the generator to pick the smallest canonical solution. */
#define FC_AUTO_GENERATOR UINT64_MAX

/* Opaque handle to TL_n(a, a-1, 1). */
typedef struct fc_graph fc_graph;

typedef void (*fc_progress_fn)(size_t done, size_t total, void* user);

FC_API const char* fc_version(void);
/* Message of the last failed call on this thread; "" after a success. */
FC_API const char* fc_last_error(void);
/* Frees strings returned through char** out-parameters. */
FC_API void fc_string_free(char* s);

FC_API fc_status fc_graph_new(uint64_t n, uint64_t a, fc_graph** out);
FC_API void fc_graph_free(fc_graph* g);
FC_API uint64_t fc_graph_order(const fc_graph* g);
FC_API uint64_t fc_graph_generator(const fc_graph* g);
FC_API fc_status fc_graph_neighbors(const fc_graph* g, uint64_t v, uint64_t out[6]);
FC_API fc_status fc_graph_distance(const fc_graph* g, uint64_t u, uint64_t v, uint32_t* out);

/* JSON documents; see the README for the schemas. */
FC_API fc_status fc_classify_json(uint64_t n, char** out);
FC_API fc_status fc_graph_json(const fc_graph* g, char** out);
FC_API fc_status fc_convert_json(const fc_graph* g, size_t sample, char** out);
FC_API fc_status fc_convert_ej_json(int64_t c, int64_t d, size_t sample, char** out);
FC_API fc_status fc_metrics_json(const fc_graph* g, uint64_t exhaustive_bound, uint64_t node_budget, char** out);
FC_API fc_status fc_diagram_json(const fc_graph* g, char** out);
FC_API fc_status fc_gossip_schedule_json(const fc_graph* g, int expand, char** out);
FC_API fc_status fc_broadcast_schedule_json(const fc_graph* g, uint64_t source, char** out);
/* schedule_json may be NULL to validate the generated schedule. */
FC_API fc_status fc_simulate_gossip_json(const fc_graph* g, uint64_t full_state_limit, const char* schedule_json,
                                         char** out);
FC_API fc_status fc_simulate_broadcast_json(const fc_graph* g, uint64_t source, const char* schedule_json, char** out);
FC_API fc_status fc_quotient_json(const fc_graph* g, uint64_t m, char** out);
FC_API fc_status fc_ej_cover_json(int64_t c, int64_t d, int64_t c2, int64_t d2, char** out);
FC_API fc_status fc_reduction_json(int64_t c, int64_t d, char** out);
FC_API fc_status fc_ej_arc_transitive(int64_t c, int64_t d, int* out);

FC_API fc_status fc_export(const fc_graph* g, fc_format format, char** out);
FC_API fc_status fc_export_ej(int64_t c, int64_t d, fc_format format, char** out);

/* threads = 0 uses FROBCIRC_THREADS or the hardware concurrency;
   exhaustive_bound = 0 skips exact broadcast search. */
FC_API fc_status fc_verify_json(uint64_t max_n, unsigned threads, uint64_t full_state_limit, uint64_t exhaustive_bound,
                                fc_progress_fn progress, void* user, char** out);

#ifdef __cplusplus
}
#endif

#endif /* FROBCIRC_FROBCIRC_H */

/* C interface for in-place graph traversal on succinct adjacency arrays. */

#ifndef IPG_H
#define IPG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * DFS callback event kinds.
 */
typedef enum IpgDfsEvent {
  IPG_DFS_EVENT_PREVISIT = 0,
  IPG_DFS_EVENT_POSTVISIT = 1,
  IPG_DFS_EVENT_PREEXPLORE = 2,
  IPG_DFS_EVENT_POSTEXPLORE = 3,
} IpgDfsEvent;

/**
 * Traversal mode; `Strict` requires out-degree >= 2 everywhere.
 */
typedef enum IpgMode {
  IPG_MODE_BANDED = 0,
  IPG_MODE_STRICT = 1,
} IpgMode;

/**
 * Result of every API call.
 */
typedef enum IpgStatus {
  IPG_STATUS_OK = 0,
  IPG_STATUS_NULL_ARGUMENT = 1,
  IPG_STATUS_INVALID_ARGUMENT = 2,
  IPG_STATUS_IO_ERROR = 3,
  IPG_STATUS_CORRUPT_INPUT = 4,
  IPG_STATUS_RESTORE_VIOLATION = 5,
  IPG_STATUS_STRICT_DOMAIN = 6,
  IPG_STATUS_INTERNAL = 7,
} IpgStatus;

/**
 * Opaque graph handle.
 */
typedef struct IpgGraph IpgGraph;

typedef void (*IpgDfsCallback)(void *user, enum IpgDfsEvent kind, uint64_t u, uint64_t v);

typedef void (*IpgBfsCallback)(void *user, uint64_t vertex, uint64_t distance, uint64_t root);

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread.  The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *ipg_last_error(void);

/**
 * Build a graph from an edge array of `2 * edge_count` vertex numbers
 * (1-based, (u, v) pairs).  On success `*out` owns the handle.
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable u64 values and `out`
 * must be a valid pointer.
 */
enum IpgStatus ipg_graph_from_edges(uint64_t n,
                                    bool directed,
                                    const uint64_t *edges,
                                    uintptr_t edge_count,
                                    struct IpgGraph **out);

/**
 * Load a graph from a file in either the binary or text format.
 *
 * # Safety
 * `path` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum IpgStatus ipg_graph_load(const char *path, struct IpgGraph **out);

/**
 * Write the graph in the binary format.
 *
 * # Safety
 * `g` must be a live handle and `path` a valid NUL-terminated string.
 */
enum IpgStatus ipg_graph_save(const struct IpgGraph *g, const char *path);

/**
 * Release a handle.  Passing NULL is allowed.
 *
 * # Safety
 * `g` must have come from this library and not been freed before.
 */
void ipg_graph_free(struct IpgGraph *g);

/**
 * Number of vertices, or 0 for NULL.
 *
 * # Safety
 * `g` must be a live handle or NULL.
 */
uint64_t ipg_graph_vertex_count(const struct IpgGraph *g);

/**
 * True if the graph was built or loaded as directed.
 *
 * # Safety
 * `g` must be a live handle or NULL.
 */
bool ipg_graph_is_directed(const struct IpgGraph *g);

/**
 * Check structural well-formedness of the underlying array.
 *
 * # Safety
 * `g` must be a live handle.
 */
enum IpgStatus ipg_graph_validate(const struct IpgGraph *g);

/**
 * Run DFS.  `start` 0 traverses every component in ascending root order.
 * Events arrive on `cb`: Previsit/Postvisit carry the vertex in `u`
 * (`v` is 0); with `edge_events`, Preexplore/Postexplore carry (u, v).
 * The input array is restored before returning.
 *
 * # Safety
 * `g` must be a live handle; `cb` (if non-NULL) must be safe to call with
 * `user`.
 */
enum IpgStatus ipg_dfs(struct IpgGraph *g,
                       enum IpgMode mode,
                       uint64_t start,
                       bool edge_events,
                       IpgDfsCallback cb,
                       void *user);

/**
 * Run BFS.  `start` 0 traverses every component.  `cb` receives
 * (vertex, distance, component root) with exact distances, ascending
 * within each round.  The input array is restored before returning.
 *
 * # Safety
 * `g` must be a live handle; `cb` (if non-NULL) must be safe to call with
 * `user`.
 */
enum IpgStatus ipg_bfs(struct IpgGraph *g, uint64_t start, IpgBfsCallback cb, void *user);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* IPG_H */

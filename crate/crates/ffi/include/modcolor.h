#ifndef MODCOLOR_H
#define MODCOLOR_H

/* Generated by cbindgen from crates/ffi/src; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum McClass {
  MC_CLASS_INDEPENDENT = 0,
  MC_CLASS_FOREST = 1,
  MC_CLASS_LINEAR_FOREST = 2,
  MC_CLASS_PATH = 3,
  MC_CLASS_SPLIT = 4,
  MC_CLASS_UNION_SPLIT = 5,
  MC_CLASS_COGRAPH = 6,
} McClass;

typedef enum McStatus {
  MC_STATUS_OK = 0,
  MC_STATUS_NULL_POINTER = 1,
  MC_STATUS_INVALID_INPUT = 2,
  MC_STATUS_RESOURCE_LIMIT = 3,
  MC_STATUS_PARSE = 4,
  MC_STATUS_IO = 5,
  MC_STATUS_PANIC = 6,
} McStatus;

typedef struct McCertSet McCertSet;

typedef struct McGraph McGraph;

typedef struct McLists McLists;

/**
 * Search counters of the branching solvers.
 */
typedef struct McStats {
  uint64_t nodes_expanded;
  uint64_t subsets_enumerated;
  uint64_t depth;
} McStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * Valid until the next call into this library on the same thread.
 */
const char *mc_last_error(void);

const char *mc_version(void);

/**
 * Builds a graph on `n` vertices from `m` edges given as `2m` endpoints.
 *
 * # Safety
 * `edges` points to `2 * m` readable values; `out` is writable.
 */
enum McStatus mc_graph_new(size_t n, const size_t *edges, size_t m, struct McGraph **out);

/**
 * Reads a graph file (`p edge n m` / `e u v`, 1-based).
 *
 * # Safety
 * `path` is a nul-terminated string; `out` is writable.
 */
enum McStatus mc_graph_load(const char *path, struct McGraph **out);

/**
 * # Safety
 * `g` is null or a live handle.
 */
size_t mc_graph_vertex_count(const struct McGraph *g);

/**
 * # Safety
 * `g` is null or a live handle.
 */
size_t mc_graph_edge_count(const struct McGraph *g);

/**
 * # Safety
 * `g` is null or a handle not yet freed.
 */
void mc_graph_free(struct McGraph *g);

/**
 * Lists over the palette `1..=q`, one bitmask per vertex.
 *
 * # Safety
 * `masks` points to `n` readable values; `out` is writable.
 */
enum McStatus mc_lists_new(uint32_t q, const uint64_t *masks, size_t n, struct McLists **out);

/**
 * Every vertex may take every color of `1..=q`.
 *
 * # Safety
 * `out` is writable.
 */
enum McStatus mc_lists_full(size_t n, uint32_t q, struct McLists **out);

/**
 * # Safety
 * `l` is null or a handle not yet freed.
 */
void mc_lists_free(struct McLists *l);

/**
 * Exact list coloring. `colors` may be null; otherwise it has room for one
 * color per vertex and receives a coloring when one exists.
 *
 * # Safety
 * Handles are live; `colorable` is writable; `colors` is null or writable.
 */
enum McStatus mc_brute_force(const struct McGraph *g,
                             const struct McLists *lists,
                             bool *colorable,
                             uint32_t *colors);

/**
 * # Safety
 * `g` is live; `out` is writable.
 */
enum McStatus mc_chromatic_number(const struct McGraph *g, size_t *out);

/**
 * # Safety
 * `g` is live; `out` is writable.
 */
enum McStatus mc_is_member(const struct McGraph *g, enum McClass class_, bool *out);

/**
 * Plain `q`-coloring given a vertex cover of `k` vertices.
 *
 * # Safety
 * `g` is live; `cover` points to `k` values; `colorable` is writable;
 * `colors` and `stats` are null or writable.
 */
enum McStatus mc_solve_vc(const struct McGraph *g,
                          const size_t *cover,
                          size_t k,
                          uint32_t q,
                          bool *colorable,
                          uint32_t *colors,
                          struct McStats *stats);

/**
 * Enumerates the No-certificates with at most `g` vertices in `class`.
 *
 * # Safety
 * `out` is writable.
 */
enum McStatus mc_certset_build(enum McClass class_,
                               uint32_t q,
                               size_t g,
                               bool minimal,
                               struct McCertSet **out);

/**
 * # Safety
 * `set` is null or a live handle.
 */
size_t mc_certset_len(const struct McCertSet *set);

/**
 * # Safety
 * `set` is null or a handle not yet freed.
 */
void mc_certset_free(struct McCertSet *set);

/**
 * List coloring given a modulator of `k` vertices whose removal leaves the
 * certificate set's class.
 *
 * # Safety
 * Handles are live; `modulator` points to `k` values; `colorable` is
 * writable; `colors` and `stats` are null or writable.
 */
enum McStatus mc_solve_nocert(const struct McGraph *g,
                              const struct McLists *lists,
                              const size_t *modulator,
                              size_t k,
                              const struct McCertSet *set,
                              bool *colorable,
                              uint32_t *colors,
                              struct McStats *stats);

/**
 * Exact treedepth. `parents` may be null; otherwise it has room for one
 * entry per vertex and receives an optimal decomposition, `-1` marking
 * roots.
 *
 * # Safety
 * `g` is live; `depth` is writable; `parents` is null or writable.
 */
enum McStatus mc_treedepth_exact(const struct McGraph *g, size_t *depth, int64_t *parents);

/**
 * Marks a small uncolorable subinstance of a No-instance, given a
 * treedepth decomposition as a parent array (`-1` for roots). `marked`
 * has room for one entry per vertex; the first `*marked_len` entries are
 * the marked vertices in increasing order.
 *
 * # Safety
 * Handles are live; `parents` points to one value per vertex; `marked`
 * and `marked_len` are writable.
 */
enum McStatus mc_mark_no_certificate(const struct McGraph *g,
                                     const struct McLists *lists,
                                     const int64_t *parents,
                                     size_t *marked,
                                     size_t *marked_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MODCOLOR_H */

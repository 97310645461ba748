#ifndef HOPDOMLAB_H
#define HOPDOMLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum HdlProblem {
  HDL_PROBLEM_VERTEX_COVER = 0,
  HDL_PROBLEM_HOP_DOM = 1,
  HDL_PROBLEM_TWO_STEP_DOM = 2,
} HdlProblem;

typedef enum HdlStatus {
  HDL_STATUS_OK = 0,
  HDL_STATUS_NULL_ARGUMENT = 1,
  HDL_STATUS_PARSE = 2,
  HDL_STATUS_INVALID_INPUT = 3,
  HDL_STATUS_INFEASIBLE = 4,
  HDL_STATUS_PRECONDITION = 5,
  HDL_STATUS_REALIZATION = 6,
  HDL_STATUS_EXTRACTION = 7,
  HDL_STATUS_EMBEDDING = 8,
  HDL_STATUS_PLACEMENT = 9,
  HDL_STATUS_CANCELLED = 10,
  HDL_STATUS_BUFFER_TOO_SMALL = 11,
  HDL_STATUS_INTERNAL = 12,
} HdlStatus;

/**
 * A simple undirected graph.
 */
typedef struct HdlGraph HdlGraph;

/**
 * A source graph, its reduced graph and the gadget registry.
 */
typedef struct HdlReduction HdlReduction;

/**
 * Result of a solve; may be infeasible.
 */
typedef struct HdlSolution HdlSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *hdl_version(void);

/**
 * Message of the last failure on this thread.
 *
 * # Safety
 * `buf` must hold `cap` bytes; `needed` must be valid.
 */
enum HdlStatus hdl_last_error(char *buf, size_t cap, size_t *needed);

/**
 * Parses the edge-list format (`n m` header, then `u v` lines).
 *
 * # Safety
 * `text` must be NUL-terminated; `out` must be valid.
 */
enum HdlStatus hdl_graph_parse(const char *text_in, struct HdlGraph **out);

/**
 * Graph on `n` vertices from `m` pairs stored as `edges[2k], edges[2k+1]`.
 *
 * # Safety
 * `edges` must hold `2 * m` values; `out` must be valid.
 */
enum HdlStatus hdl_graph_from_edges(size_t n, const size_t *edges, size_t m, struct HdlGraph **out);

/**
 * # Safety
 * `g` must come from this library or be null.
 */
void hdl_graph_free(struct HdlGraph *g);

/**
 * # Safety
 * `g` must be a live handle or null (returns 0).
 */
size_t hdl_graph_vertex_count(const struct HdlGraph *g);

/**
 * # Safety
 * `g` must be a live handle or null (returns 0).
 */
size_t hdl_graph_edge_count(const struct HdlGraph *g);

/**
 * Edge-list text of `g`.
 *
 * # Safety
 * `g` live; `buf` holds `cap` bytes; `needed` valid.
 */
enum HdlStatus hdl_graph_serialize(const struct HdlGraph *g, char *buf, size_t cap, size_t *needed);

/**
 * Whether the `len` ids at `set` form a valid solution of `problem`.
 *
 * # Safety
 * `g` live; `set` holds `len` ids; `valid` valid.
 */
enum HdlStatus hdl_check(const struct HdlGraph *g,
                         enum HdlProblem problem,
                         const size_t *set,
                         size_t len,
                         bool *valid);

/**
 * Exact minimum solution. An infeasible instance still returns `Ok` and a
 * handle whose optimum query reports `HDL_STATUS_INFEASIBLE`.
 * `timeout_ms == 0` means no limit.
 *
 * # Safety
 * `g` live; `out` valid.
 */
enum HdlStatus hdl_solve(const struct HdlGraph *g,
                         enum HdlProblem problem,
                         bool deterministic,
                         uint64_t timeout_ms,
                         struct HdlSolution **out);

/**
 * # Safety
 * `s` live; `optimum` valid.
 */
enum HdlStatus hdl_solution_optimum(const struct HdlSolution *s, size_t *optimum);

/**
 * # Safety
 * `s` live; `buf` holds `cap` ids; `len` valid.
 */
enum HdlStatus hdl_solution_witness(const struct HdlSolution *s,
                                    size_t *buf,
                                    size_t cap,
                                    size_t *len);

/**
 * # Safety
 * `s` live or null (returns 0).
 */
uint64_t hdl_solution_nodes(const struct HdlSolution *s);

/**
 * # Safety
 * `s` from this library or null.
 */
void hdl_solution_free(struct HdlSolution *s);

/**
 * Reduction of `g` by kind name (`hd-3reg`, `2sd-dreg`, `hd-ud`, ...).
 * `d` is used by the d-regular kinds; `scale` by the unit-disk kinds,
 * which embed `g` first.
 *
 * # Safety
 * `g` live; `kind` NUL-terminated; `out` valid.
 */
enum HdlStatus hdl_reduce(const struct HdlGraph *g,
                          const char *kind,
                          size_t d,
                          uint32_t scale,
                          struct HdlReduction **out);

/**
 * # Safety
 * `r` live or null (returns 0).
 */
size_t hdl_reduction_offset(const struct HdlReduction *r);

/**
 * A new graph handle holding a copy of the reduced graph.
 *
 * # Safety
 * `r` live; `out` valid.
 */
enum HdlStatus hdl_reduction_output(const struct HdlReduction *r, struct HdlGraph **out);

/**
 * Role label of output vertex `v`.
 *
 * # Safety
 * `r` live; `buf` holds `cap` bytes; `needed` valid.
 */
enum HdlStatus hdl_reduction_role(const struct HdlReduction *r,
                                  size_t v,
                                  char *buf,
                                  size_t cap,
                                  size_t *needed);

/**
 * Forward certificate of a vertex cover of the source.
 *
 * # Safety
 * `r` live; `vc` holds `vc_len` ids; `buf` holds `cap` ids; `len` valid.
 */
enum HdlStatus hdl_reduction_certificate(const struct HdlReduction *r,
                                         const size_t *vc,
                                         size_t vc_len,
                                         size_t *buf,
                                         size_t cap,
                                         size_t *len);

/**
 * Vertex cover of the source extracted from a solution of the output.
 *
 * # Safety
 * `r` live; `sol` holds `sol_len` ids; `buf` holds `cap` ids; `len` valid.
 */
enum HdlStatus hdl_reduction_extract(const struct HdlReduction *r,
                                     const size_t *sol,
                                     size_t sol_len,
                                     size_t *buf,
                                     size_t cap,
                                     size_t *len);

/**
 * # Safety
 * `r` from this library or null.
 */
void hdl_reduction_free(struct HdlReduction *r);

/**
 * CSV layout (`id,role,cx_num,cx_den,cy_num,cy_den`) of the unit-disk
 * reduction of `g` for `problem` (hd or 2sd).
 *
 * # Safety
 * `g` live; `buf` holds `cap` bytes; `needed` valid.
 */
enum HdlStatus hdl_layout_csv(const struct HdlGraph *g,
                              enum HdlProblem problem,
                              uint32_t scale,
                              char *buf,
                              size_t cap,
                              size_t *needed);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* HOPDOMLAB_H */

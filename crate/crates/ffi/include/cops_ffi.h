#ifndef COPS_FFI_H
#define COPS_FFI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum CopsStatus {
  COPS_STATUS_OK = 0,
  COPS_STATUS_NULL_POINTER = 1,
  COPS_STATUS_INVALID_ARGUMENT = 2,
  COPS_STATUS_PARSE = 3,
  COPS_STATUS_RESOURCE_LIMIT = 4,
  /**
   * A strategy or I/O fault, or a caught panic.
   */
  COPS_STATUS_FAULT = 5,
  /**
   * A string argument was not UTF-8.
   */
  COPS_STATUS_UTF8 = 6,
  /**
   * The caller's buffer is too small; the required length was written.
   */
  COPS_STATUS_BUFFER_TOO_SMALL = 7,
} CopsStatus;

/**
 * Opaque graph handle.
 */
typedef struct CopsGraph CopsGraph;

/**
 * Opaque solved game for a fixed number of cops.
 */
typedef struct CopsSolution CopsSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty if none. Valid
 * until the next failing call on the same thread.
 */
const char *cops_last_error(void);

/**
 * Parses edge-list text (`n m` header, then `u v` lines).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CopsStatus cops_graph_parse(const char *text, struct CopsGraph **out);

/**
 * Builds a graph on `n` vertices from `m` edges stored as `2m` endpoints.
 *
 * # Safety
 * `edges` must point to `2 * m` values (or be null when `m == 0`).
 */
enum CopsStatus cops_graph_from_edges(uintptr_t n,
                                      const uintptr_t *edges,
                                      uintptr_t m,
                                      struct CopsGraph **out);

/**
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void cops_graph_free(struct CopsGraph *g);

/**
 * Number of vertices; 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
uintptr_t cops_graph_vertex_count(const struct CopsGraph *g);

/**
 * Number of edges; 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
uintptr_t cops_graph_edge_count(const struct CopsGraph *g);

/**
 * Canonical edge-list text of `g`.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum CopsStatus cops_graph_to_edge_list(const struct CopsGraph *g, char **out);

/**
 * Solves the game with `k` cops, refusing state spaces above `max_states`.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum CopsStatus cops_solve(const struct CopsGraph *g,
                           uintptr_t k,
                           uint64_t max_states,
                           struct CopsSolution **out);

/**
 * # Safety
 * `s` must come from `cops_solve` and not be used afterwards.
 */
void cops_solution_free(struct CopsSolution *s);

/**
 * 1 if the cops win, 0 if the robber escapes or `s` is null.
 *
 * # Safety
 * `s` must be null or a live handle.
 */
int32_t cops_solution_cops_win(const struct CopsSolution *s);

/**
 * Copies the winning placement into `buf` (capacity `len`) and its length
 * into `written`. Writes 0 entries when the robber wins.
 *
 * # Safety
 * `buf` must hold `len` values; `s` and `written` must be valid.
 */
enum CopsStatus cops_solution_placement(const struct CopsSolution *s,
                                        uintptr_t *buf,
                                        uintptr_t len,
                                        uintptr_t *written);

/**
 * Smallest `k <= kmax` for which `k` cops win, written to `out`; 0 when
 * even `kmax` cops lose.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum CopsStatus cops_cop_number(const struct CopsGraph *g,
                                uintptr_t kmax,
                                uint64_t max_states,
                                uintptr_t *out);

/**
 * Bound parameters and the induction chain at `L = log2 n` (a decimal
 * string such as `"1024"` or `"1e6"`) with the path length at the
 * diameter threshold, as JSON.
 *
 * # Safety
 * `l` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CopsStatus cops_bound_json(const char *l, char **out);

/**
 * Plays the recursive strategy with diameter threshold `threshold` against
 * a greedy (`robber == 0`) or seeded random (`robber == 1`) robber and
 * returns the transcript with cop accounting as JSON.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum CopsStatus cops_meyniel_json(const struct CopsGraph *g,
                                  uintptr_t threshold,
                                  uint32_t robber,
                                  uint64_t seed,
                                  char **out);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a string from this library, not used afterwards.
 */
void cops_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COPS_FFI_H */

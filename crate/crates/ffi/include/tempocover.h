#ifndef TEMPOCOVER_H
#define TEMPOCOVER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TcStatus {
  TC_STATUS_OK = 0,
  TC_STATUS_NULL_ARGUMENT = 1,
  TC_STATUS_PARSE = 2,
  TC_STATUS_CLASS = 3,
  TC_STATUS_RESOURCE = 4,
  TC_STATUS_DOMAIN = 5,
  TC_STATUS_OUT_OF_RANGE = 6,
} TcStatus;

typedef enum TcClass {
  TC_CLASS_GENERAL = 0,
  TC_CLASS_DAG = 1,
  TC_CLASS_ORIENTED_TREE = 2,
  TC_CLASS_ROOTED_DIRECTED_TREE = 3,
  TC_CLASS_ORIENTED_LINE = 4,
} TcClass;

typedef enum TcProblem {
  TC_PROBLEM_TPC = 0,
  TC_PROBLEM_TDPC = 1,
} TcProblem;

typedef enum TcMethod {
  TC_METHOD_AUTO = 0,
  TC_METHOD_TREE = 1,
  TC_METHOD_DP = 2,
  TC_METHOD_ORACLE = 3,
} TcMethod;

/**
 * Opaque path cover.
 */
typedef struct TcCover TcCover;

/**
 * Opaque temporal digraph.
 */
typedef struct TcDigraph TcDigraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread. Valid until the next
 * call into this library on the same thread.
 */
const char *tc_last_error(void);

/**
 * Builds a digraph on `n` vertices from `count` parallel arrays entries
 * `(tails[i], heads[i], labels[i])`. Repeated `(tail, head)` pairs merge
 * their labels.
 *
 * # Safety
 * The three arrays must each hold `count` readable elements (they may be
 * null when `count` is 0) and `out` must be writable.
 */
enum TcStatus tc_digraph_from_arcs(size_t n,
                                   const size_t *tails,
                                   const size_t *heads,
                                   const uint32_t *labels,
                                   size_t count,
                                   struct TcDigraph **out);

/**
 * Parses `.tg` text or the JSON form.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum TcStatus tc_digraph_parse(const char *text, struct TcDigraph **out);

/**
 * # Safety
 * `d` must come from this library and not be freed twice. Null is ignored.
 */
void tc_digraph_free(struct TcDigraph *d);

/**
 * Vertex count, or 0 for null.
 *
 * # Safety
 * `d` must be null or a live digraph handle.
 */
size_t tc_digraph_vertex_count(const struct TcDigraph *d);

/**
 * # Safety
 * `d` must be a live digraph handle and `out` writable.
 */
enum TcStatus tc_digraph_class(const struct TcDigraph *d, enum TcClass *out);

/**
 * Size of a maximum temporal antichain.
 *
 * # Safety
 * `d` must be a live digraph handle and `out` writable.
 */
enum TcStatus tc_antichain_size(const struct TcDigraph *d, size_t *out);

/**
 * Minimum cover. The oracle bound follows `TEMPOCOVER_ORACLE_MAX_N`.
 *
 * # Safety
 * `d` must be a live digraph handle and `out` writable.
 */
enum TcStatus tc_solve(const struct TcDigraph *d,
                       enum TcProblem problem,
                       enum TcMethod method,
                       struct TcCover **out);

/**
 * # Safety
 * `c` must come from `tc_solve` and not be freed twice. Null is ignored.
 */
void tc_cover_free(struct TcCover *c);

/**
 * Number of paths, or 0 for null.
 *
 * # Safety
 * `c` must be null or a live cover handle.
 */
size_t tc_cover_len(const struct TcCover *c);

/**
 * Copies the vertices of path `index` into `buf` (capacity `cap`) and
 * stores the vertex count in `len`. When `cap` is too small nothing is
 * copied, `len` still receives the count and `OUT_OF_RANGE` is returned.
 *
 * # Safety
 * `c` must be a live cover handle, `buf` must hold `cap` writable elements
 * (may be null when `cap` is 0) and `len` must be writable.
 */
enum TcStatus tc_cover_path(const struct TcCover *c,
                            size_t index,
                            size_t *buf,
                            size_t cap,
                            size_t *len);

/**
 * Cover as JSON; release with `tc_string_free`. Null on a null handle.
 *
 * # Safety
 * `c` must be null or a live cover handle.
 */
char *tc_cover_to_json(const struct TcCover *c);

/**
 * # Safety
 * `s` must come from `tc_cover_to_json` and not be freed twice.
 */
void tc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TEMPOCOVER_H */

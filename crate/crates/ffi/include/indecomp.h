#ifndef INDECOMP_H
#define INDECOMP_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/*
 Class of a 2-covered graph; `None` when the graph is not 2-covered.
 */
typedef enum IndecClass {
  INDEC_CLASS_NONE = 0,
  INDEC_CLASS_P = 1,
  INDEC_CLASS_Q = 2,
  INDEC_CLASS_P_MINUS1 = 3,
  INDEC_CLASS_Q_MINUS1 = 4,
  INDEC_CLASS_P_MINUS3 = 5,
  INDEC_CLASS_Q_MINUS3 = 6,
  INDEC_CLASS_P_MINUS5 = 7,
  INDEC_CLASS_Q_MINUS5 = 8,
} IndecClass;

typedef enum IndecMode {
  INDEC_MODE_DEFAULT = 0,
  INDEC_MODE_EXHAUSTIVE = 1,
  INDEC_MODE_SAMPLED = 2,
} IndecMode;

typedef enum IndecStatus {
  INDEC_STATUS_OK = 0,
  INDEC_STATUS_NULL_POINTER = 1,
  INDEC_STATUS_INVALID_UTF8 = 2,
  INDEC_STATUS_MALFORMED_INPUT = 3,
  INDEC_STATUS_VERTEX_OUT_OF_RANGE = 4,
  INDEC_STATUS_LOOP_EDGE = 5,
  INDEC_STATUS_SIZE_OUT_OF_RANGE = 6,
  INDEC_STATUS_NOT_INDECOMPOSABLE = 7,
  INDEC_STATUS_INVALID_ARGUMENT = 8,
  INDEC_STATUS_UNKNOWN_STATEMENT = 9,
  INDEC_STATUS_ENVELOPE_EXCEEDED = 10,
  INDEC_STATUS_ANOMALY = 11,
  INDEC_STATUS_PANIC = 12,
} IndecStatus;

/*
 Opaque graph handle.
 */
typedef struct IndecGraph IndecGraph;

typedef struct IndecClassification {
  bool two_covered;
  /*
   Whether the complement, not the graph, is the class member.
   */
  bool complemented;
  /*
   Covering pair; `SIZE_MAX` when absent.
   */
  size_t cover_a;
  size_t cover_b;
  enum IndecClass class_id;
} IndecClassification;

/*
 Overrides for [`indec_verify`]. Zero in `n`, `count` or `jobs` keeps the
 statement default; `seed` applies only when `has_seed` is set.
 */
typedef struct IndecVerifyOptions {
  size_t n;
  enum IndecMode mode;
  bool has_seed;
  uint64_t seed;
  uint64_t count;
  size_t jobs;
} IndecVerifyOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or null. Valid until the
 next call on this thread.
 */
const char *indec_last_error(void);

/*
 Builds a graph on `n` vertices from `edge_count` pairs stored flat in
 `edges` (`2 * edge_count` entries).

 # Safety
 `edges` must point to `2 * edge_count` readable values (or be null when
 `edge_count` is 0) and `out` must be writable.
 */
enum IndecStatus indec_graph_from_edges(size_t n,
                                        const size_t *edges,
                                        size_t edge_count,
                                        struct IndecGraph **out);

/*
 Parses graph6 or a 1-based edge list; the format is sniffed.

 # Safety
 `text` must be a nul-terminated string and `out` writable.
 */
enum IndecStatus indec_graph_parse(const char *text, struct IndecGraph **out);

/*
 # Safety
 `g` must be null or a handle from this library not yet freed.
 */
void indec_graph_free(struct IndecGraph *g);

/*
 Vertex count, or 0 for a null handle.

 # Safety
 `g` must be null or a live handle.
 */
size_t indec_graph_vertex_count(const struct IndecGraph *g);

/*
 # Safety
 `g` must be a live handle and `out` writable.
 */
enum IndecStatus indec_graph_has_edge(const struct IndecGraph *g, size_t u, size_t v, bool *out);

/*
 # Safety
 `g` must be a live handle and `out` writable.
 */
enum IndecStatus indec_is_indecomposable(const struct IndecGraph *g, bool *out);

/*
 Stores a new handle holding I(G); fails with `NotIndecomposable` when `g`
 is decomposable.

 # Safety
 `g` must be a live handle and `out` writable.
 */
enum IndecStatus indec_indecomposability_graph(const struct IndecGraph *g, struct IndecGraph **out);

/*
 # Safety
 `g` must be a live handle and `out` writable.
 */
enum IndecStatus indec_classify(const struct IndecGraph *g, struct IndecClassification *out);

/*
 # Safety
 `g` must be a live handle and `out` writable. Free the result with
 [`indec_string_free`].
 */
enum IndecStatus indec_graph_to_graph6(const struct IndecGraph *g, char **out);

/*
 1-based edge list with an `n m` header line.

 # Safety
 `g` must be a live handle and `out` writable. Free the result with
 [`indec_string_free`].
 */
enum IndecStatus indec_graph_to_edge_list(const struct IndecGraph *g, char **out);

/*
 Runs a statement check and stores its report as JSON. A report with
 mismatches still returns `Ok`; read its `pass` field.

 # Safety
 `statement` must be a nul-terminated string, `options` null or readable,
 and `out_json` writable. Free the result with [`indec_string_free`].
 */
enum IndecStatus indec_verify(const char *statement,
                              const struct IndecVerifyOptions *options,
                              char **out_json);

/*
 # Safety
 `s` must be null or a string returned by this library, not yet freed.
 */
void indec_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INDECOMP_H */

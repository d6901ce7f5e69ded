#ifndef GOODPAIR_H
#define GOODPAIR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GpFormat {
  GP_FORMAT_EDGE_LIST = 0,
  GP_FORMAT_DIGRAPH6 = 1,
} GpFormat;

/**
 * Result codes. The first four match the command-line exit codes.
 */
typedef enum GpStatus {
  /**
   * Success, or a good pair was found.
   */
  GP_STATUS_OK = 0,
  /**
   * Definitive negative answer: no good pair, or a certificate that
   * does not verify.
   */
  GP_STATUS_NONE = 1,
  /**
   * The node budget ran out before a decision.
   */
  GP_STATUS_INCONCLUSIVE = 2,
  /**
   * Malformed text, bad vertex, unsupported order.
   */
  GP_STATUS_INVALID_INPUT = 3,
  /**
   * A required pointer argument was null.
   */
  GP_STATUS_NULL_POINTER = 4,
  /**
   * Internal failure; the library caught a panic.
   */
  GP_STATUS_INTERNAL = 5,
} GpStatus;

/**
 * Opaque good-pair certificate handle.
 */
typedef struct GpCert GpCert;

/**
 * Opaque digraph handle.
 */
typedef struct GpDigraph GpDigraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call into the library from the same thread.
 */
const char *gp_last_error(void);

/**
 * Parses edge-list or digraph6 text, sniffed from the first character.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GpStatus gp_digraph_parse(const char *text, struct GpDigraph **out);

/**
 * # Safety
 * `d` must be null or a handle from [`gp_digraph_parse`] not yet freed.
 */
void gp_digraph_free(struct GpDigraph *d);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
size_t gp_digraph_order(const struct GpDigraph *d);

/**
 * # Safety
 * `d` must be null or a live handle.
 */
size_t gp_digraph_arc_count(const struct GpDigraph *d);

/**
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum GpStatus gp_digraph_serialize(const struct GpDigraph *d, enum GpFormat format, char **out);

/**
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum GpStatus gp_arc_connectivity(const struct GpDigraph *d, size_t *out);

/**
 * Exact search. A negative root leaves that root free; a zero budget uses
 * the library default. On [`GpStatus::Ok`] a certificate is stored in
 * `out`, otherwise `out` is set to null.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum GpStatus gp_find_good_pair(const struct GpDigraph *d,
                                int64_t root_out,
                                int64_t root_in,
                                uint64_t budget,
                                struct GpCert **out);

/**
 * Reduction pipeline. The trace, one JSON object per line, is stored in
 * `trace` when it is non-null.
 *
 * # Safety
 * `d` must be a live handle, `out` a valid pointer, `trace` null or valid.
 */
enum GpStatus gp_reduce(const struct GpDigraph *d,
                        uint64_t budget,
                        struct GpCert **out,
                        char **trace);

/**
 * [`GpStatus::Ok`] when the certificate is a good pair of `d`,
 * [`GpStatus::None`] with a reason in [`gp_last_error`] otherwise.
 *
 * # Safety
 * `d` and `cert` must be live handles.
 */
enum GpStatus gp_verify(const struct GpDigraph *d, const struct GpCert *cert);

/**
 * # Safety
 * `cert` must be a live handle and `out` a valid pointer.
 */
enum GpStatus gp_cert_to_json(const struct GpCert *cert, char **out);

/**
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GpStatus gp_cert_from_json(const char *text, struct GpCert **out);

/**
 * # Safety
 * `cert` must be a live handle; `root_out` and `root_in` valid pointers.
 */
enum GpStatus gp_cert_roots(const struct GpCert *cert, size_t *root_out, size_t *root_in);

/**
 * # Safety
 * `cert` must be null or a handle not yet freed.
 */
void gp_cert_free(struct GpCert *cert);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void gp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GOODPAIR_H */

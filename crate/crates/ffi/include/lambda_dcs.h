#ifndef LAMBDA_DCS_H
#define LAMBDA_DCS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DcsStatus {
  DCS_STATUS_OK = 0,
  DCS_STATUS_NULL_ARGUMENT = 1,
  DCS_STATUS_INVALID_UTF8 = 2,
  DCS_STATUS_KB_ERROR = 3,
  DCS_STATUS_PARSE_ERROR = 4,
  DCS_STATUS_RESOLVE_ERROR = 5,
  DCS_STATUS_EVAL_ERROR = 6,
  DCS_STATUS_UNSUPPORTED = 7,
  DCS_STATUS_MISMATCH = 8,
  DCS_STATUS_PANIC = 9,
} DcsStatus;

/**
 * A loaded knowledge base.
 */
typedef struct DcsKb DcsKb;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on this thread.
 */
const char *dcs_last_error(void);

/**
 * Loads a tab-separated triples file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a writable pointer.
 */
enum DcsStatus dcs_kb_load_file(const char *path, struct DcsKb **out);

/**
 * Parses triples from an in-memory TSV string.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum DcsStatus dcs_kb_load_str(const char *text, struct DcsKb **out);

/**
 * The bundled demo knowledge base.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum DcsStatus dcs_kb_demo(struct DcsKb **out);

/**
 * Number of distinct triples, or 0 for a null handle.
 *
 * # Safety
 * `kb` must be null or a live handle.
 */
size_t dcs_kb_len(const struct DcsKb *kb);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `kb` must be null or a handle not yet freed.
 */
void dcs_kb_free(struct DcsKb *kb);

/**
 * Evaluates `query` and writes its denotation as a JSON array.
 *
 * # Safety
 * `kb` must be a live handle, `query` a NUL-terminated string and
 * `out_json` a writable pointer.
 */
enum DcsStatus dcs_eval(const struct DcsKb *kb, const char *query, bool strict, char **out_json);

/**
 * Translates `query` to lambda calculus, simplified unless `raw`.
 *
 * # Safety
 * `query` must be a NUL-terminated string and `out` a writable pointer.
 */
enum DcsStatus dcs_to_lc(const char *query, bool raw, char **out);

/**
 * Compiles `query` to SPARQL; `prefix` may be null.
 *
 * # Safety
 * `query` must be a NUL-terminated string, `prefix` null or a
 * NUL-terminated string, and `out` a writable pointer.
 */
enum DcsStatus dcs_to_sparql(const char *query, const char *prefix, char **out);

/**
 * Runs the random equivalence check and writes the number of
 * disagreements; returns `Mismatch` when there is at least one.
 *
 * # Safety
 * `kb` must be a live handle and `out_mismatches` null or writable.
 */
enum DcsStatus dcs_check(const struct DcsKb *kb,
                         uint64_t trials,
                         uint32_t depth,
                         uint64_t seed,
                         uint64_t *out_mismatches);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void dcs_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LAMBDA_DCS_H */

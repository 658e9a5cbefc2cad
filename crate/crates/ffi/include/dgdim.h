/* C interface for the dgdim library. */

#ifndef DGDIM_H
#define DGDIM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every entry point.
 */
typedef enum DgdimStatus {
  DGDIM_STATUS_OK = 0,
  DGDIM_STATUS_NULL_ARGUMENT = 1,
  DGDIM_STATUS_PARSE_ERROR = 2,
  DGDIM_STATUS_INVALID_INPUT = 3,
  DGDIM_STATUS_UNSUPPORTED = 4,
  DGDIM_STATUS_VERIFICATION_FAILURE = 5,
  DGDIM_STATUS_INTERNAL_PANIC = 6,
} DgdimStatus;

/**
 * Opaque handle to a validated free complex.
 */
typedef struct DgdimComplex DgdimComplex;

/**
 * Opaque handle to a Koszul algebra.
 */
typedef struct DgdimKoszul DgdimKoszul;

/**
 * An integer extended by the two infinities: `kind` is -1, 0 or 1 for
 * negative infinity, finite (in `value`) and positive infinity.
 */
typedef struct DgdimExtInt {
  int32_t kind;
  int64_t value;
} DgdimExtInt;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last non-`Ok` status on this thread, or null. The
 * pointer stays valid until the next call on the same thread.
 */
const char *dgdim_last_error_message(void);

/**
 * Release a string returned through an out-parameter.
 *
 * # Safety
 * `s` must be a pointer previously returned by this library and not yet
 * freed, or null.
 */
void dgdim_string_free(char *s);

/**
 * Parse a schema document (`"object": "complex"`, or `"koszul"` which is
 * taken as its underlying complex) and validate it.
 *
 * # Safety
 * `doc` must be a nul-terminated string and `out` a valid pointer.
 */
enum DgdimStatus dgdim_complex_from_json(const char *doc, struct DgdimComplex **out);

/**
 * # Safety
 * `ptr` must come from `dgdim_complex_from_json` and not be freed twice.
 */
void dgdim_complex_free(struct DgdimComplex *ptr);

/**
 * Least degree with nonvanishing homology.
 *
 * # Safety
 * `ptr` must be a live complex handle, `out` a valid pointer.
 */
enum DgdimStatus dgdim_complex_inf(const struct DgdimComplex *ptr, struct DgdimExtInt *out);

/**
 * Krull dimension of the complex.
 *
 * # Safety
 * `ptr` must be a live complex handle, `out` a valid pointer.
 */
enum DgdimStatus dgdim_complex_dim(const struct DgdimComplex *ptr, struct DgdimExtInt *out);

/**
 * Dimension of one homology module.
 *
 * # Safety
 * `ptr` must be a live complex handle, `out` a valid pointer.
 */
enum DgdimStatus dgdim_complex_homology_dim(const struct DgdimComplex *ptr,
                                            int64_t degree,
                                            struct DgdimExtInt *out);

/**
 * Length-dimension search; the full report is returned as a JSON string.
 * `pool_csv` may be null (the ring variables are used).
 *
 * # Safety
 * `ptr` must be a live complex handle, `out_json` a valid pointer;
 * `pool_csv` is either null or nul-terminated.
 */
enum DgdimStatus dgdim_complex_ldim_json(const struct DgdimComplex *ptr,
                                         const char *pool_csv,
                                         size_t limit,
                                         char **out_json);

/**
 * Parse a `"koszul"` schema document.
 *
 * # Safety
 * `doc` must be a nul-terminated string and `out` a valid pointer.
 */
enum DgdimStatus dgdim_koszul_from_json(const char *doc, struct DgdimKoszul **out);

/**
 * # Safety
 * `ptr` must come from `dgdim_koszul_from_json` and not be freed twice.
 */
void dgdim_koszul_free(struct DgdimKoszul *ptr);

/**
 * DG Krull dimension of the algebra.
 *
 * # Safety
 * `ptr` must be a live Koszul handle, `out` a valid pointer.
 */
enum DgdimStatus dgdim_koszul_dgdim(const struct DgdimKoszul *ptr, int64_t *out);

/**
 * Predicate-equivalence and dimension-chain report for one candidate
 * sequence, as JSON. `seq_csv` may be empty for the empty sequence;
 * `pool_csv` may be null (variables plus ten seeded linear forms).
 *
 * # Safety
 * `ptr` must be a live Koszul handle, `out_json` a valid pointer;
 * `seq_csv` must be nul-terminated and `pool_csv` null or nul-terminated.
 */
enum DgdimStatus dgdim_koszul_verify_theorem_json(const struct DgdimKoszul *ptr,
                                                  const char *seq_csv,
                                                  const char *pool_csv,
                                                  size_t limit,
                                                  uint64_t seed,
                                                  char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DGDIM_H */

#ifndef BISERIAL_H
#define BISERIAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum BsStatus {
  BS_STATUS_OK = 0,
  BS_STATUS_NULL_POINTER = 1,
  BS_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed word, module spec, or type-0 word.
   */
  BS_STATUS_PARSE = 3,
  BS_STATUS_INVALID_PRIME = 4,
  /**
   * Invalid band parameter or multiplicity.
   */
  BS_STATUS_INVALID_PARAMETER = 5,
  /**
   * The operands live over different fields.
   */
  BS_STATUS_FIELD_MISMATCH = 6,
  /**
   * The computation itself failed.
   */
  BS_STATUS_FAILED = 7,
  BS_STATUS_PANIC = 8,
} BsStatus;

/**
 * Opaque module handle.
 */
typedef struct BsRep BsRep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message for the last failed call on this thread, or null. Owned by the
 * library and valid until the next call.
 */
const char *bs_last_error(void);

/**
 * Builds a module over `F_p` from a spec string.
 *
 * # Safety
 * `spec` must be a valid NUL-terminated string and `out` writable.
 */
enum BsStatus bs_rep_from_spec(uint32_t p, const char *spec, struct BsRep **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `rep` must come from this library and not be used afterwards.
 */
void bs_rep_free(struct BsRep *rep);

/**
 * Total dimension and the dimension at each vertex (`dims` holds 3 entries).
 *
 * # Safety
 * `rep` must be a live handle; `dim` writable; `dims` null or writable for 3 values.
 */
enum BsStatus bs_rep_dims(const struct BsRep *rep, size_t *dim, size_t *dims);

/**
 * `dim Hom(from, to)`, or the stable dimension when `stable` is true.
 *
 * # Safety
 * Both handles must be live and `out` writable.
 */
enum BsStatus bs_hom_dim(const struct BsRep *from,
                         const struct BsRep *to,
                         bool stable,
                         size_t *out);

/**
 * `dim Ext¹(from, to)`.
 *
 * # Safety
 * Both handles must be live and `out` writable.
 */
enum BsStatus bs_ext1_dim(const struct BsRep *from, const struct BsRep *to, size_t *out);

/**
 * A new handle for the syzygy of `rep`.
 *
 * # Safety
 * `rep` must be live and `out` writable.
 */
enum BsStatus bs_syzygy(const struct BsRep *rep, struct BsRep **out);

/**
 * # Safety
 * Both handles must be live and `out` writable.
 */
enum BsStatus bs_is_isomorphic(const struct BsRep *a, const struct BsRep *b, bool *out);

/**
 * The deformation classification as a JSON object; free with `bs_string_free`.
 *
 * # Safety
 * `rep` must be live and `out` writable.
 */
enum BsStatus bs_classify_json(const struct BsRep *rep, size_t max_order, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void bs_string_free(char *s);

/**
 * Condition (+) for a type-0 word such as `"XYX"` (`"-"` is the empty word).
 *
 * # Safety
 * `word` must be a valid NUL-terminated string and `out` writable.
 */
enum BsStatus bs_type0_check_plus(const char *word, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BISERIAL_H */

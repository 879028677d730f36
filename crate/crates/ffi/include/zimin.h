#ifndef ZIMIN_H
#define ZIMIN_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  ZIMIN_STATUS_OK = 0,
  ZIMIN_STATUS_NULL_POINTER = 1,
  ZIMIN_STATUS_INVALID_UTF8 = 2,
  ZIMIN_STATUS_BOUNDS = 3,
  ZIMIN_STATUS_LETTER = 4,
  ZIMIN_STATUS_SIZE = 5,
  ZIMIN_STATUS_PRECONDITION = 6,
  ZIMIN_STATUS_DOMAIN = 7,
  ZIMIN_STATUS_CONVERGENCE = 8,
  ZIMIN_STATUS_PARSE = 9,
  ZIMIN_STATUS_EMPTY_PATTERN = 10,
  ZIMIN_STATUS_IO = 11,
  ZIMIN_STATUS_PANIC = 12,
} ZiminStatus;

/**
 * A certified interval `[lower, upper]` for a density.
 */
typedef struct ZiminBounds ZiminBounds;

/**
 * A pattern; variables are the distinct characters of its literal.
 */
typedef struct ZiminPattern ZiminPattern;

/**
 * A prefix of a counting sequence.
 */
typedef struct ZiminSeq ZiminSeq;

/**
 * A word over `{0, .., q-1}`.
 */
typedef struct ZiminWord ZiminWord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next failing call on the same thread.
 */
const char *zimin_last_error(void);

/**
 * # Safety
 * `s` must come from this library or be NULL.
 */
void zimin_string_free(char *s);

/**
 * # Safety
 * `letters` must point to `len` readable bytes (or be NULL when `len` is 0);
 * `out` must be writable.
 */
ZiminStatus zimin_word_new(const uint8_t *letters, size_t len, uint32_t q, ZiminWord **out);

/**
 * # Safety
 * `w` must come from [`zimin_word_new`] or be NULL.
 */
void zimin_word_free(ZiminWord *w);

/**
 * # Safety
 * `w` must be a live handle.
 */
size_t zimin_word_len(const ZiminWord *w);

/**
 * # Safety
 * `literal` must be a NUL-terminated string; `out` must be writable.
 */
ZiminStatus zimin_pattern_parse(const char *literal, ZiminPattern **out);

/**
 * # Safety
 * `p` must come from [`zimin_pattern_parse`] or be NULL.
 */
void zimin_pattern_free(ZiminPattern *p);

/**
 * Whether `w` is an image of `p` under a nonerasing morphism.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
ZiminStatus zimin_is_instance(const ZiminWord *w, const ZiminPattern *p, bool *out);

/**
 * Whether some factor of `w` is an instance of `p`.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
ZiminStatus zimin_encounters(const ZiminWord *w, const ZiminPattern *p, bool *out);

/**
 * # Safety
 * `p` must be live; `out` must be writable.
 */
ZiminStatus zimin_is_unavoidable(const ZiminPattern *p, bool *out);

/**
 * Whether `w` is an instance of the `n`-th Zimin word.
 *
 * # Safety
 * `w` must be live; `out` must be writable.
 */
ZiminStatus zimin_is_zimin_instance(const ZiminWord *w, uint32_t n, bool *out);

/**
 * Bounds on the `Z_2` density over `q` letters of width below `eps`
 * (decimal or `a/b` text).
 *
 * # Safety
 * `eps` must be a NUL-terminated string; `out` must be writable.
 */
ZiminStatus zimin_iz2(uint32_t q, const char *eps, ZiminBounds **out);

/**
 * Bounds on the `Z_3` density, auto-tuned to width below `eps`.
 *
 * # Safety
 * As [`zimin_iz2`].
 */
ZiminStatus zimin_iz3(uint32_t q, const char *eps, ZiminBounds **out);

/**
 * `Z_3` bounds at a fixed context cap and series depth.
 *
 * # Safety
 * `out` must be writable.
 */
ZiminStatus zimin_iz3_bounds(uint32_t q, size_t n_cap, size_t m, ZiminBounds **out);

/**
 * Closed-form bounds valid for every `Z_n`.
 *
 * # Safety
 * `out` must be writable.
 */
ZiminStatus zimin_izn_generic_bounds(uint32_t n, uint32_t q, ZiminBounds **out);

/**
 * Endpoints rounded half-to-even to `digits` places.
 *
 * # Safety
 * `b` must be live; `lower` and `upper` must be writable. Free the strings
 * with [`zimin_string_free`].
 */
ZiminStatus zimin_bounds_decimal(const ZiminBounds *b, uint32_t digits, char **lower, char **upper);

/**
 * Endpoints as exact fractions `num/den`.
 *
 * # Safety
 * As [`zimin_bounds_decimal`].
 */
ZiminStatus zimin_bounds_exact(const ZiminBounds *b, char **lower, char **upper);

/**
 * # Safety
 * `b` must come from this library or be NULL.
 */
void zimin_bounds_free(ZiminBounds *b);

/**
 * Entries `0..=max` of sequence `kind` (`a`, `b`, `c`, `d` or `bhat`).
 * `ell` is ignored for `a`.
 *
 * # Safety
 * `kind` must be a NUL-terminated string; `out` must be writable.
 */
ZiminStatus zimin_seq(const char *kind, uint32_t q, size_t ell, size_t max, ZiminSeq **out);

/**
 * # Safety
 * `s` must be live.
 */
size_t zimin_seq_len(const ZiminSeq *s);

/**
 * Entry `i` as a decimal string.
 *
 * # Safety
 * `s` must be live; `out` must be writable.
 */
ZiminStatus zimin_seq_value(const ZiminSeq *s, size_t i, char **out);

/**
 * # Safety
 * `s` must come from [`zimin_seq`] or be NULL.
 */
void zimin_seq_free(ZiminSeq *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZIMIN_H */

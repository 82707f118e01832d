#ifndef CHEREDNIK_LAB_H
#define CHEREDNIK_LAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum ClStatus {
  CL_STATUS_OK = 0,
  CL_STATUS_NULL_ARGUMENT = 1,
  CL_STATUS_INVALID_UTF8 = 2,
  CL_STATUS_INVALID_INPUT = 3,
  CL_STATUS_LEVEL_MISMATCH = 4,
  CL_STATUS_NON_GENERIC = 5,
  CL_STATUS_VANISHING_DENOMINATOR = 6,
  CL_STATUS_OUT_OF_RANGE = 7,
  CL_STATUS_INTERNAL = 8,
} ClStatus;

/**
 * An intertwiner built from a word.
 */
typedef struct ClChain ClChain;

/**
 * Weights of one coinvariant fiber.
 */
typedef struct ClFiber ClFiber;

/**
 * Message of the last failed call on this thread. Valid until the next
 * failing call on the same thread; never null.
 */
const char *cl_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void cl_string_free(char *s);

/**
 * Creates fiber weights from `kappa` and comma separated `mu`, `lambda`.
 * The level is `kappa - m`.
 *
 * # Safety
 * String arguments must be null or NUL-terminated; `out` must be writable.
 */
enum ClStatus cl_fiber_new(const char *kappa,
                           const char *mu,
                           const char *lambda,
                           struct ClFiber **out);

/**
 * # Safety
 * `f` must be null or a handle from `cl_fiber_new` not yet freed.
 */
void cl_fiber_free(struct ClFiber *f);

/**
 * 1 if the fiber's parameters are generic, 0 if not, -1 on a null handle.
 *
 * # Safety
 * `f` must be null or a live handle.
 */
int cl_fiber_is_generic(const struct ClFiber *f);

/**
 * Number of points `N` of the fiber, 0 on a null handle.
 *
 * # Safety
 * `f` must be null or a live handle.
 */
size_t cl_fiber_points(const struct ClFiber *f);

/**
 * Builds the intertwiner of `word` (e.g. `"pi t1"`) on the box of keys
 * with total degree `degree` and exponents in `[lo, hi]`.
 *
 * # Safety
 * `f` must be a live handle, `word` NUL-terminated, `out` writable.
 */
enum ClStatus cl_chain_build(const struct ClFiber *f,
                             const char *word,
                             int64_t degree,
                             int64_t lo,
                             int64_t hi,
                             struct ClChain **out);

/**
 * # Safety
 * `c` must be null or a handle from `cl_chain_build` not yet freed.
 */
void cl_chain_free(struct ClChain *c);

/**
 * Shape of the composite matrix (rows index the target box).
 *
 * # Safety
 * `c` must be a live handle; `rows` and `cols` writable.
 */
enum ClStatus cl_chain_shape(const struct ClChain *c, size_t *rows, size_t *cols);

/**
 * Entry of the composite matrix as a `"p/q"` string.
 *
 * # Safety
 * `c` must be a live handle; `out` writable.
 */
enum ClStatus cl_chain_entry(const struct ClChain *c, size_t row, size_t col, char **out);

/**
 * The chain serialized as JSON, identical to the command line output.
 *
 * # Safety
 * `c` must be a live handle; `out` writable.
 */
enum ClStatus cl_chain_to_json(const struct ClChain *c, char **out);

/**
 * Checks that the operator of `letter` (`t0`, ..., `pi`, `pi^-1`)
 * intertwines the Cherednik algebra actions on the box. Writes 1 to
 * `passed` if every identity holds, 0 otherwise.
 *
 * # Safety
 * `f` must be a live handle, `letter` NUL-terminated, `passed` writable.
 */
enum ClStatus cl_verify_intertwining(const struct ClFiber *f,
                                     const char *letter,
                                     int64_t degree,
                                     int64_t lo,
                                     int64_t hi,
                                     int *passed);

#endif /* CHEREDNIK_LAB_H */

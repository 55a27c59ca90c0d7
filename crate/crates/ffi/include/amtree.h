/* SPDX-License-Identifier: Apache-2.0 */

#ifndef AMTREE_H
#define AMTREE_H

/* Generated by cbindgen from the amtree-ffi crate. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AmtAlgorithm {
  AMT_ALGORITHM_AUTO = 0,
  AMT_ALGORITHM_NEW = 1,
  AMT_ALGORITHM_SORTED = 2,
} AmtAlgorithm;

typedef enum AmtStatus {
  AMT_STATUS_OK = 0,
  AMT_STATUS_NULL_POINTER = 1,
  AMT_STATUS_INVALID_INPUT = 2,
  // The operation is not allowed in the handle's current state.
  AMT_STATUS_INVALID_STATE = 3,
  AMT_STATUS_INTERNAL = 4,
} AmtStatus;

// Opaque dynamic level tree.
typedef struct AmtLevelTree AmtLevelTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code. Never null.
const char *amt_status_str(enum AmtStatus status);

// Copies the calling thread's last error message into `buf` as a
// NUL-terminated string, truncating to `len - 1` bytes. Returns the full
// message length without the terminator.
//
// # Safety
// `buf` must be null or point to `len` writable bytes.
size_t amt_last_error(char *buf, size_t len);

// Minimax cost of integer weights. `depths` may be null; otherwise it
// receives `n` leaf depths.
//
// # Safety
// `y` must point to `n` values, `cost` must be writable, and `depths`
// must be null or hold `n` slots.
enum AmtStatus amt_alpha_int(const int64_t *y, size_t n, int64_t *cost, uint32_t *depths);

// Minimax cost of real weights and the critical offset. `algorithm` is an
// [`AmtAlgorithm`] value. `depths` may be null; otherwise it receives `n`
// leaf depths.
//
// # Safety
// `w` must point to `n` values, `alpha` and `offset` must be writable,
// and `depths` must be null or hold `n` slots.
enum AmtStatus amt_alpha_real(const double *w,
                              size_t n,
                              uint32_t algorithm,
                              double *alpha,
                              double *offset,
                              uint32_t *depths);

// Codeword lengths of the alphabetic code built for sample probabilities
// `q` (which must be positive and sum to 1), and its redundancy bound.
//
// # Safety
// `q` must point to `n` values, `lengths` must hold `n` slots, and
// `bound` must be null or writable.
enum AmtStatus amt_code_lengths(const double *q, size_t n, uint32_t *lengths, double *bound);

// Level tree over real weights. Free with [`amt_level_tree_free`].
//
// # Safety
// `w` must point to `n` values and `out` must be writable.
enum AmtStatus amt_level_tree_new(const double *w, size_t n, struct AmtLevelTree **out);

// Level tree over integer weights; no position is settable.
//
// # Safety
// `y` must point to `n` values and `out` must be writable.
enum AmtStatus amt_level_tree_new_int(const int64_t *y, size_t n, struct AmtLevelTree **out);

// Lowers the ceiling at position `i` (0-based) by one.
//
// # Safety
// `tree` must be null or a live handle.
enum AmtStatus amt_level_tree_set(struct AmtLevelTree *tree, size_t i);

// Reverts the most recent set that has not been undone.
//
// # Safety
// `tree` must be null or a live handle.
enum AmtStatus amt_level_tree_undo(struct AmtLevelTree *tree);

// # Safety
// `tree` must be null or a live handle and `out` must be writable.
enum AmtStatus amt_level_tree_cost(const struct AmtLevelTree *tree, int64_t *out);

// Number of leaves, or 0 for a null handle.
//
// # Safety
// `tree` must be null or a live handle.
size_t amt_level_tree_len(const struct AmtLevelTree *tree);

// Releases a handle. Null is ignored.
//
// # Safety
// `tree` must be null or a live handle, and is dangling afterwards.
void amt_level_tree_free(struct AmtLevelTree *tree);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AMTREE_H */

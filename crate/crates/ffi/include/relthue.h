#ifndef RELTHUE_H
#define RELTHUE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum RtStatus {
  RT_STATUS_OK = 0,
  RT_STATUS_NULL_POINTER = 1,
  RT_STATUS_INVALID_UTF8 = 2,
  RT_STATUS_PARSE = 3,
  RT_STATUS_INADMISSIBLE = 4,
  RT_STATUS_INVALID_FIELD = 5,
  RT_STATUS_INVALID_PARAMETER = 6,
  RT_STATUS_OVERFLOW = 7,
  RT_STATUS_INDEX_OUT_OF_RANGE = 8,
  RT_STATUS_PANIC = 9,
} RtStatus;

// A validated problem: form, field, bound, epsilon and default heights.
typedef struct RtProblem RtProblem;

// Solution quadruples with their norms, from the reducer or the oracle.
typedef struct RtSolutions RtSolutions;

// Parses a problem file held in memory.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum RtStatus rt_problem_parse(const char *text, struct RtProblem **out);

// Builds a problem from ascending coefficients `c0 .. cn` and `K = k_num / k_den`.
// Epsilon is 1/2 and the heights take their defaults.
//
// # Safety
// `coeffs` must point to `len` values and `out` must be valid.
enum RtStatus rt_problem_new(const int64_t *coeffs,
                             uintptr_t len,
                             uint64_t m,
                             int64_t k_num,
                             int64_t k_den,
                             struct RtProblem **out);

// # Safety
// `problem` must come from this library and not be freed twice. Null is ignored.
void rt_problem_free(struct RtProblem *problem);

// Solves the problem with every absolute search truncated at `ymax`.
//
// # Safety
// `problem` and `out` must be valid.
enum RtStatus rt_solve(const struct RtProblem *problem, uint64_t ymax, struct RtSolutions **out);

// Brute-force scan of `[-height, height]^4`.
//
// # Safety
// `problem` and `out` must be valid.
enum RtStatus rt_oracle(const struct RtProblem *problem, uint64_t height, struct RtSolutions **out);

// Number of solutions; 0 for a null handle.
//
// # Safety
// `solutions` must be null or valid.
uintptr_t rt_solutions_len(const struct RtSolutions *solutions);

// Writes `x1 x2 y1 y2 norm` of solution `index` into `out[0..5]`.
//
// # Safety
// `solutions` must be valid and `out` must hold five values.
enum RtStatus rt_solutions_get(const struct RtSolutions *solutions, uintptr_t index, int64_t *out);

// Full result as JSON (big integers as strings).
//
// # Safety
// `solutions` and `out` must be valid.
enum RtStatus rt_solutions_to_json(const struct RtSolutions *solutions, char **out);

// # Safety
// `solutions` must come from this library and not be freed twice. Null is ignored.
void rt_solutions_free(struct RtSolutions *solutions);

// # Safety
// `s` must come from this library and not be freed twice. Null is ignored.
void rt_string_free(char *s);

// Message for the last failed call on this thread, or null. Valid until the
// next call into the library from the same thread.
const char *rt_last_error_message(void);

// Largest `|k1|` admitted for the problem.
//
// # Safety
// `problem` and `out_bound` must be valid.
enum RtStatus rt_k1_range(const struct RtProblem *problem, int64_t *out_bound);

// Checks the candidate `x1 x2 y1 y2`: whether it solves the inequality and
// whether every necessary condition is consistent with it.
//
// # Safety
// `quad` must hold four values; the out-pointers must be valid.
enum RtStatus rt_verify(const struct RtProblem *problem,
                        const int64_t *quad,
                        bool *out_is_solution,
                        bool *out_consistent);

// Root enclosures and derived constants as JSON, isolated to width `2^-width_bits`.
//
// # Safety
// `problem` and `out` must be valid.
enum RtStatus rt_constants_json(const struct RtProblem *problem, uint32_t width_bits, char **out);

#endif  /* RELTHUE_H */

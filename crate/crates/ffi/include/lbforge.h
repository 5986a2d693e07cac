#ifndef LBFORGE_H
#define LBFORGE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LbfStatus {
  LBF_STATUS_OK = 0,
  LBF_STATUS_NULL_ARGUMENT = 1,
  LBF_STATUS_INVALID_ARGUMENT = 2,
  LBF_STATUS_REJECTED_CASE = 3,
  LBF_STATUS_KIND_MISMATCH = 4,
  LBF_STATUS_PARSE = 5,
  LBF_STATUS_DEGENERATE = 6,
  LBF_STATUS_INTERNAL = 7,
} LbfStatus;

// Handle to `sl_n`.
typedef struct LbfAlgebra LbfAlgebra;

// Handle to a spectral r-matrix together with its algebra.
typedef struct LbfTensor LbfTensor;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copy of the last error message on this thread, or null. Free with
// [`lbf_string_free`].
char *lbf_last_error(void);

// # Safety
// `s` must be null or a string returned by this library.
void lbf_string_free(char *s);

// Creates `sl_n`, `n >= 2`.
//
// # Safety
// `out` must be a valid pointer.
enum LbfStatus lbf_algebra_sl(uint32_t n, struct LbfAlgebra **out);

// # Safety
// `alg` must be null or a handle from [`lbf_algebra_sl`].
void lbf_algebra_free(struct LbfAlgebra *alg);

// # Safety
// `alg` must be a live handle.
size_t lbf_algebra_dim(const struct LbfAlgebra *alg);

// Builds the closed-form r-matrix for `case_text` (e.g. `"I:two-points:1,2"`).
// `r_name` is one of `zero`, `dj`, `dj21`, `jordanian`, or null for the
// catalog constant of the case.
//
// # Safety
// `alg` must be a live handle, strings NUL-terminated, `out` valid.
enum LbfStatus lbf_build_r(const struct LbfAlgebra *alg,
                           const char *case_text,
                           const char *r_name,
                           struct LbfTensor **out);

// Parses a tensor JSON document.
//
// # Safety
// `json` NUL-terminated, `out` valid.
enum LbfStatus lbf_tensor_from_json(const char *json, struct LbfTensor **out);

// # Safety
// `t` must be a live handle, `out` valid. Free the result with
// [`lbf_string_free`].
enum LbfStatus lbf_tensor_to_json(const struct LbfTensor *t, char **out);

// # Safety
// `t` must be null or a handle from this library.
void lbf_tensor_free(struct LbfTensor *t);

// Sets `*pass` to whether the spectral Yang–Baxter expression vanishes.
//
// # Safety
// `t` must be a live handle, `pass` valid.
enum LbfStatus lbf_tensor_check_cybe(const struct LbfTensor *t, bool *pass);

// Sets `*pass` to whether `r(u,v) + τ r(v,u) = 0`.
//
// # Safety
// `t` must be a live handle, `pass` valid.
enum LbfStatus lbf_tensor_check_skew(const struct LbfTensor *t, bool *pass);

// Solves for `σ(u) = pu + q` taking the `(c1, c2)` family to `(d1, d2)` and
// checks the scaled identity on `sl_2`. Rationals are `"a/b"` strings;
// `p`, `q` and the scaling `c` are returned the same way.
//
// # Safety
// Inputs NUL-terminated; all outputs valid.
enum LbfStatus lbf_quasi_twist(const char *c1,
                               const char *c2,
                               const char *d1,
                               const char *d2,
                               char **p,
                               char **q,
                               char **c,
                               bool *equal);

// Admissible degree of `1/a(u)` for double type 1, 2 or 3. `simple_k = 0`
// selects the lowest-root vertex, otherwise a simple root with coefficient
// `simple_k`. Writes `-1` when no such structure exists.
//
// # Safety
// `out` must be valid.
enum LbfStatus lbf_admissible_degree(uint32_t double_type, uint32_t simple_k, int32_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LBFORGE_H */

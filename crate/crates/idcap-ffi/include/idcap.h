/* C interface to the idcap identification-capacity bound library. */

#ifndef IDCAP_H
#define IDCAP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code of every fallible call.
typedef enum IdcapStatus {
  // Success.
  IDCAP_STATUS_OK = 0,
  // An argument is outside its documented domain.
  IDCAP_STATUS_INVALID_ARGUMENT = 1,
  // An output or handle pointer is null.
  IDCAP_STATUS_NULL_POINTER = 2,
  // The result does not fit the requested integer width.
  IDCAP_STATUS_OVERFLOW = 3,
} IdcapStatus;

// Opaque bound-curve handle.
typedef struct IdcapCurve IdcapCurve;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code.
const char *idcap_status_message(enum IdcapStatus status);

// Binary entropy h(q) in bits.
//
// # Safety
// `out` must point to a writable f64.
enum IdcapStatus idcap_binary_entropy(double q, double *out);

// Binary relative entropy D(x‖y) in bits (+∞ on support mismatch).
//
// # Safety
// `out` must point to a writable f64.
enum IdcapStatus idcap_binary_rel_entropy(double x, double y, double *out);

// γ(p) = −1/(2 log₂(1−p)) for p in (0, 1).
//
// # Safety
// `out` must point to a writable f64.
enum IdcapStatus idcap_gamma(double p, double *out);

// Simultaneous identification capacity under complete product
// measurements: 1 − h(p/2).
//
// # Safety
// `out` must point to a writable f64.
enum IdcapStatus idcap_simultaneous_capacity(double p, double *out);

// Asymptotic unrestricted identification bound: 2 below the breakpoint
// 1 − 2^(−2/3), else 2 − D(γ(p)‖3/4).
//
// # Safety
// `out` must point to a writable f64.
enum IdcapStatus idcap_asymptotic_unrestricted_bound(double p, double *out);

// General-channel identification bound log|A| + C(N).
//
// # Safety
// `out` must point to a writable f64.
enum IdcapStatus idcap_general_channel_bound(double log_dim_a,
                                             double classical_capacity,
                                             double *out);

// Sibson α-capacity of the binary symmetric channel with the given
// crossover probability.
//
// # Safety
// `out` must point to a writable f64.
enum IdcapStatus idcap_sibson_capacity_bsc(double crossover, double alpha, double *out);

// Soft-covering expectation bound 2^(2/α−2+((α−1)/α)(I_α − log M)).
//
// # Safety
// `out` must point to a writable f64.
enum IdcapStatus idcap_covering_rhs(double alpha, double i_alpha, uint64_t m, double *out);

// Smallest codebook size with covering_rhs ≤ eps.
//
// # Safety
// `out` must point to a writable u64.
enum IdcapStatus idcap_sufficient_m(double alpha, double eps, double sup_i_alpha, uint64_t *out);

// Finite-n unrestricted bound (1/n)[log₂ μ_θ + log₂ log₂(3C_n/θ)].
//
// # Safety
// `out` must point to a writable f64.
enum IdcapStatus idcap_finite_n_unrestricted_bound(uint32_t n,
                                                   double p,
                                                   double lambda1,
                                                   double lambda2,
                                                   double theta,
                                                   double *out);

// Finite-n simultaneous bound log₂(n·M); divide by n for the rate form.
//
// # Safety
// `out` must point to a writable f64.
enum IdcapStatus idcap_finite_n_sim_bound(uint32_t n,
                                          double p,
                                          double alpha,
                                          double eps,
                                          double lambda1,
                                          double lambda2,
                                          double *out);

// Chernoff–Cramér left-tail bound for Bin(n, q) at a·n + b.
//
// # Safety
// `out` must point to a writable f64.
enum IdcapStatus idcap_chernoff_tail(uint32_t n, double q, double a, double b, double *out);

// p where the ellipsoid bound crosses below the general-channel bound.
//
// # Safety
// `out` must point to a writable f64.
enum IdcapStatus idcap_crossing_point(double *out);

// Sweeps all bounds over the given grid (strictly increasing, in [0, 1)).
// `finite_n` = 0 leaves the finite-n column out. On success stores a handle
// that must be freed with [`idcap_curve_free`].
//
// # Safety
// `p_grid` must point to `len` readable f64; `out` must point to a writable
// pointer slot.
enum IdcapStatus idcap_curve_sweep(const double *p_grid,
                                   size_t len,
                                   double lambda1,
                                   double lambda2,
                                   double theta,
                                   uint32_t finite_n,
                                   struct IdcapCurve **out);

// Number of rows in a curve (0 for null).
//
// # Safety
// `curve` must be null or a live handle from [`idcap_curve_sweep`].
size_t idcap_curve_len(const struct IdcapCurve *curve);

// Reads row `index` of a curve. `finite_n_bound` receives NaN when the
// column was not requested. Null out-pointers are allowed and skipped.
//
// # Safety
// `curve` must be a live handle; non-null out-pointers must be writable.
enum IdcapStatus idcap_curve_row(const struct IdcapCurve *curve,
                                 size_t index,
                                 double *p,
                                 double *sim_cap,
                                 double *unrestricted_bound,
                                 double *general_bound,
                                 double *finite_n_bound);

// Crossing point stored in the curve (NaN for null).
//
// # Safety
// `curve` must be null or a live handle.
double idcap_curve_crossing(const struct IdcapCurve *curve);

// Releases a curve handle; null is a no-op.
//
// # Safety
// `curve` must be null or a handle from [`idcap_curve_sweep`] not yet freed.
void idcap_curve_free(struct IdcapCurve *curve);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IDCAP_H */

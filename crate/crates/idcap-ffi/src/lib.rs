//! C ABI for the idcap bound evaluators.
//!
//! Scalar bound functions write their result through an out-pointer and
//! return an [`IdcapStatus`]; curve sweeps return an opaque handle that must
//! be released with [`idcap_curve_free`]. The C header is generated from
//! this file by cbindgen into `include/idcap.h`.
//!
//! All inputs are plain scalars or caller-owned arrays; the library never
//! retains pointers passed in.

use std::os::raw::c_char;

use idcap::bounds_api::{self, BoundCurve, SweepParams};
use idcap::covering_geometry;
use idcap::info_measures;
use idcap::soft_covering;

/// Status code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdcapStatus {
    /// Success.
    Ok = 0,
    /// An argument is outside its documented domain.
    InvalidArgument = 1,
    /// An output or handle pointer is null.
    NullPointer = 2,
    /// The result does not fit the requested integer width.
    Overflow = 3,
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn idcap_status_message(status: IdcapStatus) -> *const c_char {
    let msg: &'static [u8] = match status {
        IdcapStatus::Ok => b"ok\0",
        IdcapStatus::InvalidArgument => b"argument outside its domain\0",
        IdcapStatus::NullPointer => b"null pointer\0",
        IdcapStatus::Overflow => b"result too large for the output type\0",
    };
    msg.as_ptr() as *const c_char
}

fn status_of(err: &idcap::Error) -> IdcapStatus {
    match err {
        idcap::Error::CodebookTooLarge(_) => IdcapStatus::Overflow,
        _ => IdcapStatus::InvalidArgument,
    }
}

unsafe fn write_result(out: *mut f64, value: idcap::Result<f64>) -> IdcapStatus {
    if out.is_null() {
        return IdcapStatus::NullPointer;
    }
    match value {
        Ok(v) => {
            *out = v;
            IdcapStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Binary entropy h(q) in bits.
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn idcap_binary_entropy(q: f64, out: *mut f64) -> IdcapStatus {
    write_result(out, info_measures::binary_entropy(q))
}

/// Binary relative entropy D(x‖y) in bits (+∞ on support mismatch).
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn idcap_binary_rel_entropy(x: f64, y: f64, out: *mut f64) -> IdcapStatus {
    write_result(out, info_measures::binary_rel_entropy(x, y))
}

/// γ(p) = −1/(2 log₂(1−p)) for p in (0, 1).
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn idcap_gamma(p: f64, out: *mut f64) -> IdcapStatus {
    write_result(out, covering_geometry::gamma(p))
}

/// Simultaneous identification capacity under complete product
/// measurements: 1 − h(p/2).
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn idcap_simultaneous_capacity(p: f64, out: *mut f64) -> IdcapStatus {
    write_result(out, bounds_api::simultaneous_capacity_product(p))
}

/// Asymptotic unrestricted identification bound: 2 below the breakpoint
/// 1 − 2^(−2/3), else 2 − D(γ(p)‖3/4).
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn idcap_asymptotic_unrestricted_bound(p: f64, out: *mut f64) -> IdcapStatus {
    write_result(out, covering_geometry::asymptotic_unrestricted_bound(p))
}

/// General-channel identification bound log|A| + C(N).
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn idcap_general_channel_bound(
    log_dim_a: f64,
    classical_capacity: f64,
    out: *mut f64,
) -> IdcapStatus {
    write_result(
        out,
        bounds_api::general_channel_bound(log_dim_a, classical_capacity),
    )
}

/// Sibson α-capacity of the binary symmetric channel with the given
/// crossover probability.
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn idcap_sibson_capacity_bsc(
    crossover: f64,
    alpha: f64,
    out: *mut f64,
) -> IdcapStatus {
    let value = idcap::channels::ChannelKernel::bsc(crossover)
        .and_then(|w| info_measures::sibson_capacity(&w, alpha));
    write_result(out, value)
}

/// Soft-covering expectation bound 2^(2/α−2+((α−1)/α)(I_α − log M)).
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn idcap_covering_rhs(
    alpha: f64,
    i_alpha: f64,
    m: u64,
    out: *mut f64,
) -> IdcapStatus {
    write_result(out, soft_covering::covering_rhs(alpha, i_alpha, m))
}

/// Smallest codebook size with covering_rhs ≤ eps.
///
/// # Safety
/// `out` must point to a writable u64.
#[no_mangle]
pub unsafe extern "C" fn idcap_sufficient_m(
    alpha: f64,
    eps: f64,
    sup_i_alpha: f64,
    out: *mut u64,
) -> IdcapStatus {
    if out.is_null() {
        return IdcapStatus::NullPointer;
    }
    match soft_covering::sufficient_m(alpha, eps, sup_i_alpha) {
        Ok(m) => {
            *out = m;
            IdcapStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Finite-n unrestricted bound (1/n)[log₂ μ_θ + log₂ log₂(3C_n/θ)].
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn idcap_finite_n_unrestricted_bound(
    n: u32,
    p: f64,
    lambda1: f64,
    lambda2: f64,
    theta: f64,
    out: *mut f64,
) -> IdcapStatus {
    write_result(
        out,
        covering_geometry::finite_n_unrestricted_bound(n, p, lambda1, lambda2, theta),
    )
}

/// Finite-n simultaneous bound log₂(n·M); divide by n for the rate form.
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn idcap_finite_n_sim_bound(
    n: u32,
    p: f64,
    alpha: f64,
    eps: f64,
    lambda1: f64,
    lambda2: f64,
    out: *mut f64,
) -> IdcapStatus {
    write_result(
        out,
        soft_covering::finite_n_sim_bound(n, p, alpha, eps, lambda1, lambda2),
    )
}

/// Chernoff–Cramér left-tail bound for Bin(n, q) at a·n + b.
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn idcap_chernoff_tail(
    n: u32,
    q: f64,
    a: f64,
    b: f64,
    out: *mut f64,
) -> IdcapStatus {
    write_result(out, covering_geometry::chernoff_tail(n, q, a, b))
}

/// p where the ellipsoid bound crosses below the general-channel bound.
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn idcap_crossing_point(out: *mut f64) -> IdcapStatus {
    write_result(out, bounds_api::crossing_point())
}

/// Opaque bound-curve handle.
pub struct IdcapCurve {
    inner: BoundCurve,
}

/// Sweeps all bounds over the given grid (strictly increasing, in [0, 1)).
/// `finite_n` = 0 leaves the finite-n column out. On success stores a handle
/// that must be freed with [`idcap_curve_free`].
///
/// # Safety
/// `p_grid` must point to `len` readable f64; `out` must point to a writable
/// pointer slot.
#[no_mangle]
pub unsafe extern "C" fn idcap_curve_sweep(
    p_grid: *const f64,
    len: usize,
    lambda1: f64,
    lambda2: f64,
    theta: f64,
    finite_n: u32,
    out: *mut *mut IdcapCurve,
) -> IdcapStatus {
    if p_grid.is_null() || out.is_null() {
        return IdcapStatus::NullPointer;
    }
    let grid = std::slice::from_raw_parts(p_grid, len);
    let params = SweepParams {
        lambda1,
        lambda2,
        theta,
        finite_n: if finite_n == 0 { None } else { Some(finite_n) },
    };
    match bounds_api::sweep_curves(grid, &params) {
        Ok(curve) => {
            *out = Box::into_raw(Box::new(IdcapCurve { inner: curve }));
            IdcapStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Number of rows in a curve (0 for null).
///
/// # Safety
/// `curve` must be null or a live handle from [`idcap_curve_sweep`].
#[no_mangle]
pub unsafe extern "C" fn idcap_curve_len(curve: *const IdcapCurve) -> usize {
    if curve.is_null() {
        return 0;
    }
    (*curve).inner.rows.len()
}

/// Reads row `index` of a curve. `finite_n_bound` receives NaN when the
/// column was not requested. Null out-pointers are allowed and skipped.
///
/// # Safety
/// `curve` must be a live handle; non-null out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn idcap_curve_row(
    curve: *const IdcapCurve,
    index: usize,
    p: *mut f64,
    sim_cap: *mut f64,
    unrestricted_bound: *mut f64,
    general_bound: *mut f64,
    finite_n_bound: *mut f64,
) -> IdcapStatus {
    if curve.is_null() {
        return IdcapStatus::NullPointer;
    }
    let rows = &(*curve).inner.rows;
    let Some(row) = rows.get(index) else {
        return IdcapStatus::InvalidArgument;
    };
    if !p.is_null() {
        *p = row.p;
    }
    if !sim_cap.is_null() {
        *sim_cap = row.sim_cap;
    }
    if !unrestricted_bound.is_null() {
        *unrestricted_bound = row.unrestricted_bound;
    }
    if !general_bound.is_null() {
        *general_bound = row.general_bound;
    }
    if !finite_n_bound.is_null() {
        *finite_n_bound = row.finite_n_bound.unwrap_or(f64::NAN);
    }
    IdcapStatus::Ok
}

/// Crossing point stored in the curve (NaN for null).
///
/// # Safety
/// `curve` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn idcap_curve_crossing(curve: *const IdcapCurve) -> f64 {
    if curve.is_null() {
        return f64::NAN;
    }
    (*curve).inner.crossing
}

/// Releases a curve handle; null is a no-op.
///
/// # Safety
/// `curve` must be null or a handle from [`idcap_curve_sweep`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn idcap_curve_free(curve: *mut IdcapCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

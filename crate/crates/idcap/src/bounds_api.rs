//! Bound catalogue and identification-code verification.
//!
//! Three upper bounds on the double-exponential identification rate
//! (1/n) log log N of the qubit depolarizing channel live here:
//!
//! - simultaneous identification under complete product measurements, where
//!   the bound is the capacity itself: 1 − h(p/2) ([`simultaneous_capacity_product`]);
//! - unrestricted identification via the output-ellipsoid covering
//!   ([`crate::covering_geometry::asymptotic_unrestricted_bound`]);
//! - unrestricted identification over an arbitrary channel via low-rank
//!   covering: log|A| + C(N) ([`general_channel_bound`]), which for the
//!   depolarizing channel is 2 − h(p/2).
//!
//! [`sweep_curves`] evaluates all of them over a p-grid and locates the
//! crossing where the ellipsoid bound beats the general bound.
//! [`verify_id_code`] and [`separation_check`] exercise the defining error
//! conditions of identification codes on dense desk-scale simulations.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use crate::channels::depolarize;
use crate::covering_geometry::{
    asymptotic_unrestricted_bound, finite_n_unrestricted_bound, BoundKind, BoundPoint,
};
use crate::info_measures::binary_entropy;
use crate::pauli_bloch::{hermitian_trace_norm, DensityMatrix};
use crate::soft_covering::check_lambdas;
use crate::{Error, Result, C64};

/// Tolerance for decoder operator inequalities 0 ≤ D ≤ I.
pub const DECODER_TOL: f64 = 1e-10;

/// An identification code: encoder states ρ_i with binary tests (D_i, I−D_i).
#[derive(Debug, Clone)]
pub struct IdCode {
    states: Vec<DensityMatrix>,
    decoders: Vec<DMatrix<C64>>,
    n: usize,
    p: f64,
}

impl IdCode {
    /// Validates lengths, dimensions, and the operator inequalities
    /// 0 ≤ D_i ≤ I (eigenvalue tolerance 1e−10). Dense simulation only:
    /// n ≤ 3 qubits.
    pub fn new(
        states: Vec<DensityMatrix>,
        decoders: Vec<DMatrix<C64>>,
        n: usize,
        p: f64,
    ) -> Result<Self> {
        if states.len() != decoders.len() {
            return Err(Error::DimensionMismatch(states.len(), decoders.len()));
        }
        if states.len() < 2 {
            return Err(Error::Empty(
                "identification code needs at least two messages",
            ));
        }
        if n == 0 || n > 3 {
            return Err(Error::out_of_range(format!("blocklength {n} not in 1..=3")));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::out_of_range(format!("p {p} not in [0, 1]")));
        }
        let dim = 1usize << n;
        for s in &states {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch(s.dim(), dim));
            }
        }
        for d in &decoders {
            if d.nrows() != dim || d.ncols() != dim {
                return Err(Error::DimensionMismatch(d.nrows(), dim));
            }
            let herm_dev = crate::pauli_bloch::hermiticity_deviation(d);
            if herm_dev > DECODER_TOL {
                return Err(Error::NotHermitian(herm_dev));
            }
            for eig in d.clone().symmetric_eigen().eigenvalues.iter() {
                if *eig < -DECODER_TOL || *eig > 1.0 + DECODER_TOL {
                    return Err(Error::InvalidDecoder(*eig));
                }
            }
        }
        Ok(Self {
            states,
            decoders,
            n,
            p,
        })
    }

    /// Random valid code: Ginibre encoder states and random binary tests
    /// (random eigenbasis, eigenvalues uniform in [0, 1]).
    pub fn random<R: rand::Rng>(n: usize, p: f64, messages: usize, rng: &mut R) -> Result<Self> {
        let dim = 1usize << n;
        let states = (0..messages)
            .map(|_| DensityMatrix::random(dim, rng))
            .collect();
        let decoders = (0..messages)
            .map(|_| {
                let q = crate::pauli_bloch::ginibre(dim, rng).qr().q();
                let mut d = DMatrix::<C64>::zeros(dim, dim);
                for k in 0..dim {
                    let weight: f64 = rng.random();
                    let col = q.column(k);
                    d += (col * col.adjoint()).map(|z| z * weight);
                }
                d
            })
            .collect();
        Self::new(states, decoders, n, p)
    }

    pub fn size(&self) -> usize {
        self.states.len()
    }

    pub fn block_length(&self) -> usize {
        self.n
    }

    pub fn noise(&self) -> f64 {
        self.p
    }

    fn outputs(&self) -> Result<Vec<DMatrix<C64>>> {
        self.states
            .iter()
            .map(|s| Ok(depolarize(s, self.p)?.matrix().clone()))
            .collect()
    }
}

/// Worst-case achieved errors of a code: the largest type-I deficit
/// max_i (1 − Tr[N(ρ_i) D_i]) and the largest type-II acceptance
/// max_{i≠j} Tr[N(ρ_i) D_j].
pub fn verify_id_code(code: &IdCode) -> Result<(f64, f64)> {
    let outputs = code.outputs()?;
    let mut lambda1 = 0.0f64;
    let mut lambda2 = 0.0f64;
    for (i, out) in outputs.iter().enumerate() {
        for (j, dec) in code.decoders.iter().enumerate() {
            let acceptance = (out * dec).trace().re;
            if i == j {
                lambda1 = lambda1.max(1.0 - acceptance);
            } else {
                lambda2 = lambda2.max(acceptance);
            }
        }
    }
    Ok((lambda1, lambda2))
}

/// Minimal pairwise output separation min_{i≠j} ½‖N(ρ_i) − N(ρ_j)‖₁.
///
/// Any code with errors (λ₁, λ₂) from [`verify_id_code`] satisfies
/// separation ≥ 1 − λ₁ − λ₂.
pub fn separation_check(code: &IdCode) -> Result<f64> {
    let outputs = code.outputs()?;
    let mut min_sep = f64::INFINITY;
    for i in 0..outputs.len() {
        for j in i + 1..outputs.len() {
            let sep = 0.5 * hermitian_trace_norm(&(&outputs[i] - &outputs[j]));
            min_sep = min_sep.min(sep);
        }
    }
    Ok(min_sep)
}

/// Simultaneous identification capacity under complete product measurements:
/// 1 − h(p/2), the classical capacity of the depolarizing channel.
pub fn simultaneous_capacity_product(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::out_of_range(format!("p {p} not in [0, 1]")));
    }
    Ok(1.0 - binary_entropy(p / 2.0)?)
}

/// Strong-converse bound log|A| + C(N) for identification over an arbitrary
/// channel with input dimension |A| and classical capacity C(N).
pub fn general_channel_bound(log_dim_a: f64, classical_capacity: f64) -> Result<f64> {
    if log_dim_a < 0.0 || classical_capacity < 0.0 {
        return Err(Error::out_of_range(
            "log dimension and capacity must be nonnegative".to_string(),
        ));
    }
    Ok(log_dim_a + classical_capacity)
}

/// log₂ of the δ-net size bound (5/δ)^(2·dim) on pure states in dimension
/// `dim`: 2·dim·log₂(5/δ).
pub fn epsilon_net_count(dim: u64, delta: f64) -> Result<f64> {
    if dim == 0 {
        return Err(Error::Empty("dimension"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::out_of_range(format!("delta {delta} not in (0, 1)")));
    }
    Ok(2.0 * dim as f64 * (5.0 / delta).log2())
}

/// log₂ of the companion message-count bound
/// N ≤ (10/(1 − λ₁ − λ₂ − 2ε))^(2·|A|ⁿ·|R|).
pub fn net_message_bound_log2(
    dim_a_pow_n: f64,
    r_dim: f64,
    lambda1: f64,
    lambda2: f64,
    eps: f64,
) -> Result<f64> {
    check_lambdas(lambda1, lambda2)?;
    let sep = 1.0 - lambda1 - lambda2 - 2.0 * eps;
    if eps.is_nan() || eps <= 0.0 || sep <= 0.0 {
        return Err(Error::out_of_range(format!(
            "epsilon {eps} must be in (0, (1-λ₁-λ₂)/2)"
        )));
    }
    if dim_a_pow_n < 1.0 || r_dim < 1.0 {
        return Err(Error::out_of_range("dimensions must be ≥ 1".to_string()));
    }
    Ok(2.0 * dim_a_pow_n * r_dim * (10.0 / sep).log2())
}

/// Parameters of a bound-curve sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepParams {
    pub lambda1: f64,
    pub lambda2: f64,
    pub theta: f64,
    /// Blocklength for the optional finite-n column; None leaves it out.
    pub finite_n: Option<u32>,
}

impl Default for SweepParams {
    fn default() -> Self {
        Self {
            lambda1: 0.1,
            lambda2: 0.1,
            theta: 0.25,
            finite_n: None,
        }
    }
}

/// One row of a bound curve.
#[derive(Debug, Clone, Serialize)]
pub struct CurveRow {
    pub p: f64,
    pub sim_cap: f64,
    pub unrestricted_bound: f64,
    pub general_bound: f64,
    pub finite_n_bound: Option<f64>,
}

/// Bound curves over a p-grid, with the crossing of the unrestricted
/// ellipsoid bound and the general-channel bound.
#[derive(Debug, Clone, Serialize)]
pub struct BoundCurve {
    pub rows: Vec<CurveRow>,
    /// p where 2 − D(γ(p)‖3/4) = 2 − h(p/2); the ellipsoid bound is the
    /// stronger one above this noise level.
    pub crossing: f64,
    pub params: SweepParams,
}

/// Evaluates all bounds on the grid (strictly increasing, inside [0, 1)).
pub fn sweep_curves(p_grid: &[f64], params: &SweepParams) -> Result<BoundCurve> {
    if p_grid.is_empty() {
        return Err(Error::Empty("p grid"));
    }
    for w in p_grid.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::out_of_range(format!(
                "grid must be strictly increasing, got {} then {}",
                w[0], w[1]
            )));
        }
    }
    if !(0.0..1.0).contains(&p_grid[0]) || !(0.0..1.0).contains(p_grid.last().unwrap()) {
        return Err(Error::out_of_range(
            "grid values must lie in [0, 1)".to_string(),
        ));
    }
    check_lambdas(params.lambda1, params.lambda2)?;
    let rows: Vec<CurveRow> = p_grid
        .par_iter()
        .map(|&p| -> Result<CurveRow> {
            let finite = match params.finite_n {
                Some(n) => Some(finite_n_unrestricted_bound(
                    n,
                    p,
                    params.lambda1,
                    params.lambda2,
                    params.theta,
                )?),
                None => None,
            };
            Ok(CurveRow {
                p,
                sim_cap: simultaneous_capacity_product(p)?,
                unrestricted_bound: asymptotic_unrestricted_bound(p)?,
                general_bound: general_channel_bound(1.0, simultaneous_capacity_product(p)?)?,
                finite_n_bound: finite,
            })
        })
        .collect::<Result<_>>()?;
    Ok(BoundCurve {
        rows,
        crossing: crossing_point()?,
        params: params.clone(),
    })
}

/// Evaluates one bound kind at a single noise level.
pub fn bound_point(kind: BoundKind, p: f64, params: &SweepParams) -> Result<BoundPoint> {
    let value = match kind {
        BoundKind::Simultaneous => simultaneous_capacity_product(p)?,
        BoundKind::Asymptotic => asymptotic_unrestricted_bound(p)?,
        BoundKind::General => general_channel_bound(1.0, simultaneous_capacity_product(p)?)?,
        BoundKind::FiniteN => {
            let n = params.finite_n.ok_or_else(|| {
                Error::out_of_range("finite-n bound needs a blocklength".to_string())
            })?;
            finite_n_unrestricted_bound(n, p, params.lambda1, params.lambda2, params.theta)?
        }
    };
    Ok(BoundPoint { p, value, kind })
}

/// Locates (bisection, tolerance 1e−6) the unique p where the ellipsoid
/// bound 2 − D(γ(p)‖3/4) crosses the general bound 2 − h(p/2).
pub fn crossing_point() -> Result<f64> {
    let f = |p: f64| -> Result<f64> {
        Ok(asymptotic_unrestricted_bound(p)?
            - general_channel_bound(1.0, simultaneous_capacity_product(p)?)?)
    };
    let mut lo = crate::covering_geometry::GAMMA_BREAKPOINT + 1e-9;
    let mut hi = 1.0 - 1e-12;
    if f(lo)? <= 0.0 || f(hi)? >= 0.0 {
        return Err(Error::out_of_range("crossing bracket failed".to_string()));
    }
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if f(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

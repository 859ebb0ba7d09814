//! Output-ellipsoid covering bounds for the depolarizing channel.
//!
//! The n-fold depolarizing channel contracts Bloch coordinate α by
//! (1−p)^w(α), so its output set lies in an ellipsoid whose semi-axes come in
//! weight groups: N_k = C(n,k)·3^k directions of weight k share the axis
//! a(k) = C_n (1−p)^k, with C_n = √(2ⁿ−1)/(1−λ₁−λ₂) after rescaling balls to
//! unit radius. The number of identifiable messages is at most the minimal
//! 1-ball covering of that ellipsoid, which is bounded (in nats) by
//!
//! ```text
//!   ln |M*₁| ≤ K + μ_θ ln(3/θ),   θ ∈ (0, 1/2),
//! ```
//!
//! where μ_θ counts axes with a² > 1−θ and K sums ln a over axes with a > 1
//! ([`dumer_bound`]). Specializing to the weight groups, bounding μ_θ by a
//! binomial tail and optimizing gives the asymptotic strong-converse value
//! 2 − D(γ(p)‖3/4) for p above 1 − 2^(−2/3), and 2 below
//! ([`asymptotic_unrestricted_bound`]); the finite-n evaluator
//! ([`finite_n_unrestricted_bound`]) keeps μ_θ as an exact big-integer sum.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::info_measures::binary_rel_entropy;
use crate::soft_covering::check_lambdas;
use crate::{Error, Result};

/// One group of identical semi-axes.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisGroup {
    pub multiplicity: BigUint,
    pub semi_axis: f64,
}

/// An ellipsoid described by grouped semi-axes; the ambient dimension is the
/// total multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct EllipsoidSpec {
    groups: Vec<AxisGroup>,
}

impl EllipsoidSpec {
    pub fn new(groups: Vec<AxisGroup>) -> Result<Self> {
        if groups.is_empty() {
            return Err(Error::Empty("ellipsoid"));
        }
        for g in &groups {
            if g.multiplicity.is_zero() {
                return Err(Error::out_of_range(
                    "axis multiplicity must be ≥ 1".to_string(),
                ));
            }
            if g.semi_axis.is_nan() || g.semi_axis <= 0.0 {
                return Err(Error::out_of_range(format!(
                    "semi-axis {} must be > 0",
                    g.semi_axis
                )));
            }
        }
        Ok(Self { groups })
    }

    /// Convenience constructor from ungrouped axes.
    pub fn from_axes(axes: &[f64]) -> Result<Self> {
        Self::new(
            axes.iter()
                .map(|&a| AxisGroup {
                    multiplicity: BigUint::one(),
                    semi_axis: a,
                })
                .collect(),
        )
    }

    pub fn groups(&self) -> &[AxisGroup] {
        &self.groups
    }

    pub fn ambient_dim(&self) -> BigUint {
        self.groups.iter().map(|g| g.multiplicity.clone()).sum()
    }

    /// The ellipsoid scaled by `factor` (covering A with ε-balls is covering
    /// A/ε with 1-balls).
    pub fn scale(&self, factor: f64) -> Result<Self> {
        if factor.is_nan() || factor <= 0.0 {
            return Err(Error::out_of_range(format!(
                "scale factor {factor} must be > 0"
            )));
        }
        Self::new(
            self.groups
                .iter()
                .map(|g| AxisGroup {
                    multiplicity: g.multiplicity.clone(),
                    semi_axis: g.semi_axis * factor,
                })
                .collect(),
        )
    }
}

/// Output ellipsoid of N_p^⊗n rescaled for 1-ball covering at error budget
/// 1 − λ₁ − λ₂: weight group k has multiplicity C(n,k)·3^k and semi-axis
/// C_n (1−p)^k with C_n = √(2ⁿ−1)/(1−λ₁−λ₂).
pub fn depolarizing_ellipsoid(n: u32, p: f64, lambda1: f64, lambda2: f64) -> Result<EllipsoidSpec> {
    if n == 0 {
        return Err(Error::Empty("blocklength"));
    }
    if !(0.0..1.0).contains(&p) {
        return Err(Error::out_of_range(format!("p {p} not in [0, 1)")));
    }
    check_lambdas(lambda1, lambda2)?;
    let c_n = ((2f64.powi(n as i32) - 1.0).sqrt()) / (1.0 - lambda1 - lambda2);
    let mut groups = Vec::with_capacity(n as usize);
    let mut total = BigUint::zero();
    for k in 1..=n {
        let mult = binomial(n, k) * BigUint::from(3u32).pow(k);
        total += &mult;
        groups.push(AxisGroup {
            multiplicity: mult,
            semi_axis: c_n * (1.0 - p).powi(k as i32),
        });
    }
    debug_assert_eq!(total, BigUint::from(4u32).pow(n) - BigUint::one());
    EllipsoidSpec::new(groups)
}

/// Exact binomial coefficient.
pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut num = BigUint::one();
    for i in 0..k {
        num *= BigUint::from(n - i);
        num /= BigUint::from(i + 1);
    }
    num
}

/// log₂ of a positive big integer, exact to f64 resolution.
pub fn log2_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 53 {
        return x.to_f64().expect("fits in f64").log2();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().expect("53 bits fit in f64");
    top.log2() + shift as f64
}

/// Partition of an ellipsoid's axes for the 1-ball covering bound.
#[derive(Debug, Clone, PartialEq)]
pub struct DumerPartition {
    /// Axes with a² ≤ 1 − θ.
    pub small: BigUint,
    /// Axes with 1 − θ < a² ≤ 1.
    pub medium: BigUint,
    /// Axes with a > 1.
    pub large: BigUint,
    /// μ_θ = |medium| + |large|.
    pub mu_theta: BigUint,
    /// K = Σ_{a>1} ln a (nats).
    pub k_nats: f64,
}

fn check_theta(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta < 0.5) {
        return Err(Error::out_of_range(format!(
            "theta {theta} not in (0, 1/2)"
        )));
    }
    Ok(())
}

/// Classifies the axes into the three covering-relevant groups.
pub fn dumer_partition(spec: &EllipsoidSpec, theta: f64) -> Result<DumerPartition> {
    check_theta(theta)?;
    let mut small = BigUint::zero();
    let mut medium = BigUint::zero();
    let mut large = BigUint::zero();
    let mut k_nats = 0.0;
    for g in spec.groups() {
        let a = g.semi_axis;
        if a * a <= 1.0 - theta {
            small += &g.multiplicity;
        } else if a <= 1.0 {
            medium += &g.multiplicity;
        } else {
            large += &g.multiplicity;
            k_nats += g.multiplicity.to_f64().unwrap_or(f64::INFINITY) * a.ln();
        }
    }
    let mu_theta = &medium + &large;
    Ok(DumerPartition {
        small,
        medium,
        large,
        mu_theta,
        k_nats,
    })
}

/// Upper bound (in nats) on the log of the minimal 1-ball covering number:
/// ln |M*₁(S)| ≤ K + μ_θ ln(3/θ).
pub fn dumer_bound(spec: &EllipsoidSpec, theta: f64) -> Result<f64> {
    let part = dumer_partition(spec, theta)?;
    let mu = part.mu_theta.to_f64().unwrap_or(f64::INFINITY);
    Ok(part.k_nats + mu * (3.0 / theta).ln())
}

/// ε-ball version through the scaling identity |M*_ε(A)| = |M*₁(A/ε)|.
pub fn dumer_bound_eps(spec: &EllipsoidSpec, eps: f64, theta: f64) -> Result<f64> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::out_of_range(format!(
            "ball radius {eps} must be > 0"
        )));
    }
    dumer_bound(&spec.scale(1.0 / eps)?, theta)
}

/// Largest weights whose axes stay large: k_θ = max{k : C_n²(1−p)^2k > 1−θ}
/// and k₀ = max{k : C_n(1−p)^k > 1}, both 0 when no k in 1..=n qualifies.
///
/// Computed in log space, so arbitrary n is fine; always k_θ ≥ k₀.
pub fn weight_thresholds(
    n: u32,
    p: f64,
    theta: f64,
    lambda1: f64,
    lambda2: f64,
) -> Result<(u32, u32)> {
    if n == 0 {
        return Err(Error::Empty("blocklength"));
    }
    if !(0.0..1.0).contains(&p) {
        return Err(Error::out_of_range(format!("p {p} not in [0, 1)")));
    }
    check_theta(theta)?;
    check_lambdas(lambda1, lambda2)?;
    let log2_cn = log2_cn(n, lambda1, lambda2);
    if p == 0.0 {
        // Axes never shrink with weight; C_n > 1 makes every k qualify.
        return Ok((n, n));
    }
    let log2_1mp = (1.0 - p).log2();
    let k_theta = largest_k(n, |k| {
        2.0 * log2_cn + 2.0 * k as f64 * log2_1mp > (1.0 - theta).log2()
    });
    let k_zero = largest_k(n, |k| log2_cn + k as f64 * log2_1mp > 0.0);
    debug_assert!(k_theta >= k_zero);
    Ok((k_theta, k_zero))
}

fn largest_k(n: u32, pred: impl Fn(u32) -> bool) -> u32 {
    // The predicates are monotone decreasing in k; binary search the cutoff.
    if !pred(1) {
        return 0;
    }
    let (mut lo, mut hi) = (1u32, n);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

fn log2_cn(n: u32, lambda1: f64, lambda2: f64) -> f64 {
    // log2 of √(2^n − 1)/(1 − λ₁ − λ₂) without overflowing the power.
    let log2_pow = if n <= 1023 {
        (2f64.powi(n as i32) - 1.0).log2()
    } else {
        n as f64
    };
    0.5 * log2_pow - (1.0 - lambda1 - lambda2).log2()
}

/// Exact μ_θ = Σ_{k ≤ k_θ} C(n,k)·3^k as a big integer.
pub fn mu_theta_exact(n: u32, p: f64, theta: f64, lambda1: f64, lambda2: f64) -> Result<BigUint> {
    let (k_theta, _) = weight_thresholds(n, p, theta, lambda1, lambda2)?;
    let mut mu = BigUint::zero();
    for k in 1..=k_theta {
        mu += binomial(n, k) * BigUint::from(3u32).pow(k);
    }
    Ok(mu)
}

/// Chernoff–Cramér left-tail bound for X ~ Bin(n, q):
/// Pr(X ≤ an + b) ≤ 2^(−n·D(a + b/n ‖ q)) when a + b/n ≤ q, else 1.
pub fn chernoff_tail(n: u32, q: f64, a: f64, b: f64) -> Result<f64> {
    check_chernoff_args(n, q, a, b)?;
    let x = a + b / n as f64;
    if x >= q {
        return Ok(1.0);
    }
    Ok((-(n as f64) * binary_rel_entropy(x, q)?).exp2())
}

/// The optimizing exponent t* = log[q(1 − a − b/n) / ((a + b/n)(1 − q))],
/// clipped at 0 (the clipped regime is exactly where the bound is trivial).
pub fn chernoff_optimizer(n: u32, q: f64, a: f64, b: f64) -> Result<f64> {
    check_chernoff_args(n, q, a, b)?;
    let x = a + b / n as f64;
    if x >= q {
        return Ok(0.0);
    }
    if x == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(((q * (1.0 - x)) / (x * (1.0 - q))).log2().max(0.0))
}

fn check_chernoff_args(n: u32, q: f64, a: f64, b: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::Empty("sample count"));
    }
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::out_of_range(format!("q {q} not in (0, 1)")));
    }
    if !(a >= 0.0 && b >= 0.0) {
        return Err(Error::out_of_range(format!(
            "need a ≥ 0 and b ≥ 0, got ({a}, {b})"
        )));
    }
    Ok(())
}

/// Finite-n unrestricted identification bound
/// (1/n)·[log₂ μ_θ + log₂ log₂ (3 C_n/θ)], with μ_θ summed exactly.
///
/// Valid upper bound on (1/n) log log N(n, λ₁, λ₂) for every n; approaches
/// [`asymptotic_unrestricted_bound`] as n → ∞. Returns 0 when one ball
/// already covers the output ellipsoid (μ_θ = 0).
pub fn finite_n_unrestricted_bound(
    n: u32,
    p: f64,
    lambda1: f64,
    lambda2: f64,
    theta: f64,
) -> Result<f64> {
    let mu = mu_theta_exact(n, p, theta, lambda1, lambda2)?;
    if mu.is_zero() {
        return Ok(0.0);
    }
    let log2_ball_term = (3f64.log2() + log2_cn(n, lambda1, lambda2) - theta.log2()).log2();
    Ok(((log2_biguint(&mu) + log2_ball_term) / n as f64).max(0.0))
}

/// γ(p) = −1/(2 log(1−p)), the asymptotic fraction of weights whose axes
/// stay large.
pub fn gamma(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::out_of_range(format!("p {p} not in (0, 1)")));
    }
    Ok(-1.0 / (2.0 * (1.0 - p).log2()))
}

/// The breakpoint 1 − 2^(−2/3) where γ(p) = 3/4.
pub const GAMMA_BREAKPOINT: f64 = 0.37003944467943395; // 1 - 2^(-2/3)

/// Asymptotic strong-converse bound on (1/n) log log N for unrestricted
/// identification over N_p: 2 for p ≤ 1 − 2^(−2/3), else 2 − D(γ(p)‖3/4).
///
/// Continuous at the breakpoint, strictly decreasing beyond it, and → 0 as
/// p → 1.
pub fn asymptotic_unrestricted_bound(p: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&p) {
        return Err(Error::out_of_range(format!("p {p} not in [0, 1)")));
    }
    if p <= GAMMA_BREAKPOINT {
        return Ok(2.0);
    }
    Ok(2.0 - binary_rel_entropy(gamma(p)?, 0.75)?)
}

/// Which bound a [`BoundPoint`] carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    FiniteN,
    Asymptotic,
    Simultaneous,
    General,
}

/// A single evaluated bound value at noise parameter p.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundPoint {
    pub p: f64,
    pub value: f64,
    pub kind: BoundKind,
}

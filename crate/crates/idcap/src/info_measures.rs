//! Entropies, divergences, and Sibson α-mutual information.
//!
//! Everything is in bits (base-2 logarithms). Classical quantities operate on
//! [`ProbDist`]/[`ChannelKernel`]; the quantum divergences (sandwiched, Petz,
//! Umegaki) operate on small dense [`DensityMatrix`] values via
//! eigendecomposition.
//!
//! The Sibson α-mutual information of an input P_X and kernel W is
//!
//! ```text
//!   I_α(X;Y) = inf_{Q_Y} D_α(P_XY ‖ P_X × Q_Y)
//!            = α/(α−1) · log Σ_y ( Σ_x P(x) W(y|x)^α )^{1/α},
//! ```
//!
//! where the second expression is the closed form used as the fast evaluator
//! ([`sibson_mi`]). The definitional infimum is kept as an independent
//! reference computed by projected gradient descent over the output simplex
//! ([`sibson_mi_oracle`]); the two must agree to 1e−8 on small alphabets.

use nalgebra::DMatrix;

use crate::channels::{ChannelKernel, ProbDist};
use crate::pauli_bloch::DensityMatrix;
use crate::{Error, Result, C64};

/// Eigenvalues at or below this threshold count as outside the support.
pub const SUPPORT_TOL: f64 = 1e-10;

fn check_unit_interval(x: f64, what: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&x) || x.is_nan() {
        return Err(Error::out_of_range(format!("{what} {x} not in [0, 1]")));
    }
    Ok(())
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_nan() || alpha <= 0.0 || alpha == 1.0 {
        return Err(Error::out_of_range(format!(
            "alpha {alpha} must be positive and ≠ 1"
        )));
    }
    Ok(())
}

/// Binary entropy h(q) = −q log q − (1−q) log(1−q), with h(0) = h(1) = 0.
pub fn binary_entropy(q: f64) -> Result<f64> {
    check_unit_interval(q, "entropy argument")?;
    Ok(xlogx(q) + xlogx(1.0 - q))
}

fn xlogx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Binary relative entropy D(x‖y) = x log(x/y) + (1−x) log((1−x)/(1−y)).
///
/// Follows the convention 0·log 0 = 0. Returns +∞ when y ∈ {0, 1} disagrees
/// with x.
pub fn binary_rel_entropy(x: f64, y: f64) -> Result<f64> {
    check_unit_interval(x, "first argument")?;
    check_unit_interval(y, "second argument")?;
    let mut d = 0.0;
    if x > 0.0 {
        if y == 0.0 {
            return Ok(f64::INFINITY);
        }
        d += x * (x / y).log2();
    }
    if x < 1.0 {
        if y == 1.0 {
            return Ok(f64::INFINITY);
        }
        d += (1.0 - x) * ((1.0 - x) / (1.0 - y)).log2();
    }
    Ok(d.max(0.0))
}

/// Shannon capacity 1 − h(q) of the binary symmetric channel.
pub fn bsc_shannon_capacity(q: f64) -> Result<f64> {
    Ok(1.0 - binary_entropy(q)?)
}

/// Classical Rényi divergence D_α(p‖q) = (1/(α−1)) log Σ pᵅ q^(1−α).
///
/// Returns +∞ when the support of p is not contained in the support of q.
pub fn renyi_div(p: &ProbDist, q: &ProbDist, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch(p.len(), q.len()));
    }
    let mut sum = 0.0;
    for (&pi, &qi) in p.probs().iter().zip(q.probs()) {
        if pi == 0.0 {
            continue;
        }
        if qi == 0.0 {
            return Ok(f64::INFINITY);
        }
        sum += pi.powf(alpha) * qi.powf(1.0 - alpha);
    }
    Ok(sum.log2() / (alpha - 1.0))
}

/// Kullback–Leibler divergence in bits; +∞ on support violation.
pub fn kl_div(p: &ProbDist, q: &ProbDist) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch(p.len(), q.len()));
    }
    let mut sum = 0.0;
    for (&pi, &qi) in p.probs().iter().zip(q.probs()) {
        if pi == 0.0 {
            continue;
        }
        if qi == 0.0 {
            return Ok(f64::INFINITY);
        }
        sum += pi * (pi / qi).log2();
    }
    Ok(sum.max(0.0))
}

/// Joint distribution over a product alphabet X × Y.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDist {
    entries: Vec<Vec<f64>>,
}

impl JointDist {
    pub fn new(entries: Vec<Vec<f64>>) -> Result<Self> {
        if entries.is_empty() || entries[0].is_empty() {
            return Err(Error::Empty("joint distribution"));
        }
        let ny = entries[0].len();
        let mut sum = 0.0;
        for row in &entries {
            if row.len() != ny {
                return Err(Error::DimensionMismatch(row.len(), ny));
            }
            for (idx, &v) in row.iter().enumerate() {
                if v < -1e-14 {
                    return Err(Error::NegativeProbability { idx, value: v });
                }
                sum += v.max(0.0);
            }
        }
        if (sum - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized(sum));
        }
        Ok(Self { entries })
    }

    /// P(x, y) = P(x) W(y|x).
    pub fn from_input_and_kernel(px: &ProbDist, w: &ChannelKernel) -> Result<Self> {
        if px.len() != w.input_size() {
            return Err(Error::DimensionMismatch(px.len(), w.input_size()));
        }
        let entries = px
            .probs()
            .iter()
            .enumerate()
            .map(|(x, &p)| w.row(x).iter().map(|&wyx| p * wyx).collect())
            .collect();
        Ok(Self { entries })
    }

    pub fn marginal_x(&self) -> ProbDist {
        ProbDist::new(self.entries.iter().map(|row| row.iter().sum()).collect())
            .expect("marginal of a joint distribution")
    }

    pub fn marginal_y(&self) -> ProbDist {
        let ny = self.entries[0].len();
        let mut out = vec![0.0; ny];
        for row in &self.entries {
            for (y, &v) in row.iter().enumerate() {
                out[y] += v;
            }
        }
        ProbDist::new(out).expect("marginal of a joint distribution")
    }

    /// Mutual information I(X;Y) = D(P_XY ‖ P_X P_Y) in bits.
    pub fn mutual_information(&self) -> f64 {
        let px = self.marginal_x();
        let py = self.marginal_y();
        let mut sum = 0.0;
        for (x, row) in self.entries.iter().enumerate() {
            for (y, &v) in row.iter().enumerate() {
                if v > 0.0 {
                    sum += v * (v / (px.probs()[x] * py.probs()[y])).log2();
                }
            }
        }
        sum.max(0.0)
    }
}

/// Per-output weights c_y = Σ_x P(x) W(y|x)^α of the Sibson objective.
fn sibson_weights(px: &ProbDist, w: &ChannelKernel, alpha: f64) -> Result<Vec<f64>> {
    if px.len() != w.input_size() {
        return Err(Error::DimensionMismatch(px.len(), w.input_size()));
    }
    let ny = w.output_size();
    let mut c = vec![0.0; ny];
    for (x, &p) in px.probs().iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        for (y, &wyx) in w.row(x).iter().enumerate() {
            if wyx > 0.0 {
                c[y] += p * wyx.powf(alpha);
            }
        }
    }
    Ok(c)
}

/// Sibson α-mutual information by the closed form
/// (α/(α−1)) log Σ_y (Σ_x P(x) W(y|x)^α)^{1/α}.
pub fn sibson_mi(px: &ProbDist, w: &ChannelKernel, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let c = sibson_weights(px, w, alpha)?;
    let s: f64 = c
        .iter()
        .map(|&cy| if cy > 0.0 { cy.powf(1.0 / alpha) } else { 0.0 })
        .sum();
    Ok((alpha / (alpha - 1.0) * s.log2()).max(0.0))
}

/// Definitional Sibson α-mutual information: inf over Q_Y of
/// D_α(P_XY ‖ P_X Q_Y), computed by projected gradient descent over the
/// output simplex. Reference oracle for [`sibson_mi`]; α > 1, |Y| ≤ 16.
pub fn sibson_mi_oracle(px: &ProbDist, w: &ChannelKernel, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if alpha < 1.0 {
        return Err(Error::out_of_range(format!(
            "oracle requires alpha > 1, got {alpha}"
        )));
    }
    if w.output_size() > 16 {
        return Err(Error::AlphabetTooLarge(w.output_size(), "sibson_mi_oracle"));
    }
    let c = sibson_weights(px, w, alpha)?;
    // The objective g(Q) = Σ_y c_y Q_y^{1−α} is convex on the simplex and
    // blows up as any supported Q_y → 0, so the minimum is interior to the
    // face supported on {y : c_y > 0} and plain projected gradient descent
    // with backtracking converges to it.
    let support: Vec<usize> = (0..c.len()).filter(|&y| c[y] > 0.0).collect();
    if support.is_empty() {
        return Err(Error::Empty("Sibson objective support"));
    }
    let cs: Vec<f64> = support.iter().map(|&y| c[y]).collect();
    let k = cs.len();
    let g = |q: &[f64]| -> f64 {
        let mut acc = 0.0;
        for (&cy, &qy) in cs.iter().zip(q) {
            if qy <= 0.0 {
                return f64::INFINITY;
            }
            acc += cy * qy.powf(1.0 - alpha);
        }
        acc
    };
    let mut q = vec![1.0 / k as f64; k];
    let mut gq = g(&q);
    let mut step = 0.1;
    let mut stall = 0;
    for _ in 0..50_000 {
        let grad: Vec<f64> = cs
            .iter()
            .zip(&q)
            .map(|(&cy, &qy)| (1.0 - alpha) * cy * qy.powf(-alpha))
            .collect();
        let mut accepted = false;
        for _ in 0..60 {
            let mut trial: Vec<f64> = q
                .iter()
                .zip(&grad)
                .map(|(&qy, &gy)| qy - step * gy)
                .collect();
            project_to_simplex(&mut trial);
            let gt = g(&trial);
            if gt <= gq {
                let rel = (gq - gt) / gq.max(f64::MIN_POSITIVE);
                q = trial;
                gq = gt;
                step *= 1.3;
                accepted = true;
                if rel < 1e-15 {
                    stall += 1;
                } else {
                    stall = 0;
                }
                break;
            }
            step *= 0.5;
        }
        if !accepted || stall > 8 {
            break;
        }
    }
    Ok((gq.log2() / (alpha - 1.0)).max(0.0))
}

/// Euclidean projection onto the probability simplex.
pub(crate) fn project_to_simplex(v: &mut [f64]) {
    let mut sorted: Vec<f64> = v.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (i, &u) in sorted.iter().enumerate() {
        cumsum += u;
        let candidate = (cumsum - 1.0) / (i + 1) as f64;
        if u - candidate > 0.0 {
            theta = candidate;
        }
    }
    for x in v.iter_mut() {
        *x = (*x - theta).max(0.0);
    }
    let sum: f64 = v.iter().sum();
    if sum > 0.0 {
        for x in v.iter_mut() {
            *x /= sum;
        }
    }
}

/// Value and gradient of the Sibson closed form in the input distribution.
fn sibson_input_gradient(px: &[f64], w: &ChannelKernel, alpha: f64) -> (f64, Vec<f64>) {
    let ny = w.output_size();
    let nx = px.len();
    let mut c = vec![0.0; ny];
    for (x, &p) in px.iter().enumerate() {
        if p > 0.0 {
            for (y, &wyx) in w.row(x).iter().enumerate() {
                if wyx > 0.0 {
                    c[y] += p * wyx.powf(alpha);
                }
            }
        }
    }
    let s: f64 = c
        .iter()
        .map(|&cy| if cy > 0.0 { cy.powf(1.0 / alpha) } else { 0.0 })
        .sum();
    let value = alpha / (alpha - 1.0) * s.log2();
    let mut grad = vec![0.0; nx];
    for (x, slot) in grad.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (y, &wyx) in w.row(x).iter().enumerate() {
            if c[y] > 0.0 && wyx > 0.0 {
                acc += c[y].powf(1.0 / alpha - 1.0) * wyx.powf(alpha);
            }
        }
        *slot = acc / ((alpha - 1.0) * s * std::f64::consts::LN_2);
    }
    (value, grad)
}

/// sup over input distributions of the Sibson α-mutual information.
///
/// Multi-start projected gradient ascent (17 starts: uniform, the vertices,
/// deterministic pseudo-random fill), with an exhaustive 1e−3 grid plus local
/// refinement for binary inputs. Input alphabet at most 8.
pub fn sibson_capacity(w: &ChannelKernel, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let nx = w.input_size();
    if nx > 8 {
        return Err(Error::AlphabetTooLarge(nx, "sibson_capacity"));
    }
    let mut starts: Vec<Vec<f64>> = vec![vec![1.0 / nx as f64; nx]];
    for x in 0..nx {
        let mut v = vec![0.0; nx];
        v[x] = 1.0;
        starts.push(v);
    }
    // Deterministic splitmix-style fill up to 17 starts.
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next01 = move || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((state >> 11) as f64) / ((1u64 << 53) as f64)
    };
    while starts.len() < 17 {
        let mut v: Vec<f64> = (0..nx).map(|_| -(next01().max(1e-12)).ln()).collect();
        let sum: f64 = v.iter().sum();
        for x in &mut v {
            *x /= sum;
        }
        starts.push(v);
    }
    let mut best = 0.0f64;
    for mut p in starts {
        let mut step = 0.1;
        let (mut fp, mut grad) = sibson_input_gradient(&p, w, alpha);
        for _ in 0..20_000 {
            let mut moved = false;
            for _ in 0..60 {
                let mut trial: Vec<f64> = p
                    .iter()
                    .zip(&grad)
                    .map(|(&px, &gx)| px + step * gx)
                    .collect();
                project_to_simplex(&mut trial);
                let (ft, gt) = sibson_input_gradient(&trial, w, alpha);
                if ft >= fp {
                    let gain = ft - fp;
                    p = trial;
                    fp = ft;
                    grad = gt;
                    step *= 1.3;
                    moved = gain > 1e-15;
                    break;
                }
                step *= 0.5;
            }
            if !moved || step < 1e-14 {
                break;
            }
        }
        best = best.max(fp);
    }
    if nx == 2 {
        best = best.max(binary_grid_capacity(w, alpha));
    }
    Ok(best.max(0.0))
}

/// Exhaustive 1e−3 grid over binary inputs, refined by ternary search.
fn binary_grid_capacity(w: &ChannelKernel, alpha: f64) -> f64 {
    let eval = |t: f64| sibson_input_gradient(&[t, 1.0 - t], w, alpha).0;
    let mut best_t = 0.0;
    let mut best = f64::NEG_INFINITY;
    for i in 0..=1000 {
        let t = i as f64 / 1000.0;
        let v = eval(t);
        if v > best {
            best = v;
            best_t = t;
        }
    }
    let (mut lo, mut hi) = ((best_t - 1e-3).max(0.0), (best_t + 1e-3).min(1.0));
    for _ in 0..100 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if eval(m1) < eval(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    best.max(eval(0.5 * (lo + hi)))
}

/// Single-letterization check at blocklength two: returns
/// (sup over inputs on X² of I_α for W⊗W, 2 · sibson_capacity(W, α)).
/// The two coincide (within optimizer tolerance) for any binary-input W.
pub fn single_letter_check(w: &ChannelKernel, alpha: f64) -> Result<(f64, f64)> {
    if w.input_size() != 2 {
        return Err(Error::AlphabetTooLarge(
            w.input_size(),
            "single_letter_check (binary only)",
        ));
    }
    let two = sibson_capacity(&w.tensor(w), alpha)?;
    let one = sibson_capacity(w, alpha)?;
    Ok((two, 2.0 * one))
}

// ---------------------------------------------------------------------------
// Quantum divergences
// ---------------------------------------------------------------------------

struct Spectrum {
    values: Vec<f64>,
    vectors: DMatrix<C64>,
}

fn spectrum(m: &DMatrix<C64>) -> Spectrum {
    let eig = m.clone().symmetric_eigen();
    Spectrum {
        values: eig.eigenvalues.iter().copied().collect(),
        vectors: eig.eigenvectors,
    }
}

/// f(M) for Hermitian PSD M, applying f on the support (eigenvalues above
/// the cutoff) and 0 elsewhere.
fn matrix_function(spec: &Spectrum, f: impl Fn(f64) -> f64) -> DMatrix<C64> {
    let d = spec.values.len();
    let mut out = DMatrix::<C64>::zeros(d, d);
    for k in 0..d {
        if spec.values[k] > SUPPORT_TOL {
            let v = spec.vectors.column(k);
            out += (v * v.adjoint()).map(|z| z * f(spec.values[k]));
        }
    }
    out
}

/// Mass of ρ outside the support of the given spectrum.
fn mass_outside_support(rho: &DensityMatrix, spec: &Spectrum) -> f64 {
    let mut mass = 0.0;
    for k in 0..spec.values.len() {
        if spec.values[k] <= SUPPORT_TOL {
            let v = spec.vectors.column(k);
            mass += (v.adjoint() * rho.matrix() * v)[(0, 0)].re;
        }
    }
    mass
}

/// Sandwiched Rényi divergence
/// D̃_α(ρ‖σ) = (1/(α−1)) log Tr (σ^((1−α)/2α) ρ σ^((1−α)/2α))^α.
///
/// Support violation (eigenvalue cutoff 1e−10) returns +∞.
pub fn sandwiched_renyi(rho: &DensityMatrix, sigma: &DensityMatrix, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    let spec = spectrum(sigma.matrix());
    if mass_outside_support(rho, &spec) > SUPPORT_TOL {
        return Ok(f64::INFINITY);
    }
    let power = (1.0 - alpha) / (2.0 * alpha);
    let a = matrix_function(&spec, |x| x.powf(power));
    let sandwiched = &a * rho.matrix() * &a;
    let inner = spectrum(&sandwiched);
    let tr: f64 = inner
        .values
        .iter()
        .map(|&x| if x > 0.0 { x.powf(alpha) } else { 0.0 })
        .sum();
    Ok(tr.log2() / (alpha - 1.0))
}

/// Petz Rényi divergence D_α(ρ‖σ) = (1/(α−1)) log Tr(ρ^α σ^(1−α)).
pub fn petz_renyi(rho: &DensityMatrix, sigma: &DensityMatrix, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    let sig_spec = spectrum(sigma.matrix());
    if mass_outside_support(rho, &sig_spec) > SUPPORT_TOL {
        return Ok(f64::INFINITY);
    }
    let rho_spec = spectrum(rho.matrix());
    let rho_pow = matrix_function(&rho_spec, |x| x.powf(alpha));
    let sig_pow = matrix_function(&sig_spec, |x| x.powf(1.0 - alpha));
    let tr = (rho_pow * sig_pow).trace().re;
    Ok(tr.log2() / (alpha - 1.0))
}

/// Umegaki relative entropy D(ρ‖σ) = Tr ρ (log ρ − log σ) in bits.
pub fn umegaki_rel_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    let sig_spec = spectrum(sigma.matrix());
    if mass_outside_support(rho, &sig_spec) > SUPPORT_TOL {
        return Ok(f64::INFINITY);
    }
    let rho_spec = spectrum(rho.matrix());
    let mut sum = 0.0;
    for k in 0..rho_spec.values.len() {
        let lam = rho_spec.values[k];
        if lam > SUPPORT_TOL {
            sum += lam * lam.log2();
        }
    }
    for k in 0..sig_spec.values.len() {
        let mu = sig_spec.values[k];
        if mu > SUPPORT_TOL {
            let v = sig_spec.vectors.column(k);
            let weight = (v.adjoint() * rho.matrix() * v)[(0, 0)].re;
            sum -= weight * mu.log2();
        }
    }
    Ok(sum)
}

/// Sandwiched Rényi mutual information Ĩ_α(X:B) of the CQ state
/// Σ_x p(x)|x⟩⟨x| ⊗ ρ_x: the infimum over output states σ of
/// (1/(α−1)) log Σ_x p(x) Tr (σ^((1−α)/2α) ρ_x σ^((1−α)/2α))^α.
///
/// Numerical minimization: projected gradient with finite differences over
/// the density-matrix cone, warm-started at the Petz-form minimizer
/// (Σ_x p(x) ρ_x^α)^{1/α}. The objective is jointly convex for α ∈ (1, 2].
/// Intended for small dimension (≤ 16).
pub fn cq_sandwiched_mi(probs: &[f64], states: &[DensityMatrix], alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if alpha < 1.0 {
        return Err(Error::out_of_range(format!(
            "cq_sandwiched_mi requires alpha > 1, got {alpha}"
        )));
    }
    if probs.len() != states.len() {
        return Err(Error::DimensionMismatch(probs.len(), states.len()));
    }
    if states.is_empty() {
        return Err(Error::Empty("CQ ensemble"));
    }
    let d = states[0].dim();
    if d > 16 {
        return Err(Error::AlphabetTooLarge(d, "cq_sandwiched_mi"));
    }
    for s in states {
        if s.dim() != d {
            return Err(Error::DimensionMismatch(s.dim(), d));
        }
    }
    let power = (1.0 - alpha) / (2.0 * alpha);
    let objective = |sigma: &DMatrix<C64>| -> f64 {
        let spec = spectrum(sigma);
        let a = matrix_function(&spec, |x| x.powf(power));
        let mut tot = 0.0;
        for (&p, st) in probs.iter().zip(states) {
            if p <= 0.0 {
                continue;
            }
            // A rank-deficient σ missing part of some ρ_x support means +∞;
            // the cutoff in matrix_function would silently drop that mass.
            if mass_outside_support(st, &spec) > 1e-8 {
                return f64::INFINITY;
            }
            let inner = spectrum(&(&a * st.matrix() * &a));
            tot += p * inner
                .values
                .iter()
                .map(|&x| if x > 0.0 { x.powf(alpha) } else { 0.0 })
                .sum::<f64>();
        }
        tot
    };
    // Petz warm start, blended with the identity to stay full rank.
    let mut petz_mix = DMatrix::<C64>::zeros(d, d);
    for (&p, st) in probs.iter().zip(states) {
        if p > 0.0 {
            petz_mix += matrix_function(&spectrum(st.matrix()), |x| x.powf(alpha)).map(|z| z * p);
        }
    }
    let mut sigma = matrix_function(&spectrum(&petz_mix), |x| x.powf(1.0 / alpha));
    let tr = sigma.trace().re;
    sigma /= C64::new(tr, 0.0);
    let eye = DMatrix::<C64>::identity(d, d);
    sigma = sigma.map(|z| z * 0.99) + eye.map(|z| z * (0.01 / d as f64));

    let mut f = objective(&sigma);
    let mut step = 0.05;
    for _ in 0..400 {
        let mut grad = DMatrix::<C64>::zeros(d, d);
        let eps = 1e-6;
        for i in 0..d {
            for j in i..d {
                if i == j {
                    let mut dir = DMatrix::<C64>::zeros(d, d);
                    dir[(i, i)] = C64::new(1.0, 0.0);
                    let fr = objective(&project_density(&(&sigma + dir.map(|z| z * eps)))) - f;
                    grad[(i, i)] = C64::new(fr / eps, 0.0);
                } else {
                    let mut dre = DMatrix::<C64>::zeros(d, d);
                    dre[(i, j)] = C64::new(0.5, 0.0);
                    dre[(j, i)] = C64::new(0.5, 0.0);
                    let fr = objective(&project_density(&(&sigma + dre.map(|z| z * eps)))) - f;
                    let mut dim_ = DMatrix::<C64>::zeros(d, d);
                    dim_[(i, j)] = C64::new(0.0, 0.5);
                    dim_[(j, i)] = C64::new(0.0, -0.5);
                    let fi = objective(&project_density(&(&sigma + dim_.map(|z| z * eps)))) - f;
                    grad[(i, j)] = C64::new(fr / eps, fi / eps);
                    grad[(j, i)] = grad[(i, j)].conj();
                }
            }
        }
        let mut improved = false;
        for _ in 0..40 {
            let trial = project_density(&(&sigma - grad.map(|z| z * step)));
            let ft = objective(&trial);
            if ft < f {
                improved = f - ft > 1e-14 * f.abs().max(1e-30);
                sigma = trial;
                f = ft;
                step *= 1.5;
                break;
            }
            step *= 0.5;
        }
        if !improved || step < 1e-13 {
            break;
        }
    }
    Ok((f.log2() / (alpha - 1.0)).max(0.0))
}

/// Nearest density matrix: Hermitize, then project the spectrum onto the
/// probability simplex.
fn project_density(m: &DMatrix<C64>) -> DMatrix<C64> {
    let d = m.nrows();
    let herm = (m + m.adjoint()).map(|z| z * 0.5);
    let eig = herm.symmetric_eigen();
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    project_to_simplex(&mut vals);
    let mut out = DMatrix::<C64>::zeros(d, d);
    for (k, &val) in vals.iter().enumerate() {
        if val > 0.0 {
            let v = eig.eigenvectors.column(k);
            out += (v * v.adjoint()).map(|z| z * val);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;
    use nalgebra::DVector;
    use rand::Rng;

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!((binary_entropy(0.5).unwrap() - 1.0).abs() < 1e-15);
        assert!((binary_entropy(0.25).unwrap() - 0.8112781244591328).abs() < 1e-12);
        for i in 1..100 {
            let q = i as f64 / 100.0;
            assert!((binary_entropy(q).unwrap() - binary_entropy(1.0 - q).unwrap()).abs() < 1e-14);
        }
        assert!(binary_entropy(1.2).is_err());
    }

    #[test]
    fn binary_rel_entropy_values() {
        assert_eq!(binary_rel_entropy(0.75, 0.75).unwrap(), 0.0);
        assert!((binary_rel_entropy(0.0, 0.75).unwrap() - 2.0).abs() < 1e-14);
        assert!((binary_rel_entropy(0.15051, 0.75).unwrap() - 1.1504).abs() < 1e-3);
        assert!(binary_rel_entropy(0.3, 0.0).unwrap().is_infinite());
        assert!(binary_rel_entropy(0.3, 1.0).unwrap().is_infinite());
        assert_eq!(binary_rel_entropy(0.0, 0.0).unwrap(), 0.0);
        assert_eq!(binary_rel_entropy(1.0, 1.0).unwrap(), 0.0);
        let mut rng = seeded(30);
        for _ in 0..100 {
            let x: f64 = rng.random();
            let y: f64 = 0.01 + 0.98 * rng.random::<f64>();
            let d = binary_rel_entropy(x, y).unwrap();
            assert!(d >= 0.0);
            if (x - y).abs() > 1e-3 {
                assert!(d > 0.0);
            }
        }
    }

    #[test]
    fn renyi_div_basics() {
        let p = ProbDist::new(vec![1.0, 0.0]).unwrap();
        let q = ProbDist::uniform(2);
        assert!((renyi_div(&p, &q, 2.0).unwrap() - 1.0).abs() < 1e-14);
        assert!(renyi_div(&q, &q, 1.7).unwrap().abs() < 1e-14);
        assert!(renyi_div(&q, &p, 2.0).unwrap().is_infinite());
        assert!(renyi_div(&p, &q, 1.0).is_err());
        assert!(renyi_div(&p, &q, 0.0).is_err());
    }

    #[test]
    fn renyi_div_monotone_in_alpha_and_continuous_at_one() {
        let mut rng = seeded(31);
        for _ in 0..20 {
            let p = ProbDist::random(4, &mut rng);
            let q = ProbDist::random(4, &mut rng);
            let alphas = [1.2, 1.4, 1.6, 1.8, 2.0];
            let vals: Vec<f64> = alphas
                .iter()
                .map(|&a| renyi_div(&p, &q, a).unwrap())
                .collect();
            for w in vals.windows(2) {
                assert!(w[1] >= w[0] - 1e-12);
            }
            let kl = kl_div(&p, &q).unwrap();
            assert!((renyi_div(&p, &q, 1.001).unwrap() - kl).abs() < 1e-2);
            assert!((renyi_div(&p, &q, 0.999).unwrap() - kl).abs() < 1e-2);
        }
    }

    #[test]
    fn renyi_div_data_processing() {
        let mut rng = seeded(32);
        for _ in 0..20 {
            let p = ProbDist::random(4, &mut rng);
            let q = ProbDist::random(4, &mut rng);
            let t = ChannelKernel::random(4, 3, &mut rng);
            let a = 1.0 + rng.random::<f64>();
            let before = renyi_div(&p, &q, a).unwrap();
            let after = renyi_div(&t.apply(&p).unwrap(), &t.apply(&q).unwrap(), a).unwrap();
            assert!(after <= before + 1e-10);
        }
    }

    #[test]
    fn sibson_identity_and_constant_kernels() {
        let w = ChannelKernel::identity(4);
        let v = sibson_mi(&ProbDist::uniform(4), &w, 1.5).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
        let rows = vec![vec![0.3, 0.7]; 3];
        let w = ChannelKernel::new(rows).unwrap();
        assert!(sibson_mi(&ProbDist::uniform(3), &w, 1.5).unwrap().abs() < 1e-12);
    }

    #[test]
    fn sibson_bsc_alpha_two() {
        let w = ChannelKernel::bsc(0.25).unwrap();
        let v = sibson_mi(&ProbDist::uniform(2), &w, 2.0).unwrap();
        let expect = 1.0 + (0.25f64.powi(2) + 0.75f64.powi(2)).log2();
        assert!((v - 0.32193).abs() < 1e-4);
        assert!((v - expect).abs() < 1e-12);
    }

    #[test]
    fn sibson_closed_form_matches_oracle() {
        let mut rng = seeded(33);
        let mut worst = 0.0f64;
        for _ in 0..50 {
            let nx = rng.random_range(2..=4);
            let ny = rng.random_range(2..=4);
            let px = ProbDist::random(nx, &mut rng);
            let w = ChannelKernel::random(nx, ny, &mut rng);
            let a = 1.05 + 0.9 * rng.random::<f64>();
            let closed = sibson_mi(&px, &w, a).unwrap();
            let oracle = sibson_mi_oracle(&px, &w, a).unwrap();
            worst = worst.max((closed - oracle).abs());
        }
        assert!(worst <= 1e-8, "worst disagreement {worst:.3e}");
    }

    #[test]
    fn sibson_alpha_to_one_is_mutual_information() {
        let mut rng = seeded(34);
        for _ in 0..10 {
            let px = ProbDist::random(3, &mut rng);
            let w = ChannelKernel::random(3, 3, &mut rng);
            let mi = JointDist::from_input_and_kernel(&px, &w)
                .unwrap()
                .mutual_information();
            let si = sibson_mi(&px, &w, 1.001).unwrap();
            assert!((si - mi).abs() <= 1e-3, "diff {}", (si - mi).abs());
        }
    }

    #[test]
    fn capacity_of_bsc() {
        let w = ChannelKernel::bsc(0.5).unwrap();
        assert!(sibson_capacity(&w, 1.5).unwrap().abs() < 1e-9);
        // alpha -> 1+ approaches 1 - h(q)
        let w = ChannelKernel::bsc(0.25).unwrap();
        let cap = sibson_capacity(&w, 1.0002).unwrap();
        let shannon = bsc_shannon_capacity(0.25).unwrap();
        assert!(
            (cap - shannon).abs() <= 1e-4,
            "gap {}",
            (cap - shannon).abs()
        );
        // attained at the uniform input
        let at_uniform = sibson_mi(&ProbDist::uniform(2), &w, 1.5).unwrap();
        let cap = sibson_capacity(&w, 1.5).unwrap();
        assert!((cap - at_uniform).abs() < 1e-9);
        // matches a 41-point grid over P_X
        let grid_best = (0..=40)
            .map(|i| {
                let t = i as f64 / 40.0;
                let p = ProbDist::new(vec![t, 1.0 - t]).unwrap();
                sibson_mi(&p, &w, 1.5).unwrap()
            })
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(cap >= grid_best - 1e-12);
    }

    #[test]
    fn capacity_uniform_is_local_max_for_bsc() {
        let w = ChannelKernel::bsc(0.3).unwrap();
        let cap = sibson_capacity(&w, 1.5).unwrap();
        for delta in [-0.05, 0.05] {
            let p = ProbDist::new(vec![0.5 + delta, 0.5 - delta]).unwrap();
            let v = sibson_mi(&p, &w, 1.5).unwrap();
            assert!(v <= cap + 1e-9);
        }
    }

    #[test]
    fn single_letterization_bsc() {
        for &alpha in &[1.25, 1.5] {
            let w = ChannelKernel::bsc(0.25).unwrap();
            let (two, twice_one) = single_letter_check(&w, alpha).unwrap();
            assert!(
                (two - twice_one).abs() <= 1e-3,
                "alpha {alpha}: {two} vs {twice_one}"
            );
        }
        let (a, b) = single_letter_check(&ChannelKernel::bsc(0.0).unwrap(), 1.5).unwrap();
        assert!((a - 2.0).abs() < 1e-9 && (b - 2.0).abs() < 1e-9);
        let (a, b) = single_letter_check(&ChannelKernel::bsc(0.5).unwrap(), 1.5).unwrap();
        assert!(a.abs() < 1e-9 && b.abs() < 1e-9);
    }

    fn diag_state(probs: &[f64]) -> DensityMatrix {
        let d = probs.len();
        let mut m = DMatrix::<C64>::zeros(d, d);
        for (i, &p) in probs.iter().enumerate() {
            m[(i, i)] = C64::new(p, 0.0);
        }
        DensityMatrix::new(m).unwrap()
    }

    #[test]
    fn sandwiched_reduces_to_classical_on_commuting_pairs() {
        let p = [0.5, 0.3, 0.2, 0.0];
        let q = [0.25, 0.25, 0.25, 0.25];
        let rho = diag_state(&p);
        let sigma = diag_state(&q);
        for &alpha in &[1.3, 1.7, 2.0] {
            let quantum = sandwiched_renyi(&rho, &sigma, alpha).unwrap();
            let classical = renyi_div(
                &ProbDist::new(p.to_vec()).unwrap(),
                &ProbDist::new(q.to_vec()).unwrap(),
                alpha,
            )
            .unwrap();
            assert!((quantum - classical).abs() <= 1e-10);
            let petz = petz_renyi(&rho, &sigma, alpha).unwrap();
            assert!((petz - classical).abs() <= 1e-10);
        }
    }

    #[test]
    fn sandwiched_qubit_against_mixed() {
        let psi = DVector::from_column_slice(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        let rho = DensityMatrix::from_pure(&psi).unwrap();
        let sigma = DensityMatrix::maximally_mixed(2);
        assert!((sandwiched_renyi(&rho, &sigma, 2.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(sandwiched_renyi(&rho, &rho, 2.0).unwrap().abs() < 1e-10);
    }

    #[test]
    fn sandwiched_le_petz_above_one() {
        let mut rng = seeded(35);
        for _ in 0..20 {
            let rho = DensityMatrix::random(3, &mut rng);
            let sigma = DensityMatrix::random(3, &mut rng);
            let a = 1.0 + rng.random::<f64>();
            let s = sandwiched_renyi(&rho, &sigma, a).unwrap();
            let p = petz_renyi(&rho, &sigma, a).unwrap();
            assert!(s <= p + 1e-9, "sandwiched {s} > petz {p}");
            assert!(s >= -1e-10);
        }
    }

    #[test]
    fn support_violation_gives_infinity() {
        let rho = DensityMatrix::maximally_mixed(2);
        let sigma = diag_state(&[1.0, 0.0]);
        assert!(sandwiched_renyi(&rho, &sigma, 1.5).unwrap().is_infinite());
        assert!(petz_renyi(&rho, &sigma, 1.5).unwrap().is_infinite());
        assert!(umegaki_rel_entropy(&rho, &sigma).unwrap().is_infinite());
    }

    #[test]
    fn umegaki_matches_classical_kl_and_renyi_limit() {
        let p = [0.5, 0.3, 0.2];
        let q = [0.2, 0.5, 0.3];
        let rho = diag_state(&p);
        let sigma = diag_state(&q);
        let kl = kl_div(
            &ProbDist::new(p.to_vec()).unwrap(),
            &ProbDist::new(q.to_vec()).unwrap(),
        )
        .unwrap();
        assert!((umegaki_rel_entropy(&rho, &sigma).unwrap() - kl).abs() < 1e-12);
        let near_one = sandwiched_renyi(&rho, &sigma, 1.001).unwrap();
        assert!((near_one - kl).abs() < 2e-3);
    }

    #[test]
    fn cq_sandwiched_mi_matches_classical_sibson() {
        // Commuting ensemble: kernel rows as diagonal states.
        let w = ChannelKernel::bsc(0.25).unwrap().tensor_power(2);
        let px = ProbDist::uniform(4);
        let states: Vec<DensityMatrix> = (0..4).map(|x| diag_state(w.row(x))).collect();
        for &alpha in &[1.3, 1.5] {
            let quantum = cq_sandwiched_mi(px.probs(), &states, alpha).unwrap();
            let classical = sibson_mi(&px, &w, alpha).unwrap();
            assert!(
                (quantum - classical).abs() <= 1e-6,
                "alpha {alpha}: {quantum} vs {classical}"
            );
        }
    }
}

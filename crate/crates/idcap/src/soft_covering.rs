//! Random-codebook soft covering.
//!
//! Drawing M codewords iid from P_X and averaging the channel outputs
//! approximates the true output distribution; the expected total-variation
//! error is controlled by the Sibson α-mutual information:
//!
//! ```text
//!   E_C ‖P_Y^C − W(P_X)‖_TV ≤ 2^( 2/α − 2 + ((α−1)/α)(I_α − log M) ),   α ∈ (1,2).
//! ```
//!
//! [`covering_rhs`] evaluates that right-hand side, [`sufficient_m`] inverts
//! it for a target ε, and [`monte_carlo_covering`] measures the left-hand
//! side empirically over seeded codebooks. The same mechanism with the
//! channel replaced by an n-qubit depolarizing channel and the codebook drawn
//! from a state's spectrum yields low-rank approximations of channel outputs
//! ([`low_rank_cover`]).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::{ChannelKernel, ProbDist};
use crate::info_measures::sibson_capacity;
use crate::pauli_bloch::{trace_distance, DensityMatrix};
use crate::rng::stream;
use crate::{channels, Error, Result};

/// A sampled codebook over a finite alphabet, tagged with its seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    codewords: Vec<usize>,
    alphabet_size: usize,
    seed: u64,
}

impl Codebook {
    pub fn codewords(&self) -> &[usize] {
        &self.codewords
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn size(&self) -> usize {
        self.codewords.len()
    }
}

/// Empirical distribution of M samples: counts over the alphabet with
/// denominators in {0, …, M}/M.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MType {
    counts: Vec<u64>,
    m: u64,
}

impl MType {
    pub fn new(counts: Vec<u64>, m: u64) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total != m || m == 0 {
            return Err(Error::out_of_range(format!(
                "M-type counts sum {total}, expected {m} > 0"
            )));
        }
        Ok(Self { counts, m })
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn to_dist(&self) -> ProbDist {
        ProbDist::new(
            self.counts
                .iter()
                .map(|&c| c as f64 / self.m as f64)
                .collect(),
        )
        .expect("M-type counts normalize")
    }
}

/// Draws m iid codewords from px. Deterministic given the seed.
pub fn sample_codebook(px: &ProbDist, m: usize, seed: u64) -> Result<Codebook> {
    if m == 0 {
        return Err(Error::Empty("codebook"));
    }
    let mut rng = stream(seed, 0);
    let codewords = draw_iid(px, m, &mut rng);
    Ok(Codebook {
        codewords,
        alphabet_size: px.len(),
        seed,
    })
}

fn draw_iid<R: rand::Rng>(px: &ProbDist, m: usize, rng: &mut R) -> Vec<usize> {
    // Inverse-CDF sampling; alphabets here are small (≤ a few thousand).
    let mut cdf = Vec::with_capacity(px.len());
    let mut acc = 0.0;
    for &p in px.probs() {
        acc += p;
        cdf.push(acc);
    }
    (0..m)
        .map(|_| {
            let u: f64 = rng.random();
            cdf.partition_point(|&c| c < u).min(px.len() - 1)
        })
        .collect()
}

/// Empirical type of a codebook.
pub fn empirical_type(cb: &Codebook) -> MType {
    let mut counts = vec![0u64; cb.alphabet_size];
    for &x in &cb.codewords {
        counts[x] += 1;
    }
    MType {
        counts,
        m: cb.codewords.len() as u64,
    }
}

/// Codebook-induced output distribution (1/M) Σ_m W(·|x(m)).
///
/// Identical to pushing the empirical type through W.
pub fn induced_output(cb: &Codebook, w: &ChannelKernel) -> Result<ProbDist> {
    if cb.alphabet_size != w.input_size() {
        return Err(Error::DimensionMismatch(cb.alphabet_size, w.input_size()));
    }
    let mut out = vec![0.0; w.output_size()];
    for &x in &cb.codewords {
        for (y, &wyx) in w.row(x).iter().enumerate() {
            out[y] += wyx;
        }
    }
    let m = cb.codewords.len() as f64;
    for v in &mut out {
        *v /= m;
    }
    ProbDist::new(out)
}

/// The soft-covering expectation bound 2^(2/α − 2 + ((α−1)/α)(I_α − log M)).
pub fn covering_rhs(alpha: f64, i_alpha: f64, m: u64) -> Result<f64> {
    if m == 0 {
        return Err(Error::Empty("codebook"));
    }
    covering_rhs_log2m(alpha, i_alpha, (m as f64).log2())
}

/// Same bound with log₂ M supplied directly (for sizes beyond u64).
pub fn covering_rhs_log2m(alpha: f64, i_alpha: f64, log2_m: f64) -> Result<f64> {
    check_soft_alpha(alpha)?;
    let exponent = 2.0 / alpha - 2.0 + (alpha - 1.0) / alpha * (i_alpha - log2_m);
    Ok(exponent.exp2())
}

fn check_soft_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 1.0 && alpha <= 2.0) {
        return Err(Error::out_of_range(format!("alpha {alpha} not in (1, 2]")));
    }
    Ok(())
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::out_of_range(format!("epsilon {eps} not in (0, 1)")));
    }
    Ok(())
}

/// log₂ of the sufficient codebook size
/// M = ⌈2^(sup I_α + (α/(α−1))(2/α − 2 − log ε))⌉.
///
/// Exact (accounts for the ceiling) whenever the size fits in 63 bits; above
/// that the ceiling correction is below f64 resolution anyway.
pub fn sufficient_m_log2(alpha: f64, eps: f64, sup_i_alpha: f64) -> Result<f64> {
    check_soft_alpha(alpha)?;
    check_eps(eps)?;
    let x = sup_i_alpha + alpha / (alpha - 1.0) * (2.0 / alpha - 2.0 - eps.log2());
    if x < 63.0 {
        Ok((x.exp2().ceil().max(1.0)).log2())
    } else {
        Ok(x)
    }
}

/// Smallest codebook size M with covering_rhs(α, sup I_α, M) ≤ ε.
pub fn sufficient_m(alpha: f64, eps: f64, sup_i_alpha: f64) -> Result<u64> {
    check_soft_alpha(alpha)?;
    check_eps(eps)?;
    let x = sup_i_alpha + alpha / (alpha - 1.0) * (2.0 / alpha - 2.0 - eps.log2());
    if x >= 63.0 {
        return Err(Error::CodebookTooLarge(x));
    }
    Ok(x.exp2().ceil().max(1.0) as u64)
}

/// log₂ of the count bound |P_M(X)| ≤ |X|^M on M-types.
pub fn mtype_count_bound(alphabet_size: usize, m: u64) -> f64 {
    m as f64 * (alphabet_size as f64).log2()
}

/// Monte Carlo estimate of the expected covering error.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonteCarloResult {
    pub seed: u64,
    pub m: u64,
    pub trials: usize,
    pub mean_tv: f64,
    pub std_err: f64,
}

/// Empirical mean TV between the induced outputs of `trials` independent
/// codebooks of size m and the true output W(P_X).
///
/// Trial t draws from stream t of the seed, so the result does not depend on
/// evaluation order; trials run in parallel.
pub fn monte_carlo_covering(
    px: &ProbDist,
    w: &ChannelKernel,
    m: usize,
    trials: usize,
    seed: u64,
) -> Result<MonteCarloResult> {
    if trials < 30 {
        return Err(Error::out_of_range(format!(
            "need at least 30 trials, got {trials}"
        )));
    }
    if m == 0 {
        return Err(Error::Empty("codebook"));
    }
    if px.len() != w.input_size() {
        return Err(Error::DimensionMismatch(px.len(), w.input_size()));
    }
    let target = w.apply(px)?;
    let tvs: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream(seed, t as u64);
            let codewords = draw_iid(px, m, &mut rng);
            let cb = Codebook {
                codewords,
                alphabet_size: px.len(),
                seed,
            };
            let induced = induced_output(&cb, w).expect("alphabet sizes already checked");
            induced.tv_distance(&target).expect("output sizes match")
        })
        .collect();
    let mean = tvs.iter().sum::<f64>() / trials as f64;
    let var = tvs.iter().map(|&x| (x - mean) * (x - mean)).sum::<f64>() / (trials as f64 - 1.0);
    Ok(MonteCarloResult {
        seed,
        m: m as u64,
        trials,
        mean_tv: mean,
        std_err: (var / trials as f64).sqrt(),
    })
}

/// log₂ log₂ of the finite-n simultaneous identification message bound: the
/// number of messages is at most 2^(n·M) with
/// M = sufficient_m(α, ε, n · sup_P I_α(P, BSC_{p/2})), so this returns
/// log₂ n + log₂ M.
///
/// Requires ε ∈ (0, (1−λ₁−λ₂)/2). Divided by n, the value approaches the
/// Sibson capacity of BSC_{p/2} as n grows.
pub fn finite_n_sim_bound(
    n: u32,
    p: f64,
    alpha: f64,
    eps: f64,
    lambda1: f64,
    lambda2: f64,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::Empty("blocklength"));
    }
    check_lambdas(lambda1, lambda2)?;
    let eps_max = (1.0 - lambda1 - lambda2) / 2.0;
    if !(eps > 0.0 && eps < eps_max) {
        return Err(Error::out_of_range(format!(
            "epsilon {eps} not in (0, {eps_max})"
        )));
    }
    let cap = sibson_capacity(&ChannelKernel::bsc(p / 2.0)?, alpha)?;
    let log2_m = sufficient_m_log2(alpha, eps, n as f64 * cap)?;
    Ok((n as f64).log2() + log2_m)
}

/// Default ε for [`finite_n_sim_bound`]: 0.9 of the admissible supremum.
pub fn default_sim_eps(lambda1: f64, lambda2: f64) -> f64 {
    0.9 * (1.0 - lambda1 - lambda2) / 2.0
}

pub(crate) fn check_lambdas(lambda1: f64, lambda2: f64) -> Result<()> {
    if !(lambda1 >= 0.0 && lambda2 >= 0.0 && lambda1 + lambda2 < 1.0) {
        return Err(Error::out_of_range(format!(
            "error probabilities ({lambda1}, {lambda2}) must be nonnegative with sum < 1"
        )));
    }
    Ok(())
}

/// Best sampled M-type cover of a depolarizing output.
#[derive(Debug, Clone)]
pub struct LowRankCover {
    /// Empirical type of the best codebook over the eigenbasis of ρ.
    pub mtype: MType,
    /// ½‖N(ρ) − N(σ_q)‖₁ for the returned type.
    pub achieved_td: f64,
}

/// Searches over sampled M-types q from the spectrum of ρ for the mixture
/// σ_q of eigenvectors minimizing the output trace distance
/// ½‖N_p^⊗n(ρ) − N_p^⊗n(σ_q)‖₁.
///
/// Draws `draws` codebooks of size m (seeded streams) and keeps the best,
/// stopping early once the distance reaches `eps`. Dimension at most 16.
pub fn low_rank_cover(
    rho: &DensityMatrix,
    p: f64,
    m: usize,
    eps: f64,
    draws: usize,
    seed: u64,
) -> Result<LowRankCover> {
    if rho.dim() > 16 {
        return Err(Error::AlphabetTooLarge(rho.dim(), "low_rank_cover"));
    }
    if m == 0 || draws == 0 {
        return Err(Error::Empty("codebook"));
    }
    let d = rho.dim();
    let (vals, vecs) = rho.eigen_decomposition();
    let spectrum = ProbDist::new(vals.clone())?;
    let eigenstates: Vec<DensityMatrix> = vecs
        .iter()
        .map(|v| DensityMatrix::from_pure(v).expect("eigenvector is a unit vector"))
        .collect();
    let outputs: Vec<DensityMatrix> = eigenstates
        .iter()
        .map(|s| channels::depolarize(s, p))
        .collect::<Result<_>>()?;
    let target = channels::depolarize(rho, p)?;

    let mut best: Option<LowRankCover> = None;
    for t in 0..draws {
        let mut rng = stream(seed, t as u64);
        let samples = draw_iid(&spectrum, m, &mut rng);
        let mut counts = vec![0u64; d];
        for &x in &samples {
            counts[x] += 1;
        }
        let mut mix = nalgebra::DMatrix::<crate::C64>::zeros(d, d);
        for (x, &c) in counts.iter().enumerate() {
            if c > 0 {
                mix += outputs[x].matrix().map(|z| z * (c as f64 / m as f64));
            }
        }
        let td = trace_distance(&target, &DensityMatrix::new_unchecked(mix))?;
        let better = best.as_ref().is_none_or(|b| td < b.achieved_td);
        if better {
            best = Some(LowRankCover {
                mtype: MType {
                    counts,
                    m: m as u64,
                },
                achieved_td: td,
            });
            if td <= eps {
                break;
            }
        }
    }
    Ok(best.expect("draws ≥ 1"))
}

/// One soft-covering experiment record (JSON-serializable).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SoftCoverRecord {
    pub seed: u64,
    pub n: u32,
    pub p: f64,
    pub alpha: f64,
    pub m: u64,
    pub trials: usize,
    pub mean_tv: f64,
    pub std_err: f64,
    pub bound_rhs: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info_measures::{bsc_shannon_capacity, sibson_mi};
    use crate::rng::seeded;
    use rand::Rng;

    #[test]
    fn point_mass_codebook_is_constant() {
        let px = ProbDist::point_mass(4, 2);
        let cb = sample_codebook(&px, 100, 9).unwrap();
        assert!(cb.codewords().iter().all(|&x| x == 2));
        // single-codeword induced output is the corresponding row
        let w = ChannelKernel::random(4, 3, &mut seeded(40));
        let single = sample_codebook(&px, 1, 9).unwrap();
        let out = induced_output(&single, &w).unwrap();
        for (a, b) in out.probs().iter().zip(w.row(2)) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn codebook_is_deterministic_in_seed() {
        let px = ProbDist::new(vec![0.2, 0.5, 0.3]).unwrap();
        let a = sample_codebook(&px, 1000, 123).unwrap();
        let b = sample_codebook(&px, 1000, 123).unwrap();
        let c = sample_codebook(&px, 1000, 124).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn empirical_type_converges_to_source() {
        let px = ProbDist::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let cb = sample_codebook(&px, 100_000, 7).unwrap();
        let tv = empirical_type(&cb).to_dist().tv_distance(&px).unwrap();
        assert!(tv <= 0.02, "LLN violated: tv = {tv}");
    }

    #[test]
    fn induced_output_equals_type_pushforward() {
        let mut rng = seeded(41);
        for _ in 0..10 {
            let px = ProbDist::random(5, &mut rng);
            let w = ChannelKernel::random(5, 4, &mut rng);
            let cb = sample_codebook(&px, 64, rng.random()).unwrap();
            let direct = induced_output(&cb, &w).unwrap();
            let via_type = w.apply(&empirical_type(&cb).to_dist()).unwrap();
            assert!(direct.tv_distance(&via_type).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn uniform_codebook_through_symmetric_kernel() {
        let cb = Codebook {
            codewords: vec![0, 1, 0, 1],
            alphabet_size: 2,
            seed: 0,
        };
        let w = ChannelKernel::bsc(0.3).unwrap();
        let out = induced_output(&cb, &w).unwrap();
        assert!(out.tv_distance(&ProbDist::uniform(2)).unwrap() < 1e-15);
    }

    #[test]
    fn covering_rhs_values() {
        // log M = I: the mutual-information term cancels; α → 2 gives 1/2.
        let v = covering_rhs(1.999999, 3.0, 8).unwrap();
        assert!((v - 0.5).abs() < 1e-5);
        // doubling M scales by 2^{-(α-1)/α}
        let alpha = 1.5;
        let r1 = covering_rhs(alpha, 2.0, 64).unwrap();
        let r2 = covering_rhs(alpha, 2.0, 128).unwrap();
        assert!((r2 / r1 - (-((alpha - 1.0) / alpha)).exp2()).abs() < 1e-12);
        // direct evaluation at α = 3/2, I = 1, M = 2^11:
        // exponent = 4/3 − 2 + (1/3)(1 − 11) = −4
        let v = covering_rhs(1.5, 1.0, 1 << 11).unwrap();
        assert!((v - (-4.0f64).exp2()).abs() < 1e-12);
        assert!(covering_rhs(2.5, 1.0, 4).is_err());
    }

    #[test]
    fn sufficient_m_values() {
        // ε → 1⁻ with sup I = 0, α = 4/3: exponent 4·(−1/2) = −2, so M = 1.
        assert_eq!(sufficient_m(4.0 / 3.0, 0.999999, 0.0).unwrap(), 1);
        // halving ε multiplies M by 2^{α/(α−1)} up to ceiling
        let alpha = 1.5;
        let m1 = sufficient_m(alpha, 0.1, 4.0).unwrap();
        let m2 = sufficient_m(alpha, 0.05, 4.0).unwrap();
        let factor = (alpha / (alpha - 1.0)).exp2();
        assert!((m2 as f64 / m1 as f64 - factor).abs() / factor < 2e-3);
        assert!(sufficient_m(1.5, 1.2, 1.0).is_err());
    }

    #[test]
    fn sufficient_m_satisfies_covering_rhs() {
        let mut rng = seeded(42);
        for _ in 0..50 {
            let alpha = 1.05 + 0.9 * rng.random::<f64>();
            let eps = 0.02 + 0.5 * rng.random::<f64>();
            let sup_i = 4.0 * rng.random::<f64>();
            let m = sufficient_m(alpha, eps, sup_i).unwrap();
            let rhs = covering_rhs(alpha, sup_i, m).unwrap();
            assert!(rhs <= eps + 1e-12, "rhs {rhs} > eps {eps}");
        }
    }

    #[test]
    fn sufficient_m_monotone() {
        let alpha = 1.5;
        let mut prev = u64::MAX;
        for &eps in &[0.05, 0.1, 0.2, 0.4] {
            let m = sufficient_m(alpha, eps, 3.0).unwrap();
            assert!(m <= prev);
            prev = m;
        }
        let mut last = 0;
        for &i in &[0.5, 1.0, 2.0, 4.0] {
            let m = sufficient_m(alpha, 0.1, i).unwrap();
            assert!(m >= last);
            last = m;
        }
    }

    #[test]
    fn sufficient_m_log2_matches_exact_and_extends() {
        let exact = sufficient_m(1.5, 0.1, 10.0).unwrap();
        let logged = sufficient_m_log2(1.5, 0.1, 10.0).unwrap();
        assert!((logged - (exact as f64).log2()).abs() < 1e-12);
        // huge sup I: still finite in log space
        let huge = sufficient_m_log2(1.5, 0.1, 400.0).unwrap();
        assert!(huge > 400.0);
        assert!(sufficient_m(1.5, 0.1, 400.0).is_err());
    }

    #[test]
    fn mtype_count_bound_and_enumeration() {
        assert!((mtype_count_bound(2, 3) - 3.0).abs() < 1e-15);
        assert!((mtype_count_bound(1 << 4, 10) - 40.0).abs() < 1e-15);
        // stars and bars: #{M-types on 3 symbols, M = 4} = C(6,2) = 15 ≤ 3^4
        let mut count = 0u64;
        for a in 0..=4u64 {
            for _b in 0..=4 - a {
                count += 1;
            }
        }
        assert_eq!(count, 15);
        assert!((count as f64).log2() <= mtype_count_bound(3, 4));
    }

    #[test]
    fn monte_carlo_respects_bound_small_case() {
        // BSC_{0.25}^⊗4, uniform input, α = 1.5
        let n = 4;
        let w = ChannelKernel::bsc(0.25).unwrap().tensor_power(n);
        let px = ProbDist::uniform(1 << n);
        let alpha = 1.5;
        let i_alpha = sibson_mi(&px, &w, alpha).unwrap();
        let m = sufficient_m(alpha, 0.2, i_alpha).unwrap();
        let res = monte_carlo_covering(&px, &w, m as usize, 60, 5).unwrap();
        let rhs = covering_rhs(alpha, i_alpha, m).unwrap();
        assert!(
            res.mean_tv <= rhs + 3.0 * res.std_err,
            "mean {} vs rhs {} (se {})",
            res.mean_tv,
            rhs,
            res.std_err
        );
    }

    #[test]
    fn noiseless_identity_mean_is_sampling_fluctuation() {
        // Identity kernel: the induced output IS the empirical type, so the
        // mean TV is pure multinomial fluctuation, ~√(k/M) scale.
        let k = 16usize;
        let px = ProbDist::uniform(k);
        let w = ChannelKernel::identity(k);
        let res = monte_carlo_covering(&px, &w, k * 64, 60, 8).unwrap();
        assert!(
            res.mean_tv > 0.0 && res.mean_tv < 0.1,
            "observed mean {}",
            res.mean_tv
        );
    }

    #[test]
    fn monte_carlo_point_mass_is_exact() {
        let px = ProbDist::point_mass(2, 0);
        let w = ChannelKernel::bsc(0.3).unwrap();
        let res = monte_carlo_covering(&px, &w, 1, 40, 11).unwrap();
        assert_eq!(res.mean_tv, 0.0);
        assert_eq!(res.std_err, 0.0);
    }

    #[test]
    fn monte_carlo_requires_enough_trials() {
        let px = ProbDist::uniform(2);
        let w = ChannelKernel::bsc(0.3).unwrap();
        assert!(monte_carlo_covering(&px, &w, 4, 10, 0).is_err());
    }

    #[test]
    fn finite_n_sim_bound_trends() {
        // p = 0: capacity 1; per-letter value decreases toward 1.
        let vals: Vec<f64> = [20u32, 40, 80]
            .iter()
            .map(|&n| finite_n_sim_bound(n, 0.0, 1.5, 0.3, 0.1, 0.1).unwrap() / n as f64)
            .collect();
        assert!(vals[0] > vals[1] && vals[1] > vals[2]);
        assert!(vals[2] > 1.0 && vals[2] < 1.3);
        // p = 0.5: per-letter value stays above capacity − 0.2
        for &n in &[50u32, 100] {
            let v = finite_n_sim_bound(n, 0.5, 1.5, 0.3, 0.1, 0.1).unwrap() / n as f64;
            let cap = bsc_shannon_capacity(0.25).unwrap();
            assert!(v >= cap - 0.2);
        }
        // p = 1: capacity 0, value/n → 0 trend
        let v20 = finite_n_sim_bound(20, 1.0, 1.5, 0.3, 0.1, 0.1).unwrap() / 20.0;
        let v80 = finite_n_sim_bound(80, 1.0, 1.5, 0.3, 0.1, 0.1).unwrap() / 80.0;
        assert!(v80 < v20);
        // ε domain
        assert!(finite_n_sim_bound(10, 0.5, 1.5, 0.5, 0.1, 0.1).is_err());
    }

    #[test]
    fn low_rank_cover_pure_state_is_exact() {
        let mut rng = seeded(43);
        let rho = DensityMatrix::random_pure(4, &mut rng);
        let cover = low_rank_cover(&rho, 0.3, 8, 0.0, 50, 3).unwrap();
        assert!(
            cover.achieved_td <= 1e-8,
            "pure state covers itself: {}",
            cover.achieved_td
        );
        // the type concentrates on one eigenvector
        let nonzero = cover.mtype.counts().iter().filter(|&&c| c > 0).count();
        assert_eq!(nonzero, 1);
    }

    #[test]
    fn low_rank_cover_fully_depolarizing_is_exact() {
        let mut rng = seeded(44);
        let rho = DensityMatrix::random(4, &mut rng);
        let cover = low_rank_cover(&rho, 1.0, 2, 0.0, 5, 3).unwrap();
        assert!(cover.achieved_td <= 1e-10);
    }

    #[test]
    fn low_rank_cover_median_decreasing_in_m() {
        let mut rng = seeded(45);
        let rho = DensityMatrix::random(4, &mut rng);
        let median = |m: usize| -> f64 {
            let mut tds: Vec<f64> = (0..30)
                .map(|s| {
                    low_rank_cover(&rho, 0.5, m, 0.0, 20, s)
                        .unwrap()
                        .achieved_td
                })
                .collect();
            tds.sort_by(|a, b| a.partial_cmp(b).unwrap());
            0.5 * (tds[14] + tds[15])
        };
        let (m_small, m_large) = (median(4), median(32));
        assert!(
            m_large <= m_small,
            "medians: m=4 → {m_small}, m=32 → {m_large}"
        );
    }
}

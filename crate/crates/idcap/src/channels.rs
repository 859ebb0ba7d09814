//! The qubit depolarizing channel, complete product measurements, dephasing,
//! and the binary symmetric channel.
//!
//! The depolarizing channel with error probability p acts per qubit as
//! N_p(ρ) = (1−p)ρ + p·Tr(ρ)·I/2, i.e. it keeps the qubit with probability
//! 1−p and replaces it by the maximally mixed state otherwise. Measuring the
//! n-fold output in any complete product basis is equivalent to reading the
//! input's diagonal in that basis through BSC_{p/2}^⊗n; [`reduction_check`]
//! quantifies that identity and is expected to return 0 up to rounding for
//! every input.

use nalgebra::{DMatrix, Matrix2};
use rand::Rng;

use crate::pauli_bloch::{ginibre, hermiticity_deviation, BlochVector, DensityMatrix};
use crate::{Error, Result, C64};

/// Probability vector over a finite alphabet.
///
/// Entries at least −1e−14 are clamped to 0; the sum must be 1 ± 1e−10.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbDist {
    probs: Vec<f64>,
}

impl ProbDist {
    pub fn new(mut probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Empty("probability vector"));
        }
        for (idx, p) in probs.iter_mut().enumerate() {
            if *p < -1e-14 {
                return Err(Error::NegativeProbability { idx, value: *p });
            }
            if *p < 0.0 {
                *p = 0.0;
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized(sum));
        }
        Ok(Self { probs })
    }

    pub fn uniform(k: usize) -> Self {
        Self {
            probs: vec![1.0 / k as f64; k],
        }
    }

    pub fn point_mass(k: usize, at: usize) -> Self {
        let mut probs = vec![0.0; k];
        probs[at] = 1.0;
        Self { probs }
    }

    /// Random distribution, uniform on the simplex (normalized exponentials).
    pub fn random<R: Rng>(k: usize, rng: &mut R) -> Self {
        let mut probs: Vec<f64> = (0..k)
            .map(|_| -rng.random::<f64>().max(1e-300).ln())
            .collect();
        let sum: f64 = probs.iter().sum();
        for p in &mut probs {
            *p /= sum;
        }
        Self { probs }
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Total variation distance ½ Σ |p − q|.
    pub fn tv_distance(&self, other: &ProbDist) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(self.len(), other.len()));
        }
        Ok(0.5
            * self
                .probs
                .iter()
                .zip(&other.probs)
                .map(|(a, b)| (a - b).abs())
                .sum::<f64>())
    }
}

/// Row-stochastic transition matrix W(y|x); rows indexed by inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelKernel {
    rows: Vec<Vec<f64>>,
    out_size: usize,
}

impl ChannelKernel {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Empty("channel kernel"));
        }
        let out_size = rows[0].len();
        for row in &rows {
            if row.len() != out_size {
                return Err(Error::DimensionMismatch(row.len(), out_size));
            }
            ProbDist::new(row.clone())?;
        }
        Ok(Self { rows, out_size })
    }

    /// Binary symmetric channel with crossover probability q.
    pub fn bsc(q: f64) -> Result<Self> {
        check_probability(q, "crossover probability")?;
        Ok(Self {
            rows: vec![vec![1.0 - q, q], vec![q, 1.0 - q]],
            out_size: 2,
        })
    }

    /// Noiseless channel on k symbols.
    pub fn identity(k: usize) -> Self {
        let rows = (0..k)
            .map(|x| {
                let mut r = vec![0.0; k];
                r[x] = 1.0;
                r
            })
            .collect();
        Self { rows, out_size: k }
    }

    /// Kernel with independently random rows.
    pub fn random<R: Rng>(inputs: usize, outputs: usize, rng: &mut R) -> Self {
        let rows = (0..inputs)
            .map(|_| ProbDist::random(outputs, rng).probs.clone())
            .collect();
        Self {
            rows,
            out_size: outputs,
        }
    }

    /// Product kernel (W ⊗ V)((y,y')|(x,x')) = W(y|x)·V(y'|x').
    pub fn tensor(&self, other: &ChannelKernel) -> ChannelKernel {
        let mut rows = Vec::with_capacity(self.input_size() * other.input_size());
        for r1 in &self.rows {
            for r2 in &other.rows {
                let mut row = Vec::with_capacity(self.out_size * other.out_size);
                for a in r1 {
                    for b in r2 {
                        row.push(a * b);
                    }
                }
                rows.push(row);
            }
        }
        ChannelKernel {
            rows,
            out_size: self.out_size * other.out_size,
        }
    }

    /// n-fold tensor power.
    pub fn tensor_power(&self, n: usize) -> ChannelKernel {
        let mut w = self.clone();
        for _ in 1..n {
            w = w.tensor(self);
        }
        w
    }

    pub fn input_size(&self) -> usize {
        self.rows.len()
    }

    pub fn output_size(&self) -> usize {
        self.out_size
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.rows[x]
    }

    /// Push-forward (W P)(y) = Σ_x P(x) W(y|x).
    pub fn apply(&self, input: &ProbDist) -> Result<ProbDist> {
        if input.len() != self.input_size() {
            return Err(Error::DimensionMismatch(input.len(), self.input_size()));
        }
        let mut out = vec![0.0; self.out_size];
        for (x, &px) in input.probs().iter().enumerate() {
            if px == 0.0 {
                continue;
            }
            for (y, &w) in self.rows[x].iter().enumerate() {
                out[y] += px * w;
            }
        }
        ProbDist::new(out)
    }
}

/// n single-qubit orthonormal bases; qubit i's basis vectors are the columns
/// of a 2×2 unitary. Bit x_i = 0 selects the first column; outcome strings
/// pack big-endian (qubit 1 is the most significant bit).
#[derive(Debug, Clone)]
pub struct ProductBasis {
    qubits: Vec<Matrix2<C64>>,
}

impl ProductBasis {
    pub fn new(qubits: Vec<Matrix2<C64>>) -> Result<Self> {
        if qubits.is_empty() {
            return Err(Error::Empty("product basis"));
        }
        for u in &qubits {
            let gram = u.adjoint() * u;
            let dev = (gram - Matrix2::identity()).norm();
            if dev > 1e-12 {
                return Err(Error::NotOrthonormal(dev));
            }
        }
        Ok(Self { qubits })
    }

    /// Computational basis on n qubits.
    pub fn computational(n: usize) -> Self {
        Self {
            qubits: vec![Matrix2::identity(); n],
        }
    }

    /// Haar-random product basis (QR of per-qubit Ginibre matrices).
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let qubits = (0..n)
            .map(|_| {
                let g = ginibre(2, rng);
                let q = g.qr().q();
                Matrix2::from_fn(|i, j| q[(i, j)])
            })
            .collect();
        Self { qubits }
    }

    pub fn num_qubits(&self) -> usize {
        self.qubits.len()
    }

    pub fn qubit(&self, i: usize) -> &Matrix2<C64> {
        &self.qubits[i]
    }
}

fn check_probability(p: f64, what: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::out_of_range(format!("{what} {p} not in [0, 1]")));
    }
    Ok(())
}

fn qubit_strides(n: usize, k: usize) -> (usize, usize) {
    (1usize << k, 1usize << (n - 1 - k))
}

/// (1−p)·M + p·(Tr_k M) ⊗_k I/2 acting on qubit k of an n-qubit matrix.
fn depolarize_qubit(mat: &DMatrix<C64>, n: usize, k: usize, p: f64) -> DMatrix<C64> {
    let (dl, dr) = qubit_strides(n, k);
    let mut out = mat.map(|z| z * (1.0 - p));
    let half_p = C64::new(0.5 * p, 0.0);
    for a in 0..dl {
        for c in 0..dl {
            for b in 0..dr {
                for e in 0..dr {
                    let r0 = (a * 2) * dr + b;
                    let r1 = (a * 2 + 1) * dr + b;
                    let c0 = (c * 2) * dr + e;
                    let c1 = (c * 2 + 1) * dr + e;
                    let s = (mat[(r0, c0)] + mat[(r1, c1)]) * half_p;
                    out[(r0, c0)] += s;
                    out[(r1, c1)] += s;
                }
            }
        }
    }
    out
}

/// (I ⊗ A_k ⊗ I) M (I ⊗ A_k† ⊗ I) for a 2×2 matrix A on qubit k.
fn conjugate_qubit(mat: &DMatrix<C64>, n: usize, k: usize, a: &Matrix2<C64>) -> DMatrix<C64> {
    let d = mat.nrows();
    let (dl, dr) = qubit_strides(n, k);
    let mut out = DMatrix::<C64>::zeros(d, d);
    for al in 0..dl {
        for cl in 0..dl {
            for b in 0..dr {
                for e in 0..dr {
                    let row = |i: usize| (al * 2 + i) * dr + b;
                    let col = |j: usize| (cl * 2 + j) * dr + e;
                    for i in 0..2 {
                        for j in 0..2 {
                            let mut acc = C64::new(0.0, 0.0);
                            for ip in 0..2 {
                                for jp in 0..2 {
                                    acc += a[(i, ip)] * mat[(row(ip), col(jp))] * a[(j, jp)].conj();
                                }
                            }
                            out[(row(i), col(j))] = acc;
                        }
                    }
                }
            }
        }
    }
    out
}

/// Rotates into the frame of the product basis: U† M U with U = ⊗ U_i.
fn to_basis_frame(mat: &DMatrix<C64>, basis: &ProductBasis) -> DMatrix<C64> {
    let n = basis.num_qubits();
    let mut m = mat.clone();
    for k in 0..n {
        m = conjugate_qubit(&m, n, k, &basis.qubit(k).adjoint());
    }
    m
}

fn from_basis_frame(mat: &DMatrix<C64>, basis: &ProductBasis) -> DMatrix<C64> {
    let n = basis.num_qubits();
    let mut m = mat.clone();
    for k in 0..n {
        m = conjugate_qubit(&m, n, k, basis.qubit(k));
    }
    m
}

/// N_p^⊗n: the depolarizing channel applied to every qubit.
///
/// p = 0 is the identity map; p = 1 sends every state to I/d.
pub fn depolarize(rho: &DensityMatrix, p: f64) -> Result<DensityMatrix> {
    check_probability(p, "depolarizing probability")?;
    let n = rho.num_qubits()?;
    let mut m = rho.matrix().clone();
    for k in 0..n {
        m = depolarize_qubit(&m, n, k, p);
    }
    debug_assert!(hermiticity_deviation(&m) < 1e-12);
    Ok(DensityMatrix::new_unchecked(m))
}

/// Bloch-level depolarizing action: coordinate α scales by (1−p)^w(α).
///
/// Commutes with the matrix path: expanding `depolarize(ρ, p)` gives the same
/// vector as applying this to the expansion of ρ.
pub fn depolarize_bloch(v: &BlochVector, p: f64) -> Result<BlochVector> {
    check_probability(p, "depolarizing probability")?;
    let n = v.num_qubits();
    // powers (1-p)^w for w = 0..=n
    let mut pow = vec![1.0; n + 1];
    for w in 1..=n {
        pow[w] = pow[w - 1] * (1.0 - p);
    }
    let coords = v
        .coords()
        .iter()
        .enumerate()
        .map(|(i, &x)| pow[v.weight_of(i)] * x)
        .collect();
    BlochVector::new(n, coords)
}

/// Completely dephasing channel Δ_B: keeps the diagonal of ρ in the product
/// basis B and kills all off-diagonal terms.
pub fn dephase(rho: &DensityMatrix, basis: &ProductBasis) -> Result<DensityMatrix> {
    if rho.dim() != 1usize << basis.num_qubits() {
        return Err(Error::DimensionMismatch(
            rho.dim(),
            1usize << basis.num_qubits(),
        ));
    }
    rho.num_qubits()?;
    let rotated = to_basis_frame(rho.matrix(), basis);
    let d = rho.dim();
    let mut diag = DMatrix::<C64>::zeros(d, d);
    for x in 0..d {
        diag[(x, x)] = C64::new(rotated[(x, x)].re, 0.0);
    }
    Ok(DensityMatrix::new_unchecked(from_basis_frame(&diag, basis)))
}

/// Diagonal of ρ in the product basis: r_ρ(xⁿ) = ⟨Ψ_xⁿ|ρ|Ψ_xⁿ⟩.
pub fn basis_diagonal(rho: &DensityMatrix, basis: &ProductBasis) -> Result<ProbDist> {
    if rho.dim() != 1usize << basis.num_qubits() {
        return Err(Error::DimensionMismatch(
            rho.dim(),
            1usize << basis.num_qubits(),
        ));
    }
    let rotated = to_basis_frame(rho.matrix(), basis);
    ProbDist::new((0..rho.dim()).map(|x| rotated[(x, x)].re).collect())
}

/// Outcome distribution q_ρ(xⁿ) = Tr(E_xⁿ N_p^⊗n(ρ)) of the complete product
/// measurement after the depolarizing channel.
pub fn measure_product(rho: &DensityMatrix, basis: &ProductBasis, p: f64) -> Result<ProbDist> {
    let out = depolarize(rho, p)?;
    basis_diagonal(&out, basis)
}

/// BSC_q^⊗n push-forward of a distribution on {0,1}ⁿ, computed exactly as n
/// single-bit convolutions (cost n·2ⁿ instead of a 4ⁿ kernel).
pub fn bsc_apply(input: &ProbDist, q: f64) -> Result<ProbDist> {
    check_probability(q, "crossover probability")?;
    let len = input.len();
    if !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    let n = len.trailing_zeros() as usize;
    let mut probs = input.probs().to_vec();
    for k in 0..n {
        let stride = 1usize << (n - 1 - k);
        let mut x = 0;
        while x < len {
            for off in 0..stride {
                let lo = x + off;
                let hi = lo + stride;
                let a = probs[lo];
                let b = probs[hi];
                probs[lo] = (1.0 - q) * a + q * b;
                probs[hi] = (1.0 - q) * b + q * a;
            }
            x += 2 * stride;
        }
    }
    ProbDist::new(probs)
}

/// TV distance between the measured depolarizing output and the BSC_{p/2}
/// push-forward of the input's diagonal. Zero (≤ 1e−10) for all valid inputs.
pub fn reduction_check(rho: &DensityMatrix, basis: &ProductBasis, p: f64) -> Result<f64> {
    let measured = measure_product(rho, basis, p)?;
    let diag = basis_diagonal(rho, basis)?;
    let pushed = bsc_apply(&diag, p / 2.0)?;
    measured.tv_distance(&pushed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli_bloch::{pauli_expand, trace_distance};
    use crate::rng::seeded;
    use nalgebra::DVector;

    #[test]
    fn depolarize_endpoints() {
        let mut rng = seeded(10);
        let rho = DensityMatrix::random(8, &mut rng);
        let unchanged = depolarize(&rho, 0.0).unwrap();
        assert!((rho.matrix() - unchanged.matrix()).norm() < 1e-14);
        let mixed = depolarize(&rho, 1.0).unwrap();
        assert!((mixed.matrix() - DensityMatrix::maximally_mixed(8).matrix()).norm() < 1e-12);
    }

    #[test]
    fn depolarize_single_qubit_half() {
        let psi = DVector::from_column_slice(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        let rho = DensityMatrix::from_pure(&psi).unwrap();
        let out = depolarize(&rho, 0.5).unwrap();
        assert!((out.matrix()[(0, 0)].re - 0.75).abs() < 1e-14);
        assert!((out.matrix()[(1, 1)].re - 0.25).abs() < 1e-14);
        assert!(out.matrix()[(0, 1)].norm() < 1e-14);
    }

    #[test]
    fn depolarize_output_is_valid_state() {
        let mut rng = seeded(11);
        for _ in 0..10 {
            let rho = DensityMatrix::random(8, &mut rng);
            let out = depolarize(&rho, 0.3).unwrap();
            assert!(DensityMatrix::new(out.matrix().clone()).is_ok());
        }
    }

    #[test]
    fn bloch_contraction_scales_by_weight() {
        let v = BlochVector::new(2, (0..15).map(|i| 0.1 + 0.01 * i as f64).collect()).unwrap();
        let out = depolarize_bloch(&v, 0.5).unwrap();
        for i in 0..15 {
            let w = v.weight_of(i) as i32;
            assert!((out.coords()[i] - v.coords()[i] * 0.5f64.powi(w)).abs() < 1e-15);
        }
        // weight-2 coordinate scaled by 0.25: index of string (1,1) is 4*1+1-1 = 4
        assert!((out.coords()[4] - v.coords()[4] * 0.25).abs() < 1e-15);
        let id = depolarize_bloch(&v, 0.0).unwrap();
        assert_eq!(id.coords(), v.coords());
    }

    #[test]
    fn bloch_path_commutes_with_matrix_path() {
        let mut rng = seeded(12);
        for n in 1..=3usize {
            for _ in 0..50 {
                let rho = DensityMatrix::random(1 << n, &mut rng);
                let p = 0.37;
                let via_matrix = pauli_expand(&depolarize(&rho, p).unwrap()).unwrap();
                let via_bloch = depolarize_bloch(&pauli_expand(&rho).unwrap(), p).unwrap();
                for (a, b) in via_matrix.coords().iter().zip(via_bloch.coords()) {
                    assert!((a - b).abs() <= 1e-10);
                }
            }
        }
    }

    #[test]
    fn dephase_fixes_diagonal_states_and_is_idempotent() {
        let mut rng = seeded(13);
        let basis = ProductBasis::random(2, &mut rng);
        let rho = DensityMatrix::random(4, &mut rng);
        let once = dephase(&rho, &basis).unwrap();
        let twice = dephase(&once, &basis).unwrap();
        assert!((once.matrix() - twice.matrix()).norm() < 1e-12);
        // already diagonal in computational basis
        let comp = ProductBasis::computational(2);
        let diag = dephase(&rho, &comp).unwrap();
        let again = dephase(&diag, &comp).unwrap();
        assert!((diag.matrix() - again.matrix()).norm() < 1e-13);
    }

    #[test]
    fn dephase_plus_state_gives_maximally_mixed() {
        let s = 1.0 / 2f64.sqrt();
        let psi = DVector::from_column_slice(&[C64::new(s, 0.0), C64::new(s, 0.0)]);
        let rho = DensityMatrix::from_pure(&psi).unwrap();
        let out = dephase(&rho, &ProductBasis::computational(1)).unwrap();
        assert!((out.matrix() - DensityMatrix::maximally_mixed(2).matrix()).norm() < 1e-14);
    }

    #[test]
    fn measurement_of_mixed_state_is_uniform() {
        let mut rng = seeded(14);
        let basis = ProductBasis::random(3, &mut rng);
        let q = measure_product(&DensityMatrix::maximally_mixed(8), &basis, 0.42).unwrap();
        for &x in q.probs() {
            assert!((x - 0.125).abs() < 1e-13);
        }
    }

    #[test]
    fn measurement_of_basis_vector() {
        // First basis vector, one qubit: outcome (1 - p/2, p/2).
        let mut rng = seeded(15);
        let basis = ProductBasis::random(1, &mut rng);
        let v = basis.qubit(0).column(0).into_owned();
        let psi = DVector::from_column_slice(&[v[0], v[1]]);
        let rho = DensityMatrix::from_pure(&psi).unwrap();
        let p = 0.6;
        let q = measure_product(&rho, &basis, p).unwrap();
        assert!((q.probs()[0] - (1.0 - p / 2.0)).abs() < 1e-13);
        assert!((q.probs()[1] - p / 2.0).abs() < 1e-13);
    }

    #[test]
    fn measurement_invariant_under_dephasing() {
        let mut rng = seeded(16);
        for _ in 0..10 {
            let basis = ProductBasis::random(2, &mut rng);
            let rho = DensityMatrix::random(4, &mut rng);
            let q1 = measure_product(&rho, &basis, 0.3).unwrap();
            let q2 = measure_product(&dephase(&rho, &basis).unwrap(), &basis, 0.3).unwrap();
            assert!(q1.tv_distance(&q2).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn bsc_endpoints_and_point_mass() {
        let input = ProbDist::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let id = bsc_apply(&input, 0.0).unwrap();
        assert_eq!(id.probs(), input.probs());
        let flat = bsc_apply(&input, 0.5).unwrap();
        for &x in flat.probs() {
            assert!((x - 0.25).abs() < 1e-14);
        }
        // point mass at 00, q = 0.25
        let pm = ProbDist::point_mass(4, 0);
        let out = bsc_apply(&pm, 0.25).unwrap();
        let expect = [0.5625, 0.1875, 0.1875, 0.0625];
        for (a, b) in out.probs().iter().zip(expect) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn bsc_matches_hamming_kernel() {
        let mut rng = seeded(17);
        let n = 3;
        let input = ProbDist::random(1 << n, &mut rng);
        let q = 0.23;
        let fast = bsc_apply(&input, q).unwrap();
        let mut slow = vec![0.0; 1 << n];
        for (x, slot) in slow.iter_mut().enumerate() {
            for y in 0..1usize << n {
                let dh = (x ^ y).count_ones() as i32;
                *slot += input.probs()[y] * q.powi(dh) * (1.0 - q).powi(n - dh);
            }
        }
        for (a, b) in fast.probs().iter().zip(slow) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn bsc_composition_law() {
        let mut rng = seeded(18);
        let input = ProbDist::random(8, &mut rng);
        let (q1, q2) = (0.2, 0.35);
        let two_step = bsc_apply(&bsc_apply(&input, q1).unwrap(), q2).unwrap();
        let composed = bsc_apply(&input, q1 * (1.0 - q2) + q2 * (1.0 - q1)).unwrap();
        assert!(two_step.tv_distance(&composed).unwrap() <= 1e-12);
    }

    #[test]
    fn bsc_is_contractive_in_tv() {
        let mut rng = seeded(19);
        for _ in 0..20 {
            let u = ProbDist::random(16, &mut rng);
            let v = ProbDist::random(16, &mut rng);
            let q = 0.3;
            let before = u.tv_distance(&v).unwrap();
            let after = bsc_apply(&u, q)
                .unwrap()
                .tv_distance(&bsc_apply(&v, q).unwrap())
                .unwrap();
            assert!(after <= before + 1e-14);
        }
    }

    #[test]
    fn reduction_identity_holds() {
        let mut rng = seeded(20);
        for n in 1..=4usize {
            for _ in 0..10 {
                let rho = DensityMatrix::random(1 << n, &mut rng);
                let basis = ProductBasis::random(n, &mut rng);
                let p: f64 = rng.random();
                let tv = reduction_check(&rho, &basis, p).unwrap();
                assert!(tv <= 1e-10, "reduction failed: n={n}, tv={tv:.3e}");
            }
        }
    }

    #[test]
    fn reduction_trivial_cases() {
        let mut rng = seeded(21);
        let basis = ProductBasis::random(2, &mut rng);
        let rho = DensityMatrix::random(4, &mut rng);
        assert!(reduction_check(&rho, &basis, 0.0).unwrap() <= 1e-13);
        let mixed = DensityMatrix::maximally_mixed(4);
        assert!(reduction_check(&mixed, &basis, 0.77).unwrap() <= 1e-13);
    }

    #[test]
    fn depolarize_rejects_bad_probability() {
        let rho = DensityMatrix::maximally_mixed(2);
        assert!(depolarize(&rho, -0.1).is_err());
        assert!(depolarize(&rho, 1.5).is_err());
    }

    #[test]
    fn kernel_tensor_and_apply() {
        let w = ChannelKernel::bsc(0.25).unwrap();
        let w2 = w.tensor_power(2);
        assert_eq!(w2.input_size(), 4);
        let out = w2.apply(&ProbDist::point_mass(4, 0)).unwrap();
        let direct = bsc_apply(&ProbDist::point_mass(4, 0), 0.25).unwrap();
        assert!(out.tv_distance(&direct).unwrap() < 1e-14);
    }

    #[test]
    fn dephased_output_distance_dominated() {
        // dephasing only decreases trace distance (it is a channel)
        let mut rng = seeded(22);
        let basis = ProductBasis::random(2, &mut rng);
        let a = DensityMatrix::random(4, &mut rng);
        let b = DensityMatrix::random(4, &mut rng);
        let before = trace_distance(&a, &b).unwrap();
        let after =
            trace_distance(&dephase(&a, &basis).unwrap(), &dephase(&b, &basis).unwrap()).unwrap();
        assert!(after <= before + 1e-12);
    }
}

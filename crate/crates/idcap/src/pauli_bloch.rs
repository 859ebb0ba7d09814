//! n-qubit states, the normalized Pauli basis, and the Bloch embedding.
//!
//! An n-qubit state ρ expands in the normalized Pauli basis σ̃_α = σ_α / √d
//! (d = 2ⁿ, α a string over {0,1,2,3} of length n) as
//!
//! ```text
//!   ρ = I_d/d + Σ_{α ≠ 0} r_α σ̃_α,      r_α = Tr(ρ σ̃_α).
//! ```
//!
//! The identity coefficient is pinned to 1/√d by the unit trace and is never
//! stored; the remaining D = 4ⁿ − 1 real coefficients form the Bloch vector.
//! Because the basis is orthonormal in the Hilbert–Schmidt inner product, the
//! Euclidean geometry of Bloch vectors *is* the Hilbert–Schmidt geometry of
//! states: ‖ρ − σ‖₂ = ‖r − s‖₂ and ‖r‖₂² = Tr(ρ²) − 1/d ≤ 1 − 1/d, with
//! equality exactly for pure states.
//!
//! Matrix-level operations are dense and meant for desk scale (n ≤ 6);
//! Bloch-level operations scale further.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::{Error, Result, C64};

/// Tolerance for Hermiticity, trace and eigenvalue checks on states.
pub const STATE_TOL: f64 = 1e-12;

/// A d×d complex positive semidefinite operator of unit trace.
///
/// Validated on construction: Hermitian to 1e−12, eigenvalues ≥ −1e−12,
/// trace 1 ± 1e−12. Immutable afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    mat: DMatrix<C64>,
}

impl DensityMatrix {
    /// Validates and wraps a matrix as a state.
    pub fn new(mat: DMatrix<C64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::DimensionMismatch(mat.nrows(), mat.ncols()));
        }
        let herm_dev = hermiticity_deviation(&mat);
        if herm_dev > STATE_TOL {
            return Err(Error::NotHermitian(herm_dev));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidTrace(tr.re));
        }
        let min_eig = mat
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .fold(f64::INFINITY, |acc, &x| acc.min(x));
        if min_eig < -STATE_TOL {
            return Err(Error::NotPositiveSemidefinite(min_eig));
        }
        Ok(Self {
            dim: mat.nrows(),
            mat,
        })
    }

    /// Wraps without validation. Caller guarantees the invariants.
    pub(crate) fn new_unchecked(mat: DMatrix<C64>) -> Self {
        Self {
            dim: mat.nrows(),
            mat,
        }
    }

    /// |ψ⟩⟨ψ| for a (not necessarily normalized) vector.
    pub fn from_pure(psi: &DVector<C64>) -> Result<Self> {
        let norm_sq: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq <= 0.0 {
            return Err(Error::Empty("state vector"));
        }
        let mat = psi * psi.adjoint() / C64::new(norm_sq, 0.0);
        Ok(Self {
            dim: psi.len(),
            mat,
        })
    }

    /// The maximally mixed state I/d.
    pub fn maximally_mixed(dim: usize) -> Self {
        let mat = DMatrix::from_diagonal_element(dim, dim, C64::new(1.0 / dim as f64, 0.0));
        Self { dim, mat }
    }

    /// Full-rank random state GG†/Tr(GG†) with G complex Ginibre.
    pub fn random<R: Rng>(dim: usize, rng: &mut R) -> Self {
        let g = ginibre(dim, rng);
        let h = &g * g.adjoint();
        let tr = h.trace().re;
        Self {
            dim,
            mat: h / C64::new(tr, 0.0),
        }
    }

    /// Haar-random pure state.
    pub fn random_pure<R: Rng>(dim: usize, rng: &mut R) -> Self {
        let v = DVector::from_fn(dim, |_, _| {
            C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
        });
        Self::from_pure(&v).expect("Gaussian vector is nonzero almost surely")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of qubits, or an error if the dimension is not a power of two.
    pub fn num_qubits(&self) -> Result<usize> {
        if !self.dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(self.dim));
        }
        Ok(self.dim.trailing_zeros() as usize)
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.mat
    }

    /// Tr(ρ²).
    pub fn purity(&self) -> f64 {
        self.mat.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Eigenvalues in ascending order (clamped at 0 from below).
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self
            .mat
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .map(|&x| x.max(0.0))
            .collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    /// Spectral decomposition: eigenvalues (clamped at 0) with eigenvectors.
    pub fn eigen_decomposition(&self) -> (Vec<f64>, Vec<DVector<C64>>) {
        let eig = self.mat.clone().symmetric_eigen();
        let vals: Vec<f64> = eig.eigenvalues.iter().map(|&x| x.max(0.0)).collect();
        let vecs: Vec<DVector<C64>> = (0..self.dim)
            .map(|k| eig.eigenvectors.column(k).into_owned())
            .collect();
        (vals, vecs)
    }
}

/// A Pauli string: letters over {0,1,2,3} (I, X, Y, Z per qubit).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    letters: Vec<u8>,
}

impl PauliString {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Empty("Pauli string"));
        }
        if let Some(&bad) = letters.iter().find(|&&l| l > 3) {
            return Err(Error::out_of_range(format!(
                "Pauli letter {bad} not in 0..=3"
            )));
        }
        Ok(Self { letters })
    }

    /// String at position `index` in the lexicographic order over {0,1,2,3}ⁿ
    /// with the identity (0,…,0) excluded; `index` ranges over 0..4ⁿ−1.
    pub fn from_index(n: usize, index: usize) -> Result<Self> {
        let total = 4usize.pow(n as u32) - 1;
        if index >= total {
            return Err(Error::out_of_range(format!(
                "Pauli index {index} out of 0..{total}"
            )));
        }
        Ok(Self {
            letters: index_to_letters(n, index),
        })
    }

    /// Inverse of [`PauliString::from_index`]; errors on the identity string.
    pub fn index(&self) -> Result<usize> {
        let mut v = 0usize;
        for &l in &self.letters {
            v = v * 4 + l as usize;
        }
        if v == 0 {
            return Err(Error::out_of_range(
                "identity string has no Bloch index".to_string(),
            ));
        }
        Ok(v - 1)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&l| l != 0).count()
    }
}

fn index_to_letters(n: usize, index: usize) -> Vec<u8> {
    // Lexicographic order over {0,1,2,3}^n is base-4 big-endian order, so the
    // string at Bloch index i has base-4 value i + 1 (identity excluded).
    let mut v = index + 1;
    let mut letters = vec![0u8; n];
    for k in (0..n).rev() {
        letters[k] = (v % 4) as u8;
        v /= 4;
    }
    letters
}

/// Weight of the Pauli string at the given Bloch index (non-zero base-4
/// digits of index + 1).
pub fn index_weight(index: usize) -> usize {
    let mut v = index + 1;
    let mut w = 0;
    while v > 0 {
        if !v.is_multiple_of(4) {
            w += 1;
        }
        v /= 4;
    }
    w
}

/// Real coefficient vector of a state in the normalized Pauli basis,
/// identity coefficient excluded.
///
/// Coordinates are indexed lexicographically over {0,1,2,3}ⁿ with (0,…,0)
/// skipped; [`BlochVector::weight_of`] recovers w(α) for any coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochVector {
    n: usize,
    coords: Vec<f64>,
}

impl BlochVector {
    pub fn new(n: usize, coords: Vec<f64>) -> Result<Self> {
        let expected = 4usize.pow(n as u32) - 1;
        if coords.len() != expected {
            return Err(Error::DimensionMismatch(coords.len(), expected));
        }
        Ok(Self { n, coords })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            coords: vec![0.0; 4usize.pow(n as u32) - 1],
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Pauli weight of coordinate `i`.
    pub fn weight_of(&self, i: usize) -> usize {
        index_weight(i)
    }

    /// ‖r‖₂² = Tr(ρ²) − 1/d for vectors produced from states.
    pub fn norm_squared(&self) -> f64 {
        self.coords.iter().map(|x| x * x).sum()
    }

    /// Euclidean distance to another Bloch vector.
    pub fn distance(&self, other: &BlochVector) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt())
    }
}

/// Expands a state in the normalized Pauli basis: r_α = Tr(ρ σ̃_α) for all
/// non-identity α.
///
/// The identity coefficient 1/√d is implicit and not stored.
pub fn pauli_expand(rho: &DensityMatrix) -> Result<BlochVector> {
    pauli_expand_matrix(rho.matrix())
}

/// Pauli expansion of any Hermitian matrix (no state validation); inverse of
/// [`bloch_to_state`] up to the dropped trace coefficient.
pub fn pauli_expand_matrix(mat: &DMatrix<C64>) -> Result<BlochVector> {
    let d = mat.nrows();
    if d != mat.ncols() {
        return Err(Error::DimensionMismatch(d, mat.ncols()));
    }
    if !d.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(d));
    }
    let herm_dev = hermiticity_deviation(mat);
    if herm_dev > STATE_TOL {
        return Err(Error::NotHermitian(herm_dev));
    }
    let n = d.trailing_zeros() as usize;
    // Tensor over per-qubit pair digits μ_k = 2·i_k + j_k; the per-qubit
    // linear map in pauli_axis_forward turns pair digits into Pauli letters.
    let mut t = vec![C64::new(0.0, 0.0); d * d];
    for i in 0..d {
        for j in 0..d {
            t[interleave_index(n, i, j)] = mat[(i, j)];
        }
    }
    for axis in 0..n {
        pauli_axis_forward(&mut t, n, axis);
    }
    let scale = 1.0 / (d as f64).sqrt();
    let coords = t[1..].iter().map(|z| z.re * scale).collect();
    BlochVector::new(n, coords)
}

/// Rebuilds the Hermitian unit-trace matrix ρ = I/d + Σ r_α σ̃_α.
///
/// Positivity is not guaranteed for arbitrary coordinates; wrap the result in
/// [`DensityMatrix::new`] when a valid state is required.
pub fn bloch_to_state(v: &BlochVector) -> DMatrix<C64> {
    let n = v.num_qubits();
    let d = 1usize << n;
    let scale = 1.0 / (d as f64).sqrt();
    let mut t = vec![C64::new(0.0, 0.0); d * d];
    t[0] = C64::new(scale, 0.0);
    for (i, &x) in v.coords().iter().enumerate() {
        t[i + 1] = C64::new(x, 0.0);
    }
    for axis in 0..n {
        pauli_axis_backward(&mut t, n, axis);
    }
    let mut mat = DMatrix::<C64>::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            mat[(i, j)] = t[interleave_index(n, i, j)] * C64::new(scale, 0.0);
        }
    }
    mat
}

/// Hilbert–Schmidt (Frobenius) distance ‖ρ − σ‖₂.
pub fn hs_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    Ok((rho.matrix() - sigma.matrix()).norm())
}

/// Trace distance ½‖ρ − σ‖₁ ∈ [0, 1].
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    Ok(0.5 * hermitian_trace_norm(&(rho.matrix() - sigma.matrix())))
}

/// ‖X‖₁ = Σ |eig(X)| for Hermitian X.
pub fn hermitian_trace_norm(x: &DMatrix<C64>) -> f64 {
    x.clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .map(|e| e.abs())
        .sum()
}

/// Largest deviation |M − M†| entrywise.
pub(crate) fn hermiticity_deviation(mat: &DMatrix<C64>) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..mat.nrows() {
        for j in i..mat.ncols() {
            dev = dev.max((mat[(i, j)] - mat[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Complex Ginibre matrix with iid standard normal real/imag parts.
pub(crate) fn ginibre<R: Rng>(dim: usize, rng: &mut R) -> DMatrix<C64> {
    DMatrix::from_fn(dim, dim, |_, _| {
        C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
    })
}

/// Index of (i, j) in the interleaved base-4 digit tensor: digit for qubit k
/// is 2·i_k + j_k, qubit 0 most significant.
fn interleave_index(n: usize, i: usize, j: usize) -> usize {
    let mut idx = 0usize;
    for k in 0..n {
        let shift = n - 1 - k;
        let ik = (i >> shift) & 1;
        let jk = (j >> shift) & 1;
        idx = idx * 4 + (2 * ik + jk);
    }
    idx
}

/// In-place per-qubit transform from pair digits (i,j) to Pauli letters:
/// out[I] = in[(0,0)] + in[(1,1)], out[X] = in[(0,1)] + in[(1,0)],
/// out[Y] = i·in[(0,1)] − i·in[(1,0)], out[Z] = in[(0,0)] − in[(1,1)].
fn pauli_axis_forward(t: &mut [C64], n: usize, axis: usize) {
    let stride = 4usize.pow((n - 1 - axis) as u32);
    let block = stride * 4;
    let total = t.len();
    let i_unit = C64::new(0.0, 1.0);
    let mut base = 0;
    while base < total {
        for off in 0..stride {
            let p00 = t[base + off];
            let p01 = t[base + stride + off];
            let p10 = t[base + 2 * stride + off];
            let p11 = t[base + 3 * stride + off];
            t[base + off] = p00 + p11;
            t[base + stride + off] = p01 + p10;
            t[base + 2 * stride + off] = i_unit * (p01 - p10);
            t[base + 3 * stride + off] = p00 - p11;
        }
        base += block;
    }
}

/// Inverse of [`pauli_axis_forward`] up to the overall 1/d factor applied by
/// the caller: out[(0,0)] = I + Z, out[(0,1)] = X − i·Y, out[(1,0)] = X + i·Y,
/// out[(1,1)] = I − Z.
fn pauli_axis_backward(t: &mut [C64], n: usize, axis: usize) {
    let stride = 4usize.pow((n - 1 - axis) as u32);
    let block = stride * 4;
    let total = t.len();
    let i_unit = C64::new(0.0, 1.0);
    let mut base = 0;
    while base < total {
        for off in 0..stride {
            let ci = t[base + off];
            let cx = t[base + stride + off];
            let cy = t[base + 2 * stride + off];
            let cz = t[base + 3 * stride + off];
            t[base + off] = ci + cz;
            t[base + stride + off] = cx - i_unit * cy;
            t[base + 2 * stride + off] = cx + i_unit * cy;
            t[base + 3 * stride + off] = ci - cz;
        }
        base += block;
    }
}

/// Dense matrix of the Pauli string σ_{α}; test and small-n support.
pub fn pauli_matrix(alpha: &PauliString) -> DMatrix<C64> {
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i_unit = C64::new(0.0, 1.0);
    let single = |l: u8| -> DMatrix<C64> {
        match l {
            0 => DMatrix::from_row_slice(2, 2, &[one, zero, zero, one]),
            1 => DMatrix::from_row_slice(2, 2, &[zero, one, one, zero]),
            2 => DMatrix::from_row_slice(2, 2, &[zero, -i_unit, i_unit, zero]),
            _ => DMatrix::from_row_slice(2, 2, &[one, zero, zero, -one]),
        }
    };
    let mut m = single(alpha.letters()[0]);
    for &l in &alpha.letters()[1..] {
        m = m.kronecker(&single(l));
    }
    m
}

//! # idcap
//!
//! Numerical toolkit for strong-converse bounds on the classical
//! *identification* capacity of the qubit depolarizing channel.
//!
//! Identification is the communication task in which the receiver only has to
//! answer, for a message of their choosing, "was it message i?". The number of
//! identifiable messages grows doubly exponentially in the blocklength, so the
//! relevant rate is (1/n) log log N. This crate evaluates upper bounds on that
//! rate for the depolarizing channel with error probability `p`, and verifies
//! at desk scale the identities those bounds are built from:
//!
//! - [`pauli_bloch`] — n-qubit density matrices, the normalized Pauli basis,
//!   and the Bloch embedding into ℝ^(4ⁿ−1) with its norm identities.
//! - [`channels`] — the depolarizing channel (matrix- and Bloch-level),
//!   complete product measurements, dephasing, the binary symmetric channel,
//!   and the reduction identity connecting them.
//! - [`info_measures`] — entropies, classical and quantum Rényi divergences,
//!   Sibson α-mutual information (closed form plus a definitional oracle),
//!   and channel capacity optimization over the input simplex.
//! - [`soft_covering`] — random-codebook soft covering: expectation bounds,
//!   sufficient codebook sizes, Monte Carlo experiments, and the fixed-input
//!   quantum variant that produces low-rank approximate covers.
//! - [`covering_geometry`] — the depolarizing output ellipsoid, its 1-ball
//!   covering bound, binomial tail estimates, and the finite-n and asymptotic
//!   unrestricted identification bounds.
//! - [`bounds_api`] — the bound catalogue (simultaneous, unrestricted,
//!   general-channel), identification-code verification, and curve sweeps.
//! - [`cli`] — the `idcap` command-line front end emitting reproducible
//!   CSV/JSON artifacts.
//!
//! All logarithms are base 2 unless a function says otherwise (the ellipsoid
//! covering bound is stated in nats and converted at the boundary).
//!
//! ## Quick start
//!
//! ```
//! use idcap::bounds_api::{simultaneous_capacity_product, sweep_curves, SweepParams};
//!
//! // Capacity of simultaneous identification under complete product
//! // measurements equals the classical capacity 1 - h(p/2).
//! let c = simultaneous_capacity_product(0.5).unwrap();
//! assert!((c - 0.18872).abs() < 1e-4);
//!
//! let grid: Vec<f64> = (0..99).map(|i| i as f64 / 100.0).collect();
//! let curve = sweep_curves(&grid, &SweepParams::default()).unwrap();
//! assert!(curve.crossing > 0.80 && curve.crossing < 0.85);
//! ```

pub mod bounds_api;
pub mod channels;
pub mod cli;
pub mod covering_geometry;
pub mod info_measures;
pub mod pauli_bloch;
pub mod rng;
pub mod soft_covering;

use thiserror::Error;

/// Errors produced by idcap computations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("matrix is not Hermitian (asymmetry {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPositiveSemidefinite(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("probabilities do not sum to 1 (sum {0})")]
    NotNormalized(f64),

    #[error("negative probability entry {value:.3e} at index {idx}")]
    NegativeProbability { idx: usize, value: f64 },

    #[error("basis is not orthonormal (Gram deviation {0:.3e})")]
    NotOrthonormal(f64),

    #[error("operator is not a valid binary test (eigenvalue {0} outside [0, 1])")]
    InvalidDecoder(f64),

    #[error("alphabet of size {0} too large for {1}")]
    AlphabetTooLarge(usize, &'static str),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("codebook size overflows u64 (log2 M = {0:.3})")]
    CodebookTooLarge(f64),

    #[error("empty input: {0}")]
    Empty(&'static str),
}

impl Error {
    pub(crate) fn out_of_range(msg: impl Into<String>) -> Self {
        Error::OutOfRange(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Complex scalar used throughout the matrix-level simulation.
pub type C64 = num_complex::Complex<f64>;

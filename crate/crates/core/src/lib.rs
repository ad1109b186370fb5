//! Stochastic trace estimation for implicit symmetric matrices.
//!
//! The trace of an n×n real-symmetric matrix A can be estimated from an
//! oracle computing x†Ax, without ever reading A's entries. This crate
//! implements four probe distributions — the fixed (standard) basis, a
//! maximal family of mutually unbiased bases, Hutchinson's ±1 probes, and
//! Gaussian probes — together with the machinery to compare them:
//!
//! * [`mub`] builds and verifies families of mutually unbiased bases for
//!   prime dimensions, generating individual vectors in O(n);
//! * [`oracle`] provides dense, sparse, matrix-power and zero-padded
//!   quadratic-form oracles;
//! * [`estimator`] draws probes, averages single shots deterministically,
//!   and accounts for every random bit consumed;
//! * [`analysis`] holds the closed-form single-shot variances, certifies
//!   them by exhaustively enumerating the finite probe sets, and checks the
//!   symmetric-subspace projector behind the MUBs variance;
//! * [`graph`] parses edge lists and counts triangles via Δ = Tr(A³)/6,
//!   both exactly and stochastically;
//! * [`matrix_market`] loads dense and sparse symmetric matrices.
//!
//! Everything numeric is generic over the scalar type through the [`Real`]
//! trait (`f32` or `f64`); the `*64` aliases at the crate root pin the
//! common double-precision choices.

pub mod analysis;
pub mod error;
pub mod estimator;
pub mod graph;
pub mod matrix_market;
pub mod mub;
pub mod oracle;
pub mod primes;
pub mod rng;
pub mod stats;

use std::fmt;
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar type the library is generic over: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + NumAssign
    + FromPrimitive
    + ToPrimitive
    + Sum
    + fmt::Debug
    + fmt::Display
    + fmt::LowerExp
    + Send
    + Sync
    + 'static
{
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + NumAssign
        + FromPrimitive
        + ToPrimitive
        + Sum
        + fmt::Debug
        + fmt::Display
        + fmt::LowerExp
        + Send
        + Sync
        + 'static
{
}

pub use error::{Error, Result};
pub use estimator::{
    draw_probe, estimate_trace, random_bits_required, single_shot, BitBudget, EstimatorKind,
    ProbeVector, TraceEstimate,
};
pub use graph::{
    adjacency_oracle, estimate_triangles, exact_triangle_count, Graph, TriangleEstimate,
};
pub use mub::{generate_mub_family, mub_vector, verify_mub_family, MubFamily, VerificationReport};
pub use oracle::{
    DenseMatrix, MatVecOracle, PaddedOracle, PowerOracle, QuadraticFormOracle, SparseSymmetric,
};
pub use primes::{is_prime, next_prime_at_least, PrimeDim};
pub use rng::RandomStream;

pub type DenseMatrix64 = DenseMatrix<f64>;
pub type SparseSymmetric64 = SparseSymmetric<f64>;
pub type MubFamily64 = MubFamily<f64>;
pub type VerificationReport64 = VerificationReport<f64>;
pub type ProbeVector64 = ProbeVector<f64>;
pub type TraceEstimate64 = TraceEstimate<f64>;
pub type TriangleEstimate64 = TriangleEstimate<f64>;

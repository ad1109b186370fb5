//! Mutually unbiased bases for prime dimensions.
//!
//! A family of orthonormal bases of ℂᵖ is mutually unbiased when every pair
//! of vectors drawn from two different bases has overlap magnitude exactly
//! 1/√p. For prime p there are exactly p + 1 such bases. This module builds
//! them with the quadratic Gauss-sum construction: for an odd prime p, basis
//! `a ∈ [0, p)` consists of the vectors
//!
//! ```text
//! v[l] = ω^(a·l² + b·l) / √p,   l ∈ [0, p),  ω = exp(2πi/p),
//! ```
//!
//! indexed by `b ∈ [0, p)`, and basis index `p` is the standard basis. The
//! quadratic construction degenerates in characteristic two, so the three
//! bases of dimension 2 are hardcoded. Every family the construction can
//! produce is checkable with [`verify_mub_family`].
//!
//! Individual vectors are generated in O(p) time and space by [`mub_vector`]
//! without materialising the family, which is what makes sampling from the
//! family cheap at large p.

use std::io::{self, Write};

use num_complex::Complex;

use crate::primes::PrimeDim;
use crate::Real;

/// The `vector_index`-th vector of the `basis_index`-th basis of dimension
/// `p`, in O(p) time. Basis index `p` denotes the standard basis.
///
/// Deterministic: identical arguments produce bit-identical output.
///
/// # Panics
///
/// Panics when `basis_index > p` or `vector_index ≥ p`.
pub fn mub_vector<F: Real>(p: PrimeDim, basis_index: usize, vector_index: usize) -> Vec<Complex<F>> {
    let n = p.get();
    assert!(basis_index <= n, "basis index {basis_index} out of range for p = {n}");
    assert!(vector_index < n, "vector index {vector_index} out of range for p = {n}");

    if basis_index == n {
        let mut v = vec![Complex::new(F::zero(), F::zero()); n];
        v[vector_index] = Complex::new(F::one(), F::zero());
        return v;
    }

    if n == 2 {
        let s = F::FRAC_1_SQRT_2();
        let z = F::zero();
        let sign = if vector_index == 0 { s } else { -s };
        return match basis_index {
            0 => vec![Complex::new(s, z), Complex::new(sign, z)],
            _ => vec![Complex::new(s, z), Complex::new(z, sign)],
        };
    }

    let a = basis_index as u128;
    let b = vector_index as u128;
    let modulus = n as u128;
    let amp = (F::one() / F::from_usize(n).unwrap()).sqrt();
    let step = F::TAU() / F::from_usize(n).unwrap();
    (0..n as u128)
        .map(|l| {
            // Exponent of ω reduced mod p in exact integer arithmetic.
            let k = (a * ((l * l) % modulus) + b * l) % modulus;
            let theta = step * F::from_u128(k).unwrap();
            Complex::from_polar(amp, theta)
        })
        .collect()
}

/// The full family of `p + 1` mutually unbiased bases of dimension `p`.
///
/// Materialising the family costs O(p³) space; use [`mub_vector`] directly
/// when only individual vectors are needed.
#[derive(Clone, Debug, PartialEq)]
pub struct MubFamily<F> {
    dim: PrimeDim,
    bases: Vec<Vec<Vec<Complex<F>>>>,
}

impl<F: Real> MubFamily<F> {
    /// Wraps raw bases without checking the unbiasedness invariants.
    /// Run [`verify_mub_family`] on anything from an untrusted source.
    pub fn from_bases(dim: PrimeDim, bases: Vec<Vec<Vec<Complex<F>>>>) -> Self {
        MubFamily { dim, bases }
    }

    pub fn dim(&self) -> PrimeDim {
        self.dim
    }

    pub fn num_bases(&self) -> usize {
        self.bases.len()
    }

    pub fn bases(&self) -> &[Vec<Vec<Complex<F>>>] {
        &self.bases
    }

    pub fn basis(&self, basis_index: usize) -> &[Vec<Complex<F>>] {
        &self.bases[basis_index]
    }

    pub fn vector(&self, basis_index: usize, vector_index: usize) -> &[Complex<F>] {
        &self.bases[basis_index][vector_index]
    }

    /// All vectors in (basis, vector) index order.
    pub fn iter_vectors(&self) -> impl Iterator<Item = (usize, usize, &[Complex<F>])> {
        self.bases.iter().enumerate().flat_map(|(b, basis)| {
            basis
                .iter()
                .enumerate()
                .map(move |(v, vec)| (b, v, vec.as_slice()))
        })
    }

    /// CSV export: one row per vector with columns
    /// `basis_index, vector_index, re_0, im_0, …, re_{p-1}, im_{p-1}`,
    /// every value printed with 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        for (b, v, vec) in self.iter_vectors() {
            write!(out, "{b},{v}")?;
            for c in vec {
                write!(out, ",{:.16e},{:.16e}", c.re, c.im)?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// Builds the family of `p + 1` bases; element-wise identical to
/// [`mub_vector`].
pub fn generate_mub_family<F: Real>(p: PrimeDim) -> MubFamily<F> {
    let n = p.get();
    let bases = (0..=n)
        .map(|b| (0..n).map(|v| mub_vector(p, b, v)).collect())
        .collect();
    MubFamily { dim: p, bases }
}

/// Outcome of checking a family against the orthonormality and
/// unbiasedness invariants.
#[derive(Clone, Copy, Debug)]
pub struct VerificationReport<F> {
    /// Largest deviation of a within-basis Gram matrix from the identity.
    pub max_orthonormality_error: F,
    /// Largest deviation of a cross-basis overlap magnitude from 1/√p.
    pub max_unbiasedness_error: F,
    pub pass: bool,
}

fn inner_product<F: Real>(u: &[Complex<F>], v: &[Complex<F>]) -> Complex<F> {
    u.iter()
        .zip(v)
        .fold(Complex::new(F::zero(), F::zero()), |acc, (a, b)| {
            acc + a.conj() * b
        })
}

/// Exhaustively checks all within-basis inner products and all cross-basis
/// overlaps of `family`, reporting the worst deviations.
pub fn verify_mub_family<F: Real>(family: &MubFamily<F>, tol: F) -> VerificationReport<F> {
    let n = family.dim().get();
    let target = (F::one() / F::from_usize(n).unwrap()).sqrt();
    let mut max_ortho = F::zero();
    let mut max_unbiased = F::zero();

    for basis in family.bases() {
        for (i, u) in basis.iter().enumerate() {
            for (j, v) in basis.iter().enumerate() {
                let g = inner_product(u, v).norm();
                let expected = if i == j { F::one() } else { F::zero() };
                max_ortho = max_ortho.max((g - expected).abs());
            }
        }
    }

    for (bi, lhs) in family.bases().iter().enumerate() {
        for rhs in family.bases().iter().skip(bi + 1) {
            for u in lhs {
                for v in rhs {
                    let overlap = inner_product(u, v).norm();
                    max_unbiased = max_unbiased.max((overlap - target).abs());
                }
            }
        }
    }

    VerificationReport {
        max_orthonormality_error: max_ortho,
        max_unbiasedness_error: max_unbiased,
        pass: max_ortho <= tol && max_unbiased <= tol,
    }
}

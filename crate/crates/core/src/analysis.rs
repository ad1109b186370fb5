//! Closed-form single-shot variances, exact enumeration oracles, and the
//! symmetric-subspace projector check.
//!
//! The closed forms for the scaled single-shot estimate of Tr(A) are
//!
//! | estimator    | V                                        | V_worst                    |
//! |--------------|------------------------------------------|----------------------------|
//! | fixed basis  | n·ΣA_ii² − Tr(A)²                        | (n−1)·Tr(A)²               |
//! | MUBs         | n/(n+1)·Tr(A²) − 1/(n+1)·Tr(A)²          | n/(n+1)·Tr(A²) general,    |
//! |              |                                          | (n−1)/(n+1)·Tr(A²) for PSD |
//! | Hutchinson   | 2·(Tr(A²) − ΣA_ii²)                      | 2(n−1)/n·Tr(A²)            |
//! | Gaussian     | 2·Tr(A²)                                 | 2·Tr(A²)                   |
//!
//! For the two basis estimators the probe set is finite, so
//! [`enumerate_variance`] computes the population mean and variance of the
//! single shot literally, over every equiprobable probe. That enumeration is
//! the independent oracle certifying the MUBs closed form.
//!
//! [`projector_check`] builds P = ½·Σ (xx†)⊗(xx†) over all MUB vectors
//! explicitly and verifies it is the projector onto the symmetric subspace:
//! Tr(P) = Tr(P²) = n(n+1)/2, every eigenvalue 0 or 1, rank n(n+1)/2.

use nalgebra::{Complex as NaComplex, DMatrix, RealField};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::estimator::{random_bits_required, EstimatorKind};
use crate::mub::mub_vector;
use crate::oracle::{DenseMatrix, QuadraticFormOracle};
use crate::primes::PrimeDim;
use crate::stats;
use crate::Real;

/// Largest dimension enumerated by default (n(n+1) probes, n² work each).
pub const DEFAULT_ENUMERATION_CAP: usize = 101;

/// Largest prime for which the n²×n² projector is built explicitly.
pub const PROJECTOR_DIMENSION_CAP: usize = 13;

/// Eigenvalues above this threshold count towards the numerical rank; the
/// accumulated roundoff at the capped sizes stays orders of magnitude lower.
pub const EIGENVALUE_TOLERANCE: f64 = 1e-8;

/// Closed-form variance of the scaled single shot for `kind` on `a`.
pub fn analytic_variance<F: Real>(kind: EstimatorKind, a: &DenseMatrix<F>) -> F {
    let n = F::from_usize(a.dim()).unwrap();
    let trace = a.trace();
    let trace_sq = trace * trace;
    let t2 = a.trace_of_square();
    let two = F::one() + F::one();
    match kind {
        EstimatorKind::FixedBasis => n * a.diagonal_square_sum() - trace_sq,
        EstimatorKind::Mubs => (n * t2 - trace_sq) / (n + F::one()),
        EstimatorKind::Hutchinson => two * (t2 - a.diagonal_square_sum()),
        EstimatorKind::Gaussian => two * t2,
    }
}

/// Worst-case single-shot variance over all matrices with the given
/// Tr(A) and Tr(A²). `assume_psd` tightens the MUBs bound from
/// n/(n+1)·Tr(A²) to (n−1)/(n+1)·Tr(A²); it has no effect on the others.
pub fn worst_case_variance<F: Real>(
    kind: EstimatorKind,
    n: usize,
    tr_a: F,
    tr_a2: F,
    assume_psd: bool,
) -> F {
    let nf = F::from_usize(n).unwrap();
    let two = F::one() + F::one();
    match kind {
        EstimatorKind::FixedBasis => (nf - F::one()) * tr_a * tr_a,
        EstimatorKind::Mubs => {
            let numerator = if assume_psd { nf - F::one() } else { nf };
            numerator / (nf + F::one()) * tr_a2
        }
        EstimatorKind::Hutchinson => two * (nf - F::one()) / nf * tr_a2,
        EstimatorKind::Gaussian => two * tr_a2,
    }
}

/// Exact population mean and variance of the scaled single shot, obtained
/// by enumerating every equiprobable probe: the n standard-basis vectors
/// for the fixed basis, all n(n+1) MUB vectors for MUBs.
///
/// Only the basis estimators have a finite probe set; the dimension must be
/// prime and at most `cap`.
pub fn enumerate_variance_capped<F: Real>(
    kind: EstimatorKind,
    a: &DenseMatrix<F>,
    cap: usize,
) -> Result<(F, F)> {
    let n = a.dim();
    if n > cap {
        return Err(Error::DimensionTooLarge { dim: n, cap });
    }
    let p = PrimeDim::new(n)?;
    let scale = F::from_usize(n).unwrap();
    let shots: Vec<F> = match kind {
        EstimatorKind::FixedBasis => (0..n)
            .map(|i| {
                let mut e = vec![Complex::new(F::zero(), F::zero()); n];
                e[i] = Complex::new(F::one(), F::zero());
                scale * a.quad_form(&e)
            })
            .collect(),
        EstimatorKind::Mubs => (0..=n)
            .flat_map(|basis| (0..n).map(move |vector| (basis, vector)))
            .map(|(basis, vector)| {
                let x = mub_vector::<F>(p, basis, vector);
                scale * a.quad_form(&x)
            })
            .collect(),
        other => return Err(Error::NotEnumerable { kind: other }),
    };
    let mean = stats::mean(&shots);
    let variance = stats::population_variance(&shots, mean);
    Ok((mean, variance))
}

/// [`enumerate_variance_capped`] with the default cap.
pub fn enumerate_variance<F: Real>(kind: EstimatorKind, a: &DenseMatrix<F>) -> Result<(F, F)> {
    enumerate_variance_capped(kind, a, DEFAULT_ENUMERATION_CAP)
}

/// Numerical evidence that P = ½·Σ (xx†)⊗(xx†) is a projector.
#[derive(Clone, Debug)]
pub struct ProjectorCheck<F> {
    pub p: PrimeDim,
    pub trace_p: F,
    pub trace_p_sq: F,
    /// All n² eigenvalues, ascending.
    pub eigenvalues: Vec<F>,
    /// Count of eigenvalues above [`EIGENVALUE_TOLERANCE`].
    pub rank: usize,
}

/// Builds the n²×n² operator P explicitly from the MUB family of dimension
/// `p` and returns its trace, the trace of P², its full spectrum and its
/// numerical rank.
pub fn projector_check<F: Real + RealField>(p: PrimeDim) -> Result<ProjectorCheck<F>> {
    let n = p.get();
    if n > PROJECTOR_DIMENSION_CAP {
        return Err(Error::DimensionTooLarge {
            dim: n,
            cap: PROJECTOR_DIMENSION_CAP,
        });
    }
    let half = F::from_f64(0.5).unwrap();
    let dim = n * n;
    let mut projector = DMatrix::<NaComplex<F>>::zeros(dim, dim);
    for basis in 0..=n {
        for vector in 0..n {
            let x = mub_vector::<F>(p, basis, vector);
            // y = x ⊗ x, then P += ½·y·y†.
            let y: Vec<NaComplex<F>> = (0..dim)
                .map(|k| {
                    let prod = x[k / n] * x[k % n];
                    NaComplex::new(prod.re, prod.im)
                })
                .collect();
            for r in 0..dim {
                for c in 0..dim {
                    projector[(r, c)] += y[r] * y[c].conj() * NaComplex::new(half, F::zero());
                }
            }
        }
    }

    let trace_p = (0..dim).map(|i| projector[(i, i)].re).fold(F::zero(), |a, b| a + b);
    // P is Hermitian, so Tr(P²) = Σ |P_ij|².
    let trace_p_sq = projector
        .iter()
        .map(|c| c.norm_sqr())
        .fold(F::zero(), |a, b| a + b);

    let mut eigenvalues: Vec<F> = projector
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    eigenvalues.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let tol = F::from_f64(EIGENVALUE_TOLERANCE).unwrap();
    let rank = eigenvalues.iter().filter(|&&ev| ev > tol).count();

    Ok(ProjectorCheck {
        p,
        trace_p,
        trace_p_sq,
        eigenvalues,
        rank,
    })
}

/// One row of the variance comparison for a concrete matrix.
#[derive(Clone, Debug)]
pub struct VarianceReport<F> {
    pub kind: EstimatorKind,
    pub analytic: F,
    pub worst_case_bound: F,
    /// Present when the probe set was exhaustively enumerated (basis
    /// estimators on a prime dimension within the cap).
    pub enumerated: Option<F>,
}

/// Reports for all four estimators on `a`. Enumeration is filled in where
/// feasible.
pub fn variance_reports<F: Real>(a: &DenseMatrix<F>, assume_psd: bool) -> Vec<VarianceReport<F>> {
    let n = a.dim();
    let tr_a = a.trace();
    let tr_a2 = a.trace_of_square();
    EstimatorKind::ALL
        .iter()
        .map(|&kind| VarianceReport {
            kind,
            analytic: analytic_variance(kind, a),
            worst_case_bound: worst_case_variance(kind, n, tr_a, tr_a2, assume_psd),
            enumerated: enumerate_variance(kind, a).ok().map(|(_, v)| v),
        })
        .collect()
}

/// Plain-text table with one row per estimator and columns for the
/// single-shot variance, the worst-case bound, the random-bit requirement
/// and, when available, the enumerated variance.
pub fn format_variance_table<F: Real>(reports: &[VarianceReport<F>], n: usize) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<12} {:>16} {:>16} {:>16}  {}\n",
        "estimator", "V", "V_worst", "V_enumerated", "R (bits)"
    ));
    for report in reports {
        let enumerated = report
            .enumerated
            .map(|v| format!("{v:>16.9e}"))
            .unwrap_or_else(|| format!("{:>16}", "-"));
        out.push_str(&format!(
            "{:<12} {:>16.9e} {:>16.9e} {}  {}\n",
            report.kind.name(),
            report.analytic,
            report.worst_case_bound,
            enumerated,
            random_bits_required(report.kind, n),
        ));
    }
    out
}

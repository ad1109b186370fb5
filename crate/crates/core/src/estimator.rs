//! Probe generation and trace estimation for the four sampling strategies.
//!
//! Every strategy draws a probe vector x, queries the oracle once and scales
//! the result into an unbiased single-shot estimate of Tr(A):
//!
//! * **fixed-basis** — x uniform over the standard basis, estimate n·x†Ax;
//! * **MUBs** — a basis uniform over the p + 1 mutually unbiased bases, then
//!   x uniform within it, estimate n·x†Ax;
//! * **Hutchinson** — i.i.d. Rademacher entries, estimate x†Ax;
//! * **Gaussian** — i.i.d. standard normal entries, estimate x†Ax.
//!
//! Each sample runs on its own random stream keyed `(seed, sample index)`,
//! so estimates are reproducible bit for bit and samples can be evaluated in
//! any order. Probes carry the number of random bits actually consumed
//! (rejection retries included); [`random_bits_required`] reports the
//! theoretical minimum instead.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::oracle::{PaddedOracle, QuadraticFormOracle};
use crate::primes::{is_prime, next_prime_at_least, PrimeDim};
use crate::rng::{ceil_log2, RandomStream};
use crate::stats;
use crate::{mub, Real};

/// The four probe distributions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EstimatorKind {
    /// Uniform over the standard basis (the unit-vector estimator).
    FixedBasis,
    /// Uniform over all vectors of a maximal family of mutually unbiased
    /// bases; requires a prime dimension, so non-prime oracles are padded.
    Mubs,
    /// I.i.d. ±1 entries.
    Hutchinson,
    /// I.i.d. standard normal entries.
    Gaussian,
}

impl EstimatorKind {
    pub const ALL: [EstimatorKind; 4] = [
        EstimatorKind::FixedBasis,
        EstimatorKind::Mubs,
        EstimatorKind::Hutchinson,
        EstimatorKind::Gaussian,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EstimatorKind::FixedBasis => "fixed-basis",
            EstimatorKind::Mubs => "mubs",
            EstimatorKind::Hutchinson => "hutchinson",
            EstimatorKind::Gaussian => "gaussian",
        }
    }

    /// MUB probes are complex; the other strategies draw real vectors.
    pub fn uses_complex_probes(self) -> bool {
        matches!(self, EstimatorKind::Mubs)
    }
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EstimatorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fixed-basis" | "fixed" => Ok(EstimatorKind::FixedBasis),
            "mubs" | "mub" => Ok(EstimatorKind::Mubs),
            "hutchinson" => Ok(EstimatorKind::Hutchinson),
            "gaussian" => Ok(EstimatorKind::Gaussian),
            other => Err(format!(
                "unknown estimator '{other}' (expected fixed-basis, mubs, hutchinson or gaussian)"
            )),
        }
    }
}

/// One probe vector together with its estimator scale factor and the number
/// of random bits consumed to draw it.
#[derive(Clone, Debug)]
pub struct ProbeVector<F> {
    pub components: Vec<Complex<F>>,
    /// Multiplier turning `quad_form(components)` into the single-shot
    /// trace estimate: the dimension for the basis strategies, one for
    /// Hutchinson and Gaussian.
    pub scale: F,
    /// For the basis strategies and Hutchinson this is the exact count of
    /// bits drawn from the stream; Gaussian probes are booked at 64 bits
    /// per normal under the fixed-precision convention.
    pub bits_used: u64,
}

/// Aggregate of a multi-sample estimation run.
#[derive(Clone, Copy, Debug)]
pub struct TraceEstimate<F> {
    pub mean: F,
    /// Unbiased sample variance of the single shots (divisor s − 1);
    /// zero when only one sample was taken.
    pub sample_variance: F,
    pub samples: usize,
    /// Sum of `bits_used` over all probes.
    pub total_bits: u64,
}

/// Draws one probe for `kind` in dimension `n` from `stream`.
///
/// # Panics
///
/// Panics when `n = 0`, or for [`EstimatorKind::Mubs`] when `n` is not
/// prime — wrap the oracle in a [`PaddedOracle`] first (or use
/// [`estimate_trace`], which pads transparently).
pub fn draw_probe<F: Real>(
    kind: EstimatorKind,
    n: usize,
    stream: &mut RandomStream,
) -> ProbeVector<F> {
    assert!(n >= 1, "probes need a positive dimension");
    let start = stream.bits_delivered();
    match kind {
        EstimatorKind::FixedBasis => {
            let i = stream.uniform_below(n as u64) as usize;
            let mut components = vec![Complex::new(F::zero(), F::zero()); n];
            components[i] = Complex::new(F::one(), F::zero());
            ProbeVector {
                components,
                scale: F::from_usize(n).unwrap(),
                bits_used: stream.bits_delivered() - start,
            }
        }
        EstimatorKind::Mubs => {
            let p = PrimeDim::new(n)
                .expect("MUB probes require a prime dimension; pad the oracle first");
            let basis = stream.uniform_below((n + 1) as u64) as usize;
            let vector = stream.uniform_below(n as u64) as usize;
            ProbeVector {
                components: mub::mub_vector(p, basis, vector),
                scale: F::from_usize(n).unwrap(),
                bits_used: stream.bits_delivered() - start,
            }
        }
        EstimatorKind::Hutchinson => {
            let components = (0..n)
                .map(|_| {
                    let sign = if stream.rademacher() > 0 {
                        F::one()
                    } else {
                        -F::one()
                    };
                    Complex::new(sign, F::zero())
                })
                .collect();
            ProbeVector {
                components,
                scale: F::one(),
                bits_used: stream.bits_delivered() - start,
            }
        }
        EstimatorKind::Gaussian => {
            let mut components = Vec::with_capacity(n);
            while components.len() < n {
                let (a, b) = stream.normal_pair::<F>();
                components.push(Complex::new(a, F::zero()));
                if components.len() < n {
                    components.push(Complex::new(b, F::zero()));
                }
            }
            ProbeVector {
                components,
                scale: F::one(),
                bits_used: 64 * n as u64,
            }
        }
    }
}

/// The single-shot estimate `scale · quad_form(x)`.
pub fn single_shot<F: Real>(
    oracle: &(impl QuadraticFormOracle<F> + ?Sized),
    probe: &ProbeVector<F>,
) -> F {
    probe.scale * oracle.quad_form(&probe.components)
}

/// Averages `samples` independent single shots, each on its own stream
/// keyed `(seed, sample index)`. Deterministic for a fixed seed.
///
/// For [`EstimatorKind::Mubs`] on a non-prime dimension the oracle is
/// transparently zero-padded to the next prime, and the padded dimension is
/// used as the probe scale.
pub fn estimate_trace<F: Real>(
    oracle: &(impl QuadraticFormOracle<F> + ?Sized),
    kind: EstimatorKind,
    samples: usize,
    seed: u64,
) -> TraceEstimate<F> {
    assert!(samples >= 1, "at least one sample is required");
    let n = oracle.dim();
    if n == 0 {
        // The trace of an empty matrix is zero; no randomness is needed.
        return TraceEstimate {
            mean: F::zero(),
            sample_variance: F::zero(),
            samples,
            total_bits: 0,
        };
    }
    if kind == EstimatorKind::Mubs && !is_prime(n) {
        let padded = PaddedOracle::new(&oracle, next_prime_at_least(n.max(2)).get());
        return collect_shots(&padded, kind, samples, seed);
    }
    collect_shots(oracle, kind, samples, seed)
}

fn collect_shots<F: Real>(
    oracle: &(impl QuadraticFormOracle<F> + ?Sized),
    kind: EstimatorKind,
    samples: usize,
    seed: u64,
) -> TraceEstimate<F> {
    let n = oracle.dim();
    let mut shots = Vec::with_capacity(samples);
    let mut total_bits = 0u64;
    for index in 0..samples {
        let mut stream = RandomStream::new(seed, index as u64);
        let probe = draw_probe::<F>(kind, n, &mut stream);
        total_bits += probe.bits_used;
        shots.push(single_shot(oracle, &probe));
    }
    let mean = stats::mean(&shots);
    TraceEstimate {
        mean,
        sample_variance: stats::sample_variance(&shots, mean),
        samples,
        total_bits,
    }
}

/// Theoretical random-bit requirement of one probe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BitBudget {
    Finite(u64),
    /// Exact sampling needs unboundedly many bits; the fixed-precision
    /// convention books 64 bits per normal.
    UnboundedExact { fixed_precision: u64 },
}

impl BitBudget {
    /// The finite bit count, taking the fixed-precision value for
    /// distributions that cannot be sampled exactly.
    pub fn fixed_precision_bits(self) -> u64 {
        match self {
            BitBudget::Finite(b) => b,
            BitBudget::UnboundedExact { fixed_precision } => fixed_precision,
        }
    }
}

impl fmt::Display for BitBudget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BitBudget::Finite(b) => write!(f, "{b}"),
            BitBudget::UnboundedExact { fixed_precision } => {
                write!(f, "unbounded (exact); {fixed_precision} at fixed precision")
            }
        }
    }
}

/// Minimum random bits needed to draw one probe of dimension `n`:
/// ⌈log₂n⌉ for the fixed basis, ⌈log₂n⌉ + ⌈log₂(n+1)⌉ for MUBs, n for
/// Hutchinson, and unbounded (64·n at fixed precision) for Gaussian.
pub fn random_bits_required(kind: EstimatorKind, n: usize) -> BitBudget {
    let n_bits = u64::from(ceil_log2(n as u64));
    match kind {
        EstimatorKind::FixedBasis => BitBudget::Finite(n_bits),
        EstimatorKind::Mubs => BitBudget::Finite(n_bits + u64::from(ceil_log2(n as u64 + 1))),
        EstimatorKind::Hutchinson => BitBudget::Finite(n as u64),
        EstimatorKind::Gaussian => BitBudget::UnboundedExact {
            fixed_precision: 64 * n as u64,
        },
    }
}

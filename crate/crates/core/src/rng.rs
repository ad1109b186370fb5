//! Deterministic splittable random streams with exact bit accounting.
//!
//! Every stream is keyed by a `(seed, stream_id)` pair and is a counter-based
//! generator: the state advances by a per-stream odd increment and the output
//! is a strong 64-bit finaliser of the state (SplitMix64 style). Streams with
//! different ids are statistically independent, which lets callers assign one
//! stream per Monte Carlo sample and evaluate samples in any order — or in
//! parallel — without changing the results.
//!
//! The stream counts every bit it hands out. Uniform integers are drawn by
//! rejection sampling on `⌈log₂ m⌉`-bit blocks, so the consumed bit count is
//! at least the information-theoretic minimum and includes all retries.

/// 2^64 divided by the golden ratio; the canonical SplitMix64 increment.
const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finaliser (Stafford variant 13).
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds a list of tags into a base seed, producing a well-mixed derived
/// seed. Used to key streams by tuples such as (seed, estimator, samples,
/// trial).
pub fn compose_seed(base: u64, tags: &[u64]) -> u64 {
    let mut acc = mix64(base ^ GOLDEN_GAMMA);
    for &tag in tags {
        acc = mix64(acc.wrapping_add(GOLDEN_GAMMA) ^ mix64(tag));
    }
    acc
}

/// `⌈log₂ m⌉` for `m ≥ 1`; the number of bits needed to index `m` outcomes.
pub fn ceil_log2(m: u64) -> u32 {
    if m <= 1 {
        0
    } else {
        64 - (m - 1).leading_zeros()
    }
}

/// A deterministic random bit stream keyed by `(seed, stream_id)`.
///
/// Identical keys produce identical bit sequences; `bits_delivered` reports
/// exactly how many bits have been handed out so far.
#[derive(Clone, Debug)]
pub struct RandomStream {
    seed: u64,
    stream_id: u64,
    state: u64,
    gamma: u64,
    buffer: u64,
    buffered: u32,
    bits_delivered: u64,
}

impl RandomStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let state = mix64(seed).wrapping_add(stream_id.wrapping_mul(GOLDEN_GAMMA));
        // Per-stream odd increment, SplittableRandom style.
        let gamma = mix64(stream_id.wrapping_add(GOLDEN_GAMMA) ^ mix64(seed)) | 1;
        RandomStream {
            seed,
            stream_id,
            state,
            gamma,
            buffer: 0,
            buffered: 0,
            bits_delivered: 0,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Total number of random bits delivered so far.
    pub fn bits_delivered(&self) -> u64 {
        self.bits_delivered
    }

    #[inline]
    fn next_word(&mut self) -> u64 {
        self.state = self.state.wrapping_add(self.gamma);
        mix64(self.state)
    }

    /// Delivers `k` random bits, `1 ≤ k ≤ 63`, as the low bits of the result.
    pub fn next_bits(&mut self, k: u32) -> u64 {
        assert!((1..=63).contains(&k), "bit request {k} out of range");
        self.bits_delivered += u64::from(k);
        if self.buffered >= k {
            let out = self.buffer & ((1u64 << k) - 1);
            self.buffer >>= k;
            self.buffered -= k;
            return out;
        }
        let have = self.buffered;
        let need = k - have; // 1..=63
        let mut out = self.buffer;
        let raw = self.next_word();
        out |= (raw & ((1u64 << need) - 1)) << have;
        self.buffer = raw >> need;
        self.buffered = 64 - need;
        out
    }

    /// Uniform integer in `[0, m)` by rejection sampling on
    /// `⌈log₂ m⌉`-bit blocks. `m = 1` consumes no bits.
    pub fn uniform_below(&mut self, m: u64) -> u64 {
        assert!(m >= 1, "uniform_below requires m >= 1");
        if m == 1 {
            return 0;
        }
        let k = ceil_log2(m);
        loop {
            let v = self.next_bits(k);
            if v < m {
                return v;
            }
        }
    }

    /// A Rademacher variate: ±1 with equal probability, one bit.
    pub fn rademacher(&mut self) -> i32 {
        if self.next_bits(1) == 1 {
            1
        } else {
            -1
        }
    }

    /// Uniform in `[0, 1)` from 53 random bits.
    pub fn unit_uniform<F: crate::Real>(&mut self) -> F {
        let bits = self.next_bits(53);
        F::from_u64(bits).unwrap() * F::from_f64(2f64.powi(-53)).unwrap()
    }

    /// A pair of independent standard normals via Box–Muller, from two
    /// 53-bit uniforms.
    pub fn normal_pair<F: crate::Real>(&mut self) -> (F, F) {
        // u1 in (0, 1] so the logarithm is finite.
        let u1 = F::from_u64(self.next_bits(53) + 1).unwrap() * F::from_f64(2f64.powi(-53)).unwrap();
        let u2: F = self.unit_uniform();
        let r = (F::from_f64(-2.0).unwrap() * u1.ln()).sqrt();
        let theta = F::TAU() * u2;
        (r * theta.cos(), r * theta.sin())
    }
}

//! Prime certification and prime padding targets.

use std::fmt;

use crate::error::{Error, Result};

/// Primality by trial division over `6k ± 1` candidates, `O(√n)`.
pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5usize;
    while d <= n / d {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Smallest prime `p ≥ n`. By Bertrand's postulate `p < 2n`, so padding an
/// `n`-dimensional problem to dimension `p` at most doubles it.
pub fn next_prime_at_least(n: usize) -> PrimeDim {
    let mut candidate = n.max(2);
    loop {
        if is_prime(candidate) {
            return PrimeDim(candidate);
        }
        candidate += 1;
    }
}

/// A dimension that has been certified prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeDim(usize);

impl PrimeDim {
    /// Certifies `n` by trial division.
    pub fn new(n: usize) -> Result<Self> {
        if is_prime(n) {
            Ok(PrimeDim(n))
        } else {
            Err(Error::NotPrime {
                n,
                next: next_prime_at_least(n).get(),
            })
        }
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl fmt::Display for PrimeDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

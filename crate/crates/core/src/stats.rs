//! Order-fixed summation and moment helpers.
//!
//! All reductions here are sequential with Neumaier compensation, so a given
//! slice always produces the same value regardless of how the slice was
//! filled (sequentially or by parallel workers writing disjoint slots).

use crate::Real;

/// Neumaier-compensated sum in slice order.
pub fn compensated_sum<F: Real>(values: &[F]) -> F {
    let mut sum = F::zero();
    let mut comp = F::zero();
    for &v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

pub fn mean<F: Real>(values: &[F]) -> F {
    assert!(!values.is_empty(), "mean of empty slice");
    compensated_sum(values) / F::from_usize(values.len()).unwrap()
}

/// Unbiased sample variance (divisor `len − 1`); zero when `len < 2`.
pub fn sample_variance<F: Real>(values: &[F], mean: F) -> F {
    if values.len() < 2 {
        return F::zero();
    }
    let sq: Vec<F> = values.iter().map(|&v| (v - mean) * (v - mean)).collect();
    compensated_sum(&sq) / F::from_usize(values.len() - 1).unwrap()
}

/// Population variance (divisor `len`), for fully enumerated distributions.
pub fn population_variance<F: Real>(values: &[F], mean: F) -> F {
    assert!(!values.is_empty(), "variance of empty slice");
    let sq: Vec<F> = values.iter().map(|&v| (v - mean) * (v - mean)).collect();
    compensated_sum(&sq) / F::from_usize(values.len()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensation_beats_naive_summation() {
        let values = vec![1e16f64, 1.0, -1e16, 1.0];
        assert_eq!(compensated_sum(&values), 2.0);
    }

    #[test]
    fn small_integer_cases_are_exact() {
        let values = vec![3.0f64, 0.0, 0.0];
        let m = mean(&values);
        assert_eq!(m, 1.0);
        assert_eq!(population_variance(&values, m), 2.0);
    }

    #[test]
    fn sample_variance_of_singleton_is_zero() {
        assert_eq!(sample_variance(&[5.0f64], 5.0), 0.0);
    }
}

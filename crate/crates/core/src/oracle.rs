//! Matrix-free access to the quadratic form x†Ax.
//!
//! Estimators only ever touch a matrix through [`QuadraticFormOracle`];
//! power oracles additionally need a matrix-vector product, expressed by the
//! [`MatVecOracle`] capability. Both dense and sparse symmetric storage are
//! provided, plus composable wrappers for matrix powers and zero padding.
//!
//! All quadratic forms here exploit symmetry: the off-diagonal pairs
//! (i, j), (j, i) are folded into `2·A_ij·Re(conj(x_i)·x_j)`, so the result
//! is computed as a sum of real terms and the imaginary part of x†Ax — which
//! vanishes mathematically for real-symmetric A — never appears at all.

use num_complex::Complex;

use crate::Real;

/// Black-box access to x†Ax for an n×n real-symmetric matrix A.
///
/// The value is real for every complex probe x. Quadratic scaling holds:
/// `quad_form(c·x) = |c|²·quad_form(x)`.
pub trait QuadraticFormOracle<F: Real> {
    fn dim(&self) -> usize;

    /// Re(x†Ax). Panics when `x.len() != dim()`.
    fn quad_form(&self, x: &[Complex<F>]) -> F;
}

/// Additional matrix-vector product capability, required to build
/// [`PowerOracle`]s.
pub trait MatVecOracle<F: Real>: QuadraticFormOracle<F> {
    /// A·x. Panics when `x.len() != dim()`.
    fn matvec(&self, x: &[Complex<F>]) -> Vec<Complex<F>>;
}

impl<F: Real, T: QuadraticFormOracle<F> + ?Sized> QuadraticFormOracle<F> for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn quad_form(&self, x: &[Complex<F>]) -> F {
        (**self).quad_form(x)
    }
}

impl<F: Real, T: MatVecOracle<F> + ?Sized> MatVecOracle<F> for &T {
    fn matvec(&self, x: &[Complex<F>]) -> Vec<Complex<F>> {
        (**self).matvec(x)
    }
}

/// Re(conj(u)·v).
#[inline]
fn cross_re<F: Real>(u: Complex<F>, v: Complex<F>) -> F {
    u.re * v.re + u.im * v.im
}

/// Dense symmetric matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<F> {
    n: usize,
    entries: Vec<F>,
}

impl<F: Real> DenseMatrix<F> {
    /// Builds from `n²` row-major entries; rejects asymmetric input.
    pub fn from_rows(n: usize, entries: Vec<F>) -> crate::Result<Self> {
        assert_eq!(entries.len(), n * n, "expected {} entries", n * n);
        for i in 0..n {
            for j in (i + 1)..n {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(crate::Error::NotSymmetric { i, j });
                }
            }
        }
        Ok(DenseMatrix { n, entries })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![F::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = F::one();
        }
        DenseMatrix { n, entries }
    }

    pub fn diagonal(values: &[F]) -> Self {
        let n = values.len();
        let mut entries = vec![F::zero(); n * n];
        for (i, &v) in values.iter().enumerate() {
            entries[i * n + i] = v;
        }
        DenseMatrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        self.entries[i * self.n + j]
    }

    pub fn trace(&self) -> F {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Tr(A²) = Σᵢⱼ A_ij² for symmetric A.
    pub fn trace_of_square(&self) -> F {
        self.entries.iter().map(|&v| v * v).sum()
    }

    /// Σᵢ A_ii².
    pub fn diagonal_square_sum(&self) -> F {
        (0..self.n).map(|i| self.get(i, i) * self.get(i, i)).sum()
    }

    /// Naive n³ product; used to build explicit references for small
    /// matrices (e.g. A³ when cross-checking a power oracle).
    pub fn matmul(&self, rhs: &DenseMatrix<F>) -> DenseMatrix<F> {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = vec![F::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == F::zero() {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * rhs.entries[k * n + j];
                }
            }
        }
        DenseMatrix { n, entries: out }
    }

    pub fn to_sparse(&self) -> SparseSymmetric<F> {
        let mut entries = Vec::new();
        for i in 0..self.n {
            for j in i..self.n {
                let v = self.get(i, j);
                if v != F::zero() {
                    entries.push((i as u32, j as u32, v));
                }
            }
        }
        SparseSymmetric {
            n: self.n,
            entries,
        }
    }
}

impl<F: Real> QuadraticFormOracle<F> for DenseMatrix<F> {
    fn dim(&self) -> usize {
        self.n
    }

    fn quad_form(&self, x: &[Complex<F>]) -> F {
        assert_eq!(x.len(), self.n, "dimension mismatch");
        let n = self.n;
        let mut acc = F::zero();
        for i in 0..n {
            let row = &self.entries[i * n..(i + 1) * n];
            acc += row[i] * x[i].norm_sqr();
            for j in (i + 1)..n {
                let a = row[j];
                if a != F::zero() {
                    acc += (a + a) * cross_re(x[i], x[j]);
                }
            }
        }
        acc
    }
}

impl<F: Real> MatVecOracle<F> for DenseMatrix<F> {
    fn matvec(&self, x: &[Complex<F>]) -> Vec<Complex<F>> {
        assert_eq!(x.len(), self.n, "dimension mismatch");
        let n = self.n;
        (0..n)
            .map(|i| {
                let row = &self.entries[i * n..(i + 1) * n];
                row.iter()
                    .zip(x)
                    .fold(Complex::new(F::zero(), F::zero()), |acc, (&a, &xj)| {
                        acc + xj * a
                    })
            })
            .collect()
    }
}

/// Sparse symmetric matrix in coordinate form; only the upper triangle
/// (i ≤ j) is stored, sorted and deduplicated.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseSymmetric<F> {
    n: usize,
    entries: Vec<(u32, u32, F)>,
}

impl<F: Real> SparseSymmetric<F> {
    /// Normalises coordinates to i ≤ j and sorts them; rejects duplicates
    /// and out-of-range indices.
    pub fn new(n: usize, raw: Vec<(usize, usize, F)>) -> crate::Result<Self> {
        let mut entries: Vec<(u32, u32, F)> = raw
            .into_iter()
            .map(|(i, j, v)| {
                assert!(i < n && j < n, "entry ({i}, {j}) out of range for n = {n}");
                let (a, b) = if i <= j { (i, j) } else { (j, i) };
                (a as u32, b as u32, v)
            })
            .collect();
        entries.sort_by_key(|&(i, j, _)| (i, j));
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                return Err(crate::Error::DuplicateEntry {
                    i: w[0].0 as usize,
                    j: w[0].1 as usize,
                });
            }
        }
        Ok(SparseSymmetric { n, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Stored (upper-triangle) entries, sorted by (i, j).
    pub fn entries(&self) -> &[(u32, u32, F)] {
        &self.entries
    }

    pub fn trace(&self) -> F {
        self.entries
            .iter()
            .filter(|&&(i, j, _)| i == j)
            .map(|&(_, _, v)| v)
            .sum()
    }

    pub fn to_dense(&self) -> DenseMatrix<F> {
        let n = self.n;
        let mut entries = vec![F::zero(); n * n];
        for &(i, j, v) in &self.entries {
            entries[i as usize * n + j as usize] = v;
            entries[j as usize * n + i as usize] = v;
        }
        DenseMatrix { n, entries }
    }
}

impl<F: Real> QuadraticFormOracle<F> for SparseSymmetric<F> {
    fn dim(&self) -> usize {
        self.n
    }

    fn quad_form(&self, x: &[Complex<F>]) -> F {
        assert_eq!(x.len(), self.n, "dimension mismatch");
        let mut acc = F::zero();
        for &(i, j, v) in &self.entries {
            let (i, j) = (i as usize, j as usize);
            if i == j {
                acc += v * x[i].norm_sqr();
            } else {
                acc += (v + v) * cross_re(x[i], x[j]);
            }
        }
        acc
    }
}

impl<F: Real> MatVecOracle<F> for SparseSymmetric<F> {
    fn matvec(&self, x: &[Complex<F>]) -> Vec<Complex<F>> {
        assert_eq!(x.len(), self.n, "dimension mismatch");
        let mut y = vec![Complex::new(F::zero(), F::zero()); self.n];
        for &(i, j, v) in &self.entries {
            let (i, j) = (i as usize, j as usize);
            y[i] += x[j] * v;
            if i != j {
                y[j] += x[i] * v;
            }
        }
        y
    }
}

/// x†Aᵏx through repeated matrix-vector products: ⌊k/2⌋ products plus one
/// quadratic form (x†A³x = (Ax)†A(Ax) for symmetric A). Aᵏ is never formed.
#[derive(Clone, Debug)]
pub struct PowerOracle<O> {
    base: O,
    exponent: usize,
}

impl<O> PowerOracle<O> {
    pub fn new(base: O, exponent: usize) -> Self {
        assert!(exponent >= 1, "exponent must be at least 1");
        PowerOracle { base, exponent }
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }
}

impl<F: Real, O: MatVecOracle<F>> QuadraticFormOracle<F> for PowerOracle<O> {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn quad_form(&self, x: &[Complex<F>]) -> F {
        assert_eq!(x.len(), self.base.dim(), "dimension mismatch");
        let half = self.exponent / 2;
        let mut y = x.to_vec();
        for _ in 0..half {
            y = self.base.matvec(&y);
        }
        if self.exponent % 2 == 1 {
            self.base.quad_form(&y)
        } else {
            y.iter().map(|c| c.norm_sqr()).sum()
        }
    }
}

impl<F: Real, O: MatVecOracle<F>> MatVecOracle<F> for PowerOracle<O> {
    fn matvec(&self, x: &[Complex<F>]) -> Vec<Complex<F>> {
        let mut y = x.to_vec();
        for _ in 0..self.exponent {
            y = self.base.matvec(&y);
        }
        y
    }
}

/// Embeds an oracle into a larger dimension by appending zero rows and
/// columns. The trace of the represented matrix is unchanged.
#[derive(Clone, Debug)]
pub struct PaddedOracle<O> {
    base: O,
    padded_dim: usize,
}

impl<O> PaddedOracle<O> {
    pub fn new<F: Real>(base: O, padded_dim: usize) -> Self
    where
        O: QuadraticFormOracle<F>,
    {
        assert!(
            padded_dim >= base.dim(),
            "padded dimension {padded_dim} is smaller than the base dimension {}",
            base.dim()
        );
        PaddedOracle { base, padded_dim }
    }
}

impl<F: Real, O: QuadraticFormOracle<F>> QuadraticFormOracle<F> for PaddedOracle<O> {
    fn dim(&self) -> usize {
        self.padded_dim
    }

    fn quad_form(&self, x: &[Complex<F>]) -> F {
        assert_eq!(x.len(), self.padded_dim, "dimension mismatch");
        self.base.quad_form(&x[..self.base.dim()])
    }
}

impl<F: Real, O: MatVecOracle<F>> MatVecOracle<F> for PaddedOracle<O> {
    fn matvec(&self, x: &[Complex<F>]) -> Vec<Complex<F>> {
        assert_eq!(x.len(), self.padded_dim, "dimension mismatch");
        let mut y = self.base.matvec(&x[..self.base.dim()]);
        y.resize(self.padded_dim, Complex::new(F::zero(), F::zero()));
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RandomStream;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn real_vec(values: &[f64]) -> Vec<Complex<f64>> {
        values.iter().map(|&v| c(v, 0.0)).collect()
    }

    /// Random symmetric matrix with entries in [-1, 1].
    fn random_symmetric(n: usize, seed: u64) -> DenseMatrix<f64> {
        let mut stream = RandomStream::new(seed, 0);
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = 2.0 * stream.unit_uniform::<f64>() - 1.0;
                entries[i * n + j] = v;
                entries[j * n + i] = v;
            }
        }
        DenseMatrix::from_rows(n, entries).unwrap()
    }

    fn random_complex_vec(n: usize, seed: u64) -> Vec<Complex<f64>> {
        let mut stream = RandomStream::new(seed, 1);
        (0..n)
            .map(|_| {
                c(
                    2.0 * stream.unit_uniform::<f64>() - 1.0,
                    2.0 * stream.unit_uniform::<f64>() - 1.0,
                )
            })
            .collect()
    }

    #[test]
    fn dense_identity_examples() {
        let id = DenseMatrix::<f64>::identity(3);
        assert_eq!(id.quad_form(&real_vec(&[1.0, 0.0, 0.0])), 1.0);
        let unit = real_vec(&[0.6, 0.8, 0.0]);
        assert_relative_eq!(id.quad_form(&unit), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn dense_diagonal_average() {
        let d = DenseMatrix::diagonal(&[1.0, 2.0, 3.0]);
        let s = 1.0 / 3f64.sqrt();
        assert_relative_eq!(d.quad_form(&real_vec(&[s, s, s])), 2.0, epsilon = 1e-15);
    }

    #[test]
    fn from_rows_rejects_asymmetric() {
        let err = DenseMatrix::from_rows(2, vec![1.0, 2.0, 3.0, 4.0]).unwrap_err();
        assert!(matches!(err, crate::Error::NotSymmetric { i: 0, j: 1 }));
    }

    fn k3() -> SparseSymmetric<f64> {
        SparseSymmetric::new(3, vec![(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)]).unwrap()
    }

    #[test]
    fn sparse_examples() {
        assert_eq!(k3().quad_form(&real_vec(&[1.0, 1.0, 1.0])), 6.0);
        let empty = SparseSymmetric::<f64>::new(4, vec![]).unwrap();
        assert_eq!(empty.quad_form(&random_complex_vec(4, 3)), 0.0);
        let path = SparseSymmetric::new(2, vec![(0, 1, 1.0)]).unwrap();
        assert_eq!(path.quad_form(&real_vec(&[1.0, 1.0])), 2.0);
    }

    #[test]
    fn sparse_rejects_duplicates_even_mirrored() {
        let err = SparseSymmetric::new(3, vec![(0, 1, 1.0), (1, 0, 2.0)]).unwrap_err();
        assert!(matches!(err, crate::Error::DuplicateEntry { i: 0, j: 1 }));
    }

    #[test]
    fn power_oracle_examples() {
        let id = DenseMatrix::<f64>::identity(4);
        let cubed = PowerOracle::new(&id, 3);
        let x = random_complex_vec(4, 9);
        let norm_sq: f64 = x.iter().map(|c| c.norm_sqr()).sum();
        assert_relative_eq!(cubed.quad_form(&x), norm_sq, epsilon = 1e-12);

        // A³ of the triangle graph has diagonal 2.
        let k3 = k3();
        let cubed = PowerOracle::new(&k3, 3);
        assert_relative_eq!(
            cubed.quad_form(&real_vec(&[1.0, 0.0, 0.0])),
            2.0,
            epsilon = 1e-12
        );

        let scalar = DenseMatrix::diagonal(&[2.0]);
        let cubed = PowerOracle::new(&scalar, 3);
        assert_eq!(cubed.quad_form(&real_vec(&[1.0])), 8.0);
    }

    #[test]
    fn power_oracle_matches_explicit_cube() {
        for n in [5usize, 17, 50] {
            let a = random_symmetric(n, 100 + n as u64);
            let a3 = a.matmul(&a).matmul(&a);
            let oracle = PowerOracle::new(&a, 3);
            for probe in 0..4 {
                let x = random_complex_vec(n, 1000 + probe);
                let direct = a3.quad_form(&x);
                let via_oracle = oracle.quad_form(&x);
                assert_relative_eq!(via_oracle, direct, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn even_powers_use_the_norm() {
        let a = random_symmetric(8, 4);
        let a2 = a.matmul(&a);
        let sq = PowerOracle::new(&a, 2);
        let x = random_complex_vec(8, 5);
        assert_relative_eq!(sq.quad_form(&x), a2.quad_form(&x), max_relative = 1e-12);
    }

    #[test]
    fn padded_oracle_examples() {
        let id = DenseMatrix::<f64>::identity(3);
        let padded = PaddedOracle::new(&id, 5);
        assert_eq!(padded.dim(), 5);
        assert_eq!(padded.quad_form(&real_vec(&[0.0, 0.0, 0.0, 1.0, 0.0])), 0.0);
        assert_eq!(padded.quad_form(&real_vec(&[1.0, 0.0, 0.0, 0.0, 0.0])), 1.0);
    }

    #[test]
    fn padding_preserves_supported_quad_forms_exactly() {
        let a = random_symmetric(6, 8);
        let padded = PaddedOracle::new(&a, 11);
        for probe in 0..4 {
            let x = random_complex_vec(6, 2000 + probe);
            let mut big = x.clone();
            big.resize(11, c(0.0, 0.0));
            assert_eq!(a.quad_form(&x), padded.quad_form(&big));
        }
    }

    #[test]
    fn padded_matvec_appends_zeros() {
        let path = SparseSymmetric::new(2, vec![(0, 1, 1.0)]).unwrap();
        let y = path.matvec(&real_vec(&[1.0, 0.0]));
        assert_eq!(y, real_vec(&[0.0, 1.0]));
        let padded = PaddedOracle::new(&path, 4);
        let y = padded.matvec(&real_vec(&[1.0, 0.0, 0.0, 0.0]));
        assert_eq!(y, real_vec(&[0.0, 1.0, 0.0, 0.0]));
    }

    #[test]
    fn dense_and_sparse_agree_both_ways() {
        for n in [3usize, 7, 12] {
            let dense = random_symmetric(n, 40 + n as u64);
            let sparse = dense.to_sparse();
            let back = sparse.to_dense();
            assert_eq!(dense, back);
            for probe in 0..4 {
                let x = random_complex_vec(n, 3000 + probe);
                assert_relative_eq!(
                    dense.quad_form(&x),
                    sparse.quad_form(&x),
                    max_relative = 1e-12
                );
            }
        }
    }

    proptest! {
        #[test]
        fn quad_form_scales_quadratically(
            seed in 0u64..1000,
            re in -2.0f64..2.0,
            im in -2.0f64..2.0,
        ) {
            let a = random_symmetric(6, seed);
            let x = random_complex_vec(6, seed.wrapping_add(1));
            let scale = Complex::new(re, im);
            let scaled: Vec<_> = x.iter().map(|&v| v * scale).collect();
            let lhs = a.quad_form(&scaled);
            let rhs = scale.norm_sqr() * a.quad_form(&x);
            prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + rhs.abs()));
        }
    }
}

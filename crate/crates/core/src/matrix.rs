//! Dense complex matrices and vectors, plus the vectorization calculus used
//! throughout the crate.
//!
//! Storage is row-major. The vectorization `vec` stacks rows, so the entry
//! `(m, mu)` of a matrix lands at flat index `m * cols + mu`, i.e.
//! `vec(|m><mu|) = |m> (x) |mu|>`. Under this convention:
//!
//! * `<vec(X), vec(Y)> = tr(X^dag Y)` (vectorization is an isometry),
//! * `(A (x) B) vec(X) = vec(A X B^T)`,
//! * tracing out the second tensor factor of `vec(A) vec(B)^dag` gives
//!   `A B^dag`, tracing out the first gives `(B^dag A)^T`.
//!
//! Shape and dimension mismatches are programmer errors and panic; data
//! validation for untrusted input goes through [`ComplexMatrix::try_new`].

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense complex matrix with row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

/// Dense complex column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector<T> {
    data: Vec<Complex<T>>,
}

impl<T: Scalar> ComplexMatrix<T> {
    /// Builds a matrix from row-major entries; panics if the entry count is
    /// wrong. Use [`ComplexMatrix::try_new`] for untrusted data.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Self {
        assert_eq!(
            rows * cols,
            data.len(),
            "matrix {rows}x{cols} needs {} entries, got {}",
            rows * cols,
            data.len()
        );
        Self { rows, cols, data }
    }

    /// Fallible constructor: checks the entry count and that every entry is
    /// finite.
    pub fn try_new(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::EntryCount { rows, cols, len: data.len() });
        }
        for (k, z) in data.iter().enumerate() {
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NonFinite { row: k / cols.max(1), col: k % cols.max(1) });
            }
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex::new(T::zero(), T::zero()); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex::new(T::one(), T::zero()));
        }
        m
    }

    /// The matrix unit `|i><j|`.
    pub fn matrix_unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.set(i, j, Complex::new(T::one(), T::zero()));
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn diagonal(entries: &[Complex<T>]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &z) in entries.iter().enumerate() {
            m.set(i, i, z);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Matrix product `self * other`; panics on inner-dimension mismatch.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.re.is_zero() && a.im.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx] + a * other.get(k, j);
                }
            }
        }
        out
    }

    /// Matrix-vector product; panics on dimension mismatch.
    pub fn apply_vec(&self, v: &ComplexVector<T>) -> ComplexVector<T> {
        assert_eq!(self.cols, v.dim(), "matrix-vector dimensions differ");
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.rows];
        for i in 0..self.rows {
            let mut acc = Complex::new(T::zero(), T::zero());
            for j in 0..self.cols {
                acc = acc + self.get(i, j) * v.data[j];
            }
            out[i] = acc;
        }
        ComplexVector::new(out)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn trace(&self) -> Complex<T> {
        assert!(self.is_square(), "trace of a non-square matrix");
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..self.rows {
            acc = acc + self.get(i, i);
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| *a + *b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| *a - *b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, z: Complex<T>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| *a * z).collect() }
    }

    pub fn scale_re(&self, s: T) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.scale(s)).collect() }
    }

    /// Kronecker product; the row index of the result is `(i_self, i_other)`
    /// with the second factor minor, matching the row-major `vec` convention.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.re.is_zero() && a.im.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Row-major vectorization: entry `(m, mu)` lands at index `m*cols + mu`.
    pub fn vec(&self) -> ComplexVector<T> {
        ComplexVector::new(self.data.clone())
    }

    /// Inverse of [`ComplexMatrix::vec`]; panics if `v.dim() != rows * cols`.
    pub fn unvec(v: &ComplexVector<T>, rows: usize, cols: usize) -> Self {
        assert_eq!(v.dim(), rows * cols, "unvec dimension mismatch");
        Self { rows, cols, data: v.data.clone() }
    }

    pub fn frobenius_norm(&self) -> T {
        let mut acc = T::zero();
        for z in &self.data {
            acc = acc + z.norm_sqr();
        }
        acc.sqrt()
    }

    pub fn max_abs(&self) -> T {
        let mut m = T::zero();
        for z in &self.data {
            let a = z.norm();
            if a > m {
                m = a;
            }
        }
        m
    }

    /// Frobenius norm of `self - self^dag` (zero for Hermitian matrices).
    pub fn hermitian_deviation(&self) -> T {
        assert!(self.is_square(), "hermitian_deviation of a non-square matrix");
        let mut acc = T::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = self.get(i, j) - self.get(j, i).conj();
                acc = acc + d.norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// Hermiticity test, relative to the matrix scale:
    /// `||H - H^dag|| <= tol * max(1, ||H||)` in Frobenius norm.
    pub fn is_hermitian_within(&self, tol: T) -> bool {
        self.hermitian_deviation() <= tol * T::max(T::one(), self.frobenius_norm())
    }

    /// Frobenius norm of `self^dag * self - I`.
    pub fn unitary_deviation(&self) -> T {
        assert!(self.is_square(), "unitary_deviation of a non-square matrix");
        self.dagger().matmul(self).sub(&Self::identity(self.rows)).frobenius_norm()
    }

    pub fn is_unitary_within(&self, tol: T) -> bool {
        self.unitary_deviation() <= tol
    }

    /// Partial trace over the second tensor factor of an operator on
    /// `H_A (x) H_B`; the result acts on `H_A`. For `vec(A) vec(B)^dag`
    /// this yields `A B^dag`.
    pub fn ptrace_second(&self, da: usize, db: usize) -> Self {
        assert!(self.is_square(), "partial trace of a non-square matrix");
        assert_eq!(self.rows, da * db, "partial trace dimensions do not factor the matrix");
        let mut out = Self::zeros(da, da);
        for a in 0..da {
            for ap in 0..da {
                let mut acc = Complex::new(T::zero(), T::zero());
                for b in 0..db {
                    acc = acc + self.get(a * db + b, ap * db + b);
                }
                out.set(a, ap, acc);
            }
        }
        out
    }

    /// Partial trace over the first tensor factor; the result acts on `H_B`.
    /// For `vec(A) vec(B)^dag` this yields `(B^dag A)^T`.
    pub fn ptrace_first(&self, da: usize, db: usize) -> Self {
        assert!(self.is_square(), "partial trace of a non-square matrix");
        assert_eq!(self.rows, da * db, "partial trace dimensions do not factor the matrix");
        let mut out = Self::zeros(db, db);
        for b in 0..db {
            for bp in 0..db {
                let mut acc = Complex::new(T::zero(), T::zero());
                for a in 0..da {
                    acc = acc + self.get(a * db + b, a * db + bp);
                }
                out.set(b, bp, acc);
            }
        }
        out
    }
}

impl<T: Scalar> ComplexVector<T> {
    pub fn new(data: Vec<Complex<T>>) -> Self {
        Self { data }
    }

    pub fn zeros(n: usize) -> Self {
        Self { data: vec![Complex::new(T::zero(), T::zero()); n] }
    }

    /// Standard basis vector `|i>` in dimension `n`.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.data[i] = Complex::new(T::one(), T::zero());
        v
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize) -> Complex<T> {
        self.data[i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: Complex<T>) {
        self.data[i] = v;
    }

    /// Inner product, conjugate-linear in `self`: `<self, other>`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        assert_eq!(self.dim(), other.dim(), "inner product dimension mismatch");
        let mut acc = Complex::new(T::zero(), T::zero());
        for (a, b) in self.data.iter().zip(&other.data) {
            acc = acc + a.conj() * *b;
        }
        acc
    }

    pub fn norm(&self) -> T {
        let mut acc = T::zero();
        for z in &self.data {
            acc = acc + z.norm_sqr();
        }
        acc.sqrt()
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "sub dimension mismatch");
        Self { data: self.data.iter().zip(&other.data).map(|(a, b)| *a - *b).collect() }
    }

    pub fn scale(&self, z: Complex<T>) -> Self {
        Self { data: self.data.iter().map(|a| *a * z).collect() }
    }

    pub fn scale_re(&self, s: T) -> Self {
        Self { data: self.data.iter().map(|a| a.scale(s)).collect() }
    }

    /// Tensor product `|self> (x) |other>`, second factor minor.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut data = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.data {
            for b in &other.data {
                data.push(*a * *b);
            }
        }
        Self { data }
    }

    /// Outer product `|self><other|`.
    pub fn outer(&self, other: &Self) -> ComplexMatrix<T> {
        let mut out = ComplexMatrix::zeros(self.dim(), other.dim());
        for i in 0..self.dim() {
            for j in 0..other.dim() {
                out.set(i, j, self.data[i] * other.data[j].conj());
            }
        }
        out
    }
}

/// Hilbert-Schmidt inner product `tr(X^dag Y)`, conjugate-linear in `X`;
/// panics on shape mismatch. Computed entrywise, which equals the trace
/// formula exactly.
pub fn hs_inner<T: Scalar>(x: &ComplexMatrix<T>, y: &ComplexMatrix<T>) -> Complex<T> {
    assert_eq!((x.rows, x.cols), (y.rows, y.cols), "hs_inner shape mismatch");
    let mut acc = Complex::new(T::zero(), T::zero());
    for (a, b) in x.data.iter().zip(&y.data) {
        acc = acc + a.conj() * *b;
    }
    acc
}

#[inline]
fn swapped_index(i: usize, d0: usize, d1: usize, d2: usize, d3: usize) -> usize {
    debug_assert!(i < d0 * d1 * d2 * d3);
    // Decompose i over factors (a, b, c, d) with dims (d0, d1, d2, d3)...
    let d = i % d3;
    let c = (i / d3) % d2;
    let b = (i / (d3 * d2)) % d1;
    let a = i / (d3 * d2 * d1);
    // ...and reassemble over (a, c, b, d) with dims (d0, d2, d1, d3).
    ((a * d2 + c) * d1 + b) * d3 + d
}

/// Reindexes a vector on a four-factor tensor space, swapping the two middle
/// factors: `(a, b, c, d) -> (a, c, b, d)`.
///
/// With `dims = (dA, dB, dA, dB)` this realizes the identity
/// `vec(X (x) Z) -> vec(X) (x) vec(Z)` for `X` on `H_A` and `Z` on `H_B`.
pub fn swap_inner_factors_vec<T: Scalar>(
    v: &ComplexVector<T>,
    dims: (usize, usize, usize, usize),
) -> ComplexVector<T> {
    let (d0, d1, d2, d3) = dims;
    assert_eq!(v.dim(), d0 * d1 * d2 * d3, "factor dims do not match vector length");
    let mut out = ComplexVector::zeros(v.dim());
    for i in 0..v.dim() {
        out.data[swapped_index(i, d0, d1, d2, d3)] = v.data[i];
    }
    out
}

/// Conjugates an operator on a four-factor tensor space by the middle-factor
/// swap: rows and columns are reindexed `(a, b, c, d) -> (a, c, b, d)`.
///
/// With `dims = (dL, dR, dL, dR)` this turns an operator on
/// `(H_L (x) H_R)^(x)2` into one on `(H_L^(x)2) (x) (H_R^(x)2)`.
pub fn swap_inner_factors_mat<T: Scalar>(
    m: &ComplexMatrix<T>,
    dims: (usize, usize, usize, usize),
) -> ComplexMatrix<T> {
    let (d0, d1, d2, d3) = dims;
    let n = d0 * d1 * d2 * d3;
    assert!(m.is_square() && m.rows() == n, "factor dims do not match matrix shape");
    let perm: Vec<usize> = (0..n).map(|i| swapped_index(i, d0, d1, d2, d3)).collect();
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(perm[i], perm[j], m.get(i, j));
        }
    }
    out
}

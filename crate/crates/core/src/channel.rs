//! Quantum channels in Kraus form, their Choi operators, and density
//! matrices.
//!
//! A channel is any completely positive map given by a finite Kraus family
//! `{M_j}`; trace preservation and unitality are *predicates*, not
//! construction requirements, so trace-decreasing components (e.g. the pieces
//! returned by a bi-orthogonal decomposition) are first-class values.

use num_complex::Complex;

use crate::eig::hermitian_eig;
use crate::error::{Error, Result};
use crate::matrix::{hs_inner, ComplexMatrix, ComplexVector};
use crate::scalar::Scalar;

/// Default tolerance for the trace-preserving / unital predicates.
pub const PREDICATE_TOL: f64 = 1e-8;

/// Default clipping tolerance for positive-semidefiniteness: eigenvalues in
/// `[-PSD_CLIP_TOL, 0)` are treated as zero, more negative ones are errors.
pub const PSD_CLIP_TOL: f64 = 1e-10;

/// Absolute tolerance on traces of density matrices.
pub const TRACE_TOL: f64 = 1e-9;

/// A completely positive map `rho -> sum_j M_j rho M_j^dag` on `C^dim`.
///
/// The deviations `||sum M^dag M - I||` and `||sum M M^dag - I||` (Frobenius)
/// are computed once at construction and cached for the predicates.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel<T> {
    dim: usize,
    kraus: Vec<ComplexMatrix<T>>,
    tp_deviation: T,
    unital_deviation: T,
}

impl<T: Scalar> KrausChannel<T> {
    /// Builds a channel from a non-empty family of square matrices of equal
    /// dimension.
    pub fn new(kraus: Vec<ComplexMatrix<T>>) -> Result<Self> {
        let first = kraus.first().ok_or(Error::EmptyKraus)?;
        if !first.is_square() {
            return Err(Error::DimMismatch { expected: first.rows(), found: first.cols() });
        }
        let dim = first.rows();
        for m in &kraus {
            if !(m.is_square() && m.rows() == dim) {
                return Err(Error::DimMismatch { expected: dim, found: m.rows().max(m.cols()) });
            }
            if !m.is_finite() {
                return Err(Error::NonFinite { row: 0, col: 0 });
            }
        }
        let id = ComplexMatrix::identity(dim);
        let mut sum_mm = ComplexMatrix::zeros(dim, dim);
        let mut sum_mm_dag = ComplexMatrix::zeros(dim, dim);
        for m in &kraus {
            sum_mm = sum_mm.add(&m.dagger().matmul(m));
            sum_mm_dag = sum_mm_dag.add(&m.matmul(&m.dagger()));
        }
        let tp_deviation = sum_mm.sub(&id).frobenius_norm();
        let unital_deviation = sum_mm_dag.sub(&id).frobenius_norm();
        Ok(Self { dim, kraus, tp_deviation, unital_deviation })
    }

    /// The unitary conjugation `rho -> U rho U^dag`; rejects non-unitary `U`.
    pub fn from_unitary(u: ComplexMatrix<T>) -> Result<Self> {
        let dev = u.unitary_deviation();
        if dev > T::real(PREDICATE_TOL) {
            return Err(Error::NotUnitary { deviation: dev.as_f64(), tol: PREDICATE_TOL });
        }
        Self::new(vec![u])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus(&self) -> &[ComplexMatrix<T>] {
        &self.kraus
    }

    /// Cached Frobenius deviation of `sum M^dag M` from the identity.
    pub fn tp_deviation(&self) -> T {
        self.tp_deviation
    }

    /// Cached Frobenius deviation of `sum M M^dag` from the identity.
    pub fn unital_deviation(&self) -> T {
        self.unital_deviation
    }

    pub fn is_trace_preserving(&self, tol: T) -> bool {
        self.tp_deviation <= tol
    }

    pub fn is_unital(&self, tol: T) -> bool {
        self.unital_deviation <= tol
    }

    pub fn is_bistochastic(&self, tol: T) -> bool {
        self.is_trace_preserving(tol) && self.is_unital(tol)
    }

    /// Applies the map to an arbitrary operator: `sum_j M_j X M_j^dag`.
    pub fn apply_op(&self, x: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        assert_eq!(x.rows(), self.dim, "operator dimension mismatch");
        assert!(x.is_square(), "channels act on square operators");
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for m in &self.kraus {
            out = out.add(&m.matmul(x).matmul(&m.dagger()));
        }
        out
    }

    /// Applies the map to a state; the output is validated as a state, which
    /// holds whenever the channel is trace-preserving.
    pub fn apply(&self, rho: &DensityMatrix<T>) -> Result<DensityMatrix<T>> {
        if rho.dim() != self.dim {
            return Err(Error::DimMismatch { expected: self.dim, found: rho.dim() });
        }
        DensityMatrix::new(self.apply_op(rho.matrix()))
    }

    /// Composition `self . other` (apply `other` first). The Kraus family is
    /// every product `S_m T_mu`, ordered with the `self` index outermost.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch { expected: self.dim, found: other.dim });
        }
        let mut kraus = Vec::with_capacity(self.kraus.len() * other.kraus.len());
        for s in &self.kraus {
            for t in &other.kraus {
                kraus.push(s.matmul(t));
            }
        }
        Self::new(kraus)
    }

    /// The dual (adjoint) map, with Kraus family `{M_j^dag}`. A channel is
    /// unital exactly when its dual is trace-preserving.
    pub fn dual(&self) -> Self {
        let kraus = self.kraus.iter().map(ComplexMatrix::dagger).collect();
        Self::new(kraus).expect("dual of a valid channel is valid")
    }

    /// The Choi operator `J = sum_j vec(M_j) vec(M_j)^dag` on `C^(dim^2)`.
    pub fn choi(&self) -> ChoiMatrix<T> {
        let n2 = self.dim * self.dim;
        let mut j = ComplexMatrix::zeros(n2, n2);
        for m in &self.kraus {
            let v = m.vec();
            j = j.add(&v.outer(&v));
        }
        ChoiMatrix::new(self.dim, j).expect("Choi operator is Hermitian by construction")
    }

    /// The Jamiolkowski state `J / dim`; requires a trace-preserving channel
    /// so the result has unit trace.
    pub fn jamiolkowski_state(&self) -> Result<DensityMatrix<T>> {
        if !self.is_trace_preserving(T::real(PREDICATE_TOL)) {
            return Err(Error::NotTracePreserving {
                deviation: self.tp_deviation.as_f64(),
                tol: PREDICATE_TOL,
            });
        }
        let n = T::real(self.dim as f64);
        DensityMatrix::new(self.choi().matrix().scale_re(T::one() / n))
    }

    /// Canonical Kraus family: the spectral decomposition of the Choi
    /// operator. The result represents the same map with pairwise
    /// Hilbert-Schmidt-orthogonal operators and no zero padding.
    pub fn canonicalize(&self) -> Result<Self> {
        self.choi().kraus_channel(T::real(PSD_CLIP_TOL))
    }
}

/// The Choi operator of a completely positive map on `C^dim`: a Hermitian,
/// positive-semidefinite operator on `C^(dim^2)`.
///
/// Hermiticity is checked at construction; positivity is enforced where the
/// spectrum is actually computed ([`ChoiMatrix::kraus_channel`]).
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiMatrix<T> {
    dim: usize,
    matrix: ComplexMatrix<T>,
}

impl<T: Scalar> ChoiMatrix<T> {
    pub fn new(dim: usize, matrix: ComplexMatrix<T>) -> Result<Self> {
        if !(matrix.is_square() && matrix.rows() == dim * dim) {
            return Err(Error::DimMismatch { expected: dim * dim, found: matrix.rows() });
        }
        let dev = matrix.hermitian_deviation();
        let scale = T::max(T::one(), matrix.frobenius_norm());
        let tol = T::real(crate::eig::HERMITICITY_TOL);
        if dev > tol * scale {
            return Err(Error::NotHermitian {
                deviation: (dev / scale).as_f64(),
                tol: crate::eig::HERMITICITY_TOL,
            });
        }
        Ok(Self { dim, matrix })
    }

    /// Dimension `N` of the underlying system (the matrix is `N^2 x N^2`).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    /// Extracts the canonical Kraus family: eigenvalues above `clip_tol`
    /// contribute `sqrt(lambda_k) * unvec(v_k)`; eigenvalues below
    /// `-clip_tol` mean the operator is not positive semidefinite (the map is
    /// not completely positive) and are an error.
    pub fn kraus_channel(&self, clip_tol: T) -> Result<KrausChannel<T>> {
        let eig = hermitian_eig(&self.matrix)?;
        let mut kraus = Vec::new();
        for (lambda, v) in eig.eigenvalues.iter().zip(&eig.eigenvectors) {
            if *lambda < -clip_tol {
                return Err(Error::NotPositiveSemidefinite {
                    value: lambda.as_f64(),
                    tol: clip_tol.as_f64(),
                });
            }
            if *lambda > clip_tol {
                let m = ComplexMatrix::unvec(v, self.dim, self.dim).scale_re(lambda.sqrt());
                kraus.push(m);
            }
        }
        if kraus.is_empty() {
            // The zero map: keep a single zero operator so the channel type's
            // non-empty invariant holds.
            kraus.push(ComplexMatrix::zeros(self.dim, self.dim));
        }
        KrausChannel::new(kraus)
    }
}

/// A density matrix: Hermitian with unit trace. Positive semidefiniteness is
/// guaranteed by construction for channel outputs and Gram-type matrices and
/// is checked explicitly by [`DensityMatrix::validate`] and by the entropy
/// functions, which reject spectra below `-1e-9`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    matrix: ComplexMatrix<T>,
}

impl<T: Scalar> DensityMatrix<T> {
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimMismatch { expected: matrix.rows(), found: matrix.cols() });
        }
        if !matrix.is_finite() {
            return Err(Error::NonFinite { row: 0, col: 0 });
        }
        let dev = matrix.hermitian_deviation();
        let scale = T::max(T::one(), matrix.frobenius_norm());
        let tol = T::real(crate::eig::HERMITICITY_TOL);
        if dev > tol * scale {
            return Err(Error::NotHermitian {
                deviation: (dev / scale).as_f64(),
                tol: crate::eig::HERMITICITY_TOL,
            });
        }
        let trace = matrix.trace();
        if (trace.re - T::one()).abs() > T::real(TRACE_TOL) || trace.im.abs() > T::real(TRACE_TOL) {
            return Err(Error::TraceNotOne { trace: trace.re.as_f64(), tol: TRACE_TOL });
        }
        Ok(Self { matrix })
    }

    /// The pure state `|v><v| / <v, v>`.
    pub fn pure(v: &ComplexVector<T>) -> Result<Self> {
        let n2 = v.norm();
        if !(n2 > T::zero()) {
            return Err(Error::TraceNotOne { trace: 0.0, tol: TRACE_TOL });
        }
        let unit = v.scale_re(T::one() / n2);
        Self::new(unit.outer(&unit))
    }

    pub fn maximally_mixed(n: usize) -> Self {
        let m = ComplexMatrix::identity(n).scale_re(T::one() / T::real(n as f64));
        Self { matrix: m }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    /// Spectrum in descending order.
    pub fn eigenvalues(&self) -> Result<Vec<T>> {
        Ok(hermitian_eig(&self.matrix)?.eigenvalues)
    }

    /// Full state check: Hermitian and unit trace (already enforced) plus
    /// positive semidefiniteness up to `clip_tol`.
    pub fn validate(&self, clip_tol: T) -> Result<()> {
        let eig = hermitian_eig(&self.matrix)?;
        for lambda in &eig.eigenvalues {
            if *lambda < -clip_tol {
                return Err(Error::NotPositiveSemidefinite {
                    value: lambda.as_f64(),
                    tol: clip_tol.as_f64(),
                });
            }
        }
        Ok(())
    }

    /// Hilbert-Schmidt overlap `tr(A^dag B)` of two states (real for
    /// Hermitian inputs).
    pub fn overlap(&self, other: &Self) -> Complex<T> {
        hs_inner(&self.matrix, &other.matrix)
    }
}

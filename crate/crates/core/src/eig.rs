//! Hermitian eigendecomposition via cyclic Jacobi rotations, plus the
//! singular-value based norms derived from it.
//!
//! Jacobi is quadratically convergent once sweeps settle and keeps the
//! accumulated eigenvector matrix unitary by construction, which is exactly
//! what the canonical Kraus extraction downstream needs. Matrices here are
//! small (a few hundred rows at most), so the O(n^3)-per-sweep cost is fine.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ComplexVector};
use crate::scalar::Scalar;

/// Default relative Hermiticity tolerance accepted by [`hermitian_eig`].
pub const HERMITICITY_TOL: f64 = 1e-9;

const MAX_SWEEPS: usize = 60;

/// Eigenvalues (descending) and matching orthonormal eigenvectors of a
/// Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEig<T> {
    pub eigenvalues: Vec<T>,
    pub eigenvectors: Vec<ComplexVector<T>>,
}

impl<T: Scalar> HermitianEig<T> {
    /// Reassembles `sum_k lambda_k |v_k><v_k|`, for testing reconstruction.
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        let n = self.eigenvectors.first().map_or(0, ComplexVector::dim);
        let mut acc = ComplexMatrix::zeros(n, n);
        for (lambda, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            acc = acc.add(&v.outer(v).scale_re(*lambda));
        }
        acc
    }
}

/// Eigendecomposition of a Hermitian matrix, rejecting inputs whose
/// Hermiticity deviation exceeds [`HERMITICITY_TOL`] (relative).
pub fn hermitian_eig<T: Scalar>(h: &ComplexMatrix<T>) -> Result<HermitianEig<T>> {
    hermitian_eig_with_tol(h, T::real(HERMITICITY_TOL))
}

/// Same as [`hermitian_eig`] with an explicit relative Hermiticity tolerance
/// (useful for `f32`, where the default is below roundoff).
pub fn hermitian_eig_with_tol<T: Scalar>(h: &ComplexMatrix<T>, tol: T) -> Result<HermitianEig<T>> {
    assert!(h.is_square(), "eigendecomposition of a non-square matrix");
    let dev = h.hermitian_deviation();
    let scale = T::max(T::one(), h.frobenius_norm());
    if dev > tol * scale {
        return Err(Error::NotHermitian { deviation: (dev / scale).as_f64(), tol: tol.as_f64() });
    }
    jacobi(h)
}

fn jacobi<T: Scalar>(h: &ComplexMatrix<T>) -> Result<HermitianEig<T>> {
    let n = h.rows();
    if n == 0 {
        return Ok(HermitianEig { eigenvalues: vec![], eigenvectors: vec![] });
    }

    // Work on a mutable copy; symmetrize exactly so roundoff in the input
    // cannot accumulate through the sweeps.
    let mut a: Vec<Complex<T>> = h.data().to_vec();
    let half = T::real(0.5);
    for p in 0..n {
        a[p * n + p] = Complex::new(a[p * n + p].re, T::zero());
        for q in (p + 1)..n {
            let m = (a[p * n + q] + a[q * n + p].conj()).scale(half);
            a[p * n + q] = m;
            a[q * n + p] = m.conj();
        }
    }

    let mut v: Vec<Complex<T>> = ComplexMatrix::<T>::identity(n).data().to_vec();
    let fro = {
        let mut acc = T::zero();
        for z in &a {
            acc = acc + z.norm_sqr();
        }
        acc.sqrt()
    };

    if fro > T::zero() {
        // Convergence threshold scales with the matrix and the precision of T.
        let stop = fro * T::epsilon() * T::real(8.0);
        let pivot_skip = stop / T::real((n * n) as f64);
        let mut converged = false;
        for _sweep in 0..MAX_SWEEPS {
            let mut off = T::zero();
            for p in 0..n {
                for q in 0..n {
                    if p != q {
                        off = off + a[p * n + q].norm_sqr();
                    }
                }
            }
            if off.sqrt() <= stop {
                converged = true;
                break;
            }
            for p in 0..(n - 1) {
                for q in (p + 1)..n {
                    let hpq = a[p * n + q];
                    let habs = hpq.norm();
                    if habs <= pivot_skip {
                        continue;
                    }
                    // Unitary plane rotation zeroing the (p, q) entry:
                    // columns (p, q) mix through
                    //   [c, -s e^{i phi}; s e^{-i phi}, c],
                    // where h_pq = |h_pq| e^{i phi}.
                    let phase = hpq.unscale(habs);
                    let alpha = a[p * n + p].re;
                    let beta = a[q * n + q].re;
                    let delta = (beta - alpha) / (habs + habs);
                    let t = -delta.signum() / (delta.abs() + (delta * delta + T::one()).sqrt());
                    let c = T::one() / (t * t + T::one()).sqrt();
                    let s = t * c;
                    let spc = phase.conj().scale(s); //  s e^{-i phi}
                    let sp = phase.scale(s); //          s e^{+i phi}

                    // Column update (right-multiplication by the rotation).
                    for i in 0..n {
                        let aip = a[i * n + p];
                        let aiq = a[i * n + q];
                        a[i * n + p] = aip.scale(c) + aiq * spc;
                        a[i * n + q] = aiq.scale(c) - aip * sp;
                    }
                    // Row update (left-multiplication by its adjoint).
                    for j in 0..n {
                        let apj = a[p * n + j];
                        let aqj = a[q * n + j];
                        a[p * n + j] = apj.scale(c) + aqj * sp;
                        a[q * n + j] = aqj.scale(c) - apj * spc;
                    }
                    // The pivot is zero by construction; pin it and keep the
                    // diagonal exactly real.
                    a[p * n + q] = Complex::new(T::zero(), T::zero());
                    a[q * n + p] = Complex::new(T::zero(), T::zero());
                    a[p * n + p] = Complex::new(a[p * n + p].re, T::zero());
                    a[q * n + q] = Complex::new(a[q * n + q].re, T::zero());

                    // Accumulate the eigenvector basis.
                    for i in 0..n {
                        let vip = v[i * n + p];
                        let viq = v[i * n + q];
                        v[i * n + p] = vip.scale(c) + viq * spc;
                        v[i * n + q] = viq.scale(c) - vip * sp;
                    }
                }
            }
        }
        if !converged {
            // One last check: the final sweep may have finished the job.
            let mut off = T::zero();
            for p in 0..n {
                for q in 0..n {
                    if p != q {
                        off = off + a[p * n + q].norm_sqr();
                    }
                }
            }
            if off.sqrt() > stop {
                return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[j * n + j].re.partial_cmp(&a[i * n + i].re).expect("finite eigenvalues")
    });

    let eigenvalues = order.iter().map(|&k| a[k * n + k].re).collect();
    let eigenvectors = order
        .iter()
        .map(|&k| ComplexVector::new((0..n).map(|i| v[i * n + k]).collect()))
        .collect();
    Ok(HermitianEig { eigenvalues, eigenvectors })
}

/// Largest singular value, computed as `sqrt(lambda_max(X^dag X))`.
pub fn operator_norm<T: Scalar>(x: &ComplexMatrix<T>) -> T {
    singular_values(x).first().copied().unwrap_or_else(T::zero)
}

/// Operator-norm distance `||a - b||`.
pub fn operator_distance<T: Scalar>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> T {
    operator_norm(&a.sub(b))
}

/// Trace norm (sum of singular values) of a square matrix. For Hermitian `X`
/// this equals the sum of the absolute eigenvalues.
pub fn trace_norm<T: Scalar>(x: &ComplexMatrix<T>) -> T {
    assert!(x.is_square(), "trace norm of a non-square matrix");
    let mut acc = T::zero();
    for s in singular_values(x) {
        acc = acc + s;
    }
    acc
}

/// Singular values in descending order, via the Hermitian eigenvalues of
/// `X^dag X` (clipped at zero before the square root).
pub fn singular_values<T: Scalar>(x: &ComplexMatrix<T>) -> Vec<T> {
    let gram = x.dagger().matmul(x);
    let eig = jacobi(&gram).expect("X^dag X is Hermitian by construction");
    eig.eigenvalues.into_iter().map(|l| T::max(l, T::zero()).sqrt()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = ComplexMatrix<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn assert_orthonormal(eig: &HermitianEig<f64>, tol: f64) {
        let k = eig.eigenvectors.len();
        for i in 0..k {
            for j in 0..k {
                let g = eig.eigenvectors[i].inner(&eig.eigenvectors[j]);
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (g - c(expect, 0.0)).norm() < tol,
                    "Gram({i},{j}) = {g} off by more than {tol}"
                );
            }
        }
    }

    #[test]
    fn diagonal_matrices_are_read_off() {
        let d = M::diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        let eig = hermitian_eig(&d).unwrap();
        assert_eq!(eig.eigenvalues, vec![1.0, -1.0]);
        assert_orthonormal(&eig, 1e-12);
    }

    #[test]
    fn pauli_x_has_symmetric_spectrum() {
        let x = M::from_rows(vec![
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ]);
        let eig = hermitian_eig(&x).unwrap();
        assert!((eig.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!((eig.eigenvalues[1] + 1.0).abs() < 1e-12);
        assert_orthonormal(&eig, 1e-10);
        assert!(eig.reconstruct().sub(&x).frobenius_norm() < 1e-12);
    }

    #[test]
    fn pauli_y_exercises_complex_rotations() {
        let y = M::from_rows(vec![
            vec![c(0.0, 0.0), c(0.0, -1.0)],
            vec![c(0.0, 1.0), c(0.0, 0.0)],
        ]);
        let eig = hermitian_eig(&y).unwrap();
        assert!((eig.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!((eig.eigenvalues[1] + 1.0).abs() < 1e-12);
        assert_orthonormal(&eig, 1e-10);
        assert!(eig.reconstruct().sub(&y).frobenius_norm() < 1e-12);
    }

    #[test]
    fn identity_is_fully_degenerate() {
        let eig = hermitian_eig(&M::identity(5)).unwrap();
        for l in &eig.eigenvalues {
            assert!((l - 1.0).abs() < 1e-12);
        }
        assert_orthonormal(&eig, 1e-10);
    }

    #[test]
    fn random_hermitian_reconstructs() {
        // Deterministic pseudo-random Hermitian matrix, moderately sized.
        let n = 12;
        let mut state = 0xdead_beefu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let mut g = M::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g.set(i, j, c(next(), next()));
            }
        }
        let h = g.add(&g.dagger());
        let eig = hermitian_eig(&h).unwrap();
        assert_orthonormal(&eig, 1e-10);
        assert!(eig.reconstruct().sub(&h).frobenius_norm() < 1e-9 * h.frobenius_norm().max(1.0));
        // Trace is preserved by the spectrum.
        let sum: f64 = eig.eigenvalues.iter().sum();
        assert!((sum - h.trace().re).abs() < 1e-9);
    }

    #[test]
    fn rejects_non_hermitian_input() {
        let a = M::from_rows(vec![
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ]);
        assert!(matches!(hermitian_eig(&a), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn trace_norm_of_simple_matrices() {
        let z = M::diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        assert!((trace_norm(&z) - 2.0).abs() < 1e-12);
        // A rank-one projector has trace norm 1.
        let p = M::diagonal(&[c(1.0, 0.0), c(0.0, 0.0)]);
        assert!((trace_norm(&p) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trace_norm_of_centered_maximally_entangled_projector() {
        // |omega><omega| - I/4 on C^4 has eigenvalues {3/4, -1/4, -1/4, -1/4},
        // so its trace norm is exactly 1.5.
        let omega = M::identity(2).vec().scale_re(1.0 / 2f64.sqrt());
        let proj = omega.outer(&omega);
        let centered = proj.sub(&M::identity(4).scale_re(0.25));
        assert!((trace_norm(&centered) - 1.5).abs() < 1e-10);
    }

    #[test]
    fn operator_norm_picks_largest_singular_value() {
        let a = M::diagonal(&[c(3.0, 0.0), c(-4.0, 0.0)]);
        assert!((operator_norm(&a) - 4.0).abs() < 1e-12);
        assert!((operator_distance(&a, &a)).abs() < 1e-12);
    }

    #[test]
    fn works_in_f32_with_looser_tolerances() {
        let x = ComplexMatrix::<f32>::from_rows(vec![
            vec![Complex::new(0.0f32, 0.0), Complex::new(1.0, 0.0)],
            vec![Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)],
        ]);
        let eig = hermitian_eig_with_tol(&x, 1e-5f32).unwrap();
        assert!((eig.eigenvalues[0] - 1.0).abs() < 1e-5);
        assert!((eig.eigenvalues[1] + 1.0).abs() < 1e-5);
    }
}

//! Entropies: Shannon, von Neumann, the map entropy of a channel, and the
//! correlation-matrix ("gamma") machinery for channels in a fixed Kraus
//! representation.
//!
//! All entropies are in bits (base-2 logarithms). Spectra are clipped before
//! the logarithm: eigenvalues below `1e-10` contribute nothing, eigenvalues
//! below `-1e-9` are rejected as genuinely negative.

use crate::channel::{DensityMatrix, KrausChannel, PREDICATE_TOL};
use crate::eig::hermitian_eig;
use crate::error::{Error, Result};
use crate::matrix::{hs_inner, ComplexMatrix};
use crate::scalar::Scalar;

/// Eigenvalues below this threshold are treated as exact zeros.
pub const ENTROPY_CLIP_TOL: f64 = 1e-10;

/// Eigenvalues below `-ENTROPY_NEGATIVE_TOL` are an error rather than noise.
pub const ENTROPY_NEGATIVE_TOL: f64 = 1e-9;

/// Probability weights: clipped at `-1e-12`, summing to 1 within `1e-9`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityDistribution<T> {
    weights: Vec<T>,
}

impl<T: Scalar> ProbabilityDistribution<T> {
    /// Validates and stores a weight vector. Weights in `[-1e-12, 0)` are
    /// clipped to zero; anything more negative is rejected, as is a total
    /// mass away from 1 by more than `1e-9`.
    pub fn new(weights: Vec<T>) -> Result<Self> {
        let clip = T::real(1e-12);
        let mut cleaned = Vec::with_capacity(weights.len());
        for w in weights {
            if w < -clip {
                return Err(Error::NegativeWeight { value: w.as_f64() });
            }
            cleaned.push(T::max(w, T::zero()));
        }
        let sum = cleaned.iter().fold(T::zero(), |a, &b| a + b);
        if (sum - T::one()).abs() > T::real(1e-9) {
            return Err(Error::NotNormalized { sum: sum.as_f64(), tol: 1e-9 });
        }
        Ok(Self { weights: cleaned })
    }

    pub fn uniform(n: usize) -> Self {
        let w = T::one() / T::real(n as f64);
        Self { weights: vec![w; n] }
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Entropy in bits of a clipped spectrum; shared by every entropy here.
pub(crate) fn entropy_of_spectrum<T: Scalar>(spectrum: &[T]) -> Result<T> {
    let clip = T::real(ENTROPY_CLIP_TOL);
    let reject = T::real(ENTROPY_NEGATIVE_TOL);
    let mut acc = T::zero();
    for &l in spectrum {
        if l < -reject {
            return Err(Error::NotPositiveSemidefinite {
                value: l.as_f64(),
                tol: ENTROPY_NEGATIVE_TOL,
            });
        }
        if l > clip {
            acc = acc - l * l.log2();
        }
    }
    Ok(acc)
}

/// Shannon entropy `H(p) = -sum p_i log2 p_i` in bits.
pub fn shannon_entropy<T: Scalar>(p: &ProbabilityDistribution<T>) -> T {
    entropy_of_spectrum(p.weights()).expect("weights are clipped non-negative")
}

/// Von Neumann entropy `S(rho) = -tr(rho log2 rho)` in bits.
pub fn von_neumann_entropy<T: Scalar>(rho: &DensityMatrix<T>) -> Result<T> {
    let eig = hermitian_eig(rho.matrix())?;
    entropy_of_spectrum(&eig.eigenvalues)
}

/// Map entropy of a trace-preserving channel: the von Neumann entropy of its
/// Jamiolkowski state `J(Phi)/dim`.
pub fn map_entropy<T: Scalar>(phi: &KrausChannel<T>) -> Result<T> {
    von_neumann_entropy(&phi.jamiolkowski_state()?)
}

/// Correlation matrix of a Kraus family `{S_m}` at the state `rho`:
/// entry `(m, n)` is `tr(S_m rho S_n^dag)`. This is a Gram matrix, hence
/// positive semidefinite; it has unit trace when the channel is
/// trace-preserving (required here).
///
/// Unlike the map entropy, the result depends on the chosen Kraus
/// representation only up to a unitary remixing, so its spectrum does not.
pub fn gamma_state<T: Scalar>(
    lambda: &KrausChannel<T>,
    rho: &DensityMatrix<T>,
) -> Result<DensityMatrix<T>> {
    if lambda.dim() != rho.dim() {
        return Err(Error::DimMismatch { expected: lambda.dim(), found: rho.dim() });
    }
    if !lambda.is_trace_preserving(T::real(PREDICATE_TOL)) {
        return Err(Error::NotTracePreserving {
            deviation: lambda.tp_deviation().as_f64(),
            tol: PREDICATE_TOL,
        });
    }
    let products: Vec<ComplexMatrix<T>> =
        lambda.kraus().iter().map(|s| s.matmul(rho.matrix())).collect();
    let d = lambda.kraus().len();
    let mut g = ComplexMatrix::zeros(d, d);
    for m in 0..d {
        for n in 0..d {
            // tr(S_m rho S_n^dag) = <S_n, S_m rho>.
            g.set(m, n, hs_inner(&lambda.kraus()[n], &products[m]));
        }
    }
    DensityMatrix::new(g)
}

/// Exchange entropy: the von Neumann entropy of [`gamma_state`]. At the
/// maximally mixed state this equals the map entropy.
pub fn exchange_entropy<T: Scalar>(lambda: &KrausChannel<T>, rho: &DensityMatrix<T>) -> Result<T> {
    von_neumann_entropy(&gamma_state(lambda, rho)?)
}

/// Correlation matrix of the product family `{S_m T_mu}` of a composition,
/// indexed on the tensor product of the two Kraus index spaces: entry
/// `((m, mu), (n, nu))` is `tr(S_m T_mu rho (S_n T_nu)^dag)` at flat index
/// `m * |T| + mu`.
///
/// This equals [`gamma_state`] of `phi.compose(psi)` entry for entry, but
/// keeps the two-factor index structure for partial traces.
pub fn gamma_composite<T: Scalar>(
    phi: &KrausChannel<T>,
    psi: &KrausChannel<T>,
    rho: &DensityMatrix<T>,
) -> Result<DensityMatrix<T>> {
    if phi.dim() != psi.dim() {
        return Err(Error::DimMismatch { expected: phi.dim(), found: psi.dim() });
    }
    if phi.dim() != rho.dim() {
        return Err(Error::DimMismatch { expected: phi.dim(), found: rho.dim() });
    }
    for (ch, name_dev) in [(phi, phi.tp_deviation()), (psi, psi.tp_deviation())] {
        if !ch.is_trace_preserving(T::real(PREDICATE_TOL)) {
            return Err(Error::NotTracePreserving {
                deviation: name_dev.as_f64(),
                tol: PREDICATE_TOL,
            });
        }
    }
    let d1 = phi.kraus().len();
    let d2 = psi.kraus().len();
    let mut prods = Vec::with_capacity(d1 * d2);
    let mut prods_rho = Vec::with_capacity(d1 * d2);
    for s in phi.kraus() {
        for t in psi.kraus() {
            let st = s.matmul(t);
            prods_rho.push(st.matmul(rho.matrix()));
            prods.push(st);
        }
    }
    let d = d1 * d2;
    let mut g = ComplexMatrix::zeros(d, d);
    for a in 0..d {
        for b in 0..d {
            g.set(a, b, hs_inner(&prods[b], &prods_rho[a]));
        }
    }
    DensityMatrix::new(g)
}

/// Embeds a state on `C^N` into `C^(N^2)` without changing its spectrum:
/// entry `(i, j)` of `rho` becomes entry `((i, i), (j, j))` of the output,
/// i.e. the state is supported on the "diagonal" subspace spanned by `|ii>`.
pub fn entropy_preserving_extension<T: Scalar>(rho: &DensityMatrix<T>) -> DensityMatrix<T> {
    let n = rho.dim();
    let mut out = ComplexMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            out.set(i * n + i, j * n + j, rho.matrix().get(i, j));
        }
    }
    DensityMatrix::new(out).expect("extension preserves Hermiticity and trace")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ComplexVector;
    use num_complex::Complex;

    type M = ComplexMatrix<f64>;
    type Ch = KrausChannel<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn sigma_x() -> M {
        M::from_rows(vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]])
    }

    fn sigma_z() -> M {
        M::from_rows(vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.0)]])
    }

    fn bit_flip_half() -> Ch {
        let s = 0.5f64.sqrt();
        Ch::new(vec![M::identity(2).scale_re(s), sigma_x().scale_re(s)]).unwrap()
    }

    fn phase_flip_half() -> Ch {
        let s = 0.5f64.sqrt();
        Ch::new(vec![M::identity(2).scale_re(s), sigma_z().scale_re(s)]).unwrap()
    }

    #[test]
    fn shannon_entropy_of_dyadic_distribution() {
        let p = ProbabilityDistribution::<f64>::new(vec![0.5, 0.25, 0.125, 0.125]).unwrap();
        assert!((shannon_entropy(&p) - 1.75).abs() < 1e-12);
        let u = ProbabilityDistribution::<f64>::uniform(8);
        assert!((shannon_entropy(&u) - 3.0).abs() < 1e-12);
        let point = ProbabilityDistribution::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(shannon_entropy(&point), 0.0);
    }

    #[test]
    fn distribution_validation() {
        assert!(matches!(
            ProbabilityDistribution::new(vec![0.5, 0.5, -1e-6]),
            Err(Error::NegativeWeight { .. })
        ));
        assert!(matches!(
            ProbabilityDistribution::new(vec![0.5, 0.4]),
            Err(Error::NotNormalized { .. })
        ));
        // Tiny negatives are clipped, not rejected.
        let p = ProbabilityDistribution::new(vec![1.0, -1e-13]).unwrap();
        assert_eq!(p.weights()[1], 0.0);
    }

    #[test]
    fn von_neumann_entropy_of_known_spectra() {
        let rho = DensityMatrix::new(M::diagonal(&[c(0.5, 0.0), c(0.25, 0.0), c(0.25, 0.0)]))
            .unwrap();
        assert!((von_neumann_entropy(&rho).unwrap() - 1.5).abs() < 1e-12);

        let pure = DensityMatrix::pure(&ComplexVector::<f64>::basis(4, 1)).unwrap();
        assert!(von_neumann_entropy(&pure).unwrap().abs() < 1e-12);

        let mixed = DensityMatrix::<f64>::maximally_mixed(8);
        assert!((von_neumann_entropy(&mixed).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn map_entropy_of_unitary_channel_is_zero() {
        let phi = Ch::from_unitary(sigma_x()).unwrap();
        assert!(map_entropy(&phi).unwrap().abs() < 1e-12);
    }

    #[test]
    fn map_entropy_of_completely_depolarizing_channel_is_twice_log_dim() {
        for n in [2usize, 3] {
            let scale = 1.0 / (n as f64).sqrt();
            let kraus: Vec<M> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| M::matrix_unit(n, n, i, j).scale_re(scale))
                .collect();
            let phi = Ch::new(kraus).unwrap();
            // The Choi operator is I/n, the Jamiolkowski state I/n^2.
            let expect = M::identity(n * n).scale_re(1.0 / n as f64);
            assert!(phi.choi().matrix().sub(&expect).frobenius_norm() < 1e-12);
            let s = map_entropy(&phi).unwrap();
            assert!((s - 2.0 * (n as f64).log2()).abs() < 1e-10);
        }
    }

    #[test]
    fn map_entropy_requires_trace_preservation() {
        let phi = Ch::new(vec![M::matrix_unit(2, 2, 0, 0)]).unwrap();
        assert!(matches!(map_entropy(&phi), Err(Error::NotTracePreserving { .. })));
    }

    #[test]
    fn gamma_of_pauli_mixture_is_diagonal_in_the_weights() {
        // Kraus {sqrt(p_i) sigma_i} at rho = I/2: gamma = diag(p).
        let p: [f64; 3] = [0.5, 0.3, 0.2];
        let ops = [M::identity(2), sigma_x(), sigma_z()];
        let kraus: Vec<M> =
            p.iter().zip(&ops).map(|(w, op)| op.scale_re(w.sqrt())).collect();
        let lambda = Ch::new(kraus).unwrap();
        let gamma = gamma_state(&lambda, &DensityMatrix::maximally_mixed(2)).unwrap();
        let expect = M::diagonal(&[c(0.5, 0.0), c(0.3, 0.0), c(0.2, 0.0)]);
        assert!(gamma.matrix().sub(&expect).frobenius_norm() < 1e-12);
    }

    #[test]
    fn exchange_entropy_at_maximally_mixed_equals_map_entropy() {
        let lambda = bit_flip_half();
        let rho = DensityMatrix::maximally_mixed(2);
        let se = exchange_entropy(&lambda, &rho).unwrap();
        let sm = map_entropy(&lambda).unwrap();
        assert!((se - sm).abs() < 1e-10);
    }

    #[test]
    fn gamma_requires_trace_preservation() {
        let phi = Ch::new(vec![M::matrix_unit(2, 2, 0, 0)]).unwrap();
        let rho = DensityMatrix::maximally_mixed(2);
        assert!(matches!(gamma_state(&phi, &rho), Err(Error::NotTracePreserving { .. })));
    }

    #[test]
    fn gamma_composite_matches_gamma_of_composition() {
        let phi = bit_flip_half();
        let psi = phase_flip_half();
        let rho = DensityMatrix::maximally_mixed(2);
        let gc = gamma_composite(&phi, &psi, &rho).unwrap();
        let gs = gamma_state(&phi.compose(&psi).unwrap(), &rho).unwrap();
        assert!(gc.matrix().sub(gs.matrix()).frobenius_norm() < 1e-12);
        // For this orthogonal pair the product family is {Paulis/2}, so the
        // correlation matrix at I/2 is I/4 and the entropy is 2 bits.
        assert!(gc.matrix().sub(&M::identity(4).scale_re(0.25)).frobenius_norm() < 1e-12);
        assert!((von_neumann_entropy(&gc).unwrap() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn gamma_composite_reductions_at_maximally_mixed() {
        let phi = bit_flip_half();
        let psi = phase_flip_half();
        let rho = DensityMatrix::maximally_mixed(2);
        let gc = gamma_composite(&phi, &psi, &rho).unwrap();
        let d1 = phi.kraus().len();
        let d2 = psi.kraus().len();
        // Tracing out the first (phi) index recovers gamma of psi; tracing
        // out the second recovers gamma of phi (psi is unital).
        let g_psi = gamma_state(&psi, &rho).unwrap();
        let g_phi = gamma_state(&phi, &rho).unwrap();
        let first = gc.matrix().ptrace_first(d1, d2);
        let second = gc.matrix().ptrace_second(d1, d2);
        assert!(first.sub(g_psi.matrix()).frobenius_norm() < 1e-10);
        assert!(second.sub(g_phi.matrix()).frobenius_norm() < 1e-10);
    }

    #[test]
    fn extension_preserves_spectrum_and_purity() {
        let v = ComplexVector::new(vec![c(0.8, 0.0), c(0.0, 0.6)]);
        let rho = DensityMatrix::pure(&v).unwrap();
        let ext = entropy_preserving_extension(&rho);
        assert_eq!(ext.dim(), 4);
        ext.validate(1e-10).unwrap();
        let s_in = von_neumann_entropy(&rho).unwrap();
        let s_out = von_neumann_entropy(&ext).unwrap();
        assert!((s_in - s_out).abs() < 1e-10);
        assert!(s_out.abs() < 1e-10, "pure states stay pure");

        let mixed = DensityMatrix::<f64>::maximally_mixed(3);
        let ext = entropy_preserving_extension(&mixed);
        assert!((von_neumann_entropy(&ext).unwrap() - 3f64.log2()).abs() < 1e-10);
    }

    #[test]
    fn negative_spectra_are_rejected() {
        assert!(matches!(
            entropy_of_spectrum(&[0.5, 0.5, -1e-6]),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
        // Within clipping range: fine.
        assert!(entropy_of_spectrum(&[1.0, -1e-10]).is_ok());
    }
}

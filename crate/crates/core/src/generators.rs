//! Seeded random factories: Haar unitaries, random states and channels, and
//! block-structured channel triples with tensor-factor structure inside each
//! block.
//!
//! All randomness flows through a ChaCha8 stream seeded from a caller-held
//! 64-bit seed (zero-extended to the generator's 256-bit key), so identical
//! seeds reproduce bit-identical output on every platform. The generator
//! identity is part of the file-format contract of the companion CLI.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::channel::{KrausChannel, PREDICATE_TOL};
use crate::entropy::ProbabilityDistribution;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ComplexVector};
use crate::scalar::Scalar;

/// A reproducible sampling seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Seed(pub u64);

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}

/// Direct-sum block structure on `C^N`: an ordered list of `(d_left,
/// d_right)` factor dimensions. Block `k` occupies the `d_left * d_right`
/// coordinates starting at the sum of the preceding block sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSpec {
    blocks: Vec<(usize, usize)>,
}

impl BlockSpec {
    pub fn new(blocks: Vec<(usize, usize)>) -> Result<Self> {
        if blocks.is_empty() || blocks.iter().any(|&(l, r)| l == 0 || r == 0) {
            return Err(Error::InvalidBlockSpec);
        }
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Total dimension `sum_k d_left_k * d_right_k`.
    pub fn total_dim(&self) -> usize {
        self.blocks.iter().map(|&(l, r)| l * r).sum()
    }

    /// Starting coordinate of each block.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.blocks.len());
        let mut acc = 0;
        for &(l, r) in &self.blocks {
            out.push(acc);
            acc += l * r;
        }
        out
    }
}

/// Which of the three roles a block channel plays in the sandwich
/// `phi . lambda . psi`: the outer channels act as a unitary on one factor,
/// the middle one is unconstrained on both.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockRole {
    /// Left factor arbitrary (bi-stochastic), right factor a unitary.
    Phi,
    /// Both factors arbitrary (bi-stochastic).
    Lambda,
    /// Left factor a unitary, right factor arbitrary (bi-stochastic).
    Psi,
}

/// Per-block tensor factor: either a unitary conjugation (given by the
/// unitary itself) or a general channel.
#[derive(Debug, Clone)]
pub enum BlockFactor<T> {
    Unitary(ComplexMatrix<T>),
    Channel(KrausChannel<T>),
}

/// The identity, X, Y, Z Pauli matrices.
pub fn pauli_matrices<T: Scalar>() -> [ComplexMatrix<T>; 4] {
    let o = T::zero();
    let l = T::one();
    let c = Complex::new;
    [
        ComplexMatrix::identity(2),
        ComplexMatrix::new(2, 2, vec![c(o, o), c(l, o), c(l, o), c(o, o)]),
        ComplexMatrix::new(2, 2, vec![c(o, o), c(o, -l), c(o, l), c(o, o)]),
        ComplexMatrix::new(2, 2, vec![c(l, o), c(o, o), c(o, o), c(-l, o)]),
    ]
}

fn sample_normal<T: Scalar>(rng: &mut ChaCha8Rng) -> T {
    let x: f64 = rng.sample(StandardNormal);
    T::real(x)
}

fn ginibre<T: Scalar>(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix<T> {
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        let re = sample_normal::<T>(rng);
        let im = sample_normal::<T>(rng);
        data.push(Complex::new(re, im));
    }
    ComplexMatrix::new(rows, cols, data)
}

/// QR of a complex Gaussian matrix by modified Gram-Schmidt with one
/// re-orthogonalization pass. The R factor has positive real diagonal, which
/// makes the Q factor Haar-distributed.
fn haar_unitary_with<T: Scalar>(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix<T> {
    let g = ginibre::<T>(rng, n, n);
    let mut cols: Vec<ComplexVector<T>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = ComplexVector::new((0..n).map(|i| g.get(i, j)).collect());
        for _pass in 0..2 {
            for q in cols.iter() {
                let r = q.inner(&v);
                v = v.sub(&q.scale(r));
            }
        }
        let norm = v.norm();
        cols.push(v.scale_re(T::one() / norm));
    }
    let mut u = ComplexMatrix::zeros(n, n);
    for (j, q) in cols.iter().enumerate() {
        for i in 0..n {
            u.set(i, j, q.get(i));
        }
    }
    u
}

/// Haar-random unitary on `C^n`.
pub fn random_unitary<T: Scalar>(n: usize, seed: Seed) -> ComplexMatrix<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    haar_unitary_with(&mut rng, n)
}

fn random_state_with<T: Scalar>(rng: &mut ChaCha8Rng, n: usize) -> crate::channel::DensityMatrix<T> {
    let g = ginibre::<T>(rng, n, n);
    let gg = g.matmul(&g.dagger());
    let trace = gg.trace().re;
    crate::channel::DensityMatrix::new(gg.scale_re(T::one() / trace))
        .expect("normalized Gram matrix is a state")
}

/// Random full-rank density matrix `G G^dag / tr(G G^dag)` with `G` complex
/// Gaussian.
pub fn random_state<T: Scalar>(n: usize, seed: Seed) -> crate::channel::DensityMatrix<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    random_state_with(&mut rng, n)
}

fn dirichlet_uniform(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    // Normalized standard exponentials sample the flat Dirichlet.
    let mut e: Vec<f64> = (0..k).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let sum: f64 = e.iter().sum();
    if sum <= 0.0 {
        return vec![1.0 / k as f64; k];
    }
    for x in &mut e {
        *x /= sum;
    }
    e
}

fn random_bistochastic_with<T: Scalar>(
    rng: &mut ChaCha8Rng,
    n: usize,
    terms: usize,
) -> KrausChannel<T> {
    assert!(terms > 0, "a mixture needs at least one term");
    let p = dirichlet_uniform(rng, terms);
    let kraus = p
        .iter()
        .map(|&w| haar_unitary_with::<T>(rng, n).scale_re(T::real(w.sqrt())))
        .collect();
    KrausChannel::new(kraus).expect("mixture of unitaries is a channel")
}

/// Random mixture of `terms` Haar unitaries with flat-Dirichlet weights:
/// `rho -> sum_i p_i U_i rho U_i^dag`. Always bi-stochastic; for `n >= 3`
/// such mixtures are a strict subset of all bi-stochastic channels.
pub fn random_bistochastic<T: Scalar>(n: usize, terms: usize, seed: Seed) -> KrausChannel<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    random_bistochastic_with(&mut rng, n, terms)
}

fn random_stochastic_with<T: Scalar>(
    rng: &mut ChaCha8Rng,
    n: usize,
    kraus_count: usize,
) -> KrausChannel<T> {
    assert!(kraus_count > 0, "a channel needs at least one Kraus operator");
    // Row blocks of a Haar-random isometry C^n -> C^(n * kraus_count).
    let u = haar_unitary_with::<T>(rng, n * kraus_count);
    let kraus = (0..kraus_count)
        .map(|b| {
            let mut m = ComplexMatrix::zeros(n, n);
            for r in 0..n {
                for c in 0..n {
                    m.set(r, c, u.get(b * n + r, c));
                }
            }
            m
        })
        .collect();
    KrausChannel::new(kraus).expect("isometry blocks form a channel")
}

/// Random trace-preserving channel that is generically *not* unital: the
/// Kraus family is the `n x n` row blocks of the first `n` columns of a Haar
/// unitary on `C^(n * kraus_count)`.
pub fn random_stochastic<T: Scalar>(n: usize, kraus_count: usize, seed: Seed) -> KrausChannel<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    random_stochastic_with(&mut rng, n, kraus_count)
}

/// Qubit Pauli channel `rho -> sum_i p_i sigma_i rho sigma_i` for exactly
/// four weights `(p_I, p_X, p_Y, p_Z)`. Weights that are exactly zero are
/// dropped from the Kraus family.
pub fn pauli_channel<T: Scalar>(p: &ProbabilityDistribution<T>) -> Result<KrausChannel<T>> {
    if p.len() != 4 {
        return Err(Error::WeightCount { expected: 4, found: p.len() });
    }
    let paulis = pauli_matrices::<T>();
    let kraus: Vec<ComplexMatrix<T>> = p
        .weights()
        .iter()
        .zip(&paulis)
        .filter(|(w, _)| **w > T::zero())
        .map(|(w, s)| s.scale_re(w.sqrt()))
        .collect();
    KrausChannel::new(kraus)
}

/// Places a `d x d` operator into the `d x d` block of `C^n` starting at
/// `offset`, zero elsewhere.
pub(crate) fn embed_block<T: Scalar>(
    op: &ComplexMatrix<T>,
    n: usize,
    offset: usize,
) -> ComplexMatrix<T> {
    let d = op.rows();
    assert!(op.is_square() && offset + d <= n, "block does not fit");
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..d {
        for j in 0..d {
            out.set(offset + i, offset + j, op.get(i, j));
        }
    }
    out
}

fn factor_kraus<'a, T: Scalar>(
    factor: &'a BlockFactor<T>,
    want_unitary: bool,
    dim: usize,
    block: usize,
    side: &str,
) -> Result<Vec<&'a ComplexMatrix<T>>> {
    let tol = T::real(PREDICATE_TOL);
    match (factor, want_unitary) {
        (BlockFactor::Unitary(u), true) => {
            if u.rows() != dim || !u.is_square() {
                return Err(Error::BadBlockFactor {
                    block,
                    reason: format!("{side} unitary must be {dim}x{dim}"),
                });
            }
            if !u.is_unitary_within(tol) {
                return Err(Error::BadBlockFactor {
                    block,
                    reason: format!("{side} factor is not unitary"),
                });
            }
            Ok(vec![u])
        }
        (BlockFactor::Channel(ch), false) => {
            if ch.dim() != dim {
                return Err(Error::BadBlockFactor {
                    block,
                    reason: format!("{side} channel must act on dimension {dim}"),
                });
            }
            if !ch.is_bistochastic(tol) {
                return Err(Error::BadBlockFactor {
                    block,
                    reason: format!("{side} channel factor is not bi-stochastic"),
                });
            }
            Ok(ch.kraus().iter().collect())
        }
        (BlockFactor::Unitary(_), false) => Err(Error::BadBlockFactor {
            block,
            reason: format!("{side} factor must be a channel for this role"),
        }),
        (BlockFactor::Channel(_), true) => Err(Error::BadBlockFactor {
            block,
            reason: format!("{side} factor must be a unitary for this role"),
        }),
    }
}

/// Assembles a direct-sum channel `sum_k W_k (L_k (x) R_k) W_k^dag` from
/// per-block factor pairs, where `W_k` embeds block `k` at its offset.
///
/// The role fixes which side must be a unitary: [`BlockRole::Phi`] wants
/// `(channel, unitary)`, [`BlockRole::Lambda`] `(channel, channel)`, and
/// [`BlockRole::Psi`] `(unitary, channel)`. Channel factors must be
/// bi-stochastic and unitary factors unitary, both at tolerance `1e-8`; the
/// assembled channel is then itself bi-stochastic.
pub fn build_block_channel<T: Scalar>(
    spec: &BlockSpec,
    role: BlockRole,
    factors: &[(BlockFactor<T>, BlockFactor<T>)],
) -> Result<KrausChannel<T>> {
    if factors.len() != spec.len() {
        return Err(Error::BadBlockFactor {
            block: factors.len(),
            reason: format!("expected {} factor pairs, got {}", spec.len(), factors.len()),
        });
    }
    let (left_unitary, right_unitary) = match role {
        BlockRole::Phi => (false, true),
        BlockRole::Lambda => (false, false),
        BlockRole::Psi => (true, false),
    };
    let n = spec.total_dim();
    let offsets = spec.offsets();
    let mut kraus = Vec::new();
    for (k, ((dl, dr), (left, right))) in spec.blocks().iter().zip(factors).enumerate() {
        let left_ops = factor_kraus(left, left_unitary, *dl, k, "left")?;
        let right_ops = factor_kraus(right, right_unitary, *dr, k, "right")?;
        for a in &left_ops {
            for b in &right_ops {
                kraus.push(embed_block(&a.kron(b), n, offsets[k]));
            }
        }
    }
    KrausChannel::new(kraus)
}

/// Samples a triple `(phi, lambda, psi)` of block channels sharing the given
/// block structure, in the roles [`BlockRole::Phi`], [`BlockRole::Lambda`],
/// [`BlockRole::Psi`]. Channel factors are mixtures of two Haar unitaries;
/// unitary factors are Haar. One ChaCha8 stream drives all sampling, so the
/// triple is a deterministic function of the seed.
pub fn random_sds_triple<T: Scalar>(
    spec: &BlockSpec,
    seed: Seed,
) -> (KrausChannel<T>, KrausChannel<T>, KrausChannel<T>) {
    const FACTOR_TERMS: usize = 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    let mut phi_factors = Vec::with_capacity(spec.len());
    let mut lambda_factors = Vec::with_capacity(spec.len());
    let mut psi_factors = Vec::with_capacity(spec.len());
    for &(dl, dr) in spec.blocks() {
        phi_factors.push((
            BlockFactor::Channel(random_bistochastic_with::<T>(&mut rng, dl, FACTOR_TERMS)),
            BlockFactor::Unitary(haar_unitary_with::<T>(&mut rng, dr)),
        ));
        lambda_factors.push((
            BlockFactor::Channel(random_bistochastic_with::<T>(&mut rng, dl, FACTOR_TERMS)),
            BlockFactor::Channel(random_bistochastic_with::<T>(&mut rng, dr, FACTOR_TERMS)),
        ));
        psi_factors.push((
            BlockFactor::Unitary(haar_unitary_with::<T>(&mut rng, dl)),
            BlockFactor::Channel(random_bistochastic_with::<T>(&mut rng, dr, FACTOR_TERMS)),
        ));
    }
    let phi = build_block_channel(spec, BlockRole::Phi, &phi_factors)
        .expect("sampled factors satisfy the role constraints");
    let lambda = build_block_channel(spec, BlockRole::Lambda, &lambda_factors)
        .expect("sampled factors satisfy the role constraints");
    let psi = build_block_channel(spec, BlockRole::Psi, &psi_factors)
        .expect("sampled factors satisfy the role constraints");
    (phi, lambda, psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::map_entropy;

    #[test]
    fn haar_unitaries_are_unitary_and_deterministic() {
        for n in [1usize, 2, 3, 8] {
            let u = random_unitary::<f64>(n, Seed(42));
            assert!(u.unitary_deviation() < 1e-10, "n = {n}");
            let v = random_unitary::<f64>(n, Seed(42));
            assert_eq!(u, v, "same seed must give bit-identical output");
            if n > 1 {
                let w = random_unitary::<f64>(n, Seed(43));
                assert!(u.sub(&w).frobenius_norm() > 1e-3, "different seeds differ");
            }
        }
    }

    #[test]
    fn random_states_are_states() {
        let rho = random_state::<f64>(4, Seed(7));
        rho.validate(1e-10).unwrap();
        assert_eq!(rho, random_state::<f64>(4, Seed(7)));
    }

    #[test]
    fn random_bistochastic_channels_pass_both_predicates() {
        for seed in 0..5u64 {
            let phi = random_bistochastic::<f64>(3, 4, Seed(seed));
            assert!(phi.is_bistochastic(1e-10));
            assert_eq!(phi.kraus().len(), 4);
        }
        assert_eq!(
            random_bistochastic::<f64>(3, 4, Seed(1)),
            random_bistochastic::<f64>(3, 4, Seed(1))
        );
    }

    #[test]
    fn random_stochastic_channels_preserve_trace_but_not_identity() {
        let mut saw_non_unital = false;
        for seed in 0..5u64 {
            let phi = random_stochastic::<f64>(2, 3, Seed(seed));
            assert!(phi.is_trace_preserving(1e-10));
            saw_non_unital |= !phi.is_unital(1e-8);
        }
        assert!(saw_non_unital, "generic stochastic channels are not unital");
    }

    #[test]
    fn pauli_channel_entropy_is_shannon_entropy_of_weights() {
        let p = ProbabilityDistribution::<f64>::new(vec![0.5, 0.25, 0.125, 0.125]).unwrap();
        let phi = pauli_channel(&p).unwrap();
        assert_eq!(phi.kraus().len(), 4);
        assert!(phi.is_bistochastic(1e-12));
        assert!((map_entropy(&phi).unwrap() - 1.75).abs() < 1e-10);

        // Zero weights are dropped; a point mass is the identity conjugation.
        let point = ProbabilityDistribution::<f64>::new(vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        let id = pauli_channel(&point).unwrap();
        assert_eq!(id.kraus().len(), 1);
        assert!(map_entropy(&id).unwrap().abs() < 1e-12);

        let bad = ProbabilityDistribution::<f64>::new(vec![0.5, 0.5]).unwrap();
        assert!(matches!(pauli_channel(&bad), Err(Error::WeightCount { .. })));
    }

    #[test]
    fn block_spec_geometry() {
        let spec = BlockSpec::new(vec![(2, 1), (1, 2), (1, 1)]).unwrap();
        assert_eq!(spec.total_dim(), 5);
        assert_eq!(spec.offsets(), vec![0, 2, 4]);
        assert!(BlockSpec::new(vec![]).is_err());
        assert!(BlockSpec::new(vec![(0, 2)]).is_err());
    }

    #[test]
    fn block_channels_are_bistochastic_and_block_supported() {
        let spec = BlockSpec::new(vec![(2, 1), (1, 2)]).unwrap();
        let (phi, lambda, psi) = random_sds_triple::<f64>(&spec, Seed(11));
        for ch in [&phi, &lambda, &psi] {
            assert_eq!(ch.dim(), 4);
            assert!(ch.is_bistochastic(1e-10));
        }
        // Every Kraus operator lives inside one diagonal block.
        for m in phi.kraus().iter().chain(lambda.kraus()).chain(psi.kraus()) {
            for i in 0..2 {
                for j in 2..4 {
                    assert!(m.get(i, j).norm() < 1e-14);
                    assert!(m.get(j, i).norm() < 1e-14);
                }
            }
        }
        // Determinism across calls.
        let (phi2, _, _) = random_sds_triple::<f64>(&spec, Seed(11));
        assert_eq!(phi, phi2);
    }

    #[test]
    fn build_block_channel_validates_roles() {
        let spec = BlockSpec::new(vec![(2, 2)]).unwrap();
        let u = random_unitary::<f64>(2, Seed(1));
        let ch = random_bistochastic::<f64>(2, 2, Seed(2));
        // Phi wants (channel, unitary); swapping is an error.
        let good = vec![(BlockFactor::Channel(ch.clone()), BlockFactor::Unitary(u.clone()))];
        assert!(build_block_channel(&spec, BlockRole::Phi, &good).is_ok());
        let bad = vec![(BlockFactor::Unitary(u.clone()), BlockFactor::Channel(ch.clone()))];
        assert!(matches!(
            build_block_channel(&spec, BlockRole::Phi, &bad),
            Err(Error::BadBlockFactor { .. })
        ));
        // Dimension mismatch in a factor.
        let wrong_dim = vec![(
            BlockFactor::Channel(random_bistochastic::<f64>(3, 2, Seed(3))),
            BlockFactor::Unitary(u),
        )];
        assert!(build_block_channel(&spec, BlockRole::Phi, &wrong_dim).is_err());
        // Non-bi-stochastic channel factor.
        let lossy = vec![(
            BlockFactor::Channel(random_stochastic::<f64>(2, 2, Seed(4))),
            BlockFactor::Channel(ch),
        )];
        assert!(matches!(
            build_block_channel(&spec, BlockRole::Lambda, &lossy),
            Err(Error::BadBlockFactor { .. })
        ));
    }
}

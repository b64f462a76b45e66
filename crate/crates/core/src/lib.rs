//! Map entropies of finite-dimensional quantum channels.
//!
//! This crate computes the entropy a channel `phi` carries as a state -- the
//! von Neumann entropy of its normalized Choi operator -- together with the
//! related exchange entropy, and mechanically certifies when map entropy is
//! additive under composition. The pieces:
//!
//! * [`matrix`]: dense complex matrices with the vectorization calculus
//!   (`vec`/`unvec`, Kronecker products, partial traces, factor reordering)
//!   that the rest of the crate is built on.
//! * [`eig`]: a Jacobi eigensolver for Hermitian matrices, plus trace and
//!   operator norms derived from it.
//! * [`channel`]: Kraus families, Choi operators, density matrices, and the
//!   canonical (spectral) Kraus form.
//! * [`entropy`]: Shannon and von Neumann entropies, map entropy, and the
//!   exchange entropy through the Gram matrix of Kraus operators against a
//!   state.
//! * [`additivity`]: the additivity certificate on canonical Kraus families,
//!   bi-orthogonality tests and decomposition, conditional mutual
//!   information of channel sandwiches, the verifier for block-structured
//!   triples, and the Pinsker-bound gap.
//! * [`generators`]: seeded random unitaries, states, and channels, and the
//!   block-structured triples used to exercise the verifier.
//!
//! All entropies are in bits (base-2 logarithms).
//!
//! Everything is generic over the real scalar (`f32` or `f64`) through the
//! [`Scalar`] trait; the aliases at the crate root ([`Matrix`], [`Channel`],
//! [`Choi`], [`Density`], [`Vector`]) pin the common double-precision case,
//! which is what the documented tolerances are calibrated for.
//!
//! ```
//! use mapent::{Channel, Density, map_entropy, exchange_entropy};
//! use mapent::{pauli_channel, ProbabilityDistribution};
//!
//! // An equal mixture of identity and bit flip has map entropy 1 bit.
//! let p = ProbabilityDistribution::<f64>::new(vec![0.5, 0.5, 0.0, 0.0])?;
//! let phi = pauli_channel(&p)?;
//! let s = map_entropy(&phi)?;
//! assert!((s - 1.0).abs() < 1e-12);
//!
//! // At the maximally mixed state the exchange entropy agrees with it.
//! let rho = Density::maximally_mixed(2);
//! assert!((exchange_entropy(&phi, &rho)? - s).abs() < 1e-12);
//! # Ok::<(), mapent::Error>(())
//! ```

pub mod additivity;
pub mod channel;
pub mod eig;
pub mod entropy;
pub mod error;
pub mod generators;
pub mod matrix;
pub mod scalar;

pub use additivity::{
    biorthogonal_decomposition, biorthogonality_tests, certify_dynamical_additivity,
    conditional_mutual_information, is_biorthogonal, pinsker_gap, subadditivity_gap,
    verify_block_saturation, AdditivityReport, BiorthDecomposition, BiorthTests,
    SdsVerification, CERTIFY_TOL,
};
pub use channel::{
    ChoiMatrix, DensityMatrix, KrausChannel, PREDICATE_TOL, PSD_CLIP_TOL, TRACE_TOL,
};
pub use eig::{hermitian_eig, hermitian_eig_with_tol, operator_norm, trace_norm, HermitianEig};
pub use entropy::{
    entropy_preserving_extension, exchange_entropy, gamma_composite, gamma_state, map_entropy,
    shannon_entropy, von_neumann_entropy, ProbabilityDistribution,
};
pub use error::{Error, Result};
pub use generators::{
    build_block_channel, pauli_channel, pauli_matrices, random_bistochastic, random_sds_triple,
    random_state, random_stochastic, random_unitary, BlockFactor, BlockRole, BlockSpec, Seed,
};
pub use matrix::{hs_inner, ComplexMatrix, ComplexVector};
pub use num_complex::Complex;
pub use scalar::Scalar;

/// Double-precision complex matrix.
pub type Matrix = ComplexMatrix<f64>;
/// Double-precision complex vector.
pub type Vector = ComplexVector<f64>;
/// Double-precision channel in Kraus form.
pub type Channel = KrausChannel<f64>;
/// Double-precision Choi operator.
pub type Choi = ChoiMatrix<f64>;
/// Double-precision density matrix.
pub type Density = DensityMatrix<f64>;

//! Additivity of map entropy under composition: gap computation, a
//! mechanical certificate from canonical Kraus families, bi-orthogonality of
//! channels, conditional mutual information of channel sandwiches, and the
//! verifier for block-structured triples that saturate it.

use crate::channel::{DensityMatrix, KrausChannel, PREDICATE_TOL, PSD_CLIP_TOL};
use crate::entropy::{map_entropy, von_neumann_entropy};
use crate::error::{Error, Result};
use crate::generators::BlockSpec;
use crate::matrix::{hs_inner, swap_inner_factors_mat, ComplexMatrix};
use crate::scalar::Scalar;

/// Default tolerance for the additivity certificate.
pub const CERTIFY_TOL: f64 = 1e-8;

/// Outcome of [`certify_dynamical_additivity`].
#[derive(Debug, Clone, PartialEq)]
pub struct AdditivityReport<T> {
    /// True when the factorization condition holds within tolerance, which
    /// is equivalent to `S(phi . psi) = S(phi) + S(psi)`.
    pub certified: bool,
    /// Largest deviation of `<S_n T_nu, S_m T_mu>` from
    /// `<S_n, S_m> <T_nu, T_mu> / N` over all index tuples.
    pub max_violation: T,
    /// `S(phi) + S(psi) - S(phi . psi)`, reported alongside the certificate.
    pub entropy_gap: T,
}

/// Result of the three equivalent bi-orthogonality checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BiorthTests {
    /// All pairwise Kraus products `M^dag N` and `M N^dag` vanish.
    pub kraus_products: bool,
    /// Products of the two Choi reductions vanish.
    pub choi_reductions: bool,
    /// `phi . psi^dag` and `phi^dag . psi` vanish on the matrix-unit basis.
    pub super_compositions: bool,
}

/// A channel split into bi-orthogonal components.
#[derive(Debug, Clone)]
pub struct BiorthDecomposition<T> {
    /// Sub-channels built from the canonical Kraus family; they sum to the
    /// original map and are pairwise bi-orthogonal.
    pub components: Vec<KrausChannel<T>>,
    /// Which canonical Kraus indices ended up in each component, ordered by
    /// smallest member.
    pub index_partition: Vec<Vec<usize>>,
}

/// Outcome of [`verify_block_saturation`].
#[derive(Debug, Clone, PartialEq)]
pub struct SdsVerification<T> {
    /// Conditional mutual information of the sandwich; zero exactly when the
    /// triple saturates strong dynamical subadditivity.
    pub gap: T,
    /// Frobenius distance of the sandwich's Jamiolkowski state from the
    /// block-wise product form it must take for a valid triple.
    pub choi_residual: T,
}

fn require_bistochastic<T: Scalar>(ch: &KrausChannel<T>) -> Result<()> {
    let tol = T::real(PREDICATE_TOL);
    if !ch.is_trace_preserving(tol) {
        return Err(Error::NotTracePreserving {
            deviation: ch.tp_deviation().as_f64(),
            tol: PREDICATE_TOL,
        });
    }
    if !ch.is_unital(tol) {
        return Err(Error::NotUnital { deviation: ch.unital_deviation().as_f64(), tol: PREDICATE_TOL });
    }
    Ok(())
}

/// `S(phi) + S(psi) - S(psi . phi)` for bi-stochastic `phi` and
/// trace-preserving `psi`: the subadditivity gap of the composition in
/// which the bi-stochastic factor acts first. Always `>= 0` up to numerical
/// noise.
///
/// The orientation matters. Subadditivity needs the inner factor to be
/// unital, so that the composite's input-side marginal is maximally mixed
/// and the outer factor contributes at most its own map entropy; with the
/// bi-stochastic map on the outside instead, random pairs violate the
/// would-be bound by O(1e-2).
pub fn subadditivity_gap<T: Scalar>(phi: &KrausChannel<T>, psi: &KrausChannel<T>) -> Result<T> {
    if phi.dim() != psi.dim() {
        return Err(Error::DimMismatch { expected: phi.dim(), found: psi.dim() });
    }
    require_bistochastic(phi)?;
    if !psi.is_trace_preserving(T::real(PREDICATE_TOL)) {
        return Err(Error::NotTracePreserving {
            deviation: psi.tp_deviation().as_f64(),
            tol: PREDICATE_TOL,
        });
    }
    let s_phi = map_entropy(phi)?;
    let s_psi = map_entropy(psi)?;
    let s_comp = map_entropy(&psi.compose(phi)?)?;
    Ok(s_phi + s_psi - s_comp)
}

/// Certifies whether map entropy is additive for the composition
/// `phi . psi`, by checking the factorization condition
///
/// ```text
/// <S_n T_nu, S_m T_mu>  =  <S_n, S_m> <T_nu, T_mu> / N
/// ```
///
/// over the canonical Kraus families `{S_m}` of `phi` and `{T_mu}` of `psi`
/// (inner products are Hilbert-Schmidt). The condition holds within `tol`
/// exactly when `S(phi . psi) = S(phi) + S(psi)`; the report carries the
/// worst violation and the measured entropy gap.
pub fn certify_dynamical_additivity<T: Scalar>(
    phi: &KrausChannel<T>,
    psi: &KrausChannel<T>,
    tol: T,
) -> Result<AdditivityReport<T>> {
    if phi.dim() != psi.dim() {
        return Err(Error::DimMismatch { expected: phi.dim(), found: psi.dim() });
    }
    require_bistochastic(phi)?;
    require_bistochastic(psi)?;
    let s_ops = phi.canonicalize()?;
    let t_ops = psi.canonicalize()?;
    let n_inv = T::one() / T::real(phi.dim() as f64);

    let s_list = s_ops.kraus();
    let t_list = t_ops.kraus();
    let d1 = s_list.len();
    let d2 = t_list.len();

    // Gram matrices of the canonical families (diagonal in exact arithmetic)
    // and all pairwise products.
    let mut gram_s = vec![num_complex::Complex::new(T::zero(), T::zero()); d1 * d1];
    for n in 0..d1 {
        for m in 0..d1 {
            gram_s[n * d1 + m] = hs_inner(&s_list[n], &s_list[m]);
        }
    }
    let mut gram_t = vec![num_complex::Complex::new(T::zero(), T::zero()); d2 * d2];
    for nu in 0..d2 {
        for mu in 0..d2 {
            gram_t[nu * d2 + mu] = hs_inner(&t_list[nu], &t_list[mu]);
        }
    }
    let mut products = Vec::with_capacity(d1 * d2);
    for s in s_list {
        for t in t_list {
            products.push(s.matmul(t));
        }
    }

    let mut max_violation = T::zero();
    for m in 0..d1 {
        for mu in 0..d2 {
            let left = &products[m * d2 + mu];
            for n in 0..d1 {
                for nu in 0..d2 {
                    let lhs = hs_inner(&products[n * d2 + nu], left);
                    let rhs = (gram_s[n * d1 + m] * gram_t[nu * d2 + mu]).scale(n_inv);
                    let dev = (lhs - rhs).norm();
                    if dev > max_violation {
                        max_violation = dev;
                    }
                }
            }
        }
    }

    let entropy_gap = map_entropy(phi)? + map_entropy(psi)? - map_entropy(&phi.compose(psi)?)?;
    Ok(AdditivityReport { certified: max_violation < tol, max_violation, entropy_gap })
}

/// Runs the three equivalent bi-orthogonality tests at the same tolerance.
pub fn biorthogonality_tests<T: Scalar>(
    phi: &KrausChannel<T>,
    psi: &KrausChannel<T>,
    tol: T,
) -> Result<BiorthTests> {
    if phi.dim() != psi.dim() {
        return Err(Error::DimMismatch { expected: phi.dim(), found: psi.dim() });
    }
    let n = phi.dim();

    // (a) Every pairwise Kraus product vanishes.
    let mut kraus_products = true;
    'outer: for m in phi.kraus() {
        let m_dag = m.dagger();
        for t in psi.kraus() {
            if m_dag.matmul(t).frobenius_norm() >= tol
                || m.matmul(&t.dagger()).frobenius_norm() >= tol
            {
                kraus_products = false;
                break 'outer;
            }
        }
    }

    // (b) Products of the Choi reductions vanish.
    let j_phi = phi.choi();
    let j_psi = psi.choi();
    let phi_second = j_phi.matrix().ptrace_second(n, n);
    let psi_second = j_psi.matrix().ptrace_second(n, n);
    let phi_first = j_phi.matrix().ptrace_first(n, n);
    let psi_first = j_psi.matrix().ptrace_first(n, n);
    let choi_reductions = phi_second.matmul(&psi_second).frobenius_norm() < tol
        && phi_first.matmul(&psi_first).frobenius_norm() < tol;

    // (c) The super-operator compositions phi . psi^dag and phi^dag . psi
    // vanish on the matrix-unit basis.
    let phi_dual = phi.dual();
    let psi_dual = psi.dual();
    let mut super_compositions = true;
    'basis: for i in 0..n {
        for j in 0..n {
            let e = ComplexMatrix::matrix_unit(n, n, i, j);
            if phi.apply_op(&psi_dual.apply_op(&e)).frobenius_norm() >= tol
                || phi_dual.apply_op(&psi.apply_op(&e)).frobenius_norm() >= tol
            {
                super_compositions = false;
                break 'basis;
            }
        }
    }

    Ok(BiorthTests { kraus_products, choi_reductions, super_compositions })
}

/// Whether two channels are bi-orthogonal: all mixed Kraus products
/// `M^dag N` and `M N^dag` vanish. The two equivalent formulations (vanishing
/// products of Choi reductions; vanishing super-operator compositions) are
/// evaluated as well and must agree -- a disagreement means the input sits on
/// the tolerance boundary and is a hard panic rather than a silent answer.
pub fn is_biorthogonal<T: Scalar>(
    phi: &KrausChannel<T>,
    psi: &KrausChannel<T>,
    tol: T,
) -> Result<bool> {
    let t = biorthogonality_tests(phi, psi, tol)?;
    assert!(
        t.kraus_products == t.choi_reductions && t.choi_reductions == t.super_compositions,
        "bi-orthogonality tests disagree at tolerance {tol}: {t:?}"
    );
    Ok(t.kraus_products)
}

/// Splits a channel into bi-orthogonal components: the canonical Kraus
/// family is grouped by connectivity of the relation
/// `||M_i^dag M_j|| >= tol or ||M_i M_j^dag|| >= tol`, and each connected
/// component becomes one sub-channel. Components are ordered by their
/// smallest canonical index; their Choi operators sum to the original.
pub fn biorthogonal_decomposition<T: Scalar>(
    phi: &KrausChannel<T>,
    tol: T,
) -> Result<BiorthDecomposition<T>> {
    let canon = phi.canonicalize()?;
    let ops = canon.kraus();
    let k = ops.len();

    let mut adjacency = vec![false; k * k];
    for i in 0..k {
        for j in (i + 1)..k {
            let linked = ops[i].dagger().matmul(&ops[j]).frobenius_norm() >= tol
                || ops[i].matmul(&ops[j].dagger()).frobenius_norm() >= tol;
            adjacency[i * k + j] = linked;
            adjacency[j * k + i] = linked;
        }
    }

    let mut component_of = vec![usize::MAX; k];
    let mut index_partition: Vec<Vec<usize>> = Vec::new();
    for start in 0..k {
        if component_of[start] != usize::MAX {
            continue;
        }
        let id = index_partition.len();
        let mut stack = vec![start];
        let mut members = Vec::new();
        component_of[start] = id;
        while let Some(i) = stack.pop() {
            members.push(i);
            for j in 0..k {
                if adjacency[i * k + j] && component_of[j] == usize::MAX {
                    component_of[j] = id;
                    stack.push(j);
                }
            }
        }
        members.sort_unstable();
        index_partition.push(members);
    }
    // Scanning starts from index 0 upward, so components are already ordered
    // by smallest member.
    let components = index_partition
        .iter()
        .map(|members| {
            KrausChannel::new(members.iter().map(|&i| ops[i].clone()).collect())
                .expect("non-empty component of square operators")
        })
        .collect();
    Ok(BiorthDecomposition { components, index_partition })
}

/// Conditional mutual information of the sandwich `phi . lambda . psi`:
///
/// ```text
/// I(phi; psi | lambda) = S(phi.lambda) + S(lambda.psi)
///                        - S(phi.lambda.psi) - S(lambda)
/// ```
///
/// All three channels must be bi-stochastic and share a dimension. The
/// quantity is non-negative and genuinely asymmetric in `phi` and `psi`.
pub fn conditional_mutual_information<T: Scalar>(
    phi: &KrausChannel<T>,
    lambda: &KrausChannel<T>,
    psi: &KrausChannel<T>,
) -> Result<T> {
    if phi.dim() != lambda.dim() {
        return Err(Error::DimMismatch { expected: phi.dim(), found: lambda.dim() });
    }
    if phi.dim() != psi.dim() {
        return Err(Error::DimMismatch { expected: phi.dim(), found: psi.dim() });
    }
    for ch in [phi, lambda, psi] {
        require_bistochastic(ch)?;
    }
    let phi_lambda = phi.compose(lambda)?;
    let lambda_psi = lambda.compose(psi)?;
    let sandwich = phi.compose(&lambda_psi)?;
    Ok(map_entropy(&phi_lambda)? + map_entropy(&lambda_psi)?
        - map_entropy(&sandwich)?
        - map_entropy(lambda)?)
}

/// Reads the block of a `(N^2) x (N^2)` operator corresponding to rows and
/// columns of the form `(offset + a) * n + (offset + b)`.
fn compress_state_block<T: Scalar>(
    big: &ComplexMatrix<T>,
    n: usize,
    offset: usize,
    d: usize,
) -> ComplexMatrix<T> {
    let mut out = ComplexMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            let row = a * d + b;
            let big_row = (offset + a) * n + (offset + b);
            for cc in 0..d {
                for e in 0..d {
                    out.set(row, cc * d + e, big.get(big_row, (offset + cc) * n + (offset + e)));
                }
            }
        }
    }
    out
}

fn embed_state_block<T: Scalar>(
    acc: &mut ComplexMatrix<T>,
    block: &ComplexMatrix<T>,
    n: usize,
    offset: usize,
    d: usize,
) {
    for a in 0..d {
        for b in 0..d {
            let row = a * d + b;
            let big_row = (offset + a) * n + (offset + b);
            for cc in 0..d {
                for e in 0..d {
                    let v = acc.get(big_row, (offset + cc) * n + (offset + e)) + block.get(row, cc * d + e);
                    acc.set(big_row, (offset + cc) * n + (offset + e), v);
                }
            }
        }
    }
}

/// Verifies that a triple `(phi, lambda, psi)` built on the given block
/// structure saturates strong dynamical subadditivity.
///
/// Returns the conditional mutual information of the sandwich (`gap`) and
/// the Frobenius distance (`choi_residual`) of the sandwich's Jamiolkowski
/// state from the direct-sum-of-products form
///
/// ```text
/// sum_k (d_L_k d_R_k / N) * rho_L_k (x) rho_R_k
/// ```
///
/// where the per-block factor states are recovered from the state itself by
/// compressing to block `k`, reordering tensor factors, and partial-tracing
/// each side. Both numbers vanish for triples that respect the structure;
/// either one is large when they do not (including channels that leak mass
/// across blocks or lack the per-block tensor-product form).
pub fn verify_block_saturation<T: Scalar>(
    phi: &KrausChannel<T>,
    lambda: &KrausChannel<T>,
    psi: &KrausChannel<T>,
    spec: &BlockSpec,
) -> Result<SdsVerification<T>> {
    let n = phi.dim();
    if spec.total_dim() != n {
        return Err(Error::BlockSpecMismatch { spec: spec.total_dim(), dim: n });
    }
    let gap = conditional_mutual_information(phi, lambda, psi)?;

    let sandwich = phi.compose(&lambda.compose(psi)?)?;
    let rho = sandwich.jamiolkowski_state()?;
    let big = rho.matrix();

    let mut reference = ComplexMatrix::zeros(n * n, n * n);
    let offsets = spec.offsets();
    let tiny = T::real(PSD_CLIP_TOL);
    for (&(dl, dr), &offset) in spec.blocks().iter().zip(&offsets) {
        let d = dl * dr;
        let compressed = compress_state_block(big, n, offset, d);
        let mass = compressed.trace().re;
        if mass <= tiny {
            // No weight on this block; the reference leaves it empty and the
            // residual reports the missing mass.
            continue;
        }
        // Reorder (l1, r1, l2, r2) -> (l1, l2, r1, r2): an operator on
        // (H_L (x) H_L) (x) (H_R (x) H_R), then split it into its two
        // marginals.
        let paired = swap_inner_factors_mat(&compressed, (dl, dr, dl, dr));
        let normalized = paired.scale_re(T::one() / mass);
        let rho_left = normalized.ptrace_second(dl * dl, dr * dr);
        let rho_right = normalized.ptrace_first(dl * dl, dr * dr);
        // Product of the marginals, weighted by the block's nominal mass
        // d_L * d_R / N, back in (l1, r1, l2, r2) order.
        let product = rho_left.kron(&rho_right);
        let unpaired = swap_inner_factors_mat(&product, (dl, dl, dr, dr));
        let lambda_k = T::real(d as f64) / T::real(n as f64);
        embed_state_block(&mut reference, &unpaired.scale_re(lambda_k), n, offset, d);
    }

    let choi_residual = big.sub(&reference).frobenius_norm();
    Ok(SdsVerification { gap, choi_residual })
}

/// Gap in the Pinsker bound for a bipartite state on `C^da (x) C^db`:
///
/// ```text
/// [S(rho_A) + S(rho_B) - S(rho_AB)] - ||rho_AB - rho_A (x) rho_B||_1^2 / (2 ln 2)
/// ```
///
/// Entropies are in bits, hence the `ln 2` in the Pinsker constant. The gap
/// is non-negative and vanishes on product states.
pub fn pinsker_gap<T: Scalar>(rho_ab: &DensityMatrix<T>, da: usize, db: usize) -> Result<T> {
    if da * db != rho_ab.dim() {
        return Err(Error::DimMismatch { expected: da * db, found: rho_ab.dim() });
    }
    let rho_a = DensityMatrix::new(rho_ab.matrix().ptrace_second(da, db))?;
    let rho_b = DensityMatrix::new(rho_ab.matrix().ptrace_first(da, db))?;
    let mutual = von_neumann_entropy(&rho_a)? + von_neumann_entropy(&rho_b)?
        - von_neumann_entropy(rho_ab)?;
    let diff = rho_ab.matrix().sub(&rho_a.matrix().kron(rho_b.matrix()));
    let t = crate::eig::trace_norm(&diff);
    let two_ln2 = T::real(2.0 * std::f64::consts::LN_2);
    Ok(mutual - t * t / two_ln2)
}

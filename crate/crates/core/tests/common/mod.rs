//! Helpers shared by the integration suites.

use mapent::{Channel, Complex, Matrix};

/// Tiny deterministic generator for test matrices (xorshift64*); keeps the
/// suites reproducible without threading a full RNG through every helper.
pub struct TestRng(pub u64);

impl TestRng {
    pub fn next_f64(&mut self) -> f64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        // Map the top 53 bits into [-1, 1).
        (self.0 >> 11) as f64 / (1u64 << 52) as f64 - 1.0
    }

    pub fn complex(&mut self) -> Complex<f64> {
        Complex::new(self.next_f64(), self.next_f64())
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, self.complex());
            }
        }
        m
    }
}

/// Places `op` on the diagonal block of an `n x n` matrix starting at
/// `offset`, zero elsewhere.
pub fn embed(op: &Matrix, n: usize, offset: usize) -> Matrix {
    assert!(op.rows() == op.cols() && offset + op.rows() <= n);
    let mut out = Matrix::zeros(n, n);
    for r in 0..op.rows() {
        for c in 0..op.cols() {
            out.set(offset + r, offset + c, op.get(r, c));
        }
    }
    out
}

/// Embeds every Kraus operator of a channel on `C^d` into the diagonal block
/// of `C^n` at `offset`. The result is CP but supported on one block.
pub fn embed_channel(ch: &Channel, n: usize, offset: usize) -> Channel {
    Channel::new(ch.kraus().iter().map(|m| embed(m, n, offset)).collect()).unwrap()
}

/// Mixes a Kraus family by a square matrix: `M'_i = sum_j v[i][j] M_j`.
/// For unitary `v` the new family represents the same channel.
pub fn remix(ch: &Channel, v: &Matrix) -> Channel {
    let k = ch.kraus().len();
    assert_eq!((v.rows(), v.cols()), (k, k), "remix matrix must be k x k");
    let ops = (0..k)
        .map(|i| {
            let mut acc = Matrix::zeros(ch.dim(), ch.dim());
            for (j, m) in ch.kraus().iter().enumerate() {
                acc = acc.add(&m.scale(v.get(i, j)));
            }
            acc
        })
        .collect();
    Channel::new(ops).unwrap()
}

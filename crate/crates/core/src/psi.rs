//! The recursive map family on `M_2^{(x)N}` and the two classic maps it
//! reduces to for one and two qubits.
//!
//! `psi(N+1)` acts on `X = sum e_ij (x) X_ij` as
//!
//! ```text
//!            1   |  1 Tr X_22          -(X_12 + psi(N)(X_21)) |
//!   ------  ---  |                                             |
//!            2^N | -(X_21 + psi(N)(X_12))   1 Tr X_11          |
//! ```
//!
//! with `psi(0) = 0` on scalars. The recursion only touches the off-diagonal
//! blocks, so one application costs `O(d^2)`.

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalar::Scalar;

/// Largest supported qubit count; the witness then has dimension 4^6 = 4096.
pub const MAX_QUBITS: u32 = 6;

/// Number of qubits `N` on each side; `d = 2^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QubitCount(u32);

impl QubitCount {
    pub fn new(n: u32) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::QubitCeiling(n));
        }
        Ok(QubitCount(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Local dimension `2^N`.
    pub fn dim(self) -> usize {
        1 << self.0
    }

    /// Bipartite dimension `4^N`.
    pub fn bipartite_dim(self) -> usize {
        1 << (2 * self.0)
    }
}

impl TryFrom<u32> for QubitCount {
    type Error = Error;
    fn try_from(n: u32) -> Result<Self> {
        QubitCount::new(n)
    }
}

/// Applies the `N`-qubit map to `x` without forming any Choi matrix.
///
/// Exact for dyadic (or rational) entries. Non-Hermitian input is accepted;
/// the output is flagged Hermitian whenever the input is.
pub fn psi_apply<S: Scalar>(n: QubitCount, x: &Operator<S>) -> Result<Operator<S>> {
    if x.dim() != n.dim() {
        return Err(Error::DimensionMismatch {
            expected: n.dim(),
            got: x.dim(),
        });
    }
    let data = psi_rec(n.get(), x.data(), n.dim());
    Ok(Operator::from_raw(n.dim(), data, x.is_hermitian()))
}

fn sub_block<S: Scalar>(x: &[S], d: usize, bi: usize, bj: usize) -> Vec<S> {
    let m = d / 2;
    let mut out = Vec::with_capacity(m * m);
    for r in 0..m {
        let start = (bi * m + r) * d + bj * m;
        out.extend_from_slice(&x[start..start + m]);
    }
    out
}

fn psi_rec<S: Scalar>(n: u32, x: &[S], d: usize) -> Vec<S> {
    if n == 0 {
        return vec![S::zero()];
    }
    let m = d / 2;
    let level = n - 1;
    let tr11 = (0..m).fold(S::zero(), |acc, i| acc + x[i * d + i].clone());
    let tr22 = (m..d).fold(S::zero(), |acc, i| acc + x[i * d + i].clone());
    let x12 = sub_block(x, d, 0, 1);
    let x21 = sub_block(x, d, 1, 0);
    let psi21 = psi_rec(level, &x21, m);
    let psi12 = psi_rec(level, &x12, m);

    let mut out = vec![S::zero(); d * d];
    let top = tr22.halve(level);
    let bottom = tr11.halve(level);
    for i in 0..m {
        out[i * d + i] = top.clone();
        out[(m + i) * d + m + i] = bottom.clone();
    }
    for r in 0..m {
        for c in 0..m {
            let k = r * m + c;
            out[r * d + m + c] = -(x12[k].clone() + psi21[k].clone()).halve(level);
            out[(m + r) * d + c] = -(x21[k].clone() + psi12[k].clone()).halve(level);
        }
    }
    out
}

/// Reduction map `R(X) = 1 Tr X - X`, any dimension.
pub fn reduction_apply<S: Scalar>(x: &Operator<S>) -> Operator<S> {
    let tr = x.trace();
    let id = Operator::identity(x.dim()).scale(&tr);
    let mut out = &id - x;
    if x.is_hermitian() {
        out.refresh_flag();
    }
    out
}

/// Closed-form two-qubit map built on the reduction map:
/// `(1/2) [[1 Tr X_22, -(X_12 + R(X_21))], [-(X_21 + R(X_12)), 1 Tr X_11]]`.
pub fn robertson_apply<S: Scalar>(x: &Operator<S>) -> Result<Operator<S>> {
    if x.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: x.dim(),
        });
    }
    let b = x.blocks()?;
    let half = |m: Operator<S>| m.map(|v| v.halve(1));
    let id = Operator::<S>::identity(2);
    let a1 = &b.b12 + &reduction_apply(&b.b21);
    let b1 = &b.b21 + &reduction_apply(&b.b12);
    let zero = Operator::<S>::zeros(2);
    let view = crate::operator::BlockView {
        b11: half(id.scale(&b.b22.trace())),
        b12: half(&zero - &a1),
        b21: half(&zero - &b1),
        b22: half(id.scale(&b.b11.trace())),
    };
    Ok(view.assemble())
}

/// Unnormalized maximally entangled vector `sum_i e_i (x) e_i` in `C^d (x) C^d`.
pub fn max_entangled_vector<S: Scalar>(d: usize) -> Vec<S> {
    let mut v = vec![S::zero(); d * d];
    for i in 0..d {
        v[i * d + i] = S::one();
    }
    v
}

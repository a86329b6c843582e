//! Entanglement witness of the map family:
//! `W_N = 2^-N sum_ij e_ij (x) psi_N(e_ij)` on `C^d (x) C^d`, `d = 2^N`.

use std::io::{BufRead, Write};

use rayon::prelude::*;

use crate::coordinate;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::operator::{DyadicOperator, Operator, RealOperator};
use crate::psi::{max_entangled_vector, psi_apply, QubitCount};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    qubits: QubitCount,
    matrix: DyadicOperator,
}

/// Builds the exact witness. Refuses `N = 0`, whose Choi matrix would be the
/// zero map's and carries no witness.
pub fn build_witness(n: QubitCount) -> Result<Witness> {
    if n.get() == 0 {
        return Err(Error::InvalidArgument("the witness is defined for N >= 1 only".into()));
    }
    let d = n.dim();
    let dim = d * d;
    let norm = n.get();
    // one generator block per (i, j); rows of the result are assembled in order
    let blocks: Vec<Vec<Dyadic>> = (0..d * d)
        .into_par_iter()
        .map(|ij| {
            let unit = DyadicOperator::unit(d, ij / d, ij % d);
            psi_apply(n, &unit)
                .expect("unit matrix has the right dimension")
                .into_data()
        })
        .collect();
    let mut data = vec![Dyadic::ZERO; dim * dim];
    for (ij, block) in blocks.iter().enumerate() {
        let (i, j) = (ij / d, ij % d);
        for k in 0..d {
            for l in 0..d {
                let v = block[k * d + l];
                if !v.is_zero() {
                    data[(i * d + k) * dim + j * d + l] = v.halve(norm);
                }
            }
        }
    }
    let matrix = DyadicOperator::from_row_major(data)?;
    Ok(Witness { qubits: n, matrix })
}

impl Witness {
    /// Wraps an existing operator, e.g. one read back from disk.
    pub fn from_operator(matrix: DyadicOperator) -> Result<Self> {
        let dim = matrix.dim();
        let n = (1..=crate::psi::MAX_QUBITS)
            .find(|&n| 1usize << (2 * n) == dim)
            .ok_or_else(|| Error::InvalidArgument(format!("dimension {dim} is not 4^N for a supported N")))?;
        Ok(Witness {
            qubits: QubitCount::new(n)?,
            matrix,
        })
    }

    pub fn qubits(&self) -> QubitCount {
        self.qubits
    }

    /// Local dimension `2^N`.
    pub fn local_dim(&self) -> usize {
        self.qubits.dim()
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &DyadicOperator {
        &self.matrix
    }

    /// Normalization `2^-N` applied to the raw Choi matrix.
    pub fn normalization(&self) -> Dyadic {
        Dyadic::pow2_inv(self.qubits.get())
    }

    pub fn to_f64(&self) -> RealOperator {
        self.matrix.to_f64()
    }

    pub fn nnz(&self) -> usize {
        self.matrix.data().iter().filter(|v| !v.is_zero()).count()
    }

    /// Nonzero entries as `(row, col, value)`, 0-based, row-major.
    pub fn coordinates(&self) -> impl Iterator<Item = (usize, usize, Dyadic)> + '_ {
        let dim = self.dim();
        self.matrix
            .data()
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(idx, v)| (idx / dim, idx % dim, *v))
    }

    /// Exact check of `W phi+ = -2^-N phi+` for the unnormalized `phi+`.
    pub fn max_entangled_eigenvalue(&self) -> Option<Dyadic> {
        let phi = max_entangled_vector::<Dyadic>(self.local_dim());
        let image = self.matrix.matvec(&phi).ok()?;
        let lambda = image[0];
        let consistent = image.iter().zip(&phi).all(|(w, p)| *w == lambda * *p);
        consistent.then_some(lambda)
    }

    /// Applies the map through the Choi matrix:
    /// `psi_N(X) = 2^N sum_ij X_ij W_(ij block)`.
    pub fn choi_apply<S: Scalar>(&self, x: &Operator<S>) -> Result<Operator<S>> {
        let d = self.local_dim();
        if x.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: x.dim(),
            });
        }
        let mut out = vec![S::zero(); d * d];
        let scale = Dyadic::from_int(1i64 << self.qubits.get());
        for (r, c, w) in self.coordinates() {
            let (i, k) = (r / d, r % d);
            let (j, l) = (c / d, c % d);
            let xij = &x[(i, j)];
            if xij.is_zero() {
                continue;
            }
            out[k * d + l] = out[k * d + l].clone() + xij.clone() * S::from_dyadic(&(w * scale));
        }
        Operator::from_row_major(out)
    }

    pub fn write_coordinate<W: Write>(&self, out: W) -> Result<()> {
        coordinate::write_coordinate(&self.matrix, out)
    }

    pub fn read_coordinate<R: BufRead>(input: R) -> Result<Self> {
        Self::from_operator(coordinate::read_coordinate(input)?)
    }
}

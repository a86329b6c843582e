//! Dense square operators over a generic scalar, with the Kronecker, block
//! and partial-transpose utilities the rest of the crate builds on.
//!
//! Storage is row-major and indices are 0-based; 1-based indices appear only
//! in serialized formats.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{RealScalar, Scalar};

pub type DyadicOperator = Operator<crate::dyadic::Dyadic>;
pub type RealOperator = Operator<f64>;
pub type ComplexOperator = Operator<Complex64>;

/// Square `dim x dim` operator. The `hermitian` flag is only set when the
/// property is known to hold (by construction or by an explicit check).
#[derive(Clone, Debug, PartialEq)]
pub struct Operator<S> {
    dim: usize,
    data: Vec<S>,
    hermitian: bool,
}

impl<S: Scalar> Operator<S> {
    pub fn zeros(dim: usize) -> Self {
        Operator {
            dim,
            data: vec![S::zero(); dim * dim],
            hermitian: true,
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = S::one();
        }
        m
    }

    /// Matrix unit `e_ij` (0-based).
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(dim);
        m.data[i * dim + j] = S::one();
        m.hermitian = i == j;
        m
    }

    pub fn diag(values: &[S]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m.data[i * values.len() + i] = v.clone();
        }
        m.hermitian = values.iter().all(|v| v.conj() == *v);
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        let mut m = Operator {
            dim,
            data,
            hermitian: false,
        };
        m.hermitian = m.is_hermitian_exact();
        m
    }

    /// Row-major data; `data.len()` must be a perfect square.
    pub fn from_row_major(data: Vec<S>) -> Result<Self> {
        let dim = (data.len() as f64).sqrt().round() as usize;
        if dim * dim != data.len() {
            return Err(Error::InvalidArgument(format!(
                "{} entries do not form a square matrix",
                data.len()
            )));
        }
        let mut m = Operator {
            dim,
            data,
            hermitian: false,
        };
        m.hermitian = m.is_hermitian_exact();
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidArgument("ragged or non-square rows".into()));
        }
        Self::from_row_major(rows.into_iter().flatten().collect())
    }

    /// `|x><y|`.
    pub fn outer(x: &[S], y: &[S]) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                got: y.len(),
            });
        }
        Ok(Self::from_fn(x.len(), |r, c| x[r].clone() * y[c].conj()))
    }

    /// Trusts the caller's Hermiticity claim.
    pub(crate) fn from_raw(dim: usize, data: Vec<S>, hermitian: bool) -> Self {
        debug_assert_eq!(data.len(), dim * dim);
        Operator { dim, data, hermitian }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn into_data(self) -> Vec<S> {
        self.data
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    /// Recomputes the flag with exact comparison.
    pub fn is_hermitian_exact(&self) -> bool {
        let n = self.dim;
        (0..n).all(|r| (r..n).all(|c| self.data[r * n + c] == self.data[c * n + r].conj()))
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Operator<T> {
        Operator {
            dim: self.dim,
            data: self.data.iter().map(f).collect(),
            hermitian: false,
        }
        .with_exact_flag()
    }

    fn with_exact_flag(mut self) -> Self {
        self.hermitian = self.is_hermitian_exact();
        self
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = self.map(|v| v.clone() * s.clone());
        out.hermitian = self.hermitian && s.conj() == *s;
        out
    }

    pub fn trace(&self) -> S {
        (0..self.dim).fold(S::zero(), |acc, i| acc + self.data[i * self.dim + i].clone())
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut out = Self::from_fn(n, |r, c| self.data[c * n + r].clone());
        out.hermitian = self.hermitian;
        out
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::from_fn(n, |r, c| self.data[c * n + r].conj());
        out.hermitian = self.hermitian;
        out
    }

    pub fn matvec(&self, v: &[S]) -> Result<Vec<S>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok((0..self.dim)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// `v^T M` (no conjugation).
    pub fn vecmat(&self, v: &[S]) -> Result<Vec<S>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let n = self.dim;
        Ok((0..n)
            .map(|c| (0..n).fold(S::zero(), |acc, r| acc + v[r].clone() * self.data[r * n + c].clone()))
            .collect())
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        self.check_same_dim(rhs)?;
        let n = self.dim;
        let mut data = vec![S::zero(); n * n];
        for r in 0..n {
            for k in 0..n {
                let a = &self.data[r * n + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    data[r * n + c] = data[r * n + c].clone() + a.clone() * rhs.data[k * n + c].clone();
                }
            }
        }
        Ok(Operator {
            dim: n,
            data,
            hermitian: false,
        }
        .with_exact_flag())
    }

    /// `Tr(self * rhs)` without forming the product.
    pub fn trace_product(&self, rhs: &Self) -> Result<S> {
        self.check_same_dim(rhs)?;
        let n = self.dim;
        let mut acc = S::zero();
        for r in 0..n {
            for c in 0..n {
                let a = &self.data[r * n + c];
                if !a.is_zero() {
                    acc = acc + a.clone() * rhs.data[c * n + r].clone();
                }
            }
        }
        Ok(acc)
    }

    fn check_same_dim(&self, rhs: &Self) -> Result<()> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: rhs.dim,
            });
        }
        Ok(())
    }

    /// Splits a `2m x 2m` operator into its four `m x m` blocks.
    pub fn blocks(&self) -> Result<BlockView<S>> {
        if !self.dim.is_multiple_of(2) || self.dim == 0 {
            return Err(Error::InvalidArgument(format!(
                "dimension {} cannot be split into 2x2 blocks",
                self.dim
            )));
        }
        let m = self.dim / 2;
        let take =
            |br: usize, bc: usize| Operator::from_fn(m, |r, c| self.data[(br * m + r) * self.dim + bc * m + c].clone());
        Ok(BlockView {
            b11: take(0, 0),
            b12: take(0, 1),
            b21: take(1, 0),
            b22: take(1, 1),
        })
    }

    /// Block `(bi, bj)` of size `block_dim` (0-based block indices).
    pub fn block(&self, bi: usize, bj: usize, block_dim: usize) -> Self {
        Operator::from_fn(block_dim, |r, c| {
            self.data[(bi * block_dim + r) * self.dim + bj * block_dim + c].clone()
        })
    }

    /// Writes `src` into block `(bi, bj)`.
    pub fn set_block(&mut self, bi: usize, bj: usize, src: &Self) {
        let m = src.dim;
        for r in 0..m {
            let dst = (bi * m + r) * self.dim + bj * m;
            self.data[dst..dst + m].clone_from_slice(src.row(r));
        }
        self.hermitian = false;
    }

    /// Recomputes the Hermiticity flag after a sequence of block writes.
    pub fn refresh_flag(&mut self) {
        self.hermitian = self.is_hermitian_exact();
    }
}

impl<S: RealScalar> Operator<S> {
    pub fn to_f64(&self) -> RealOperator {
        Operator {
            dim: self.dim,
            data: self.data.iter().map(|v| v.to_f64()).collect(),
            hermitian: self.hermitian,
        }
    }

    pub fn to_complex(&self) -> ComplexOperator {
        Operator {
            dim: self.dim,
            data: self.data.iter().map(|v| Complex64::new(v.to_f64(), 0.0)).collect(),
            hermitian: self.hermitian,
        }
    }
}

impl RealOperator {
    /// Sets the flag if the operator is symmetric within `tol` (absolute).
    pub fn check_hermitian(mut self, tol: f64) -> Result<Self> {
        let n = self.dim;
        let ok = (0..n).all(|r| (r..n).all(|c| (self.data[r * n + c] - self.data[c * n + r]).abs() <= tol));
        if !ok {
            return Err(Error::NotHermitian);
        }
        self.hermitian = true;
        Ok(self)
    }
}

impl ComplexOperator {
    pub fn check_hermitian(mut self, tol: f64) -> Result<Self> {
        let n = self.dim;
        let ok = (0..n).all(|r| (r..n).all(|c| (self.data[r * n + c] - self.data[c * n + r].conj()).norm() <= tol));
        if !ok {
            return Err(Error::NotHermitian);
        }
        self.hermitian = true;
        Ok(self)
    }

    /// Splits into real and imaginary parts.
    pub fn split(&self) -> (RealOperator, RealOperator) {
        let re = RealOperator::from_fn(self.dim, |r, c| self.data[r * self.dim + c].re);
        let im = RealOperator::from_fn(self.dim, |r, c| self.data[r * self.dim + c].im);
        (re, im)
    }

    pub fn from_parts(re: &RealOperator, im: &RealOperator) -> Result<Self> {
        re.check_same_dim(im)?;
        let data = re
            .data
            .iter()
            .zip(&im.data)
            .map(|(a, b)| Complex64::new(*a, *b))
            .collect();
        Self::from_row_major(data)
    }
}

impl<S> Index<(usize, usize)> for Operator<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        &self.data[r * self.dim + c]
    }
}

impl<S: Scalar> IndexMut<(usize, usize)> for Operator<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        self.hermitian = false;
        &mut self.data[r * self.dim + c]
    }
}

fn zip_entries<S: Scalar>(a: &Operator<S>, b: &Operator<S>, f: impl Fn(&S, &S) -> S) -> Operator<S> {
    assert_eq!(a.dim, b.dim, "operator dimension mismatch");
    Operator {
        dim: a.dim,
        data: a.data.iter().zip(&b.data).map(|(x, y)| f(x, y)).collect(),
        hermitian: a.hermitian && b.hermitian,
    }
}

impl<S: Scalar> Add for &Operator<S> {
    type Output = Operator<S>;
    fn add(self, rhs: &Operator<S>) -> Operator<S> {
        zip_entries(self, rhs, |x, y| x.clone() + y.clone())
    }
}

impl<S: Scalar> Sub for &Operator<S> {
    type Output = Operator<S>;
    fn sub(self, rhs: &Operator<S>) -> Operator<S> {
        zip_entries(self, rhs, |x, y| x.clone() - y.clone())
    }
}

impl<S: Scalar> Mul<&Operator<S>> for &Operator<S> {
    type Output = Operator<S>;
    fn mul(self, rhs: &Operator<S>) -> Operator<S> {
        self.matmul(rhs).expect("operator dimension mismatch")
    }
}

/// The four `m x m` blocks of a `2m x 2m` operator, `X = sum e_ij (x) X_ij`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockView<S> {
    pub b11: Operator<S>,
    pub b12: Operator<S>,
    pub b21: Operator<S>,
    pub b22: Operator<S>,
}

impl<S: Scalar> BlockView<S> {
    pub fn assemble(&self) -> Operator<S> {
        let m = self.b11.dim;
        let mut out = Operator::zeros(2 * m);
        out.set_block(0, 0, &self.b11);
        out.set_block(0, 1, &self.b12);
        out.set_block(1, 0, &self.b21);
        out.set_block(1, 1, &self.b22);
        out.refresh_flag();
        out
    }
}

/// Kronecker product; entry `(i*n + k, j*n + l) = a[i][j] * b[k][l]`.
pub fn kron<S: Scalar>(a: &Operator<S>, b: &Operator<S>) -> Operator<S> {
    let (m, n) = (a.dim, b.dim);
    let dim = m * n;
    let mut data = vec![S::zero(); dim * dim];
    for i in 0..m {
        for j in 0..m {
            let aij = &a.data[i * m + j];
            if aij.is_zero() {
                continue;
            }
            for k in 0..n {
                let row = (i * n + k) * dim + j * n;
                for l in 0..n {
                    data[row + l] = aij.clone() * b.data[k * n + l].clone();
                }
            }
        }
    }
    Operator {
        dim,
        data,
        hermitian: a.hermitian && b.hermitian,
    }
}

/// Kronecker product of two vectors.
pub fn kron_vec<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x.clone() * y.clone()))
        .collect()
}

/// Partial transpose on the second tensor factor of `C^d (x) C^d`: every
/// `d x d` block is replaced by its transpose.
pub fn partial_transpose<S: Scalar>(m: &Operator<S>, d: usize) -> Result<Operator<S>> {
    if d == 0 || d * d != m.dim {
        return Err(Error::NotBipartite { dim: m.dim, factor: d });
    }
    let dim = m.dim;
    let mut data = vec![S::zero(); dim * dim];
    for bi in 0..d {
        for bj in 0..d {
            for k in 0..d {
                for l in 0..d {
                    data[(bi * d + k) * dim + bj * d + l] = m.data[(bi * d + l) * dim + bj * d + k].clone();
                }
            }
        }
    }
    Ok(Operator {
        dim,
        data,
        hermitian: false,
    }
    .with_exact_flag())
}

/// Partial transpose on the first tensor factor (block positions swap).
pub fn partial_transpose_first<S: Scalar>(m: &Operator<S>, d: usize) -> Result<Operator<S>> {
    let pt = partial_transpose(m, d)?;
    Ok(pt.transpose())
}

//! Dense Hermitian eigensolves and singular values, backed by faer.

use faer::{Mat, Side};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalar::Scalar;

/// Largest accepted relative eigen-residual.
pub const RESIDUAL_TOL: f64 = 1e-10;

/// Entry types the floating spectral routines accept.
pub trait SpectralScalar: Scalar + Copy + faer::traits::ComplexField<Real = f64> {
    fn real_part(self) -> f64;
    fn abs2(self) -> f64;
    fn from_f64(x: f64) -> Self;
}

impl SpectralScalar for f64 {
    fn real_part(self) -> f64 {
        self
    }
    fn abs2(self) -> f64 {
        self * self
    }
    fn from_f64(x: f64) -> Self {
        x
    }
}

impl SpectralScalar for Complex64 {
    fn real_part(self) -> f64 {
        self.re
    }
    fn abs2(self) -> f64 {
        self.norm_sqr()
    }
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
}

/// Ascending eigenvalues and the worst relative residual
/// `max_i |M v_i - l_i v_i| / |M|` observed for the computed eigenvectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub residual_tol: f64,
}

impl Spectrum {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().expect("empty spectrum")
    }

    pub fn count_below(&self, threshold: f64) -> usize {
        self.eigenvalues.iter().take_while(|&&l| l < threshold).count()
    }
}

fn to_faer<S: SpectralScalar>(m: &Operator<S>) -> Mat<S> {
    let n = m.dim();
    Mat::from_fn(n, n, |r, c| m.data()[r * n + c])
}

fn check_input<S: Scalar>(m: &Operator<S>) -> Result<()> {
    if !m.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    if m.dim() == 0 {
        return Err(Error::InvalidArgument("empty operator".into()));
    }
    Ok(())
}

fn check_finite(values: &[f64]) -> Result<()> {
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("eigensolver produced non-finite values".into()));
    }
    Ok(())
}

/// Eigenvalues ascending with the matching unit eigenvectors.
pub fn hermitian_eigh<S: SpectralScalar>(m: &Operator<S>) -> Result<(Vec<f64>, Vec<Vec<S>>)> {
    check_input(m)?;
    let n = m.dim();
    let evd = to_faer(m)
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::InvalidArgument(format!("eigendecomposition failed: {e:?}")))?;
    let values: Vec<f64> = (0..n).map(|i| evd.S()[i].real_part()).collect();
    check_finite(&values)?;
    let u = evd.U();
    let vectors = (0..n).map(|c| (0..n).map(|r| u[(r, c)]).collect()).collect();
    Ok((values, vectors))
}

/// Full spectrum of a Hermitian operator, ascending, with a residual audit.
pub fn hermitian_spectrum<S: SpectralScalar>(m: &Operator<S>) -> Result<Spectrum> {
    let (values, vectors) = hermitian_eigh(m)?;
    let n = m.dim();
    let a = to_faer(m);
    let v = Mat::from_fn(n, n, |r, c| vectors[c][r]);
    let av = &a * &v;
    let scale = values
        .iter()
        .fold(0.0f64, |acc, l| acc.max(l.abs()))
        .max(f64::MIN_POSITIVE);
    let mut worst = 0.0f64;
    for (c, &l) in values.iter().enumerate() {
        let lambda = S::from_f64(l);
        let r: f64 = (0..n)
            .map(|i| (av[(i, c)] - v[(i, c)] * lambda).abs2())
            .sum::<f64>()
            .sqrt();
        worst = worst.max(r / scale);
    }
    if !worst.is_finite() {
        return Err(Error::InvalidArgument("non-finite eigen-residual".into()));
    }
    Ok(Spectrum {
        eigenvalues: values,
        residual_tol: worst,
    })
}

/// Smallest eigenvalue only (no residual audit).
pub fn min_eigenvalue<S: SpectralScalar>(m: &Operator<S>) -> Result<f64> {
    check_input(m)?;
    let values = to_faer(m)
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::InvalidArgument(format!("eigendecomposition failed: {e:?}")))?;
    check_finite(&values)?;
    Ok(values.into_iter().fold(f64::INFINITY, f64::min))
}

/// Singular values, descending.
pub fn singular_values<S: SpectralScalar>(m: &Operator<S>) -> Vec<f64> {
    let mut v = to_faer(m).singular_values().expect("SVD did not converge");
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Largest singular value.
pub fn operator_norm<S: SpectralScalar>(m: &Operator<S>) -> f64 {
    if m.dim() == 0 {
        return 0.0;
    }
    if m.is_hermitian() {
        if let Ok(values) = to_faer(m).self_adjoint_eigenvalues(Side::Lower) {
            return values.iter().fold(0.0f64, |acc, l| acc.max(l.abs()));
        }
    }
    singular_values(m)[0]
}

/// Numerical rank with a threshold relative to the largest singular value.
pub fn numerical_rank(singular: &[f64], rel_threshold: f64) -> usize {
    let top = singular.first().copied().unwrap_or(0.0);
    singular.iter().filter(|&&s| s > rel_threshold * top).count()
}

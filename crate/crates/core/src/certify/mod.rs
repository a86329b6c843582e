//! Certificates for the witness family: detection on the state family,
//! indecomposability, optimality, structural physical approximation, and a
//! see-saw falsification probe of block positivity.

mod optimality;
mod probe;
mod report;
mod spa;

pub use optimality::{optimality_certificate, spanning_family, OptimalityCertificate, ProductVectorSet};
pub use probe::{blockpos_probe, ProbeResult};
pub use report::{assess, Applicability, CertOutcome, CertReport, RationalJson, SpaField};
pub use spa::{spa, SpaResult};

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::psi::QubitCount;
use crate::scalar::Scalar;
use crate::states::RhoFamily;
use crate::witness::Witness;
use crate::Rational;

/// Tolerance below which a minimal eigenvalue still counts as nonnegative.
pub const PSD_TOL: f64 = 1e-10;

/// `Tr(W rho)`, exact when `S` is exact.
pub fn expectation<S: Scalar>(w: &Witness, rho: &Operator<S>) -> Result<S> {
    if rho.dim() != w.dim() {
        return Err(Error::DimensionMismatch {
            expected: w.dim(),
            got: rho.dim(),
        });
    }
    let d = w.dim();
    let mut acc = S::zero();
    for (r, c, v) in w.coordinates() {
        let x = &rho.data()[c * d + r];
        if !x.is_zero() {
            acc = acc + S::from_dyadic(&v) * x.clone();
        }
    }
    Ok(acc)
}

/// Interval `(lower, upper]` of `t` for which `rho_t` is detected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DetectionInterval {
    pub lower_open: Rational,
    pub upper_closed: Rational,
}

impl DetectionInterval {
    pub fn contains(&self, t: Rational) -> bool {
        t > self.lower_open && t <= self.upper_closed
    }
}

/// `(2^N / (2^N + 4), 1]`.
pub fn detection_threshold(n: QubitCount) -> Result<DetectionInterval> {
    if n.get() < 2 {
        return Err(Error::InvalidArgument(format!(
            "detection interval needs N >= 2, got {}",
            n.get()
        )));
    }
    let d = n.dim() as i128;
    Ok(DetectionInterval {
        lower_open: Rational::new(d, d + 4),
        upper_closed: Rational::from_integer(1),
    })
}

/// A PPT state that the witness detects: the evidence for indecomposability.
#[derive(Clone, Debug, PartialEq)]
pub struct IndecomposabilityPoint {
    pub t: Dyadic,
    pub witness_value: Dyadic,
    pub ppt_min_eig: f64,
}

impl IndecomposabilityPoint {
    pub fn verify(&self) -> Result<()> {
        if self.witness_value >= Dyadic::ZERO {
            return Err(Error::CertificateFailed {
                field: "indecomposability_point.witness_value".into(),
                detail: format!("Tr(W rho) = {} is not negative", self.witness_value),
            });
        }
        if self.ppt_min_eig < -PSD_TOL {
            return Err(Error::CertificateFailed {
                field: "indecomposability_point.ppt_min_eig".into(),
                detail: format!("partial transpose has eigenvalue {:e}", self.ppt_min_eig),
            });
        }
        Ok(())
    }
}

pub(crate) fn indecomposability_point(family: &RhoFamily) -> Result<IndecomposabilityPoint> {
    let t = Dyadic::ONE;
    let rho = family.rho_dyadic(t);
    let witness_value = expectation(family.witness(), &rho)?;
    let (_, ppt_min_eig) = family.ppt_min_eigs(t.to_f64())?;
    Ok(IndecomposabilityPoint {
        t,
        witness_value,
        ppt_min_eig,
    })
}

/// Evaluates `rho_1`: it must be PPT and detected. Fails loudly otherwise.
pub fn indecomposability_certificate(n: QubitCount) -> Result<IndecomposabilityPoint> {
    let family = RhoFamily::new(n)?;
    let point = indecomposability_point(&family)?;
    point.verify()?;
    Ok(point)
}

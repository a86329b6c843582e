use serde::{Deserialize, Serialize};

use crate::certify::optimality::compute_optimality;
use crate::certify::spa::compute_spa;
use crate::certify::{detection_threshold, indecomposability_point, PSD_TOL};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::psi::QubitCount;
use crate::spectrum::hermitian_spectrum;
use crate::states::RhoFamily;
use crate::witness::build_witness;
use crate::Rational;

const NOT_APPLICABLE: &str = "not-applicable: decomposable case";

/// Exact rational as `{"num": .., "den": ..}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: i128,
    pub den: i128,
}

impl From<Rational> for RationalJson {
    fn from(r: Rational) -> Self {
        RationalJson {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

impl From<Dyadic> for RationalJson {
    fn from(d: Dyadic) -> Self {
        d.to_ratio().into()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndecomposabilityJson {
    pub t: f64,
    pub witness_value: RationalJson,
    pub ppt_min_eig: f64,
}

/// A value, or a marker string for `N = 1` where the state family does not exist.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Applicability<T> {
    Applicable(T),
    NotApplicable(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaField {
    pub p_star: RationalJson,
    pub spa_min_eig: f64,
    pub spa_trace: f64,
    pub spa_ppt_min_eig: f64,
    pub corollary_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertReport {
    #[serde(rename = "N")]
    pub n: u32,
    pub witness_min_eig: f64,
    pub negative_eig_count: usize,
    pub optimality_rank: usize,
    pub max_zero_violation: f64,
    pub detection_threshold: Applicability<RationalJson>,
    pub indecomposability_point: Applicability<IndecomposabilityJson>,
    pub spa: SpaField,
}

impl CertReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serializable")
    }
}

/// The report plus every certificate that did not hold.
#[derive(Debug)]
pub struct CertOutcome {
    pub report: CertReport,
    pub failures: Vec<Error>,
}

impl CertOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn into_result(self) -> Result<CertReport> {
        match self.failures.into_iter().next() {
            None => Ok(self.report),
            Some(e) => Err(e),
        }
    }
}

/// Runs every certificate for `N` and collects the results without stopping
/// at the first failure.
pub fn assess(n: QubitCount) -> Result<CertOutcome> {
    let w = build_witness(n)?;
    let mut failures = Vec::new();

    let spectrum = hermitian_spectrum(&w.to_f64())?;
    let negative_eig_count = spectrum.count_below(-PSD_TOL);
    let expected_min = -Dyadic::pow2_inv(n.get()).to_f64();
    if negative_eig_count != 1 {
        failures.push(Error::CertificateFailed {
            field: "negative_eig_count".into(),
            detail: format!("{negative_eig_count} negative eigenvalues, expected 1"),
        });
    }
    if (spectrum.min() - expected_min).abs() > 1e-10 {
        failures.push(Error::CertificateFailed {
            field: "witness_min_eig".into(),
            detail: format!("{:e} != {expected_min:e}", spectrum.min()),
        });
    }

    let optimality = compute_optimality(&w);
    if let Err(e) = optimality.verify(n) {
        failures.push(e);
    }

    let (detection, indecomposability) = if n.get() >= 2 {
        let interval = detection_threshold(n)?;
        let family = RhoFamily::from_witness(w.clone())?;
        let point = indecomposability_point(&family)?;
        if let Err(e) = point.verify() {
            failures.push(e);
        }
        (
            Applicability::Applicable(interval.lower_open.into()),
            Applicability::Applicable(IndecomposabilityJson {
                t: point.t.to_f64(),
                witness_value: point.witness_value.into(),
                ppt_min_eig: point.ppt_min_eig,
            }),
        )
    } else {
        (
            Applicability::NotApplicable(NOT_APPLICABLE.into()),
            Applicability::NotApplicable(NOT_APPLICABLE.into()),
        )
    };

    let spa = compute_spa(&w)?;
    if let Err(e) = spa.verify() {
        failures.push(e);
    }

    let report = CertReport {
        n: n.get(),
        witness_min_eig: spectrum.min(),
        negative_eig_count,
        optimality_rank: optimality.rank,
        max_zero_violation: optimality.max_zero_violation,
        detection_threshold: detection,
        indecomposability_point: indecomposability,
        spa: SpaField {
            p_star: spa.p_star.into(),
            spa_min_eig: spa.min_eig,
            spa_trace: crate::scalar::RealScalar::to_f64(&spa.trace),
            spa_ppt_min_eig: spa.ppt_min_eig,
            corollary_holds: spa.corollary_holds,
        },
    };
    Ok(CertOutcome { report, failures })
}

use num_traits::{One, Zero};

use crate::certify::PSD_TOL;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::operator::{partial_transpose, Operator};
use crate::psi::{psi_apply, QubitCount};
use crate::spectrum::{hermitian_spectrum, min_eigenvalue};
use crate::witness::{build_witness, Witness};
use crate::Rational;

/// Structural physical approximation of the witness:
/// `W(p) = p / 4^N 1 + (1 - p) W` at the smallest `p` making it PSD.
#[derive(Clone, Debug)]
pub struct SpaResult {
    pub p_star: Rational,
    pub state: Operator<Rational>,
    pub trace: Rational,
    pub min_eig: f64,
    pub ppt_min_eig: f64,
    /// Exact smallest witness eigenvalue (eigenvector `phi+`).
    pub xi_min: Dyadic,
    pub corollary_holds: bool,
}

impl SpaResult {
    pub fn verify(&self) -> Result<()> {
        let fail = |field: &str, detail: String| {
            Err(Error::CertificateFailed {
                field: format!("spa.{field}"),
                detail,
            })
        };
        if self.trace != Rational::one() {
            return fail("spa_trace", format!("trace {} != 1", self.trace));
        }
        if self.min_eig < -PSD_TOL {
            return fail("spa_min_eig", format!("{:e} is negative", self.min_eig));
        }
        if self.ppt_min_eig < -PSD_TOL {
            return fail("spa_ppt_min_eig", format!("{:e} is negative", self.ppt_min_eig));
        }
        if !self.corollary_holds {
            return fail(
                "corollary_holds",
                format!("xi_min = {} fails the hypothesis", self.xi_min),
            );
        }
        Ok(())
    }
}

/// Smallest `p` with `p / dim + (1 - p) lambda >= 0`.
pub fn minimal_admixture(lambda_min: Dyadic, dim: usize) -> Rational {
    let lambda = lambda_min.to_ratio();
    if lambda >= Rational::zero() {
        return Rational::zero();
    }
    let inv_dim = Rational::new(1, dim as i128);
    -lambda / (inv_dim - lambda)
}

pub(crate) fn compute_spa(w: &Witness) -> Result<SpaResult> {
    let n = w.qubits();
    let dim = w.dim();
    let wf = w.to_f64();
    let spectrum = hermitian_spectrum(&wf)?;

    // the floating minimum must be the exact phi+ eigenvalue
    let xi_min = w.max_entangled_eigenvalue().ok_or_else(|| Error::CertificateFailed {
        field: "spa.corollary_holds".into(),
        detail: "phi+ is not an eigenvector of the witness".into(),
    })?;
    if (spectrum.min() - xi_min.to_f64()).abs() > 1e-10 {
        return Err(Error::CertificateFailed {
            field: "spa.p_star".into(),
            detail: format!(
                "floating minimum {:e} differs from the phi+ eigenvalue {}",
                spectrum.min(),
                xi_min
            ),
        });
    }

    let p_star = minimal_admixture(xi_min, dim);
    let noise = p_star / Rational::from_integer(dim as i128);
    let keep = Rational::one() - p_star;
    let state = Operator::from_fn(dim, |r, c| {
        let x = keep * w.matrix()[(r, c)].to_ratio();
        if r == c {
            x + noise
        } else {
            x
        }
    });
    let trace = state.trace();
    let sf = state.to_f64();
    let min_eig = min_eigenvalue(&sf)?;
    let ppt_min_eig = min_eigenvalue(&partial_transpose(&sf, n.dim())?)?;

    let unital = psi_apply(n, &Operator::<Dyadic>::identity(n.dim()))? == Operator::identity(n.dim());
    let corollary_holds = unital && xi_min <= -Dyadic::pow2_inv(n.get());

    Ok(SpaResult {
        p_star,
        state,
        trace,
        min_eig,
        ppt_min_eig,
        xi_min,
        corollary_holds,
    })
}

/// Computes and verifies the structural physical approximation for `N`.
pub fn spa(n: QubitCount) -> Result<SpaResult> {
    let w = build_witness(n)?;
    let result = compute_spa(&w)?;
    result.verify()?;
    Ok(result)
}

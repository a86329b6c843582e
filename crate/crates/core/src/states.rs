//! One-parameter family of (unnormalized) bipartite states `rho_t` built from
//! the witness blocks, and the PPT sweeps over `t`.
//!
//! With `W_ij` the `(i, j)` block of the witness and `h = 2^(N-1)`:
//!
//! * diagonal blocks: `2^-N 1 - (h - 1) W_ii`
//! * off-diagonal blocks inside one half (`i, j <= h` or `i, j > h`): zero
//! * partner blocks `j = i +- h`: `-t W_ij`
//! * every other block: `2^-(2N-1) e_ij`

use std::io::Write;

use rayon::prelude::*;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::operator::{partial_transpose, Operator, RealOperator};
use crate::psi::QubitCount;
use crate::scalar::Scalar;
use crate::spectrum::min_eigenvalue;
use crate::witness::{build_witness, Witness};

/// Generator of `rho_t` for a fixed `N >= 2`.
#[derive(Clone, Debug)]
pub struct RhoFamily {
    witness: Witness,
}

impl RhoFamily {
    pub fn new(n: QubitCount) -> Result<Self> {
        if n.get() < 2 {
            return Err(Error::InvalidArgument(format!(
                "the state family needs N >= 2, got {}",
                n.get()
            )));
        }
        Ok(RhoFamily {
            witness: build_witness(n)?,
        })
    }

    pub fn from_witness(witness: Witness) -> Result<Self> {
        if witness.qubits().get() < 2 {
            return Err(Error::InvalidArgument("the state family needs N >= 2".into()));
        }
        Ok(RhoFamily { witness })
    }

    pub fn qubits(&self) -> QubitCount {
        self.witness.qubits()
    }

    pub fn witness(&self) -> &Witness {
        &self.witness
    }

    /// `h = 2^(N-1)`.
    pub fn half(&self) -> usize {
        self.qubits().dim() / 2
    }

    /// Exact trace `2^(N-1) + 1`.
    pub fn expected_trace(&self) -> Dyadic {
        Dyadic::from_int(self.half() as i64 + 1)
    }

    /// `rho_t` over any scalar; exact when `S` is exact.
    pub fn rho<S: Scalar>(&self, t: &S) -> Operator<S> {
        let n = self.qubits().get();
        let d = self.qubits().dim();
        let h = self.half();
        let dim = d * d;
        let w = self.witness.matrix();
        let wblock = |i: usize, j: usize, k: usize, l: usize| -> Dyadic { w[(i * d + k, j * d + l)] };
        let inv_d = Dyadic::pow2_inv(n);
        let diag_weight = Dyadic::from_int(h as i64 - 1);
        let cross = Dyadic::pow2_inv(2 * n - 1);

        let mut data = vec![S::zero(); dim * dim];
        for i in 0..d {
            for j in 0..d {
                let same_half = (i < h) == (j < h);
                for k in 0..d {
                    for l in 0..d {
                        let v: S = if i == j {
                            let id = if k == l { inv_d } else { Dyadic::ZERO };
                            S::from_dyadic(&(id - diag_weight * wblock(i, j, k, l)))
                        } else if same_half {
                            continue;
                        } else if i.abs_diff(j) == h {
                            -(t.clone() * S::from_dyadic(&wblock(i, j, k, l)))
                        } else if k == i && l == j {
                            S::from_dyadic(&cross)
                        } else {
                            continue;
                        };
                        data[(i * d + k) * dim + j * d + l] = v;
                    }
                }
            }
        }
        let hermitian = t.conj() == *t;
        Operator::from_raw(dim, data, hermitian)
    }

    pub fn rho_dyadic(&self, t: Dyadic) -> Operator<Dyadic> {
        self.rho(&t)
    }

    pub fn rho_f64(&self, t: f64) -> RealOperator {
        self.rho(&t)
    }

    /// Minimal eigenvalues of `rho_t` and of its partial transpose.
    pub fn ppt_min_eigs(&self, t: f64) -> Result<(f64, f64)> {
        let rho = self.rho_f64(t);
        let gamma = partial_transpose(&rho, self.qubits().dim())?;
        Ok((min_eigenvalue(&rho)?, min_eigenvalue(&gamma)?))
    }

    /// Closed form `(-4t(2^N + 4) + 2^(N+2)) / 2^(4N)` for `Tr(W_N rho_t)`.
    pub fn witness_formula(&self, t: f64) -> f64 {
        closed_form_expectation(self.qubits(), t)
    }

    /// Evaluates the family on a uniform grid including both endpoints.
    pub fn sweep(&self, t_min: f64, t_max: f64, steps: usize) -> Result<Vec<SweepRow>> {
        let grid = uniform_grid(t_min, t_max, steps)?;
        let w = self.witness.to_f64();
        grid.into_par_iter()
            .map(|t| {
                let rho = self.rho_f64(t);
                let (min_eig_rho, min_eig_rho_gamma) = self.ppt_min_eigs(t)?;
                Ok(SweepRow {
                    t,
                    min_eig_rho,
                    min_eig_rho_gamma,
                    witness_value: w.trace_product(&rho)?,
                    witness_formula: self.witness_formula(t),
                })
            })
            .collect()
    }
}

/// Closed form for `Tr(W_N rho_t)`, evaluated in floating point.
pub fn closed_form_expectation(n: QubitCount, t: f64) -> f64 {
    let d = n.dim() as f64;
    (-4.0 * t * (d + 4.0) + 4.0 * d) / (d * d * d * d)
}

/// Same closed form, exact, for dyadic `t`.
pub fn closed_form_expectation_exact(n: QubitCount, t: Dyadic) -> Dyadic {
    let d = n.dim() as i64;
    (Dyadic::from_int(-4 * (d + 4)) * t + Dyadic::from_int(4 * d)).halve(4 * n.get())
}

/// `steps` points from `t_min` to `t_max` inclusive.
pub fn uniform_grid(t_min: f64, t_max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::InvalidArgument(format!(
            "a grid needs at least 2 steps, got {steps}"
        )));
    }
    if !(t_min.is_finite() && t_max.is_finite()) || t_min >= t_max {
        return Err(Error::InvalidArgument(format!("invalid grid range [{t_min}, {t_max}]")));
    }
    let span = t_max - t_min;
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|k| {
            if k == steps - 1 {
                t_max
            } else {
                t_min + span * (k as f64) / last
            }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub t: f64,
    pub min_eig_rho: f64,
    pub min_eig_rho_gamma: f64,
    pub witness_value: f64,
    pub witness_formula: f64,
}

pub const SWEEP_CSV_HEADER: &str = "t,min_eig_rho,min_eig_rho_gamma,witness_value,witness_formula";

/// Writes the sweep with 16 significant digits per value.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], mut out: W) -> Result<()> {
    writeln!(out, "{SWEEP_CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{:.15e},{:.15e},{:.15e},{:.15e},{:.15e}",
            r.t, r.min_eig_rho, r.min_eig_rho_gamma, r.witness_value, r.witness_formula
        )?;
    }
    out.flush()?;
    Ok(())
}

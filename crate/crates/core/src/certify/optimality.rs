use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::{kron_vec, ComplexOperator};
use crate::psi::QubitCount;
use crate::spectrum::{numerical_rank, singular_values};
use crate::witness::Witness;

/// Relative singular-value threshold for the rank test.
pub const RANK_REL_THRESHOLD: f64 = 1e-8;
/// Largest accepted `|<v|W|v>| / |psi|^4` on the product family.
pub const ZERO_TOL: f64 = 1e-12;

/// Product vectors `psi (x) conj(psi)` with generators `e_l`, then
/// `f_mn = e_m + e_n`, then `g_mn = e_m + i e_n` (`m < n`, lexicographic).
#[derive(Clone, Debug)]
pub struct ProductVectorSet {
    pub qubits: QubitCount,
    pub generators: Vec<Vec<Complex64>>,
    pub vectors: Vec<Vec<Complex64>>,
}

pub fn spanning_family(n: QubitCount) -> ProductVectorSet {
    let d = n.dim();
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let basis = |k: usize| {
        let mut v = vec![zero; d];
        v[k] = one;
        v
    };
    let mut generators: Vec<Vec<Complex64>> = (0..d).map(basis).collect();
    for coeff in [one, Complex64::new(0.0, 1.0)] {
        for m in 0..d {
            for k in m + 1..d {
                let mut v = basis(m);
                v[k] = coeff;
                generators.push(v);
            }
        }
    }
    let vectors = generators
        .iter()
        .map(|g| {
            let conj: Vec<Complex64> = g.iter().map(|z| z.conj()).collect();
            kron_vec(g, &conj)
        })
        .collect();
    ProductVectorSet {
        qubits: n,
        generators,
        vectors,
    }
}

impl ProductVectorSet {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Singular values of the matrix whose rows are the family vectors.
    pub fn singular_values(&self) -> Vec<f64> {
        let data = self.vectors.iter().flatten().copied().collect();
        let stacked = ComplexOperator::from_row_major(data).expect("family is square by construction");
        singular_values(&stacked)
    }

    pub fn rank(&self) -> usize {
        numerical_rank(&self.singular_values(), RANK_REL_THRESHOLD)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimalityCertificate {
    pub rank: usize,
    pub max_zero_violation: f64,
    /// `sigma_min / sigma_max` of the stacked family.
    pub singular_gap: f64,
}

impl OptimalityCertificate {
    pub fn verify(&self, n: QubitCount) -> Result<()> {
        if self.rank != n.bipartite_dim() {
            return Err(Error::CertificateFailed {
                field: "optimality_rank".into(),
                detail: format!("rank {} < {}", self.rank, n.bipartite_dim()),
            });
        }
        if self.max_zero_violation > ZERO_TOL {
            return Err(Error::CertificateFailed {
                field: "max_zero_violation".into(),
                detail: format!("{:e} exceeds {ZERO_TOL:e}", self.max_zero_violation),
            });
        }
        Ok(())
    }
}

/// `<v|W|v>` for a complex vector and the real witness.
fn product_expectation(w: &Witness, v: &[Complex64]) -> Complex64 {
    w.coordinates().map(|(r, c, x)| v[r].conj() * v[c] * x.to_f64()).sum()
}

pub(crate) fn compute_optimality(w: &Witness) -> OptimalityCertificate {
    let family = spanning_family(w.qubits());
    let max_zero_violation = family
        .generators
        .iter()
        .zip(&family.vectors)
        .map(|(g, v)| {
            let norm2: f64 = g.iter().map(|z| z.norm_sqr()).sum();
            product_expectation(w, v).norm() / (norm2 * norm2)
        })
        .fold(0.0, f64::max);
    let sv = family.singular_values();
    let rank = numerical_rank(&sv, RANK_REL_THRESHOLD);
    let singular_gap = sv.last().copied().unwrap_or(0.0) / sv[0];
    OptimalityCertificate {
        rank,
        max_zero_violation,
        singular_gap,
    }
}

/// Spanning product zeros of the witness; fails loudly if either the rank or
/// the zero condition does not hold.
pub fn optimality_certificate(w: &Witness) -> Result<OptimalityCertificate> {
    let cert = compute_optimality(w);
    cert.verify(w.qubits())?;
    Ok(cert)
}

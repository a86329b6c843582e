//! Worked examples for the public operations, one test per operation.

mod common;

use ewit_core::certify::{
    blockpos_probe, detection_threshold, expectation, indecomposability_certificate, optimality_certificate, spa,
    spanning_family,
};
use ewit_core::spectrum::{hermitian_spectrum, min_eigenvalue, operator_norm};
use ewit_core::states::{closed_form_expectation_exact, uniform_grid};
use ewit_core::{
    build_witness, kron, max_entangled_vector, partial_transpose, psi_apply, reduction_apply, robertson_apply, Dyadic,
    DyadicOperator, Error, Operator, QubitCount, Rational, RealOperator, RhoFamily,
};

fn q(n: u32) -> QubitCount {
    QubitCount::new(n).unwrap()
}

fn d(num: i64, exp: u32) -> Dyadic {
    Dyadic::new(num, exp)
}

#[test]
fn kron_index_convention() {
    let i2 = DyadicOperator::identity(2);
    assert_eq!(kron(&i2, &i2), DyadicOperator::identity(4));
    let e12 = DyadicOperator::unit(2, 0, 1);
    let e11 = DyadicOperator::unit(2, 0, 0);
    assert_eq!(kron(&e12, &e11), DyadicOperator::unit(4, 0, 2));
    let a = RealOperator::diag(&[1.0, 2.0]);
    let b = RealOperator::diag(&[3.0, 4.0]);
    assert_eq!(kron(&a, &b), RealOperator::diag(&[3.0, 4.0, 6.0, 8.0]));
}

#[test]
fn partial_transpose_examples() {
    assert_eq!(
        partial_transpose(&RealOperator::identity(4), 2).unwrap(),
        RealOperator::identity(4)
    );
    let phi: Vec<f64> = max_entangled_vector(2);
    let swap = partial_transpose(&RealOperator::outer(&phi, &phi).unwrap(), 2).unwrap();
    let s = hermitian_spectrum(&swap).unwrap();
    let expected = [-1.0, 1.0, 1.0, 1.0];
    for (a, b) in s.eigenvalues.iter().zip(expected) {
        assert!((a - b).abs() < 1e-12);
    }
    let rho = RhoFamily::new(q(2)).unwrap().rho_f64(1.2);
    assert!(min_eigenvalue(&partial_transpose(&rho, 4).unwrap()).unwrap() < 0.0);
    assert!(matches!(
        partial_transpose(&RealOperator::identity(6), 2),
        Err(Error::NotBipartite { .. })
    ));
}

#[test]
fn spectrum_examples() {
    let w2 = build_witness(q(2)).unwrap().to_f64();
    let s = hermitian_spectrum(&w2).unwrap();
    assert_eq!(s.count_below(-1e-10), 1);
    assert!((s.min() + 0.25).abs() < 1e-12);
    assert!(s.residual_tol <= 1e-10);
    let rho0 = RhoFamily::new(q(2)).unwrap().rho_f64(0.0);
    assert!(min_eigenvalue(&rho0).unwrap() >= -1e-10);
}

#[test]
fn operator_norm_examples() {
    assert_eq!(operator_norm(&RealOperator::identity(3)), 1.0);
    assert!((operator_norm(&RealOperator::unit(2, 0, 1)) - 1.0).abs() < 1e-15);
    let mut rng = common::rng(11);
    let (x, y) = (common::random_unit(&mut rng, 4), common::random_unit(&mut rng, 4));
    let p = psi_apply(q(2), &Operator::outer(&x, &y).unwrap()).unwrap();
    assert!(operator_norm(&p) <= 1.0 + 1e-10);
}

#[test]
fn psi_examples() {
    let x = DyadicOperator::from_rows(vec![vec![d(1, 0), d(2, 0)], vec![d(3, 0), d(5, 0)]]).unwrap();
    let expected = DyadicOperator::from_rows(vec![vec![d(5, 0), d(-2, 0)], vec![d(-3, 0), d(1, 0)]]).unwrap();
    assert_eq!(psi_apply(q(1), &x).unwrap(), expected);
    for n in 1..=6 {
        let id = DyadicOperator::identity(1 << n);
        assert_eq!(psi_apply(q(n), &id).unwrap(), id);
    }
    let y = psi_apply(q(2), &DyadicOperator::unit(4, 0, 2)).unwrap();
    let mut expected = DyadicOperator::zeros(4);
    expected[(0, 2)] = d(-1, 1);
    expected[(3, 1)] = d(-1, 1);
    assert_eq!(y, expected);
    assert!(matches!(
        psi_apply(q(2), &DyadicOperator::identity(8)),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn closed_form_oracles() {
    let e11 = DyadicOperator::unit(2, 0, 0);
    assert_eq!(reduction_apply(&e11), DyadicOperator::unit(2, 1, 1));
    let e12 = DyadicOperator::unit(2, 0, 1);
    assert_eq!(reduction_apply(&e12), e12.scale(&-Dyadic::ONE));
    assert_eq!(
        reduction_apply(&DyadicOperator::identity(2)),
        DyadicOperator::identity(2)
    );

    let r = robertson_apply(&DyadicOperator::unit(4, 0, 0)).unwrap();
    let half = d(1, 1);
    assert_eq!(r, DyadicOperator::diag(&[Dyadic::ZERO, Dyadic::ZERO, half, half]));
    let e13 = DyadicOperator::unit(4, 0, 2);
    assert_eq!(robertson_apply(&e13).unwrap(), psi_apply(q(2), &e13).unwrap());
    assert!(robertson_apply(&DyadicOperator::identity(2)).is_err());
}

#[test]
fn max_entangled_vector_layout() {
    assert_eq!(max_entangled_vector::<f64>(2), vec![1.0, 0.0, 0.0, 1.0]);
    assert_eq!(max_entangled_vector::<f64>(1), vec![1.0]);
    let v: Vec<f64> = max_entangled_vector(5);
    assert_eq!(v.iter().map(|x| x * x).sum::<f64>(), 5.0);
}

#[test]
fn witness_examples() {
    assert!(build_witness(q(0)).is_err());
    assert!(QubitCount::new(7).is_err());
    let w1 = build_witness(q(1)).unwrap();
    assert_eq!(w1.max_entangled_eigenvalue(), Some(d(-1, 1)));
    let w3 = build_witness(q(3)).unwrap();
    assert_eq!(w3.matrix().trace(), Dyadic::ONE);
    let s = hermitian_spectrum(&w3.to_f64()).unwrap();
    assert_eq!(s.count_below(-1e-10), 1);
    assert!((s.min() + 0.125).abs() < 1e-12);
}

#[test]
fn rho_examples() {
    let fam2 = RhoFamily::new(q(2)).unwrap();
    let rho = fam2.rho_dyadic(Dyadic::ZERO);
    assert_eq!(rho.block(0, 2, 4), DyadicOperator::zeros(4));
    assert!(rho.is_hermitian_exact());
    let fam3 = RhoFamily::new(q(3)).unwrap();
    assert_eq!(fam3.rho_dyadic(d(3, 2)).trace(), Dyadic::from_int(5));
    assert!(RhoFamily::new(q(1)).is_err());
}

#[test]
fn ppt_examples() {
    let fam2 = RhoFamily::new(q(2)).unwrap();
    assert!(fam2.ppt_min_eigs(0.5).unwrap().1 >= -1e-10);
    assert!(fam2.ppt_min_eigs(1.2).unwrap().1 < -1e-6);
    let fam3 = RhoFamily::new(q(3)).unwrap();
    assert!(fam3.ppt_min_eigs(-1.2).unwrap().1 < -1e-6);
}

#[test]
fn sweep_examples() {
    let fam2 = RhoFamily::new(q(2)).unwrap();
    let rows = fam2.sweep(-1.5, 1.5, 61).unwrap();
    assert_eq!(rows.len(), 61);
    assert_eq!(rows[60].t, 1.5);
    assert!(rows[60].min_eig_rho_gamma < 0.0);
    let rows = fam2.sweep(0.0, 1.0, 3).unwrap();
    assert_eq!(rows[2].t, 1.0);
    assert!((rows[2].witness_value + 1.0 / 16.0).abs() < 1e-15);
    assert!(RhoFamily::new(q(4)).unwrap().sweep(0.0, 0.0, 2).is_err());
    assert!(uniform_grid(0.0, 1.0, 1).is_err());
}

#[test]
fn expectation_examples() {
    let w2 = build_witness(q(2)).unwrap();
    let fam2 = RhoFamily::new(q(2)).unwrap();
    for k in -4..=4 {
        let t = d(k, 2);
        let expected = (Dyadic::ONE - Dyadic::from_int(2) * t).halve(4);
        assert_eq!(expectation(&w2, &fam2.rho_dyadic(t)).unwrap(), expected);
    }
    for n in 1..=4 {
        let w = build_witness(q(n)).unwrap();
        let dim = w.dim();
        let noise = DyadicOperator::identity(dim).scale(&Dyadic::pow2_inv(2 * n));
        assert_eq!(expectation(&w, &noise).unwrap(), Dyadic::pow2_inv(2 * n));
    }
    assert_eq!(closed_form_expectation_exact(q(3), Dyadic::ONE), d(-1, 8));
    assert!(matches!(
        expectation(&w2, &DyadicOperator::identity(4)),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn detection_threshold_examples() {
    let lower = |n| detection_threshold(q(n)).unwrap().lower_open;
    assert_eq!(lower(2), Rational::new(1, 2));
    assert_eq!(lower(3), Rational::new(2, 3));
    assert_eq!(lower(4), Rational::new(4, 5));
    let interval = detection_threshold(q(3)).unwrap();
    assert!(!interval.contains(Rational::new(2, 3)));
    assert!(interval.contains(Rational::from_integer(1)));
    assert!(detection_threshold(q(1)).is_err());
}

#[test]
fn indecomposability_examples() {
    for (n, exp) in [(2, 4), (3, 8), (4, 12)] {
        let p = indecomposability_certificate(q(n)).unwrap();
        assert_eq!(p.t, Dyadic::ONE);
        assert_eq!(p.witness_value, d(-1, exp));
        assert!(p.ppt_min_eig >= -1e-10);
    }
    assert!(indecomposability_certificate(q(1)).is_err());
}

#[test]
fn spanning_family_examples() {
    assert_eq!(spanning_family(q(1)).len(), 4);
    let one = spanning_family(q(1));
    assert!(one.vectors[2].iter().all(|z| (z.re - 1.0).abs() < 1e-15 && z.im == 0.0));
    assert_eq!(spanning_family(q(2)).rank(), 16);
}

#[test]
fn optimality_examples() {
    for n in 1..=3 {
        let cert = optimality_certificate(&build_witness(q(n)).unwrap()).unwrap();
        assert_eq!(cert.rank, 1 << (2 * n));
        assert!(cert.max_zero_violation <= 1e-12);
    }
}

#[test]
fn spa_examples() {
    assert_eq!(spa(q(1)).unwrap().p_star, Rational::new(2, 3));
    let r = spa(q(2)).unwrap();
    assert_eq!(r.p_star, Rational::new(4, 5));
    assert!(r.min_eig.abs() <= 1e-10);
    for n in 1..=4 {
        let r = spa(q(n)).unwrap();
        assert_eq!(r.xi_min, -Dyadic::pow2_inv(n));
        assert!(r.corollary_holds);
    }
}

#[test]
fn probe_examples() {
    let w1 = build_witness(q(1)).unwrap();
    let r = blockpos_probe(&w1, 50, 50, 3).unwrap();
    assert!(r.min_value.abs() <= 1e-10);
    let w2 = build_witness(q(2)).unwrap();
    let r = blockpos_probe(&w2, 200, 100, 5).unwrap();
    assert!(r.min_value >= -1e-8);
    assert!(r.max_increase <= 1e-12);
    assert_eq!(r, blockpos_probe(&w2, 200, 100, 5).unwrap());
    assert!(blockpos_probe(&w2, 0, 10, 0).is_err());
}

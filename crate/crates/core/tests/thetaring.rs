use std::time::Instant;

use nalgebra::DMatrix;
use ncgkit::linalg::{self, subspace_distance};
use ncgkit::nctorus::{ComplexStructure, QuadIrr, SL2Mat};
use ncgkit::precision::{Certified, Precision};
use ncgkit::quadfield::rat;
use ncgkit::thetaring::{
    index_set, struct_constants, theta_const, GradedRing, QuadraticKernel, ThetaChar,
};
use num::complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Complex;

fn instance(eps: f64) -> GradedRing {
    let g = SL2Mat::new(4, -1, 5, -1).unwrap();
    let theta: QuadIrr = "(5-1*sqrt(5))/10".parse().unwrap();
    let tau: ComplexStructure = "0.3,-1.0".parse().unwrap();
    GradedRing::new(g, theta, tau, eps, Precision::default()).unwrap()
}

fn exp_sum(tau: Complex64, den: f64, ms: impl Iterator<Item = i64>) -> Complex64 {
    ms.map(|m| (-Complex64::i() * std::f64::consts::PI * tau * (m * m) as f64 / den).exp())
        .sum()
}

#[test]
fn unipotent_constants_are_parity_sums() {
    let g = SL2Mat::new(1, 0, 1, 1).unwrap();
    let theta: QuadIrr = "(1+1*sqrt(5))/2".parse().unwrap();
    let tau: ComplexStructure = "0,-1".parse().unwrap();
    let t = struct_constants(&g, &g, &theta, &tau, 1e-13, Precision::default()).unwrap();
    assert_eq!(t.dims(), (2, 1, 1));
    let tau64 = Complex64::new(0.0, -1.0);
    let odd = exp_sum(tau64, 4.0, (-41..=41).filter(|m| m % 2 != 0));
    let even = exp_sum(tau64, 4.0, (-40..=40).step_by(2));
    for (gamma, want) in [(1, odd), (2, even)] {
        let c = t.get(gamma, 1, 1);
        assert!(c.err <= 1e-13);
        assert!((Complex64::new(c.re_f64(), c.im_f64()) - want).norm() < 1e-12);
    }
    let ch = ThetaChar::new(rat(0, 1), rat(1, 1)).unwrap();
    let i = Complex::with_val(128, (0, 1));
    let (th, _) = theta_const(&ch, &i, 1e-13, Precision::default()).unwrap();
    assert!((t.get(2, 1, 1).re_f64() - th.re_f64()).abs() < 1e-12);
}

#[test]
fn entries_stable_under_wider_window() {
    let ring = instance(1e-12);
    let t = ring.table(1, 1).unwrap();
    let g = ring.g();
    let tau64 = Complex64::new(0.3, -1.0);
    for ((gamma, alpha, beta), c) in t.iter() {
        let ms = index_set(&g, &g, alpha as i64, beta as i64, gamma as i64, 4000).unwrap();
        let direct = exp_sum(tau64, (2 * 5 * 5 * 15) as f64, ms.into_iter());
        let got = Complex64::new(c.re_f64(), c.im_f64());
        assert!((got - direct).norm() < 1e-12 + c.err, "entry {gamma},{alpha},{beta}");
    }
}

#[test]
fn associativity_of_degree_one_triples() {
    let start = Instant::now();
    let ring = instance(1e-12);
    let d = ring.associativity_defect(1, 1, 1).unwrap();
    assert!(d.value <= 1e-9, "defect {}", d.value);
    assert!(d.value <= 10.0 * d.bound.max(f64::MIN_POSITIVE));
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn associativity_bound_tightens_with_eps() {
    let bounds: Vec<f64> = [1e-6, 1e-8, 1e-10, 1e-12]
        .iter()
        .map(|&e| instance(e).associativity_defect(1, 1, 1).unwrap().bound)
        .collect();
    assert!(bounds.windows(2).all(|w| w[1] <= w[0]), "{bounds:?}");
}

#[test]
fn identity_ring_has_zero_defect() {
    let theta: QuadIrr = "(1+1*sqrt(5))/2".parse().unwrap();
    let tau: ComplexStructure = "0,-1".parse().unwrap();
    let r = GradedRing::new(SL2Mat::identity(), theta, tau, 1e-10, Precision::default()).unwrap();
    assert_eq!(r.dim(1), 0);
    assert_eq!(r.associativity_defect(1, 1, 1).unwrap().value, 0.0);
}

#[test]
fn quadratic_relations_of_the_instance() {
    let ring = instance(1e-12);
    assert_eq!(ring.dim(1), 5);
    assert_eq!(ring.dim(2), 15);
    let k = ring.quadratic_kernel(1e-8).unwrap();
    assert_eq!((k.rank, k.kernel_dim), (15, 10));
    assert_eq!(k.plateau.rank(), Some(15));
    let (m, _) = ring.multiplication_matrix().unwrap();
    assert!((&m * &k.basis).norm() < 1e-10);
    let p = ring.presentation(1e-8, Some(7)).unwrap();
    assert_eq!(p.generators.len(), 5);
    assert_eq!(p.relations.len(), 10);
    let doubled = QuadraticKernel::of(&(m * Complex64::new(2.0, 0.0)), 1e-8, 0.0);
    assert_eq!((doubled.rank, doubled.kernel_dim), (15, 10));
}

#[test]
fn relation_space_independent_of_eps() {
    let a = instance(1e-10).presentation(1e-8, None).unwrap();
    let b = instance(1e-12).presentation(1e-8, None).unwrap();
    assert!(subspace_distance(&a.basis, &b.basis) < 1e-6);
}

fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    let z = DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
    z.qr().q()
}

#[test]
fn rank_invariant_under_unitary_basis_change() {
    let ring = instance(1e-12);
    let (m, _) = ring.multiplication_matrix().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let u = random_unitary(5, &mut rng);
        let uu = u.kronecker(&u);
        let k = QuadraticKernel::of(&(&m * uu), 1e-8, 0.0);
        assert_eq!((k.rank, k.kernel_dim), (15, 10));
    }
}

fn exact(v: &[Complex64]) -> Vec<Certified> {
    v.iter()
        .map(|z| Certified { value: Complex::with_val(128, (z.re, z.im)), err: 0.0 })
        .collect()
}

#[test]
fn multiplication_is_bilinear_and_graded() {
    let ring = instance(1e-12);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut rv = |n: usize| -> Vec<Complex64> {
        (0..n).map(|_| Complex64::new(rng.random(), rng.random())).collect()
    };
    let (u1, u2, v) = (rv(5), rv(5), rv(5));
    let sum: Vec<Certified> = exact(&u1)
        .into_iter()
        .zip(exact(&u2))
        .map(|(a, b)| Certified { value: a.value + b.value, err: 0.0 })
        .collect();
    let lhs = ring.multiply(1, &sum, 1, &exact(&v)).unwrap();
    let a = ring.multiply(1, &exact(&u1), 1, &exact(&v)).unwrap();
    let b = ring.multiply(1, &exact(&u2), 1, &exact(&v)).unwrap();
    assert_eq!(lhs.len(), 15);
    for k in 0..15 {
        let d = Complex::with_val(128, &lhs[k].value - &a[k].value) - &b[k].value;
        assert!(linalg_abs(&d) <= 2.0 * (lhs[k].err + a[k].err + b[k].err), "{}", linalg_abs(&d));
    }
    let zero = ring.multiply(1, &exact(&[Complex64::new(0.0, 0.0); 5]), 1, &exact(&v)).unwrap();
    assert!(zero.iter().all(|z| z.abs_f64() == 0.0));
    let w = ring.multiply(2, &exact(&rv(15)), 1, &exact(&v)).unwrap();
    assert_eq!(w.len(), ring.dim(3));
    assert!(ring.multiply(1, &exact(&rv(4)), 1, &exact(&v)).is_err());
}

fn linalg_abs(z: &Complex) -> f64 {
    ncgkit::precision::abs_f64(z)
}

#[test]
fn table_columns_match_products_of_basis_vectors() {
    let ring = instance(1e-12);
    let t = ring.table(1, 1).unwrap();
    for a in 1..=5 {
        for b in 1..=5 {
            let w = ring.multiply(1, &ring.basis_vector(1, a), 1, &ring.basis_vector(1, b)).unwrap();
            for g in 1..=15 {
                let d = Complex::with_val(128, &w[g - 1].value - &t.get(g, a, b).value);
                assert!(linalg_abs(&d) < 1e-30);
            }
        }
    }
}

#[test]
fn sweep_reports_plateau() {
    let ring = instance(1e-12);
    let (m, _) = ring.multiplication_matrix().unwrap();
    let p = linalg::rank_sweep(&linalg::spectrum(&m).values, 6, 10);
    assert!(p.stable());
    assert_eq!(p.ranks.len(), 5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]
    #[test]
    fn theta_reindexing_symmetries(num in -40i64..40, den in 1i64..12, im in 0.2f64..3.0, re in -1.0f64..1.0) {
        let prec = Precision::default();
        let eps = 1e-12;
        let tau = Complex::with_val(128, (re, im));
        let th = |r| {
            let ch = ThetaChar::new(r, rat(1, 1)).unwrap();
            theta_const(&ch, &tau, eps, prec).unwrap().0
        };
        let base = th(rat(num, den));
        for other in [th(rat(num + den, den)), th(rat(-num, den))] {
            let d = Complex::with_val(128, &base.value - &other.value);
            prop_assert!(linalg_abs(&d) <= 2.0 * eps);
        }
    }
}

use nalgebra::DVector;
use ncgkit::freealg::{FreeElement, RewriteSystem, TensorElement, UniScalar};
use ncgkit::spheres::charvar::{sigma_orbit, BilinearSystem, RANK_TOL};
use ncgkit::spheres::s3::{
    self, ch12, ch12_closed_form, ch32_tensor, multilinearize, r4_relations, s3_relations, z_table,
    EpsilonSign, LambdaMat, PhiParams,
};
use ncgkit::spheres::{s4, SphereError};
use ncgkit::suite::{random_nonsymmetric_unitary, random_phi};
use num::complex::Complex64;
use num::Rational64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn ch12_closed_form_for_random_lambdas() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for k in 0..20 {
        let sym = LambdaMat::from_phi(&random_phi(&mut rng));
        assert_eq!(ch12(&sym), ch12_closed_form(&sym));
        assert!(ch12(&sym).is_zero());
        let non = random_nonsymmetric_unitary(&mut rng, k);
        assert_eq!(ch12(&non), ch12_closed_form(&non));
        assert!(!ch12(&non).is_zero());
    }
}

#[test]
fn lambda_preconditions() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let non = random_nonsymmetric_unitary(&mut rng, 1);
    assert!(matches!(r4_relations(&non, EpsilonSign::Derived), Err(SphereError::Lambda(_))));
    let zero = LambdaMat::from_rows(vec![vec![UniScalar::zero(); 4]; 4]).unwrap();
    assert!(ch32_tensor(&zero).is_err());
    assert!(LambdaMat::from_rows(vec![vec![UniScalar::one(); 3]; 3]).is_err());
}

#[test]
fn three_sphere_adds_the_sphere_element() {
    let l = LambdaMat::from_phi(&PhiParams::zero());
    let r4 = r4_relations(&l, EpsilonSign::Derived).unwrap();
    let s3r = s3_relations(&l, EpsilonSign::Derived).unwrap();
    assert_eq!(r4.len(), 6);
    assert_eq!(s3r.len(), 7);
    let last = &s3r[6];
    assert_eq!(last.constant(), UniScalar::int(-1));
    for r in &r4 {
        assert!(r.is_homogeneous(2));
        assert!(r.terms().all(|(w, _)| w.iter().all(|&g| g < 4)));
    }
}

fn commutative_identity_system() -> RewriteSystem {
    let mut rs = RewriteSystem::new(z_table());
    for mu in 0..4u16 {
        rs.add_substitution(vec![4 + mu], FreeElement::gen(mu)).unwrap();
    }
    for j in 1..4u16 {
        for i in 0..j {
            rs.add_commuting(j, i).unwrap();
        }
    }
    rs
}

fn antisymmetrize_tail(t: &TensorElement) -> TensorElement {
    let perms: [([usize; 3], i64); 6] = [
        ([0, 1, 2], 1),
        ([1, 2, 0], 1),
        ([2, 0, 1], 1),
        ([1, 0, 2], -1),
        ([0, 2, 1], -1),
        ([2, 1, 0], -1),
    ];
    let mut out = TensorElement::zero(t.arity());
    for (words, s) in t.terms() {
        for (p, sign) in perms {
            let mut w = vec![words[0].clone()];
            w.extend(p.iter().map(|&k| words[1 + k].clone()));
            out.add_term(w, s * &UniScalar::int(sign));
        }
    }
    out
}

#[test]
fn ch32_commutative_limit_is_nonzero() {
    let l = LambdaMat::from_phi(&PhiParams::zero());
    let t = ch32_tensor(&l).unwrap();
    assert_eq!(t.arity(), 4);
    let reduced = t.normalize(&commutative_identity_system()).unwrap();
    assert!(!antisymmetrize_tail(&reduced).is_zero());
}

#[test]
fn ch32_invariant_under_phase_scaling() {
    let l = LambdaMat::from_phi(&PhiParams::zero());
    let omega = UniScalar::root_of_unity(Rational64::new(2, 7));
    let u = s3::unitary_matrix().scale(&omega);
    let scaled = ncgkit::freealg::chern_odd(&u, 1, &z_table());
    assert_eq!(scaled, ch32_tensor(&l).unwrap());
}

#[test]
fn flat_forms_are_antisymmetric() {
    let sys = BilinearSystem::from_phi(&PhiParams::zero()).unwrap();
    for b in sys.forms() {
        assert!((b + b.transpose()).norm() == 0.0);
    }
    let u = DVector::from_vec(vec![Complex64::new(0.3, 0.1), Complex64::new(-1.0, 0.2), Complex64::new(0.5, 0.0), Complex64::new(0.0, 2.0)]);
    assert_eq!(sys.residual(&u, &u), 0.0);
    let o = sigma_orbit(&sys, &u, 10, RANK_TOL);
    assert_eq!(o.fixed_at, Some(0));
    assert!(!o.left_variety);
}

#[test]
fn float_path_accepts_irrational_angles() {
    let sys = BilinearSystem::from_angles([std::f64::consts::SQRT_2 - 1.0, 0.25, 1.0 / std::f64::consts::PI]);
    let u = DVector::from_element(4, Complex64::new(1.0, 0.5));
    assert_eq!(sys.rank_at(&u, RANK_TOL).0, 4);
}

#[test]
fn four_sphere_at_theta_zero_is_commutative() {
    let rs = s4::s4_algebra(Rational64::from_integer(0)).unwrap();
    let (a, b) = (FreeElement::gen(s4::A), FreeElement::gen(s4::B_STAR));
    assert!(rs.reduces_to_zero(&(&(&a * &b) - &(&b * &a))).unwrap());
    assert!(rs.check_local_confluence().unwrap().is_empty());
}

fn quad(coeffs: &[(u16, u16, i64, i64)]) -> FreeElement {
    FreeElement::from_terms(coeffs.iter().map(|&(i, j, n, d)| (vec![i, j], UniScalar::ratio(n, d))))
}

proptest! {
    #[test]
    fn multilinearize_is_linear(
        a in prop::collection::vec((0u16..4, 0u16..4, -5i64..5, 1i64..4), 1..8),
        b in prop::collection::vec((0u16..4, 0u16..4, -5i64..5, 1i64..4), 1..8),
    ) {
        let (f, g) = (quad(&a), quad(&b));
        let (mf, mg, ms) = (multilinearize(&f).unwrap(), multilinearize(&g).unwrap(), multilinearize(&(&f + &g)).unwrap());
        for i in 0..4 {
            for j in 0..4 {
                prop_assert_eq!(&ms[i][j], &(&mf[i][j] + &mg[i][j]));
            }
        }
    }

    #[test]
    fn rank_is_projective(re in prop::collection::vec(-1.0f64..1.0, 4), im in prop::collection::vec(-1.0f64..1.0, 4), sr in 0.1f64..10.0, si in -5.0f64..5.0) {
        let phi = PhiParams::new([Rational64::new(1, 7), Rational64::new(2, 5), Rational64::new(3, 11)]).unwrap();
        let sys = BilinearSystem::from_phi(&phi).unwrap();
        let u = DVector::from_fn(4, |k, _| Complex64::new(re[k], im[k]));
        prop_assume!(u.norm() > 1e-3);
        let scaled = &u * Complex64::new(sr, si);
        prop_assert_eq!(sys.rank_at(&u, RANK_TOL).0, sys.rank_at(&scaled, RANK_TOL).0);
    }
}

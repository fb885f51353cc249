//! The θ-deformed four-sphere.

use num::Rational64;

use crate::freealg::{
    chern_even, AlgMatrix, CriticalPair, FreeElement, GeneratorTable, RewriteError,
    RewriteSystem, UniScalar,
};

pub const A: u16 = 0;
pub const A_STAR: u16 = 1;
pub const B: u16 = 2;
pub const B_STAR: u16 = 3;
pub const X: u16 = 4;

fn table() -> GeneratorTable {
    GeneratorTable::new(
        ["a", "a*", "b", "b*", "x"].iter().map(|s| s.to_string()).collect(),
        vec![A_STAR, A, B_STAR, B, X],
    )
    .expect("valid involution")
}

/// Rewrite system for the algebra with λ = e^{2πiθ}.
///
/// Swaps come from ab = λba, a*b = λ̄ba* and their adjoints; x is central and
/// x² → 1 − aa* − bb*.
pub fn s4_system(lambda: &UniScalar) -> Result<RewriteSystem, RewriteError> {
    let bar = lambda.star();
    let mut rs = RewriteSystem::new(table());
    rs.add_swap(A_STAR, A, UniScalar::one())?;
    rs.add_swap(B_STAR, B, UniScalar::one())?;
    rs.add_swap(B, A, bar.clone())?;
    rs.add_swap(B, A_STAR, lambda.clone())?;
    rs.add_swap(B_STAR, A, lambda.clone())?;
    rs.add_swap(B_STAR, A_STAR, bar)?;
    for g in [A, A_STAR, B, B_STAR] {
        rs.add_commuting(X, g)?;
    }
    let rhs = &(&FreeElement::one() - &FreeElement::word(&[A, A_STAR])) - &FreeElement::word(&[B, B_STAR]);
    rs.add_substitution(vec![X, X], rhs)?;
    Ok(rs)
}

/// Rational θ: λ a root of unity.
pub fn s4_algebra(theta: Rational64) -> Result<RewriteSystem, RewriteError> {
    s4_system(&UniScalar::root_of_unity(theta))
}

/// Formal θ: λ = e^{2πiθ} kept symbolic.
pub fn s4_algebra_formal() -> Result<RewriteSystem, RewriteError> {
    s4_system(&UniScalar::phase(Rational64::from_integer(0), Rational64::from_integer(1)))
}

/// ½·[[1+x, 0, a, b], [0, 1+x, −λb*, a*], [a*, −λ̄b, 1−x, 0], [b*, a, 0, 1−x]];
/// `half = false` returns the matrix as displayed.
pub fn s4_projector(lambda: &UniScalar, half: bool) -> AlgMatrix {
    let g = FreeElement::gen;
    let one = FreeElement::one();
    let zero = FreeElement::zero();
    let (p, m) = (&one + &g(X), &one - &g(X));
    let lb = g(B_STAR).scale(&(-lambda.clone()));
    let lbb = g(B).scale(&(-lambda.star()));
    let e = AlgMatrix::from_rows(vec![
        vec![p.clone(), zero.clone(), g(A), g(B)],
        vec![zero.clone(), p, lb, g(A_STAR)],
        vec![g(A_STAR), lbb, m.clone(), zero.clone()],
        vec![g(B_STAR), g(A), zero, m],
    ])
    .expect("square");
    if half {
        e.scale(&UniScalar::ratio(1, 2))
    } else {
        e
    }
}

pub struct S4Report {
    pub unresolved: Vec<CriticalPair>,
    pub idempotent: bool,
    pub selfadjoint: bool,
    pub ch0_zero: bool,
    pub ch1_zero: bool,
}

pub fn verify_s4(lambda: &UniScalar, half: bool) -> Result<S4Report, RewriteError> {
    let rs = s4_system(lambda)?;
    let e = s4_projector(lambda, half);
    Ok(S4Report {
        unresolved: rs.check_local_confluence()?,
        idempotent: e.mul(&e).sub(&e).reduces_to_zero(&rs)?,
        selfadjoint: e.adjoint(rs.table()).sub(&e).reduces_to_zero(&rs)?,
        ch0_zero: chern_even(&e, 0).normalize(&rs)?.is_zero(),
        ch1_zero: chern_even(&e, 1).normalize(&rs)?.is_zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn third() -> UniScalar {
        UniScalar::root_of_unity(Rational64::new(1, 3))
    }

    #[test]
    fn projector_at_one_third() {
        let r = verify_s4(&third(), true).unwrap();
        assert!(r.unresolved.is_empty());
        assert!(r.idempotent && r.selfadjoint && r.ch0_zero && r.ch1_zero);
    }

    #[test]
    fn displayed_matrix_is_not_idempotent() {
        let r = verify_s4(&third(), false).unwrap();
        assert!(!r.idempotent);
        assert!(r.selfadjoint);
    }

    #[test]
    fn formal_theta_and_commutative_limit() {
        let formal = UniScalar::phase(Rational64::from_integer(0), Rational64::from_integer(1));
        let r = verify_s4(&formal, true).unwrap();
        assert!(r.unresolved.is_empty() && r.idempotent && r.ch1_zero);
        let rs = s4_algebra(Rational64::from_integer(0)).unwrap();
        assert!(rs.rules().iter().all(|rule| rule.lhs.len() != 2
            || rule.lhs == vec![X, X]
            || rule.rhs.terms().all(|(_, s)| s.is_one())));
    }

    #[test]
    fn dropping_centrality_breaks_idempotency() {
        let lambda = third();
        let mut rs = RewriteSystem::new(table());
        rs.add_swap(A_STAR, A, UniScalar::one()).unwrap();
        rs.add_swap(B_STAR, B, UniScalar::one()).unwrap();
        rs.add_swap(B, A, lambda.star()).unwrap();
        rs.add_swap(B, A_STAR, lambda.clone()).unwrap();
        rs.add_swap(B_STAR, A, lambda.clone()).unwrap();
        rs.add_swap(B_STAR, A_STAR, lambda.star()).unwrap();
        let rhs = &(&FreeElement::one() - &FreeElement::word(&[A, A_STAR])) - &FreeElement::word(&[B, B_STAR]);
        rs.add_substitution(vec![X, X], rhs).unwrap();
        let e = s4_projector(&lambda, true);
        assert!(!e.mul(&e).sub(&e).reduces_to_zero(&rs).unwrap());
    }
}

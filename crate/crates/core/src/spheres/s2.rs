//! The round two-sphere and its Bott projector.

use num::BigRational;

use crate::freealg::{
    chern_even, AlgMatrix, FreeElement, GeneratorTable, RewriteError, RewriteSystem,
    TensorElement, UniScalar,
};

pub const X: u16 = 0;
pub const Y: u16 = 1;
pub const Z: u16 = 2;

/// Commutative *-algebra on Hermitian x, y, z with z² → 1 − x² − y².
pub fn s2_system() -> RewriteSystem {
    let mut rs = RewriteSystem::new(GeneratorTable::hermitian(&["x", "y", "z"]));
    for (j, i) in [(Y, X), (Z, X), (Z, Y)] {
        rs.add_commuting(j, i).expect("ordered pair");
    }
    let rhs = &(&FreeElement::one() - &FreeElement::word(&[X, X])) - &FreeElement::word(&[Y, Y]);
    rs.add_substitution(vec![Z, Z], rhs).expect("sphere rule is deglex-decreasing");
    rs
}

/// e = ½[[1 + z, x − iy], [x + iy, 1 − z]].
pub fn s2_projector() -> AlgMatrix {
    let one = FreeElement::one();
    let (x, y, z) = (FreeElement::gen(X), FreeElement::gen(Y), FreeElement::gen(Z));
    let iy = y.scale(&UniScalar::i());
    let m = AlgMatrix::from_rows(vec![
        vec![&one + &z, &x - &iy],
        vec![&x + &iy, &one - &z],
    ])
    .expect("square");
    m.scale(&UniScalar::ratio(1, 2))
}

/// (i/4)[x⊗(y⊗z − z⊗y) − y⊗(x⊗z − z⊗x) + z⊗(x⊗y − y⊗x)].
pub fn s2_volume_form() -> TensorElement {
    let g = |i| FreeElement::gen(i);
    let mut t = TensorElement::zero(3);
    for (a, b, c, sign) in [
        (X, Y, Z, 1),
        (X, Z, Y, -1),
        (Y, X, Z, -1),
        (Y, Z, X, 1),
        (Z, X, Y, 1),
        (Z, Y, X, -1),
    ] {
        t = t + TensorElement::pure(&[g(a), g(b), g(c)]).scale(&UniScalar::int(sign));
    }
    t.scale(&UniScalar::gaussian(BigRational::from_integer(0.into()), BigRational::new(1.into(), 4.into())))
}

pub struct S2Report {
    pub idempotent: bool,
    pub selfadjoint: bool,
    pub ch0_zero: bool,
    pub ch1_is_volume: bool,
    pub ch1_nonzero: bool,
}

pub fn verify_s2() -> Result<S2Report, RewriteError> {
    let rs = s2_system();
    let e = s2_projector();
    let ch1 = chern_even(&e, 1).normalize(&rs)?;
    Ok(S2Report {
        idempotent: e.mul(&e).sub(&e).reduces_to_zero(&rs)?,
        selfadjoint: e.adjoint(rs.table()).sub(&e).reduces_to_zero(&rs)?,
        ch0_zero: chern_even(&e, 0).normalize(&rs)?.is_zero(),
        ch1_is_volume: (ch1.clone() - s2_volume_form().normalize(&rs)?).is_zero(),
        ch1_nonzero: !ch1.is_zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projector_identities() {
        let r = verify_s2().unwrap();
        assert!(r.idempotent && r.selfadjoint && r.ch0_zero && r.ch1_is_volume && r.ch1_nonzero);
    }

    #[test]
    fn printed_prefactor_does_not_match() {
        let rs = s2_system();
        let ch1 = chern_even(&s2_projector(), 1).normalize(&rs).unwrap();
        let doubled = s2_volume_form().scale(&UniScalar::int(2)).normalize(&rs).unwrap();
        assert_ne!(ch1, doubled);
    }

    #[test]
    fn sphere_system_is_confluent() {
        assert!(s2_system().check_local_confluence().unwrap().is_empty());
    }
}

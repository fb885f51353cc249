//! Λ-deformed four-planes and three-spheres generated by U = τ_μ z^μ.

use std::collections::BTreeSet;

use num::integer::Integer;
use num::{BigRational, Rational64, Zero};

use super::SphereError;
use crate::freealg::{
    chern_odd, cyclo_rank, AlgMatrix, CycloNum, FreeElement, GeneratorTable, RewriteSystem,
    TensorElement, UniScalar, Word,
};

/// φ ∈ [0, 1)³, exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhiParams([Rational64; 3]);

impl PhiParams {
    pub fn new(phi: [Rational64; 3]) -> Result<Self, SphereError> {
        let unit = Rational64::from_integer(1);
        if let Some(p) = phi.iter().find(|p| **p < Rational64::zero() || **p >= unit) {
            return Err(SphereError::Phi(format!("phi component {p} outside [0, 1)")));
        }
        Ok(PhiParams(phi))
    }

    pub fn zero() -> Self {
        PhiParams([Rational64::zero(); 3])
    }

    pub fn values(&self) -> [Rational64; 3] {
        self.0
    }

    pub fn to_f64(&self) -> [f64; 3] {
        self.0.map(|p| *p.numer() as f64 / *p.denom() as f64)
    }
}

/// 4×4 matrix with exact cyclotomic entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaMat(Vec<Vec<UniScalar>>);

impl LambdaMat {
    pub fn from_rows(rows: Vec<Vec<UniScalar>>) -> Result<Self, SphereError> {
        if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
            return Err(SphereError::Lambda("Lambda must be 4x4".into()));
        }
        Ok(LambdaMat(rows))
    }

    /// diag(1, e^{−2πiφ₁}, e^{−2πiφ₂}, e^{−2πiφ₃}).
    pub fn from_phi(phi: &PhiParams) -> Self {
        let mut rows = vec![vec![UniScalar::zero(); 4]; 4];
        rows[0][0] = UniScalar::one();
        for k in 1..4 {
            rows[k][k] = UniScalar::root_of_unity(-phi.0[k - 1]);
        }
        LambdaMat(rows)
    }

    pub fn get(&self, mu: usize, nu: usize) -> &UniScalar {
        &self.0[mu][nu]
    }

    pub fn rows(&self) -> &[Vec<UniScalar>] {
        &self.0
    }

    pub fn is_unitary(&self) -> bool {
        (0..4).all(|i| {
            (0..4).all(|j| {
                let s = (0..4).fold(UniScalar::zero(), |acc, k| &acc + &(&self.0[i][k] * &self.0[j][k].star()));
                if i == j { s.is_one() } else { s.is_zero() }
            })
        })
    }

    pub fn is_symmetric(&self) -> bool {
        (0..4).all(|i| (0..i).all(|j| self.0[i][j] == self.0[j][i]))
    }

    /// "a unitary symmetric matrix".
    pub fn check(&self) -> Result<(), SphereError> {
        if !self.is_unitary() {
            return Err(SphereError::Lambda("Lambda is not unitary".into()));
        }
        if !self.is_symmetric() {
            return Err(SphereError::Lambda("Lambda is not symmetric".into()));
        }
        Ok(())
    }
}

/// τ₀ = 1, τ_k = iσ_k, as 2×2 scalar matrices.
pub fn pauli_basis() -> [[[UniScalar; 2]; 2]; 4] {
    let (z, o, i) = (UniScalar::zero(), UniScalar::one(), UniScalar::i());
    let mi = -i.clone();
    let sigma = [
        [[z.clone(), o.clone()], [o.clone(), z.clone()]],
        [[z.clone(), mi.clone()], [i.clone(), z.clone()]],
        [[o.clone(), z.clone()], [z.clone(), -o.clone()]],
    ];
    let mut tau = [
        [[o.clone(), z.clone()], [z.clone(), o.clone()]],
        sigma[0].clone(),
        sigma[1].clone(),
        sigma[2].clone(),
    ];
    for t in tau.iter_mut().skip(1) {
        for row in t.iter_mut() {
            for e in row.iter_mut() {
                *e = &*e * &i;
            }
        }
    }
    tau
}

/// σ_k for k = 1, 2, 3.
pub fn sigma(k: usize) -> [[UniScalar; 2]; 2] {
    let tau = pauli_basis();
    let mi = -UniScalar::i();
    tau[k].clone().map(|row| row.map(|e| &e * &mi))
}

/// ½Tr(a*b) over the basis equals δ.
pub fn pauli_orthonormal() -> bool {
    let tau = pauli_basis();
    let half = UniScalar::ratio(1, 2);
    (0..4).all(|m| {
        (0..4).all(|n| {
            let mut tr = UniScalar::zero();
            for i in 0..2 {
                for j in 0..2 {
                    tr = &tr + &(&tau[m][j][i].star() * &tau[n][j][i]);
                }
            }
            let v = &tr * &half;
            if m == n { v.is_one() } else { v.is_zero() }
        })
    })
}

/// z⁰..z³ and their adjoints z⁰*..z³*.
pub fn z_table() -> GeneratorTable {
    GeneratorTable::new(
        (0..4)
            .map(|m| format!("z{m}"))
            .chain((0..4).map(|m| format!("z{m}*")))
            .collect(),
        vec![4, 5, 6, 7, 0, 1, 2, 3],
    )
    .expect("valid involution")
}

pub fn z(mu: usize) -> FreeElement {
    FreeElement::gen(mu as u16)
}

pub fn zs(mu: usize) -> FreeElement {
    FreeElement::gen(4 + mu as u16)
}

/// Sign in front of the ε-sum in the four-plane relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EpsilonSign {
    /// "+", the sign produced by expanding UU* and U*U with τ_k = iσ_k.
    Derived,
    /// "−", as the relations are printed.
    AsPrinted,
}

impl EpsilonSign {
    fn scalar(self) -> UniScalar {
        match self {
            EpsilonSign::Derived => UniScalar::one(),
            EpsilonSign::AsPrinted => UniScalar::int(-1),
        }
    }
}

pub const CYCLIC: [(usize, usize, usize); 3] = [(1, 2, 3), (2, 3, 1), (3, 1, 2)];

fn prod(a: &FreeElement, b: &FreeElement) -> FreeElement {
    a * b
}

/// z^k z^{0*} − z⁰ z^{k*} ± Σ ε_{klm} z^l z^{m*}.
pub fn rela2(sign: EpsilonSign) -> Vec<FreeElement> {
    let s = sign.scalar();
    CYCLIC
        .iter()
        .map(|&(k, l, m)| {
            let eps = &prod(&z(l), &zs(m)) - &prod(&z(m), &zs(l));
            &(&prod(&z(k), &zs(0)) - &prod(&z(0), &zs(k))) + &eps.scale(&s)
        })
        .collect()
}

/// z^{0*} z^k − z^{k*} z⁰ ± Σ ε_{klm} z^{l*} z^m.
pub fn rela3(sign: EpsilonSign) -> Vec<FreeElement> {
    let s = sign.scalar();
    CYCLIC
        .iter()
        .map(|&(k, l, m)| {
            let eps = &prod(&zs(l), &z(m)) - &prod(&zs(m), &z(l));
            &(&prod(&zs(0), &z(k)) - &prod(&zs(k), &z(0))) + &eps.scale(&s)
        })
        .collect()
}

/// Σ z^μ z^{μ*} − 1.
pub fn sphere_element() -> FreeElement {
    let mut s = -FreeElement::one();
    for mu in 0..4 {
        s = &s + &prod(&z(mu), &zs(mu));
    }
    s
}

/// z^{μ*} → Λ^μ_ν z^ν.
pub fn star_fold(lambda: &LambdaMat) -> RewriteSystem {
    let mut rs = RewriteSystem::new(z_table());
    for mu in 0..4 {
        let rhs = FreeElement::from_terms((0..4).map(|nu| (vec![nu as u16], lambda.get(mu, nu).clone())));
        rs.add_substitution(vec![4 + mu as u16], rhs)
            .expect("z-generators precede their adjoints");
    }
    rs
}

fn fold_all(xs: &[FreeElement], rs: &RewriteSystem) -> Vec<FreeElement> {
    xs.iter()
        .map(|x| rs.normal_form(x).expect("degree-one substitution terminates"))
        .collect()
}

/// The six relations with z^{μ*} = Λ^μ_ν z^ν folded in.
pub fn r4_relations(lambda: &LambdaMat, sign: EpsilonSign) -> Result<Vec<FreeElement>, SphereError> {
    lambda.check()?;
    let rs = star_fold(lambda);
    let mut all = rela2(sign);
    all.extend(rela3(sign));
    Ok(fold_all(&all, &rs))
}

/// Four-plane relations plus the sphere element.
pub fn s3_relations(lambda: &LambdaMat, sign: EpsilonSign) -> Result<Vec<FreeElement>, SphereError> {
    let mut rels = r4_relations(lambda, sign)?;
    rels.extend(fold_all(&[sphere_element()], &star_fold(lambda)));
    Ok(rels)
}

/// U = τ_μ z^μ.
pub fn unitary_matrix() -> AlgMatrix {
    let tau = pauli_basis();
    let mut u = AlgMatrix::zero(2);
    for i in 0..2 {
        for j in 0..2 {
            let e = FreeElement::from_terms((0..4).map(|mu| (vec![mu as u16], tau[mu][i][j].clone())));
            u.set(i, j, e);
        }
    }
    u
}

/// ½Tr(σ_k M) for k = 1, 2, 3.
fn sigma_components(m: &AlgMatrix) -> Vec<FreeElement> {
    let half = UniScalar::ratio(1, 2);
    (1..4)
        .map(|k| {
            let s = sigma(k);
            let mut acc = FreeElement::zero();
            for i in 0..2 {
                for j in 0..2 {
                    acc = &acc + &m.get(j, i).scale(&(&s[i][j] * &half));
                }
            }
            acc
        })
        .collect()
}

/// σ-components of UU* and of U*U, which must vanish for UU* = U*U ∈ 1₂ ⊗ B.
pub fn unitarity_expansion() -> (Vec<FreeElement>, Vec<FreeElement>) {
    let u = unitary_matrix();
    let us = u.adjoint(&z_table());
    (sigma_components(&u.mul(&us)), sigma_components(&us.mul(&u)))
}

fn common_conductor(xs: &[&FreeElement]) -> Option<u64> {
    let mut n = 1u64;
    for x in xs {
        for (_, s) in x.terms() {
            if !s.is_cyclotomic() {
                return None;
            }
            n = n.lcm(&s.conductor());
        }
    }
    Some(n)
}

/// Exact rank of the span of homogeneous elements with cyclotomic coefficients.
pub fn span_rank(xs: &[FreeElement]) -> Result<usize, SphereError> {
    let refs: Vec<&FreeElement> = xs.iter().collect();
    let n = common_conductor(&refs)
        .ok_or_else(|| SphereError::Lambda("span needs cyclotomic coefficients".into()))?;
    let words: Vec<Word> = xs
        .iter()
        .flat_map(|x| x.terms().map(|(w, _)| w.clone()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let rows: Vec<Vec<CycloNum>> = xs
        .iter()
        .map(|x| {
            words
                .iter()
                .map(|w| x.coeff(w).to_cyclo(n).expect("conductor divides n"))
                .collect()
        })
        .collect();
    Ok(cyclo_rank(&rows))
}

pub fn spans_equal(a: &[FreeElement], b: &[FreeElement]) -> Result<bool, SphereError> {
    let both: Vec<FreeElement> = a.iter().chain(b).cloned().collect();
    let (ra, rb, rab) = (span_rank(a)?, span_rank(b)?, span_rank(&both)?);
    Ok(ra == rab && rb == rab)
}

/// ch_{1/2}(U) with z^{μ*} = Λ^μ_ν z^ν applied slotwise; Λ only needs to be 4×4.
pub fn ch12(lambda: &LambdaMat) -> TensorElement {
    let t = chern_odd(&unitary_matrix(), 0, &z_table());
    t.normalize(&star_fold(lambda)).expect("degree-one substitution terminates")
}

/// 2Σ Λ^μ_ν (z^μ ⊗ z^ν − z^ν ⊗ z^μ).
pub fn ch12_closed_form(lambda: &LambdaMat) -> TensorElement {
    let mut t = TensorElement::zero(2);
    for mu in 0..4 {
        for nu in 0..4 {
            let c = lambda.get(mu, nu).scale(&BigRational::from_integer(2.into()));
            let d = TensorElement::pure(&[z(mu), z(nu)]) - TensorElement::pure(&[z(nu), z(mu)]);
            t = t + d.scale(&c);
        }
    }
    t
}

/// ch_{3/2}(U) in the free algebra, no relations applied.
pub fn ch32_tensor(lambda: &LambdaMat) -> Result<TensorElement, SphereError> {
    if !lambda.is_unitary() {
        return Err(SphereError::Lambda("Lambda is not unitary".into()));
    }
    Ok(chern_odd(&unitary_matrix(), 1, &z_table()))
}

/// Images of z^μ, z^{μ*} under x⁰ = z⁰, x^k = e^{−πiφ_k} z^k (x Hermitian).
pub fn hermitian_images(phi: &PhiParams) -> Vec<FreeElement> {
    let half = Rational64::new(1, 2);
    let mut im = vec![FreeElement::zero(); 8];
    im[0] = FreeElement::gen(0);
    im[4] = FreeElement::gen(0);
    for k in 1..4 {
        let p = phi.0[k - 1] * half;
        im[k] = FreeElement::gen(k as u16).scale(&UniScalar::root_of_unity(p));
        im[4 + k] = FreeElement::gen(k as u16).scale(&UniScalar::root_of_unity(-p));
    }
    im
}

pub fn x_table() -> GeneratorTable {
    GeneratorTable::hermitian(&["x0", "x1", "x2", "x3"])
}

fn x(mu: usize) -> FreeElement {
    FreeElement::gen(mu as u16)
}

/// cos(πa) and i·sin(πa) as cyclotomic scalars.
fn cos_isin(a: Rational64) -> (UniScalar, UniScalar) {
    let half = UniScalar::ratio(1, 2);
    let w = UniScalar::root_of_unity(a * Rational64::new(1, 2));
    let wb = w.star();
    (&(&w + &wb) * &half, &(&w - &wb) * &half)
}

/// Hermitian relations with angles πφ:
/// cos(πφ_k)[x⁰,x^k] − i sin(π(φ_l−φ_m)){x^l,x^m} and
/// cos(π(φ_l−φ_m))[x^l,x^m] + i sin(πφ_k){x⁰,x^k}.
pub fn hermitian_relations(phi: &PhiParams) -> Vec<FreeElement> {
    let p = phi.0;
    let comm = |a: usize, b: usize| &prod(&x(a), &x(b)) - &prod(&x(b), &x(a));
    let anti = |a: usize, b: usize| &prod(&x(a), &x(b)) + &prod(&x(b), &x(a));
    let mut out = Vec::new();
    for &(k, l, m) in &CYCLIC {
        let (ck, isk) = cos_isin(p[k - 1]);
        let (clm, islm) = cos_isin(p[l - 1] - p[m - 1]);
        out.push(&comm(0, k).scale(&ck) - &anti(l, m).scale(&islm));
        out.push(&comm(l, m).scale(&clm) + &anti(0, k).scale(&isk));
    }
    out
}

/// Four-plane relations rewritten in the Hermitian generators, ordered
/// rela2_k, rela3_k for each cyclic k.
pub fn relations_in_hermitian_generators(phi: &PhiParams, sign: EpsilonSign) -> Vec<FreeElement> {
    let im = hermitian_images(phi);
    rela2(sign)
        .into_iter()
        .zip(rela3(sign))
        .flat_map(|(a, b)| [a.substitute(&im), b.substitute(&im)])
        .collect()
}

/// For each cyclic k, span{rela2_k, rela3_k} = span{ReL1_k, ReL2_k}.
pub fn hermitian_form_matches(phi: &PhiParams, sign: EpsilonSign) -> Result<bool, SphereError> {
    let sub = relations_in_hermitian_generators(phi, sign);
    let rel = hermitian_relations(phi);
    for (a, b) in sub.chunks(2).zip(rel.chunks(2)) {
        if !spans_equal(a, b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn multilinearize(rel: &FreeElement) -> Result<[[UniScalar; 4]; 4], SphereError> {
    let mut b: [[UniScalar; 4]; 4] = Default::default();
    for (w, s) in rel.terms() {
        if w.len() != 2 || w.iter().any(|&g| g > 3) {
            return Err(SphereError::Inhomogeneous(format!(
                "term {} is not a product of two of x0..x3",
                x_table().word_string(w)
            )));
        }
        let cell = &mut b[w[0] as usize][w[1] as usize];
        *cell = &*cell + s;
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> PhiParams {
        PhiParams::new([Rational64::new(a.0, a.1), Rational64::new(b.0, b.1), Rational64::new(c.0, c.1)]).unwrap()
    }

    #[test]
    fn pauli_basis_is_orthonormal() {
        assert!(pauli_orthonormal());
    }

    #[test]
    fn lambda_phi_is_unitary_symmetric() {
        let l = LambdaMat::from_phi(&phi((1, 7), (2, 5), (3, 11)));
        assert!(l.check().is_ok());
        assert!(PhiParams::new([Rational64::new(1, 1), Rational64::zero(), Rational64::zero()]).is_err());
    }

    #[test]
    fn unitarity_expansion_spans_relations() {
        let (uus, usu) = unitarity_expansion();
        assert!(spans_equal(&uus, &rela2(EpsilonSign::Derived)).unwrap());
        assert!(spans_equal(&usu, &rela3(EpsilonSign::Derived)).unwrap());
        assert!(!spans_equal(&uus, &rela2(EpsilonSign::AsPrinted)).unwrap());
        assert!(!spans_equal(&usu, &rela3(EpsilonSign::AsPrinted)).unwrap());
    }

    #[test]
    fn commutative_limit_gives_commutators() {
        let rels = r4_relations(&LambdaMat::from_phi(&PhiParams::zero()), EpsilonSign::Derived).unwrap();
        let comms: Vec<FreeElement> = (0..4)
            .flat_map(|a| (a + 1..4).map(move |b| (a, b)))
            .map(|(a, b)| &prod(&z(a), &z(b)) - &prod(&z(b), &z(a)))
            .collect();
        assert!(spans_equal(&rels, &comms).unwrap());
    }

    #[test]
    fn hermitian_form_matches_printed_relations() {
        for p in [phi((0, 1), (0, 1), (0, 1)), phi((1, 2), (1, 3), (5, 6)), phi((1, 7), (2, 5), (3, 11))] {
            assert!(hermitian_form_matches(&p, EpsilonSign::Derived).unwrap());
        }
        assert!(!hermitian_form_matches(&phi((1, 3), (1, 4), (1, 6)), EpsilonSign::AsPrinted).unwrap());
    }

    #[test]
    fn ch12_matches_closed_form_and_vanishes() {
        let l = LambdaMat::from_phi(&phi((1, 3), (1, 4), (2, 5)));
        assert_eq!(ch12(&l), ch12_closed_form(&l));
        assert!(ch12(&l).is_zero());
    }

    #[test]
    fn multilinearize_commutator() {
        let f = &prod(&x(1), &x(2)) - &prod(&x(2), &x(1));
        let b = multilinearize(&f).unwrap();
        assert!(b[1][2].is_one() && (&b[2][1] + &UniScalar::one()).is_zero());
        assert!(multilinearize(&(&f + &FreeElement::one())).is_err());
    }
}

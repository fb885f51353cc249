//! Exact scalars Σ q·e^{2πi(a + bθ)} with rational q, a, b and θ formal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::integer::lcm;
use num::rational::Rational64;
use num::{BigRational, Integer, One, ToPrimitive, Zero};
use rug::{Complex, Float};

use super::cyclo::{cyclotomic_poly, reduce_mod_cyclotomic, CycloNum};
use crate::precision::Precision;
use crate::quadfield::rational_to_float;

/// Exponent of e^{2πi(turn + theta·θ)}; `turn` lives in [0, 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Phase {
    pub theta: Rational64,
    pub turn: Rational64,
}

impl Phase {
    pub fn new(turn: Rational64, theta: Rational64) -> Self {
        Phase {
            theta,
            turn: turn - turn.floor(),
        }
    }

    pub fn unit() -> Self {
        Phase::new(Rational64::zero(), Rational64::zero())
    }

    pub fn add(self, o: Phase) -> Phase {
        Phase::new(self.turn + o.turn, self.theta + o.theta)
    }

    pub fn neg(self) -> Phase {
        Phase::new(-self.turn, -self.theta)
    }
}

/// Invariant: every θ-slice is reduced modulo Φ_N for N the common denominator
/// of its turns, so zero means empty. The power basis depends on N, hence
/// equality is decided by subtraction rather than structurally.
#[derive(Clone, Debug, Default)]
pub struct UniScalar {
    terms: BTreeMap<Phase, BigRational>,
}

impl PartialEq for UniScalar {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms || (self - o).is_zero()
    }
}

impl Eq for UniScalar {}

impl UniScalar {
    pub fn zero() -> Self {
        UniScalar::default()
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(q: BigRational) -> Self {
        Self::monomial(q, Phase::unit())
    }

    pub fn int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::rational(BigRational::new(n.into(), d.into()))
    }

    /// e^{2πi·turn}.
    pub fn root_of_unity(turn: Rational64) -> Self {
        Self::phase(turn, Rational64::zero())
    }

    /// e^{2πi(turn + theta·θ)}.
    pub fn phase(turn: Rational64, theta: Rational64) -> Self {
        Self::monomial(BigRational::one(), Phase::new(turn, theta))
    }

    pub fn i() -> Self {
        Self::root_of_unity(Rational64::new(1, 4))
    }

    pub fn monomial(q: BigRational, p: Phase) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(p, q);
        }
        let mut s = UniScalar { terms };
        s.simplify();
        s
    }

    /// Rational plus i·rational.
    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        Self::rational(re) + Self::i().scale(&im)
    }

    pub fn from_terms<I: IntoIterator<Item = (Phase, BigRational)>>(it: I) -> Self {
        let mut terms: BTreeMap<Phase, BigRational> = BTreeMap::new();
        for (p, q) in it {
            *terms.entry(p).or_insert_with(BigRational::zero) += q;
        }
        let mut s = UniScalar { terms };
        s.simplify();
        s
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Phase, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// The rational value when the scalar has no phases.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (p, q) = self.terms.iter().next()?;
                (*p == Phase::unit()).then(|| q.clone())
            }
            _ => None,
        }
    }

    /// True when no term carries θ.
    pub fn is_cyclotomic(&self) -> bool {
        self.terms.keys().all(|p| p.theta.is_zero())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        UniScalar {
            terms: self.terms.iter().map(|(p, c)| (*p, c * q)).collect(),
        }
    }

    /// Complex conjugate for real θ: exponents negate, coefficients stay.
    pub fn star(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(p, q)| (p.neg(), q.clone())))
    }

    /// |s| = 1 exactly, tested as s·s̄ = 1.
    pub fn is_unimodular(&self) -> bool {
        (self * &self.star()).is_one()
    }

    fn simplify(&mut self) {
        self.terms.retain(|_, q| !q.is_zero());
        if self.terms.keys().all(|p| p.turn.is_zero()) {
            return;
        }
        if self.terms.len() == 1 {
            let (p, _) = self.terms.iter().next().unwrap();
            if p.turn.is_zero() || *p.turn.numer() < euler_phi_small(*p.turn.denom()) {
                return;
            }
        }
        let mut slices: BTreeMap<Rational64, Vec<(Rational64, BigRational)>> = BTreeMap::new();
        for (p, q) in std::mem::take(&mut self.terms) {
            slices.entry(p.theta).or_default().push((p.turn, q));
        }
        for (theta, slice) in slices {
            let n = slice.iter().fold(1i64, |acc, (t, _)| lcm(acc, *t.denom()));
            let mut c = vec![BigRational::zero(); n as usize];
            for (t, q) in slice {
                let k = (t * n).to_integer() as usize;
                c[k] += q;
            }
            if n > 1 {
                reduce_mod_cyclotomic(&mut c, &cyclotomic_poly(n as u64));
            } else if c[0].is_zero() {
                continue;
            }
            for (k, q) in c.into_iter().enumerate() {
                if !q.is_zero() {
                    self.terms
                        .insert(Phase::new(Rational64::new(k as i64, n), theta), q);
                }
            }
        }
    }

    /// Common denominator of all turns.
    pub fn conductor(&self) -> u64 {
        self.terms
            .keys()
            .fold(1i64, |acc, p| acc.lcm(p.turn.denom())) as u64
    }

    /// Embeds a θ-free scalar into ℚ(ζ_n); `None` if θ occurs or the conductor does not divide n.
    pub fn to_cyclo(&self, n: u64) -> Option<CycloNum> {
        if !self.is_cyclotomic() || n % self.conductor() != 0 {
            return None;
        }
        let mut c = vec![BigRational::zero(); n as usize];
        for (p, q) in &self.terms {
            let k = (p.turn * n as i64).to_integer() as usize;
            c[k] += q;
        }
        Some(CycloNum::from_powers(n, c))
    }

    pub fn from_cyclo(x: &CycloNum) -> Self {
        let n = x.order() as i64;
        Self::from_terms(x.coeffs().iter().enumerate().map(|(k, q)| {
            (
                Phase::new(Rational64::new(k as i64, n), Rational64::zero()),
                q.clone(),
            )
        }))
    }

    /// Numeric value for θ = `theta`.
    pub fn eval(&self, theta: &Float, prec: Precision) -> Complex {
        let bits = prec.bits();
        let mut acc = Complex::new(bits);
        let two_pi = prec.pi() * 2u32;
        for (p, q) in &self.terms {
            let turn = rational_to_float(&rat64_big(p.turn), bits);
            let th = rational_to_float(&rat64_big(p.theta), bits);
            let angle = Float::with_val(bits, &two_pi * (turn + th * theta));
            let (s, c) = angle.sin_cos(Float::new(bits));
            let coef = rational_to_float(q, bits);
            acc += Complex::with_val(bits, (c * &coef, s * &coef));
        }
        acc
    }

    pub fn eval_c64(&self, theta: f64) -> num::complex::Complex64 {
        let mut acc = num::complex::Complex64::zero();
        for (p, q) in &self.terms {
            let angle = 2.0
                * std::f64::consts::PI
                * (p.turn.to_f64().unwrap_or(0.0) + p.theta.to_f64().unwrap_or(0.0) * theta);
            acc += num::complex::Complex64::from_polar(q.to_f64().unwrap_or(f64::NAN), angle);
        }
        acc
    }

    /// Replaces the formal θ by a rational value, giving a cyclotomic scalar.
    pub fn specialize(&self, theta: Rational64) -> Self {
        Self::from_terms(self.terms.iter().map(|(p, q)| {
            (
                Phase::new(p.turn + p.theta * theta, Rational64::zero()),
                q.clone(),
            )
        }))
    }
}

fn euler_phi_small(n: i64) -> i64 {
    super::cyclo::euler_phi(n as u64) as i64
}

pub fn rat64_big(r: Rational64) -> BigRational {
    BigRational::new((*r.numer()).into(), (*r.denom()).into())
}

impl fmt::Display for UniScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, q) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{q}")?;
            if *p != Phase::unit() {
                write!(f, "·e(")?;
                let mut any = false;
                if !p.turn.is_zero() {
                    write!(f, "{}", p.turn)?;
                    any = true;
                }
                if !p.theta.is_zero() {
                    if any {
                        write!(f, "+")?;
                    }
                    write!(f, "{}θ", p.theta)?;
                }
                write!(f, ")")?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a UniScalar> for &'a UniScalar {
    type Output = UniScalar;
    fn add(self, o: &UniScalar) -> UniScalar {
        UniScalar::from_terms(
            self.terms
                .iter()
                .chain(o.terms.iter())
                .map(|(p, q)| (*p, q.clone())),
        )
    }
}

impl Add for UniScalar {
    type Output = UniScalar;
    fn add(self, o: UniScalar) -> UniScalar {
        &self + &o
    }
}

impl Neg for &UniScalar {
    type Output = UniScalar;
    fn neg(self) -> UniScalar {
        UniScalar {
            terms: self.terms.iter().map(|(p, q)| (*p, -q)).collect(),
        }
    }
}

impl Neg for UniScalar {
    type Output = UniScalar;
    fn neg(self) -> UniScalar {
        -&self
    }
}

impl<'a> Sub<&'a UniScalar> for &'a UniScalar {
    type Output = UniScalar;
    fn sub(self, o: &UniScalar) -> UniScalar {
        self + &(-o)
    }
}

impl Sub for UniScalar {
    type Output = UniScalar;
    fn sub(self, o: UniScalar) -> UniScalar {
        &self - &o
    }
}

impl<'a> Mul<&'a UniScalar> for &'a UniScalar {
    type Output = UniScalar;
    fn mul(self, o: &UniScalar) -> UniScalar {
        if self.terms.len() == 1 && o.terms.len() == 1 {
            let (p, a) = self.terms.iter().next().unwrap();
            let (r, b) = o.terms.iter().next().unwrap();
            return UniScalar::monomial(a * b, p.add(*r));
        }
        let mut out = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (p, a) in &self.terms {
            for (r, b) in &o.terms {
                out.push((p.add(*r), a * b));
            }
        }
        UniScalar::from_terms(out)
    }
}

impl Mul for UniScalar {
    type Output = UniScalar;
    fn mul(self, o: UniScalar) -> UniScalar {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        let s = (0..6).fold(UniScalar::zero(), |acc, k| {
            acc + UniScalar::root_of_unity(r(k, 6))
        });
        assert!(s.is_zero());
        let cube = (0..3).fold(UniScalar::zero(), |acc, k| {
            acc + UniScalar::phase(r(k, 3), r(2, 1))
        });
        assert!(cube.is_zero());
    }

    #[test]
    fn i_squared() {
        assert_eq!(&UniScalar::i() * &UniScalar::i(), UniScalar::int(-1));
        assert_eq!(UniScalar::root_of_unity(r(1, 2)), UniScalar::int(-1));
    }

    #[test]
    fn theta_slices_are_independent() {
        let a = UniScalar::phase(r(0, 1), r(1, 1));
        let b = UniScalar::one();
        assert!(!(a.clone() - b).is_zero());
        assert!((a.clone() - a).is_zero());
    }

    #[test]
    fn unimodular_detection() {
        assert!(UniScalar::phase(r(1, 3), r(-2, 1)).is_unimodular());
        assert!(!UniScalar::int(2).is_unimodular());
        let cos = (UniScalar::root_of_unity(r(1, 8)) + UniScalar::root_of_unity(r(-1, 8)))
            .scale(&BigRational::new(1.into(), 2.into()));
        assert!(!cos.is_unimodular());
    }

    #[test]
    fn cyclo_roundtrip() {
        let x = UniScalar::root_of_unity(r(1, 12)) + UniScalar::ratio(3, 7);
        let c = x.to_cyclo(24).unwrap();
        assert_eq!(UniScalar::from_cyclo(&c), x);
        assert!(x.to_cyclo(10).is_none());
    }

    fn arb_scalar() -> impl Strategy<Value = UniScalar> {
        let dens = prop::sample::select(vec![1i64, 2, 3, 4, 5, 6, 8, 12]);
        prop::collection::vec((-5i64..6, dens, -3i64..4, -3i64..4), 0..5).prop_map(|v| {
            UniScalar::from_terms(v.into_iter().map(|(n, d, t, q)| {
                (
                    Phase::new(Rational64::new(n, d), Rational64::from_integer(t)),
                    BigRational::from_integer(q.into()),
                )
            }))
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!((&a * &b).star(), &b.star() * &a.star());
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn zero_test_matches_numeric(a in arb_scalar(), b in arb_scalar()) {
            let exact_zero = (&a - &b).is_zero();
            let d = &a - &b;
            let mut numeric_zero = true;
            for k in 0..10 {
                let theta = 0.1234 + 0.0731 * k as f64 * std::f64::consts::SQRT_2;
                if d.eval_c64(theta).norm() > 1e-9 {
                    numeric_zero = false;
                }
            }
            prop_assert_eq!(exact_zero, numeric_zero);
        }
    }
}

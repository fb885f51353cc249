use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num::rational::Rational64;
use num::{BigRational, Zero};
use rug::{Complex, Float};

use super::complex::ComplexStructure;
use crate::freealg::{Phase, UniScalar};
use crate::precision::Precision;

/// Finite Fourier series Σ a_{n,m} Uⁿ Vᵐ.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TorusElement {
    terms: BTreeMap<(i64, i64), UniScalar>,
}

impl TorusElement {
    pub fn zero() -> Self {
        TorusElement::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, UniScalar::one())
    }

    pub fn u() -> Self {
        Self::monomial(1, 0, UniScalar::one())
    }

    pub fn v() -> Self {
        Self::monomial(0, 1, UniScalar::one())
    }

    pub fn monomial(n: i64, m: i64, c: UniScalar) -> Self {
        let mut e = TorusElement::zero();
        e.add_term(n, m, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), UniScalar)>>(it: I) -> Self {
        let mut e = TorusElement::zero();
        for ((n, m), c) in it {
            e.add_term(n, m, c);
        }
        e
    }

    pub fn add_term(&mut self, n: i64, m: i64, c: UniScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((n, m)).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&(n, m));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &UniScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, n: i64, m: i64) -> UniScalar {
        self.terms.get(&(n, m)).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &UniScalar) -> Self {
        TorusElement::from_terms(self.terms.iter().map(|(k, c)| (*k, c * s)))
    }

    /// Coefficientwise map (n, m, a) ↦ f(n, m)·a.
    pub fn weight(&self, f: impl Fn(i64, i64) -> UniScalar) -> Self {
        TorusElement::from_terms(self.terms.iter().map(|(&(n, m), c)| ((n, m), &f(n, m) * c)))
    }

    /// The (0,0) coefficient.
    pub fn trace_chi(&self) -> UniScalar {
        self.coeff(0, 0)
    }
}

impl Add for TorusElement {
    type Output = TorusElement;
    fn add(mut self, o: TorusElement) -> TorusElement {
        for ((n, m), c) in o.terms {
            self.add_term(n, m, c);
        }
        self
    }
}

impl<'a> Add<&'a TorusElement> for &'a TorusElement {
    type Output = TorusElement;
    fn add(self, o: &TorusElement) -> TorusElement {
        self.clone() + o.clone()
    }
}

impl Neg for TorusElement {
    type Output = TorusElement;
    fn neg(self) -> TorusElement {
        TorusElement {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl Sub for TorusElement {
    type Output = TorusElement;
    fn sub(self, o: TorusElement) -> TorusElement {
        self + (-o)
    }
}

impl<'a> Sub<&'a TorusElement> for &'a TorusElement {
    type Output = TorusElement;
    fn sub(self, o: &TorusElement) -> TorusElement {
        self.clone() - o.clone()
    }
}

/// The deformation parameter as seen by the phase arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorusTheta {
    /// θ kept symbolic (used for quadratic irrationalities).
    Formal,
    /// θ = p/q, phases become roots of unity.
    Rational(Rational64),
}

/// Monomial phase law; only `Standard` is the torus. The other variant exists
/// so the verification suite can check it detects a wrong implementation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PhaseLaw {
    #[default]
    Standard,
    /// e^{−2πiθ·m|p|}.
    AbsoluteExponent,
}

/// 𝒜_θ with (UⁿVᵐ)(UᵖVᵠ) = e^{−2πiθ·mp} U^{n+p}V^{m+q}, so that VU = e^{−2πiθ}UV.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NcTorus {
    pub theta: TorusTheta,
    pub law: PhaseLaw,
}

impl NcTorus {
    pub fn formal() -> Self {
        NcTorus {
            theta: TorusTheta::Formal,
            law: PhaseLaw::Standard,
        }
    }

    pub fn rational(theta: Rational64) -> Self {
        NcTorus {
            theta: TorusTheta::Rational(theta),
            law: PhaseLaw::Standard,
        }
    }

    pub fn with_law(mut self, law: PhaseLaw) -> Self {
        self.law = law;
        self
    }

    /// e^{2πiθ·k}.
    pub fn theta_phase(&self, k: i64) -> UniScalar {
        match self.theta {
            TorusTheta::Formal => UniScalar::phase(Rational64::zero(), Rational64::from_integer(k)),
            TorusTheta::Rational(t) => UniScalar::root_of_unity(t * k),
        }
    }

    fn monomial_phase(&self, m: i64, p: i64) -> Phase {
        let k = match self.law {
            PhaseLaw::Standard => -m * p,
            PhaseLaw::AbsoluteExponent => -m * p.abs(),
        };
        match self.theta {
            TorusTheta::Formal => Phase::new(Rational64::zero(), Rational64::from_integer(k)),
            TorusTheta::Rational(t) => Phase::new(t * k, Rational64::zero()),
        }
    }

    pub fn mul(&self, x: &TorusElement, y: &TorusElement) -> TorusElement {
        // raw (phase, coefficient) pairs per monomial, reduced once at the end
        let mut acc: BTreeMap<(i64, i64), Vec<(Phase, BigRational)>> = BTreeMap::new();
        for (&(n, m), a) in x.terms() {
            for (&(p, q), b) in y.terms() {
                let ph = self.monomial_phase(m, p);
                let slot = acc.entry((n + p, m + q)).or_default();
                for (pa, qa) in a.terms() {
                    for (pb, qb) in b.terms() {
                        slot.push((pa.add(*pb).add(ph), qa * qb));
                    }
                }
            }
        }
        TorusElement {
            terms: acc
                .into_iter()
                .map(|(k, v)| (k, UniScalar::from_terms(v)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn trace_chi(&self, x: &TorusElement) -> UniScalar {
        x.trace_chi()
    }

    /// δⱼ(x) / 2πi: δ₁ weights by n, δ₂ by m.
    pub fn delta(&self, j: u8, x: &TorusElement) -> TwoPiI {
        let value = match j {
            1 => x.weight(|n, _| UniScalar::int(n)),
            2 => x.weight(|_, m| UniScalar::int(m)),
            _ => panic!("derivation index must be 1 or 2"),
        };
        TwoPiI { power: 1, value }
    }

    /// δ_τ(x) / 2πi = Σ (nτ + m) a_{n,m} UⁿVᵐ, exact.
    pub fn delta_tau(&self, tau: &ComplexStructure, x: &TorusElement) -> TwoPiI {
        let t = tau.scalar();
        TwoPiI {
            power: 1,
            value: x.weight(|n, m| &t.scale(&BigRational::from_integer(n.into())) + &UniScalar::int(m)),
        }
    }

    /// δ_τ(x) with coefficients evaluated at θ = `theta` and working precision.
    pub fn delta_tau_numeric(
        &self,
        tau: &ComplexStructure,
        x: &TorusElement,
        theta: &Float,
        prec: Precision,
    ) -> BTreeMap<(i64, i64), Complex> {
        let t = tau.to_complex(prec);
        let tpi = prec.two_pi_i();
        x.terms()
            .map(|(&(n, m), a)| {
                let w = Complex::with_val(prec.bits(), &t * n) + m;
                let v = a.eval(theta, prec) * w * &tpi;
                ((n, m), v)
            })
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }
}

/// (2πi)^power · value, with the transcendental prefactor kept symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoPiI {
    pub power: u32,
    pub value: TorusElement,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_products() {
        let t = NcTorus::formal();
        let uv = t.mul(&TorusElement::u(), &TorusElement::v());
        assert_eq!(uv, TorusElement::monomial(1, 1, UniScalar::one()));
        let vu = t.mul(&TorusElement::v(), &TorusElement::u());
        assert_eq!(vu, TorusElement::monomial(1, 1, t.theta_phase(-1)));
    }

    #[test]
    fn half_theta_sign() {
        let t = NcTorus::rational(Rational64::new(1, 2));
        let uv = TorusElement::monomial(1, 1, UniScalar::one());
        assert_eq!(t.mul(&uv, &uv), TorusElement::monomial(2, 2, UniScalar::int(-1)));
    }

    #[test]
    fn derivation_examples() {
        let t = NcTorus::formal();
        assert_eq!(t.delta(1, &TorusElement::u()).value, TorusElement::u());
        assert!(t.delta(1, &TorusElement::v()).value.is_zero());
        let x = TorusElement::monomial(3, 2, UniScalar::one());
        assert_eq!(t.delta(2, &x).value, x.scale(&UniScalar::int(2)));
        let tau: ComplexStructure = "0.3,-1.0".parse().unwrap();
        assert!(t.delta_tau(&tau, &TorusElement::one()).value.is_zero());
        let uv = TorusElement::monomial(1, 1, UniScalar::one());
        let expected = uv.scale(&(&tau.scalar() + &UniScalar::one()));
        assert_eq!(t.delta_tau(&tau, &uv).value, expected);
    }

    #[test]
    fn trace_examples() {
        assert_eq!(TorusElement::one().trace_chi(), UniScalar::one());
        assert!(TorusElement::monomial(2, 1, UniScalar::one()).trace_chi().is_zero());
    }
}

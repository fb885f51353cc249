use std::collections::BTreeMap;

use num::{BigRational, ToPrimitive, Zero};
use rug::{Complex, Float};
use serde_json::{json, Value};

use super::tpoly::{TPoly, XPoly};
use super::HeisenbergError;
use crate::precision::Precision;
use crate::quadfield::{QuadComplex, QuadReal};

/// Exponent κx² + βx + γ of a packet term.
///
/// The rational part of γ's T-coefficient is kept in [0, 1); when it is a
/// multiple of ¼ the corresponding power of i is moved into the polynomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent {
    pub kappa: TPoly,
    pub beta: TPoly,
    pub gamma: TPoly,
}

impl Exponent {
    pub fn gaussian(kappa: TPoly) -> Self {
        Exponent {
            kappa,
            beta: TPoly::zero(),
            gamma: TPoly::zero(),
        }
    }

    pub fn eval(&self, x: &Complex, prec: Precision) -> Complex {
        let k = self.kappa.eval(prec);
        let b = self.beta.eval(prec);
        let g = self.gamma.eval(prec);
        let x2 = Complex::with_val(prec.bits(), x * x);
        Complex::with_val(prec.bits(), k * x2 + b * x + g).exp()
    }
}

/// Functions on ℝ × ℤ/c: per class a sum of poly(x)·exp(κx² + βx + γ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Packet {
    classes: Vec<BTreeMap<Exponent, XPoly>>,
}

/// Sign of Re κ at T = 2πi: exact when one T-power contributes, else numeric.
pub fn decay_sign(kappa: &TPoly) -> i32 {
    // Re(a_k (2πi)^k) = (2π)^k · (Re a_k, −Im a_k, −Re a_k, Im a_k)[k mod 4]
    let parts: Vec<QuadReal> = kappa
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, a)| match k % 4 {
            0 => a.re.clone(),
            1 => -a.im.clone(),
            2 => -a.re.clone(),
            _ => a.im.clone(),
        })
        .collect();
    let nonzero: Vec<&QuadReal> = parts.iter().filter(|p| !p.is_zero()).collect();
    match nonzero.len() {
        0 => 0,
        1 => nonzero[0].signum(),
        _ => {
            let prec = Precision::new(256).expect("valid precision");
            let v = kappa.eval(prec);
            let re: &Float = v.real();
            re.cmp0().map_or(0, |o| o as i32)
        }
    }
}

fn quarter_turn_power(k: i64) -> QuadComplex {
    match k.rem_euclid(4) {
        0 => QuadComplex::one(),
        1 => QuadComplex::i(),
        2 => QuadComplex::from_int(-1),
        _ => -QuadComplex::i(),
    }
}

fn normalize_term(mut e: Exponent, mut p: XPoly) -> (Exponent, XPoly) {
    let mut g1 = e.gamma.coeff(1);
    let a = g1.re.a().clone();
    let fl = a.floor();
    let frac = &a - &fl;
    let four = BigRational::from_integer(4.into());
    let q = &frac * &four;
    let (keep, fold) = if q.is_integer() {
        (BigRational::zero(), q.to_integer().to_i64().unwrap_or(0))
    } else {
        (frac, 0)
    };
    if a != keep {
        let shift = &keep - &a;
        g1.re = &g1.re + &QuadReal::rational(shift);
        e.gamma.set_coeff(1, g1);
    }
    if fold != 0 {
        p = p.scale(&TPoly::constant(quarter_turn_power(fold)));
    }
    (e, p)
}

impl Packet {
    pub fn zero(c: usize) -> Self {
        Packet {
            classes: vec![BTreeMap::new(); c],
        }
    }

    /// Single term p(x)·exp(e) in class α, with a decay check on κ.
    pub fn term(c: usize, alpha: usize, exp: Exponent, poly: XPoly) -> Result<Self, HeisenbergError> {
        if decay_sign(&exp.kappa) >= 0 {
            return Err(HeisenbergError::NonDecaying);
        }
        Ok(Self::term_unchecked(c, alpha, exp, poly))
    }

    pub fn term_unchecked(c: usize, alpha: usize, exp: Exponent, poly: XPoly) -> Self {
        let mut p = Packet::zero(c);
        p.add_term(alpha, exp, poly);
        p
    }

    /// exp(κx²) in class α.
    pub fn gaussian(c: usize, alpha: usize, kappa: TPoly) -> Result<Self, HeisenbergError> {
        Self::term(c, alpha, Exponent::gaussian(kappa), XPoly::one())
    }

    pub fn classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_terms(&self, alpha: usize) -> impl Iterator<Item = (&Exponent, &XPoly)> {
        self.classes[alpha].iter()
    }

    pub fn add_term(&mut self, alpha: usize, exp: Exponent, poly: XPoly) {
        if poly.is_zero() {
            return;
        }
        let (exp, poly) = normalize_term(exp, poly);
        let slot = self.classes[alpha].entry(exp.clone()).or_default();
        *slot = &*slot + &poly;
        if slot.is_zero() {
            self.classes[alpha].remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.classes.iter().all(BTreeMap::is_empty)
    }

    pub fn term_count(&self) -> usize {
        self.classes.iter().map(BTreeMap::len).sum()
    }

    pub fn max_degree(&self) -> usize {
        self.classes
            .iter()
            .flat_map(|c| c.values())
            .filter_map(XPoly::degree)
            .max()
            .unwrap_or(0)
    }

    /// Every κ has Re κ < 0.
    pub fn decays(&self) -> bool {
        self.classes
            .iter()
            .flat_map(|c| c.keys())
            .all(|e| decay_sign(&e.kappa) < 0)
    }

    /// Applies `f` to every term, writing into class `target(α)`.
    pub fn map_terms(
        &self,
        target: impl Fn(usize) -> usize,
        f: impl Fn(usize, &Exponent, &XPoly) -> (Exponent, XPoly),
    ) -> Packet {
        let mut out = Packet::zero(self.classes());
        for (alpha, cls) in self.classes.iter().enumerate() {
            for (e, p) in cls {
                let (e2, p2) = f(alpha, e, p);
                out.add_term(target(alpha), e2, p2);
            }
        }
        out
    }

    pub fn add(&self, o: &Packet) -> Result<Packet, HeisenbergError> {
        self.check_classes(o.classes())?;
        let mut out = self.clone();
        for (alpha, cls) in o.classes.iter().enumerate() {
            for (e, p) in cls {
                out.add_term(alpha, e.clone(), p.clone());
            }
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Packet) -> Result<Packet, HeisenbergError> {
        self.add(&o.scale(&TPoly::constant(QuadComplex::from_int(-1))))
    }

    pub fn scale(&self, a: &TPoly) -> Packet {
        self.map_terms(|a| a, |_, e, p| (e.clone(), p.scale(a)))
    }

    /// Multiplication by e^{2πi r}: adds T·r to every γ.
    pub fn phase(&self, r: &QuadReal) -> Packet {
        let shift = TPoly::t_times(QuadComplex::from_real(r.clone()));
        self.map_terms(
            |a| a,
            |_, e, p| {
                let mut e = e.clone();
                e.gamma = &e.gamma + &shift;
                (e, p.clone())
            },
        )
    }

    pub fn check_classes(&self, c: usize) -> Result<(), HeisenbergError> {
        if self.classes() != c {
            return Err(HeisenbergError::ClassMismatch {
                expected: c,
                got: self.classes(),
            });
        }
        Ok(())
    }

    /// f(x, α) at working precision.
    pub fn eval(&self, x: &Complex, alpha: usize, prec: Precision) -> Complex {
        let mut acc = prec.zero_complex();
        for (e, p) in &self.classes[alpha] {
            acc += p.eval(x, prec) * e.eval(x, prec);
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        let tp = |t: &TPoly| {
            t.coeffs()
                .iter()
                .map(|c| json!({"re": c.re.to_string(), "im": c.im.to_string()}))
                .collect::<Vec<_>>()
        };
        Value::Array(
            self.classes
                .iter()
                .map(|cls| {
                    Value::Array(
                        cls.iter()
                            .map(|(e, p)| {
                                json!({
                                    "poly": p.coeffs().iter().map(&tp).collect::<Vec<_>>(),
                                    "kappa": tp(&e.kappa),
                                    "beta": tp(&e.beta),
                                    "gamma": tp(&e.gamma),
                                })
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

/// x ↦ p(x − s)·exp(κ(x − s)² + β(x − s) + γ).
pub fn translate_term(e: &Exponent, p: &XPoly, s: &QuadReal) -> (Exponent, XPoly) {
    let s_t = TPoly::real(s.clone());
    let two_k_s = (&e.kappa * &s_t).scale_real(&QuadReal::from_int(2));
    let k_s2 = &(&e.kappa * &s_t) * &s_t;
    let b_s = &e.beta * &s_t;
    (
        Exponent {
            kappa: e.kappa.clone(),
            beta: &e.beta - &two_k_s,
            gamma: &(&e.gamma + &k_s2) - &b_s,
        },
        p.translate(s),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::rat;

    fn unit_gaussian() -> Packet {
        Packet::gaussian(1, 0, TPoly::real(QuadReal::from_int(-1))).unwrap()
    }

    #[test]
    fn unit_gaussian_at_zero() {
        let prec = Precision::default();
        let v = unit_gaussian().eval(&prec.zero_complex(), 0, prec);
        assert_eq!(v, Complex::with_val(128, 1));
    }

    #[test]
    fn rejects_growing_gaussian() {
        assert!(Packet::gaussian(1, 0, TPoly::real(QuadReal::from_int(1))).is_err());
        // κ = −T/2·(−i) = −π: decays
        let k = TPoly::t_times(QuadComplex::new(QuadReal::from_int(0), QuadReal::rational(rat(1, 2))));
        assert_eq!(decay_sign(&k), -1);
    }

    #[test]
    fn integer_phases_vanish() {
        let f = unit_gaussian();
        assert_eq!(f.phase(&QuadReal::from_int(3)), f);
        let i = f.phase(&QuadReal::rational(rat(1, 4)));
        assert_eq!(i, f.scale(&TPoly::constant(QuadComplex::i())));
        assert!(f.sub(&f).unwrap().is_zero());
    }

    #[test]
    fn translation_matches_evaluation() {
        let prec = Precision::default();
        let f = unit_gaussian();
        let s = QuadReal::new(rat(1, 2), rat(1, 5), 5);
        let g = f.map_terms(|a| a, |_, e, p| translate_term(e, p, &s));
        let x = Complex::with_val(128, (0.7, 0.0));
        let shifted = Complex::with_val(128, &x - s.to_float(prec));
        let lhs = g.eval(&x, 0, prec);
        let rhs = f.eval(&shifted, 0, prec);
        let d = Complex::with_val(128, &lhs - &rhs);
        assert!(d.abs().real().to_f64() < 1e-30);
    }
}

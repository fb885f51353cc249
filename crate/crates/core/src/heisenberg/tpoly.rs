//! Polynomials in the symbol T = 2πi over K = ℚ(√D, i), and polynomials in x over those.

use std::ops::{Add, Mul, Neg, Sub};

use rug::Complex;

use crate::precision::Precision;
use crate::quadfield::{QuadComplex, QuadReal};

/// Σ a_k T^k, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TPoly(Vec<QuadComplex>);

impl TPoly {
    pub fn zero() -> Self {
        TPoly(Vec::new())
    }

    pub fn constant(a: QuadComplex) -> Self {
        Self::from_coeffs(vec![a])
    }

    pub fn real(a: QuadReal) -> Self {
        Self::constant(QuadComplex::from_real(a))
    }

    pub fn one() -> Self {
        Self::constant(QuadComplex::one())
    }

    /// a·T.
    pub fn t_times(a: QuadComplex) -> Self {
        Self::from_coeffs(vec![QuadComplex::zero(), a])
    }

    pub fn from_coeffs(mut c: Vec<QuadComplex>) -> Self {
        while c.last().is_some_and(QuadComplex::is_zero) {
            c.pop();
        }
        TPoly(c)
    }

    pub fn coeffs(&self) -> &[QuadComplex] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> QuadComplex {
        self.0.get(k).cloned().unwrap_or_else(QuadComplex::zero)
    }

    pub fn set_coeff(&mut self, k: usize, v: QuadComplex) {
        if self.0.len() <= k {
            self.0.resize(k + 1, QuadComplex::zero());
        }
        self.0[k] = v;
        let c = std::mem::take(&mut self.0);
        *self = Self::from_coeffs(c);
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self, a: &QuadComplex) -> Self {
        Self::from_coeffs(self.0.iter().map(|x| x * a).collect())
    }

    pub fn scale_real(&self, a: &QuadReal) -> Self {
        Self::from_coeffs(self.0.iter().map(|x| x.mul_real(a)).collect())
    }

    /// Value at T = 2πi.
    pub fn eval(&self, prec: Precision) -> Complex {
        let t = prec.two_pi_i();
        let mut acc = prec.zero_complex();
        for a in self.0.iter().rev() {
            acc *= &t;
            acc += a.to_complex(prec);
        }
        acc
    }
}

impl<'a> Add<&'a TPoly> for &'a TPoly {
    type Output = TPoly;
    fn add(self, o: &TPoly) -> TPoly {
        let n = self.0.len().max(o.0.len());
        TPoly::from_coeffs((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }
}

impl Add for TPoly {
    type Output = TPoly;
    fn add(self, o: TPoly) -> TPoly {
        &self + &o
    }
}

impl Neg for &TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        TPoly(self.0.iter().map(|x| -x.clone()).collect())
    }
}

impl<'a> Sub<&'a TPoly> for &'a TPoly {
    type Output = TPoly;
    fn sub(self, o: &TPoly) -> TPoly {
        self + &(-o)
    }
}

impl Sub for TPoly {
    type Output = TPoly;
    fn sub(self, o: TPoly) -> TPoly {
        &self - &o
    }
}

impl<'a> Mul<&'a TPoly> for &'a TPoly {
    type Output = TPoly;
    fn mul(self, o: &TPoly) -> TPoly {
        if self.is_zero() || o.is_zero() {
            return TPoly::zero();
        }
        let mut c = vec![QuadComplex::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        TPoly::from_coeffs(c)
    }
}

impl Mul for TPoly {
    type Output = TPoly;
    fn mul(self, o: TPoly) -> TPoly {
        &self * &o
    }
}

/// Σ p_k x^k with p_k ∈ K[T].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct XPoly(Vec<TPoly>);

impl XPoly {
    pub fn zero() -> Self {
        XPoly(Vec::new())
    }

    pub fn constant(a: TPoly) -> Self {
        Self::from_coeffs(vec![a])
    }

    pub fn one() -> Self {
        Self::constant(TPoly::one())
    }

    pub fn from_coeffs(mut c: Vec<TPoly>) -> Self {
        while c.last().is_some_and(TPoly::is_zero) {
            c.pop();
        }
        XPoly(c)
    }

    pub fn coeffs(&self) -> &[TPoly] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> TPoly {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn scale(&self, a: &TPoly) -> Self {
        Self::from_coeffs(self.0.iter().map(|p| p * a).collect())
    }

    pub fn mul_x(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![TPoly::zero()];
        c.extend(self.0.iter().cloned());
        XPoly(c)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, p)| p.scale_real(&QuadReal::from_int(k as i64)))
                .collect(),
        )
    }

    /// p(x − s).
    pub fn translate(&self, s: &QuadReal) -> Self {
        // Horner in (x − s)
        let shift = XPoly::from_coeffs(vec![TPoly::real(-s.clone()), TPoly::one()]);
        let mut acc = XPoly::zero();
        for p in self.0.iter().rev() {
            acc = &(&acc * &shift) + &XPoly::constant(p.clone());
        }
        acc
    }

    pub fn eval(&self, x: &Complex, prec: Precision) -> Complex {
        let mut acc = prec.zero_complex();
        for p in self.0.iter().rev() {
            acc *= x;
            acc += p.eval(prec);
        }
        acc
    }
}

impl<'a> Add<&'a XPoly> for &'a XPoly {
    type Output = XPoly;
    fn add(self, o: &XPoly) -> XPoly {
        let n = self.0.len().max(o.0.len());
        XPoly::from_coeffs((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a XPoly> for &'a XPoly {
    type Output = XPoly;
    fn mul(self, o: &XPoly) -> XPoly {
        if self.is_zero() || o.is_zero() {
            return XPoly::zero();
        }
        let mut c = vec![TPoly::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        XPoly::from_coeffs(c)
    }
}

impl Neg for &XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        XPoly(self.0.iter().map(|p| -p).collect())
    }
}

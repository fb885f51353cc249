//! Exact arithmetic in ℚ(√D) and ℚ(√D, i) for a square-free D > 1.
//!
//! A [`QuadReal`] with zero irrational part carries radicand 0, so values
//! from different fields only clash when both irrational parts are nonzero;
//! that case is a programming error and panics.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::{BigRational, Integer, One, Signed, ToPrimitive, Zero};
use rug::Float;

use crate::precision::Precision;

/// a + b·√d with rational a, b.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadReal {
    a: BigRational,
    b: BigRational,
    d: u64,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Splits n = k²·s with s square-free; returns (k, s).
pub fn square_free_part(mut n: u64) -> (u64, u64) {
    let mut k = 1u64;
    let mut s = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        k *= p.pow(e / 2);
        if e % 2 == 1 {
            s *= p;
        }
        p += 1;
    }
    (k, s * n)
}

impl QuadReal {
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Self {
        let (k, s) = square_free_part(d.max(1));
        let b = b * int(k as i64);
        if s == 1 {
            return QuadReal::rational(a + b);
        }
        let mut q = QuadReal { a, b, d: s };
        q.normalize();
        q
    }

    pub fn rational(a: BigRational) -> Self {
        QuadReal {
            a,
            b: BigRational::zero(),
            d: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(int(n))
    }

    fn normalize(&mut self) {
        if self.b.is_zero() {
            self.d = 0;
        }
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    /// Radicand, 0 for a rational value.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn field(&self, other: &Self) -> u64 {
        match (self.d, other.d) {
            (0, d) | (d, 0) => d,
            (d, e) if d == e => d,
            (d, e) => panic!("mixed quadratic fields Q(sqrt({d})) and Q(sqrt({e}))"),
        }
    }

    pub fn conj(&self) -> Self {
        QuadReal {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// Field norm a² − d·b².
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * int(self.d as i64)
    }

    /// Exact sign, decided through the conjugate.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // opposite signs: compare a² with d·b²
        let a2 = &self.a * &self.a;
        let db2 = &self.b * &self.b * int(self.d as i64);
        match a2.cmp(&db2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(QuadReal {
            a: &self.a / &n,
            b: -(&self.b / &n),
            d: self.d,
        })
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut r = QuadReal {
            a: &self.a * q,
            b: &self.b * q,
            d: self.d,
        };
        r.normalize();
        r
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    pub fn to_float(&self, prec: Precision) -> Float {
        let p = prec.bits();
        let a = rational_to_float(&self.a, p);
        if self.b.is_zero() {
            return a;
        }
        let root = Float::with_val(p, self.d).sqrt();
        a + rational_to_float(&self.b, p) * root
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        let approx = self.to_f64().floor();
        let mut k = BigInt::from(approx as i64);
        loop {
            let below = self.clone() - QuadReal::rational(BigRational::from_integer(k.clone()));
            if below.signum() < 0 {
                k -= 1;
                continue;
            }
            let above =
                self.clone() - QuadReal::rational(BigRational::from_integer(&k + BigInt::one()));
            if above.signum() >= 0 {
                k += 1;
                continue;
            }
            return k;
        }
    }

    /// Writes the value as (p + s·√D)/q with integers, q > 0, gcd(p, s, q) = 1.
    pub fn integer_form(&self) -> (BigInt, BigInt, u64, BigInt) {
        let q = self.a.denom().lcm(self.b.denom());
        let p = (&self.a * BigRational::from_integer(q.clone())).to_integer();
        let s = (&self.b * BigRational::from_integer(q.clone())).to_integer();
        let g = p.gcd(&s).gcd(&q);
        let g = if g.is_zero() { BigInt::one() } else { g };
        (p / &g, s / &g, self.d, q / &g)
    }
}

fn sign_of(q: &BigRational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

pub fn rational_to_float(q: &BigRational, bits: u32) -> Float {
    let n = rug::Integer::from_str_radix(&q.numer().to_str_radix(16), 16).expect("integer");
    let d = rug::Integer::from_str_radix(&q.denom().to_str_radix(16), 16).expect("integer");
    let r = rug::Rational::from((n, d));
    Float::with_val(bits, &r)
}

impl fmt::Display for QuadReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let (p, s, d, q) = self.integer_form();
        let sign = if s.is_negative() { '-' } else { '+' };
        write!(f, "({} {} {}*sqrt({}))/{}", p, sign, s.abs(), d, q)
    }
}

impl Add for QuadReal {
    type Output = QuadReal;
    fn add(self, o: QuadReal) -> QuadReal {
        &self + &o
    }
}

impl<'a> Add<&'a QuadReal> for &'a QuadReal {
    type Output = QuadReal;
    fn add(self, o: &QuadReal) -> QuadReal {
        let d = self.field(o);
        let mut r = QuadReal {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            d,
        };
        r.normalize();
        r
    }
}

impl Sub for QuadReal {
    type Output = QuadReal;
    fn sub(self, o: QuadReal) -> QuadReal {
        &self - &o
    }
}

impl<'a> Sub<&'a QuadReal> for &'a QuadReal {
    type Output = QuadReal;
    fn sub(self, o: &QuadReal) -> QuadReal {
        self + &(-o.clone())
    }
}

impl Neg for QuadReal {
    type Output = QuadReal;
    fn neg(self) -> QuadReal {
        QuadReal {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Mul for QuadReal {
    type Output = QuadReal;
    fn mul(self, o: QuadReal) -> QuadReal {
        &self * &o
    }
}

impl<'a> Mul<&'a QuadReal> for &'a QuadReal {
    type Output = QuadReal;
    fn mul(self, o: &QuadReal) -> QuadReal {
        let d = self.field(o);
        let mut r = QuadReal {
            a: &self.a * &o.a + &self.b * &o.b * int(d as i64),
            b: &self.a * &o.b + &self.b * &o.a,
            d,
        };
        r.normalize();
        r
    }
}

impl Div for QuadReal {
    type Output = QuadReal;
    fn div(self, o: QuadReal) -> QuadReal {
        &self * &o.inv().expect("division by zero in Q(sqrt D)")
    }
}

/// Element of ℚ(√D)(i): re + i·im.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadComplex {
    pub re: QuadReal,
    pub im: QuadReal,
}

impl QuadComplex {
    pub fn new(re: QuadReal, im: QuadReal) -> Self {
        QuadComplex { re, im }
    }

    pub fn zero() -> Self {
        Self::from_real(QuadReal::from_int(0))
    }

    pub fn one() -> Self {
        Self::from_real(QuadReal::from_int(1))
    }

    pub fn i() -> Self {
        QuadComplex::new(QuadReal::from_int(0), QuadReal::from_int(1))
    }

    pub fn from_real(re: QuadReal) -> Self {
        QuadComplex {
            re,
            im: QuadReal::from_int(0),
        }
    }

    pub fn from_rationals(re: BigRational, im: BigRational) -> Self {
        QuadComplex::new(QuadReal::rational(re), QuadReal::rational(im))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_real(QuadReal::from_int(n))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadComplex::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sq(&self) -> QuadReal {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sq().inv()?;
        let c = self.conj();
        Some(QuadComplex::new(&c.re * &n, &c.im * &n))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        QuadComplex::new(self.re.scale(q), self.im.scale(q))
    }

    pub fn mul_real(&self, r: &QuadReal) -> Self {
        QuadComplex::new(&self.re * r, &self.im * r)
    }

    pub fn to_complex(&self, prec: Precision) -> rug::Complex {
        rug::Complex::with_val(prec.bits(), (self.re.to_float(prec), self.im.to_float(prec)))
    }

    pub fn to_c64(&self) -> num::complex::Complex64 {
        num::complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for QuadComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "i*{}", self.im)
        } else {
            write!(f, "{} + i*{}", self.re, self.im)
        }
    }
}

impl Add for QuadComplex {
    type Output = QuadComplex;
    fn add(self, o: QuadComplex) -> QuadComplex {
        &self + &o
    }
}

impl<'a> Add<&'a QuadComplex> for &'a QuadComplex {
    type Output = QuadComplex;
    fn add(self, o: &QuadComplex) -> QuadComplex {
        QuadComplex::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for QuadComplex {
    type Output = QuadComplex;
    fn sub(self, o: QuadComplex) -> QuadComplex {
        &self - &o
    }
}

impl<'a> Sub<&'a QuadComplex> for &'a QuadComplex {
    type Output = QuadComplex;
    fn sub(self, o: &QuadComplex) -> QuadComplex {
        QuadComplex::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Neg for QuadComplex {
    type Output = QuadComplex;
    fn neg(self) -> QuadComplex {
        QuadComplex::new(-self.re, -self.im)
    }
}

impl Mul for QuadComplex {
    type Output = QuadComplex;
    fn mul(self, o: QuadComplex) -> QuadComplex {
        &self * &o
    }
}

impl<'a> Mul<&'a QuadComplex> for &'a QuadComplex {
    type Output = QuadComplex;
    fn mul(self, o: &QuadComplex) -> QuadComplex {
        QuadComplex::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Div for QuadComplex {
    type Output = QuadComplex;
    fn div(self, o: QuadComplex) -> QuadComplex {
        &self * &o.inv().expect("division by zero in Q(sqrt D, i)")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> QuadReal {
        QuadReal::new(rat(1, 2), rat(1, 2), 5)
    }

    #[test]
    fn square_free_extraction() {
        assert_eq!(square_free_part(20), (2, 5));
        assert_eq!(square_free_part(5), (1, 5));
        assert_eq!(square_free_part(49), (7, 1));
        let x = QuadReal::new(int(0), int(1), 20);
        assert_eq!(x, QuadReal::new(int(0), int(2), 5));
    }

    #[test]
    fn golden_ratio_identity() {
        let phi = golden();
        assert_eq!(&phi * &phi, &phi + &QuadReal::from_int(1));
        assert_eq!(phi.signum(), 1);
        assert_eq!(phi.floor(), BigInt::from(1));
    }

    #[test]
    fn sign_through_conjugate() {
        // (3 - sqrt 5)/2 > 0, (2 - sqrt 5) < 0
        assert_eq!(QuadReal::new(rat(3, 2), rat(-1, 2), 5).signum(), 1);
        assert_eq!(QuadReal::new(int(2), int(-1), 5).signum(), -1);
        assert_eq!(QuadReal::new(int(-3), int(1), 5).signum(), -1);
        assert_eq!(QuadReal::from_int(0).signum(), 0);
    }

    #[test]
    fn inverse_and_display() {
        let x = QuadReal::new(rat(5, 10), rat(-1, 10), 5);
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, QuadReal::from_int(1));
        assert_eq!(x.to_string(), "(5 - 1*sqrt(5))/10");
    }

    #[test]
    fn complex_field_ops() {
        let z = QuadComplex::new(golden(), QuadReal::from_int(-2));
        let w = z.inv().unwrap();
        assert_eq!(&z * &w, QuadComplex::one());
        assert_eq!(&QuadComplex::i() * &QuadComplex::i(), QuadComplex::from_int(-1));
    }

    #[test]
    fn rational_drops_radicand() {
        let x = QuadReal::new(int(1), int(1), 5);
        let y = QuadReal::new(int(1), int(-1), 5);
        assert_eq!((&x + &y).radicand(), 0);
        assert_eq!(&x + &y, QuadReal::from_int(2));
    }
}

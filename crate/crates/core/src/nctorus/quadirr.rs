use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::{BigRational, Integer, Signed, ToPrimitive};
use regex::Regex;

use super::sl2::SL2Mat;
use super::TorusError;
use crate::quadfield::{int, QuadReal};

/// Quadratic irrationality θ = (p + s√D)/q.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadIrr {
    value: QuadReal,
}

impl QuadIrr {
    pub fn new(p: i64, s: i64, d: u64, q: i64) -> Result<Self, TorusError> {
        if q == 0 {
            return Err(TorusError::Domain("denominator q must be nonzero".into()));
        }
        let v = QuadReal::new(
            BigRational::new(p.into(), q.into()),
            BigRational::new(s.into(), q.into()),
            d,
        );
        Self::from_quad(v)
    }

    pub fn from_quad(value: QuadReal) -> Result<Self, TorusError> {
        if value.is_rational() {
            return Err(TorusError::Domain(format!("{value} is rational")));
        }
        Ok(QuadIrr { value })
    }

    pub fn value(&self) -> &QuadReal {
        &self.value
    }

    pub fn radicand(&self) -> u64 {
        self.value.radicand()
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// Primitive integer (A, B, C), A > 0, with Aθ² + Bθ + C = 0.
    pub fn min_poly(&self) -> (BigInt, BigInt, BigInt) {
        let (p, s, d, q) = self.value.integer_form();
        // (qθ − p)² = s²D
        let a = &q * &q;
        let b = -(BigInt::from(2) * &p * &q);
        let c = &p * &p - &s * &s * BigInt::from(d);
        let g = a.gcd(&b).gcd(&c);
        (a / &g, b / &g, c / &g)
    }

    /// A θ that is the image of an SL₂(ℤ) element always has real multiplication.
    pub fn is_rm(&self) -> bool {
        true
    }

    /// n + mθ, exact.
    pub fn k0_rank(&self, n: i64, m: i64) -> QuadReal {
        &QuadReal::from_int(n) + &self.value.scale(&int(m))
    }

    /// |cθ + d|, the rank of the basic module for (d, c).
    pub fn module_rank(&self, d: i64, c: i64) -> QuadReal {
        self.k0_rank(d, c).abs()
    }

    /// cθ + d for g.
    pub fn denominator_for(&self, g: &SL2Mat) -> QuadReal {
        self.k0_rank(g.d, g.c)
    }

    /// gθ = (aθ + b)/(cθ + d).
    pub fn morita(&self, g: &SL2Mat) -> Result<QuadIrr, TorusError> {
        let den = self.denominator_for(g);
        if den.is_zero() {
            return Err(TorusError::Pole(g.to_string()));
        }
        let num = self.k0_rank(g.b, g.a);
        QuadIrr::from_quad(num / den)
    }

    /// Representative in [0, ½] under θ ↦ θ + k and θ ↦ 1 − θ.
    pub fn canonicalize(&self) -> Canonical {
        let shift = self.value.floor().to_i64().expect("floor fits in i64");
        let frac = &self.value - &QuadReal::from_int(shift);
        let half = QuadReal::rational(BigRational::new(1.into(), 2.into()));
        let flipped = (&frac - &half).signum() > 0;
        let value = if flipped { &QuadReal::from_int(1) - &frac } else { frac };
        Canonical {
            value: QuadIrr { value },
            shift,
            flipped,
        }
    }

    /// Every g with |b|, |c| ≤ bound and gθ = θ, up to sign (a + d > 0).
    pub fn fixing_matrices(&self, bound: i64) -> Vec<SL2Mat> {
        let (a, b, c) = self.min_poly();
        let disc = &b * &b - BigInt::from(4) * &a * &c;
        let mut out = Vec::new();
        // gθ = θ ⇔ (c_g, d_g − a_g, −b_g) = k(A, B, C)
        let kmax = bound.max(0);
        for k in -kmax..=kmax {
            let kk = BigInt::from(k);
            let cg = &kk * &a;
            let bg = -(&kk * &c);
            if cg.abs() > BigInt::from(bound) || bg.abs() > BigInt::from(bound) {
                continue;
            }
            let t2 = BigInt::from(4) + &kk * &kk * &disc;
            let t = t2.sqrt();
            if &t * &t != t2 {
                continue;
            }
            let diff = &kk * &b;
            if (&t - &diff).is_odd() {
                continue;
            }
            let ag = (&t - &diff) / 2;
            let dg = (&t + &diff) / 2;
            let conv = |x: &BigInt| x.to_i64();
            if let (Some(a1), Some(b1), Some(c1), Some(d1)) =
                (conv(&ag), conv(&bg), conv(&cg), conv(&dg))
            {
                if let Ok(g) = SL2Mat::new(a1, b1, c1, d1) {
                    out.push(g);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// θ' = θ − shift, then 1 − θ' when `flipped`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub value: QuadIrr,
    pub shift: i64,
    pub flipped: bool,
}

impl fmt::Display for QuadIrr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl FromStr for QuadIrr {
    type Err = TorusError;

    /// Grammar "(p + s*sqrt(D))/q"; the "s*" part and "/q" are optional.
    fn from_str(text: &str) -> Result<Self, TorusError> {
        let re = Regex::new(
            r"^\s*\(?\s*([+-]?\d+)\s*([+-])\s*(?:(\d+)\s*\*\s*)?sqrt\(\s*(\d+)\s*\)\s*\)?\s*(?:/\s*(\d+))?\s*$",
        )
        .expect("static regex");
        let bad = || TorusError::Parse(format!("theta must look like \"(p + s*sqrt(D))/q\", got {text:?}"));
        let caps = re.captures(text).ok_or_else(bad)?;
        let p: i64 = caps[1].parse().map_err(|_| bad())?;
        let mut s: i64 = caps.get(3).map_or(Ok(1), |m| m.as_str().parse()).map_err(|_| bad())?;
        if &caps[2] == "-" {
            s = -s;
        }
        let d: u64 = caps[4].parse().map_err(|_| bad())?;
        let q: i64 = caps.get(5).map_or(Ok(1), |m| m.as_str().parse()).map_err(|_| bad())?;
        QuadIrr::new(p, s, d, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta() -> QuadIrr {
        QuadIrr::new(5, -1, 5, 10).unwrap()
    }

    #[test]
    fn parse_grammar() {
        assert_eq!("(5-1*sqrt(5))/10".parse::<QuadIrr>().unwrap(), theta());
        assert_eq!("(5 - sqrt(5))/10".parse::<QuadIrr>().unwrap(), theta());
        assert_eq!(
            "(1 + 1*sqrt(5))/2".parse::<QuadIrr>().unwrap(),
            QuadIrr::new(1, 1, 5, 2).unwrap()
        );
        // square factors are absorbed
        assert_eq!(
            "(0 + 1*sqrt(20))/4".parse::<QuadIrr>().unwrap(),
            QuadIrr::new(0, 1, 5, 2).unwrap()
        );
        assert!("(1 + sqrt(4))/2".parse::<QuadIrr>().is_err());
        assert!("0.5".parse::<QuadIrr>().is_err());
    }

    #[test]
    fn minimal_polynomial() {
        let (a, b, c) = theta().min_poly();
        assert_eq!((a, b, c), (5.into(), (-5).into(), 1.into()));
    }

    #[test]
    fn rank_examples() {
        let t = theta();
        assert_eq!(t.k0_rank(1, 0), QuadReal::from_int(1));
        let r = t.module_rank(-1, 5);
        assert_eq!(r, QuadReal::new(BigRational::new(3.into(), 2.into()), BigRational::new((-1).into(), 2.into()), 5));
        assert_eq!(r.signum(), 1);
    }

    #[test]
    fn morita_examples() {
        let t = theta();
        assert_eq!(t.morita(&SL2Mat::identity()).unwrap(), t);
        let shift = SL2Mat::new(1, 1, 0, 1).unwrap();
        assert_eq!(t.morita(&shift).unwrap().value(), &(t.value() + &QuadReal::from_int(1)));
        let g = SL2Mat::new(4, -1, 5, -1).unwrap();
        assert_eq!(t.morita(&g).unwrap(), t);
    }

    #[test]
    fn fixing_matrix_examples() {
        let fixed = theta().fixing_matrices(5);
        assert!(fixed.contains(&SL2Mat::new(4, -1, 5, -1).unwrap()));
        assert!(fixed.contains(&SL2Mat::identity()));
        for g in &fixed {
            assert_eq!(theta().morita(g).unwrap(), theta());
        }
        let golden = QuadIrr::new(1, 1, 5, 2).unwrap();
        assert!(golden.fixing_matrices(2).contains(&SL2Mat::new(2, 1, 1, 1).unwrap()));
        assert_eq!(theta().fixing_matrices(0), vec![SL2Mat::identity()]);
    }

    #[test]
    fn fixing_matrices_match_exhaustive_scan() {
        let t = theta();
        let bound = 6;
        let mut scan = Vec::new();
        for a in -40..=40i64 {
            for d in -40..=40i64 {
                for b in -bound..=bound {
                    for c in -bound..=bound {
                        if a * d - b * c != 1 || a + d <= 0 {
                            continue;
                        }
                        let g = SL2Mat::new(a, b, c, d).unwrap();
                        if t.morita(&g).is_ok_and(|x| x == t) {
                            scan.push(g);
                        }
                    }
                }
            }
        }
        scan.sort();
        assert_eq!(t.fixing_matrices(bound), scan);
    }

    #[test]
    fn canonical_representative() {
        let golden = QuadIrr::new(1, 1, 5, 2).unwrap();
        let c = golden.canonicalize();
        assert_eq!((c.shift, c.flipped), (1, true));
        let v = c.value.to_f64();
        assert!((0.0..=0.5).contains(&v));
        assert!((v - (2.0 - golden.to_f64())).abs() < 1e-12);
    }
}

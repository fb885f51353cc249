use std::str::FromStr;

use num::bigint::BigInt;
use num::{BigRational, Signed, Zero};
use rug::Complex;

use super::TorusError;
use crate::freealg::UniScalar;
use crate::precision::Precision;
use crate::quadfield::rational_to_float;

/// Exact value of a decimal literal such as "-1.25e-3".
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(k) => (&s[..k], s[k + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int_part, frac_part) = match mant.find('.') {
        Some(k) => (&mant[..k], &mant[k + 1..]),
        None => (mant, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let shift = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut q = BigRational::from_integer(n);
    if shift >= 0 {
        q *= BigRational::from_integer(num::pow(ten, shift as usize));
    } else {
        q /= BigRational::from_integer(num::pow(ten, (-shift) as usize));
    }
    Some(if neg { -q } else { q })
}

/// τ with Im τ < 0, stored exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexStructure {
    re: BigRational,
    im: BigRational,
}

impl ComplexStructure {
    pub fn new(re: BigRational, im: BigRational) -> Result<Self, TorusError> {
        if !im.is_negative() {
            return Err(TorusError::Domain(format!(
                "complex structure needs Im(tau) < 0, got {im}"
            )));
        }
        Ok(ComplexStructure { re, im })
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    /// τ as an exact scalar re + i·im.
    pub fn scalar(&self) -> UniScalar {
        UniScalar::gaussian(self.re.clone(), self.im.clone())
    }

    pub fn to_complex(&self, prec: Precision) -> Complex {
        let b = prec.bits();
        Complex::with_val(b, (rational_to_float(&self.re, b), rational_to_float(&self.im, b)))
    }

    pub fn to_c64(&self) -> num::complex::Complex64 {
        use num::ToPrimitive;
        num::complex::Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl FromStr for ComplexStructure {
    type Err = TorusError;

    /// "re,im" decimal pair.
    fn from_str(s: &str) -> Result<Self, TorusError> {
        let bad = || TorusError::Parse(format!("tau must be \"re,im\", got {s:?}"));
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        let re = parse_decimal(a).ok_or_else(bad)?;
        let im = parse_decimal(b).ok_or_else(bad)?;
        ComplexStructure::new(re, im)
    }
}

impl std::fmt::Display for ComplexStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let c = self.to_c64();
        write!(f, "{},{}", c.re, c.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_decimal("0.3").unwrap(), BigRational::new(3.into(), 10.into()));
        assert_eq!(parse_decimal("-1.0").unwrap(), BigRational::from_integer((-1).into()));
        assert_eq!(parse_decimal("2.5e-2").unwrap(), BigRational::new(1.into(), 40.into()));
        assert!(parse_decimal("abc").is_none());
        assert!(parse_decimal(".").is_none());
    }

    #[test]
    fn tau_parsing() {
        let t: ComplexStructure = "0.3,-1.0".parse().unwrap();
        assert_eq!(t.to_c64(), num::complex::Complex64::new(0.3, -1.0));
        assert!("0.3,1.0".parse::<ComplexStructure>().is_err());
        assert!("0.3".parse::<ComplexStructure>().is_err());
    }
}

use std::fmt;

use rug::float::Constant;
use rug::{Complex, Float, Integer};

/// Working precision in bits for MPFR-backed evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    pub const DEFAULT_BITS: u32 = 128;
    pub const MIN_BITS: u32 = 53;
    pub const MAX_BITS: u32 = 1 << 16;

    pub fn new(bits: u32) -> Option<Self> {
        (Self::MIN_BITS..=Self::MAX_BITS)
            .contains(&bits)
            .then_some(Precision(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Unit roundoff 2^(1-bits).
    pub fn unit_roundoff(self) -> f64 {
        2f64.powi(1 - self.0 as i32)
    }

    pub fn float(self, v: f64) -> Float {
        Float::with_val(self.0, v)
    }

    pub fn zero_complex(self) -> Complex {
        Complex::new(self.0)
    }

    pub fn pi(self) -> Float {
        Float::with_val(self.0, Constant::Pi)
    }

    /// 2πi at this precision.
    pub fn two_pi_i(self) -> Complex {
        let two_pi = self.pi() * 2u32;
        Complex::with_val(self.0, (Float::new(self.0), two_pi))
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision(Self::DEFAULT_BITS)
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} bits", self.0)
    }
}

/// Complex value with a rigorous absolute error bound.
#[derive(Clone, Debug)]
pub struct Certified {
    pub value: Complex,
    pub err: f64,
}

impl Certified {
    pub fn exact_zero(prec: Precision) -> Self {
        Certified {
            value: prec.zero_complex(),
            err: 0.0,
        }
    }

    pub fn re_f64(&self) -> f64 {
        self.value.real().to_f64()
    }

    pub fn im_f64(&self) -> f64 {
        self.value.imag().to_f64()
    }

    pub fn abs_f64(&self) -> f64 {
        self.re_f64().hypot(self.im_f64())
    }

    /// Fixed-point decimal; the imaginary part is shown only if it survives rounding.
    pub fn decimal_string(&self, digits: usize) -> String {
        let re = fixed_decimal(self.value.real(), digits);
        let im = fixed_decimal(self.value.imag(), digits);
        if im.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
            return re;
        }
        match im.strip_prefix('-') {
            Some(a) => format!("{re} - {a}i"),
            None => format!("{re} + {im}i"),
        }
    }
}

/// x rounded to `digits` decimals (ties away from zero), without exponent.
pub fn fixed_decimal(x: &Float, digits: usize) -> String {
    let scale = Integer::from(Integer::u_pow_u(10, digits as u32));
    let n = Float::with_val(x.prec() + 64, x * &scale)
        .round()
        .to_integer()
        .unwrap_or_default();
    let neg = n < 0;
    let mut s = n.abs().to_string();
    if s.len() <= digits {
        s = format!("{}{s}", "0".repeat(digits + 1 - s.len()));
    }
    if digits > 0 {
        s.insert(s.len() - digits, '.');
    }
    if neg && s.chars().any(|c| c != '0' && c != '.') {
        s.insert(0, '-');
    }
    s
}

pub fn complex_to_c64(z: &Complex) -> num::complex::Complex64 {
    num::complex::Complex64::new(z.real().to_f64(), z.imag().to_f64())
}

pub fn abs_f64(z: &Complex) -> f64 {
    z.real().to_f64().hypot(z.imag().to_f64())
}

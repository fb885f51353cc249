use num::{BigRational, Signed, ToPrimitive};
use rug::{Complex, Float};

use super::ThetaError;
use crate::precision::{abs_f64, Certified, Precision};
use crate::quadfield::rational_to_float;

const MAX_RADIUS: i64 = 1_000_000;
const MAX_RETRIES: u32 = 8;

/// Characteristic r and scale l of ϑ_r(l·τ) = Σ_n exp[πi(n + r)² l τ].
#[derive(Clone, Debug)]
pub struct ThetaChar {
    r: BigRational,
    l: BigRational,
}

impl ThetaChar {
    pub fn new(r: BigRational, l: BigRational) -> Result<Self, ThetaError> {
        if !l.is_positive() {
            return Err(ThetaError::Domain(format!("theta scale must be positive, got {l}")));
        }
        Ok(ThetaChar { r, l })
    }

    pub fn r(&self) -> &BigRational {
        &self.r
    }

    pub fn l(&self) -> &BigRational {
        &self.l
    }
}

impl PartialEq for ThetaChar {
    fn eq(&self, o: &Self) -> bool {
        self.l == o.l && (&self.r - &o.r).is_integer()
    }
}

/// Truncation radius and working precision meeting a target error ε.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrecisionBudget {
    pub eps: f64,
    pub bits: u32,
    pub radius: i64,
}

/// ln|q| for q = exp(πi·l·τ).
fn log_nome(ch: &ThetaChar, tau: &Complex) -> f64 {
    let l = ch.l.to_f64().unwrap_or(f64::INFINITY);
    -std::f64::consts::PI * l * tau.imag().to_f64()
}

/// Bound 2|q|^{t²}/(1 − |q|), t = M + 1 − |r|, on the terms with |n| > M.
pub fn tail_bound(log_q: f64, r_abs: f64, m: i64) -> f64 {
    let t = m as f64 + 1.0 - r_abs;
    (std::f64::consts::LN_2 + t * t * log_q - (-log_q.exp_m1()).ln()).exp()
}

/// Smallest M ≥ ⌈|r|⌉ + 1 with tail bound below ε/2, by bisection.
fn radius_for(log_q: f64, r_abs: f64, eps: f64) -> Result<i64, ThetaError> {
    let lo0 = r_abs.ceil() as i64 + 1;
    let ok = |m: i64| tail_bound(log_q, r_abs, m) < eps / 2.0;
    if ok(lo0) {
        return Ok(lo0);
    }
    let mut hi = lo0.max(1) * 2;
    while !ok(hi) {
        hi *= 2;
        if hi > MAX_RADIUS {
            return Err(ThetaError::Domain("nome too close to the unit circle".into()));
        }
    }
    let mut lo = lo0;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// ϑ_r(l·τ_eff) to absolute error ε.
///
/// The window n ∈ [−M, M] leaves terms with |n + r| ≥ t = M + 1 − |r|, and
/// since (t + j)² ≥ t² + j for t ≥ ½ each side is dominated by the geometric
/// series |q|^{t²}/(1 − |q|). Rounding is bounded per term by the relative
/// error of exp (|z|·u plus a constant) and of the running sum; the precision
/// is doubled until that bound is also below ε/2.
pub fn theta_const(
    ch: &ThetaChar,
    tau_eff: &Complex,
    eps: f64,
    prec: Precision,
) -> Result<(Certified, PrecisionBudget), ThetaError> {
    if !(eps > 0.0) {
        return Err(ThetaError::Domain(format!("target error must be positive, got {eps}")));
    }
    let log_q = log_nome(ch, tau_eff);
    if !(log_q < 0.0) {
        return Err(ThetaError::DivergentNome);
    }
    let r_abs = ch.r.abs().to_f64().unwrap_or(f64::INFINITY) * (1.0 + 1e-15);
    let radius = radius_for(log_q, r_abs, eps)?;
    let tail = tail_bound(log_q, r_abs, radius);

    let need = (-(eps / 4.0).log2()).ceil().max(0.0) as u32 + 2 * (64 - radius.leading_zeros()) + 16;
    let mut bits = prec.bits().max(need.min(Precision::MAX_BITS));
    for _ in 0..MAX_RETRIES {
        let p = Precision::new(bits).ok_or_else(|| ThetaError::Domain("precision exhausted".into()))?;
        let (value, rounding) = truncated_sum(ch, tau_eff, radius, p);
        if rounding < eps / 2.0 {
            let budget = PrecisionBudget { eps, bits, radius };
            return Ok((Certified { value, err: tail + rounding }, budget));
        }
        bits = (bits * 2).min(Precision::MAX_BITS);
    }
    Err(ThetaError::Domain("rounding bound not met".into()))
}

/// Σ_{|n| ≤ M} exp[πi(n + r)² l τ] and a bound on its rounding error.
fn truncated_sum(ch: &ThetaChar, tau_eff: &Complex, m: i64, prec: Precision) -> (Complex, f64) {
    let b = prec.bits();
    let l = rational_to_float(&ch.l, b);
    let pi_i = Complex::with_val(b, (Float::new(b), prec.pi()));
    let tau = Complex::with_val(b, tau_eff);
    let w = Complex::with_val(b, &pi_i * &tau) * l;
    let w_abs = abs_f64(&w);
    let u = prec.unit_roundoff();
    let mut acc = prec.zero_complex();
    let mut mag = 0.0;
    let mut weighted = 0.0;
    for n in -m..=m {
        let s = BigRational::from_integer(n.into()) + &ch.r;
        let s2 = rational_to_float(&(&s * &s), b);
        let z = Complex::with_val(b, &w * &s2);
        let term = z.exp();
        let t = abs_f64(&term);
        mag += t;
        weighted += (w_abs * s2.to_f64() + 8.0) * t;
        acc += term;
    }
    let count = (2 * m + 1) as f64;
    let rounding = 4.0 * u * (weighted + count * mag) + f64::MIN_POSITIVE;
    (acc, rounding)
}

/// Effective argument −τ for the structure-constant nome.
pub fn tau_eff_from(tau: &Complex) -> Complex {
    Complex::with_val(tau.prec(), -tau)
}

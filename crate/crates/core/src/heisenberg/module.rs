use num::rational::Rational64;
use num::BigRational;

use super::packet::{translate_term, Exponent, Packet};
use super::tpoly::{TPoly, XPoly};
use super::HeisenbergError;
use crate::freealg::scalar::rat64_big;
use crate::freealg::UniScalar;
use crate::nctorus::{ComplexStructure, QuadIrr, SL2Mat, TorusElement};
use crate::quadfield::{QuadComplex, QuadReal};

/// Which slope multiplies x in ∇̄_z.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NablaConvention {
    /// 2πi(dτ/(cθ+d)·x + z), the displayed operator.
    #[default]
    AsPrinted,
    /// 2πi(cτ/(cθ+d)·x + z); measured alternative, Leibniz-compatible with δ_τ.
    DegreeWeighted,
}

/// Data of the basic module E_{d,c}(θ) and its holomorphic structure.
#[derive(Clone, Debug)]
pub struct ModuleParams {
    pub g: SL2Mat,
    pub theta: QuadIrr,
    pub tau: Option<ComplexStructure>,
    pub z: QuadComplex,
    pub convention: NablaConvention,
}

impl ModuleParams {
    pub fn new(g: SL2Mat, theta: QuadIrr) -> Result<Self, HeisenbergError> {
        if g.c <= 0 {
            return Err(HeisenbergError::Domain(format!(
                "basic module needs c > 0, got {g}"
            )));
        }
        if theta.denominator_for(&g).is_zero() {
            return Err(HeisenbergError::Domain("c*theta + d = 0".into()));
        }
        Ok(ModuleParams {
            g,
            theta,
            tau: None,
            z: QuadComplex::zero(),
            convention: NablaConvention::AsPrinted,
        })
    }

    pub fn with_tau(mut self, tau: ComplexStructure) -> Self {
        self.tau = Some(tau);
        self
    }

    pub fn with_z(mut self, z: QuadComplex) -> Self {
        self.z = z;
        self
    }

    pub fn with_convention(mut self, c: NablaConvention) -> Self {
        self.convention = c;
        self
    }

    pub fn classes(&self) -> usize {
        self.g.c as usize
    }

    fn c_rat(&self) -> BigRational {
        BigRational::from_integer(self.g.c.into())
    }

    /// cθ + d.
    pub fn slope(&self) -> QuadReal {
        self.theta.denominator_for(&self.g)
    }

    /// (cθ + d)/c, the U-translation.
    pub fn shift(&self) -> QuadReal {
        self.slope().scale(&self.c_rat().recip())
    }

    fn tau_k(&self) -> Result<QuadComplex, HeisenbergError> {
        let t = self.tau.as_ref().ok_or(HeisenbergError::MissingTau)?;
        Ok(QuadComplex::from_rationals(t.re().clone(), t.im().clone()))
    }

    /// Coefficient w in ∇̄_z = ∂ + T(w x + z).
    pub fn nabla_slope(&self) -> Result<QuadComplex, HeisenbergError> {
        let tau = self.tau_k()?;
        let factor = match self.convention {
            NablaConvention::AsPrinted => self.g.d,
            NablaConvention::DegreeWeighted => self.g.c,
        };
        let inv = self.slope().inv().expect("nonzero slope");
        Ok(tau.mul_real(&QuadReal::from_int(factor)).mul_real(&inv))
    }
}

fn rem(a: i64, c: usize) -> usize {
    a.rem_euclid(c as i64) as usize
}

/// (fU)(x, α) = f(x − (cθ+d)/c, α − 1).
pub fn act_right_u(f: &Packet, p: &ModuleParams) -> Result<Packet, HeisenbergError> {
    f.check_classes(p.classes())?;
    let c = p.classes();
    let s = p.shift();
    Ok(f.map_terms(|a| rem(a as i64 + 1, c), |_, e, q| translate_term(e, q, &s)))
}

/// (fU⁻¹)(x, α) = f(x + (cθ+d)/c, α + 1).
pub fn act_right_u_inv(f: &Packet, p: &ModuleParams) -> Result<Packet, HeisenbergError> {
    f.check_classes(p.classes())?;
    let c = p.classes();
    let s = -p.shift();
    Ok(f.map_terms(|a| rem(a as i64 - 1, c), |_, e, q| translate_term(e, q, &s)))
}

fn modulate(f: &Packet, beta: &QuadReal, gamma_per_class: impl Fn(usize) -> QuadReal) -> Packet {
    let tb = TPoly::t_times(QuadComplex::from_real(beta.clone()));
    f.map_terms(
        |a| a,
        |alpha, e, q| {
            let mut e = e.clone();
            e.beta = &e.beta + &tb;
            e.gamma = &e.gamma + &TPoly::t_times(QuadComplex::from_real(gamma_per_class(alpha)));
            (e, q.clone())
        },
    )
}

/// (fV)(x, α) = exp(2πi(x − αd/c))·f(x, α).
pub fn act_right_v(f: &Packet, p: &ModuleParams) -> Result<Packet, HeisenbergError> {
    f.check_classes(p.classes())?;
    let (c, d) = (p.g.c, p.g.d);
    Ok(modulate(f, &QuadReal::from_int(1), |a| {
        QuadReal::rational(BigRational::new((-(a as i64) * d).into(), c.into()))
    }))
}

/// (fV⁻¹)(x, α) = exp(−2πi(x − αd/c))·f(x, α).
pub fn act_right_v_inv(f: &Packet, p: &ModuleParams) -> Result<Packet, HeisenbergError> {
    f.check_classes(p.classes())?;
    let (c, d) = (p.g.c, p.g.d);
    Ok(modulate(f, &QuadReal::from_int(-1), |a| {
        QuadReal::rational(BigRational::new(((a as i64) * d).into(), c.into()))
    }))
}

/// (U′f)(x, α) = f(x − 1/c, α − a).
pub fn act_left_u(f: &Packet, p: &ModuleParams) -> Result<Packet, HeisenbergError> {
    f.check_classes(p.classes())?;
    let c = p.classes();
    let s = QuadReal::rational(p.c_rat().recip());
    let a = p.g.a;
    Ok(f.map_terms(|al| rem(al as i64 + a, c), |_, e, q| translate_term(e, q, &s)))
}

/// (V′f)(x, α) = exp(2πi(x/(cθ+d) − α/c))·f(x, α).
pub fn act_left_v(f: &Packet, p: &ModuleParams) -> Result<Packet, HeisenbergError> {
    f.check_classes(p.classes())?;
    let c = p.g.c;
    let inv = p.slope().inv().expect("nonzero slope");
    Ok(modulate(f, &inv, |a| {
        QuadReal::rational(BigRational::new((-(a as i64)).into(), c.into()))
    }))
}

/// f·UⁿVᵐ = ((f·Uⁿ)·Vᵐ).
pub fn act_right_monomial(
    f: &Packet,
    n: i64,
    m: i64,
    p: &ModuleParams,
) -> Result<Packet, HeisenbergError> {
    let mut g = f.clone();
    for _ in 0..n.unsigned_abs() {
        g = if n > 0 { act_right_u(&g, p)? } else { act_right_u_inv(&g, p)? };
    }
    for _ in 0..m.unsigned_abs() {
        g = if m > 0 { act_right_v(&g, p)? } else { act_right_v_inv(&g, p)? };
    }
    Ok(g)
}

/// Multiplication by an exact torus scalar q·e^{2πi(a + bθ)}.
pub fn apply_scalar(f: &Packet, s: &UniScalar, theta: &QuadIrr) -> Packet {
    let mut out = Packet::zero(f.classes());
    for (ph, q) in s.terms() {
        let r = &QuadReal::rational(rat64_big(ph.turn))
            + &theta.value().scale(&rat64_big(ph.theta));
        let part = f
            .phase(&r)
            .scale(&TPoly::real(QuadReal::rational(q.clone())));
        out = out.add(&part).expect("same class count");
    }
    out
}

/// f·x for a torus element x with formal-θ coefficients.
pub fn act_right(f: &Packet, x: &TorusElement, p: &ModuleParams) -> Result<Packet, HeisenbergError> {
    let mut out = Packet::zero(p.classes());
    for (&(n, m), s) in x.terms() {
        let g = act_right_monomial(f, n, m, p)?;
        out = out.add(&apply_scalar(&g, s, &p.theta))?;
    }
    Ok(out)
}

/// ∇̄_z f = ∂f/∂x + 2πi(w x + z) f.
pub fn nabla_z(f: &Packet, p: &ModuleParams) -> Result<Packet, HeisenbergError> {
    f.check_classes(p.classes())?;
    let w = TPoly::t_times(p.nabla_slope()?);
    let tz = TPoly::t_times(p.z.clone());
    let two = QuadReal::from_int(2);
    Ok(f.map_terms(
        |a| a,
        |_, e, q| {
            // (q' + q·(2κx + β) + q·(w x + z)T)·exp(…)
            let lin = XPoly::from_coeffs(vec![&e.beta + &tz, &e.kappa.scale_real(&two) + &w]);
            (e.clone(), &q.derivative() + &(q * &lin))
        },
    ))
}

/// Kernel of ∇̄_0: exp(−(T/2)·w·x²) in each class; requires Re κ < 0.
pub fn holomorphic_basis(p: &ModuleParams) -> Result<Vec<Packet>, HeisenbergError> {
    if p.slope().signum() <= 0 {
        return Err(HeisenbergError::Domain(
            "holomorphic sections need c*theta + d > 0".into(),
        ));
    }
    let w = p.nabla_slope()?;
    let kappa = TPoly::t_times(w.scale(&BigRational::new((-1).into(), 2.into())));
    (0..p.classes())
        .map(|a| Packet::gaussian(p.classes(), a, kappa.clone()))
        .collect()
}

/// The displayed alternative φ_α = exp(−(cτ/(cθ+d))·x²/2)δ_α; no decay check.
pub fn displayed_basis(p: &ModuleParams) -> Result<Vec<Packet>, HeisenbergError> {
    let tau = p.tau_k()?;
    let inv = p.slope().inv().expect("nonzero slope");
    let kappa = tau
        .mul_real(&QuadReal::from_int(p.g.c))
        .mul_real(&inv)
        .scale(&BigRational::new((-1).into(), 2.into()));
    Ok((0..p.classes())
        .map(|a| {
            Packet::term_unchecked(p.classes(), a, Exponent::gaussian(TPoly::constant(kappa.clone())), XPoly::one())
        })
        .collect())
}

/// ∇̄_z(f·UⁿVᵐ) − ∇̄_z(f)·UⁿVᵐ − f·δ_τ(UⁿVᵐ).
pub fn leibniz_defect(f: &Packet, n: i64, m: i64, p: &ModuleParams) -> Result<Packet, HeisenbergError> {
    let fx = act_right_monomial(f, n, m, p)?;
    let lhs = nabla_z(&fx, p)?;
    let rhs1 = act_right_monomial(&nabla_z(f, p)?, n, m, p)?;
    let tau = p.tau_k()?;
    let weight = &tau.mul_real(&QuadReal::from_int(n)) + &QuadComplex::from_int(m);
    let rhs2 = fx.scale(&TPoly::t_times(weight));
    lhs.sub(&rhs1)?.sub(&rhs2)
}

/// The closed form T·n·τ·(d/c − 1)·(f·UⁿVᵐ) of the defect for the displayed operator.
pub fn predicted_defect(f: &Packet, n: i64, m: i64, p: &ModuleParams) -> Result<Packet, HeisenbergError> {
    let fx = act_right_monomial(f, n, m, p)?;
    let tau = p.tau_k()?;
    let factor = match p.convention {
        NablaConvention::AsPrinted => Rational64::new(p.g.d, p.g.c) - 1,
        NablaConvention::DegreeWeighted => Rational64::from_integer(0),
    };
    let k = tau
        .mul_real(&QuadReal::from_int(n))
        .scale(&rat64_big(factor));
    Ok(fx.scale(&TPoly::t_times(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::rat;

    fn params(c: i64, d: i64) -> ModuleParams {
        // pick any a, b completing an SL₂ matrix
        let (a, b) = complete(c, d);
        let g = SL2Mat::new(a, b, c, d).unwrap();
        ModuleParams::new(g, QuadIrr::new(5, -1, 5, 10).unwrap())
            .unwrap()
            .with_tau("0.3,-1.0".parse().unwrap())
    }

    fn complete(c: i64, d: i64) -> (i64, i64) {
        for a in -20..=20i64 {
            for b in -20..=20i64 {
                if a * d - b * c == 1 {
                    return (a, b);
                }
            }
        }
        panic!("no completion")
    }

    fn gaussian(c: usize, alpha: usize) -> Packet {
        Packet::gaussian(c, alpha, TPoly::real(QuadReal::from_int(-1))).unwrap()
    }

    #[test]
    fn u_recentres_by_theta_when_c_is_one() {
        let p = params(1, 0);
        let f = gaussian(1, 0);
        let fu = act_right_u(&f, &p).unwrap();
        let (e, _) = translate_term(
            &Exponent::gaussian(TPoly::real(QuadReal::from_int(-1))),
            &XPoly::one(),
            p.theta.value(),
        );
        assert_eq!(fu, Packet::term_unchecked(1, 0, e, XPoly::one()));
    }

    #[test]
    fn commutation_relation_of_right_action() {
        let p = params(5, -1);
        let f = gaussian(5, 2);
        let uv = act_right_v(&act_right_u(&f, &p).unwrap(), &p).unwrap();
        let vu = act_right_u(&act_right_v(&f, &p).unwrap(), &p).unwrap();
        assert_eq!(uv, vu.phase(p.theta.value()));
        assert_ne!(uv, vu);
    }

    #[test]
    fn left_and_right_commute() {
        let p = params(3, 2);
        let f = gaussian(3, 1);
        for left in [act_left_u, act_left_v] {
            for right in [act_right_u, act_right_v] {
                let a = left(&right(&f, &p).unwrap(), &p).unwrap();
                let b = right(&left(&f, &p).unwrap(), &p).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn inverse_actions() {
        let p = params(2, 1);
        let f = gaussian(2, 0);
        assert_eq!(act_right_u_inv(&act_right_u(&f, &p).unwrap(), &p).unwrap(), f);
        assert_eq!(act_right_v_inv(&act_right_v(&f, &p).unwrap(), &p).unwrap(), f);
    }

    #[test]
    fn kernel_of_nabla() {
        let p = params(2, 1);
        for f in holomorphic_basis(&p).unwrap() {
            assert!(nabla_z(&f, &p).unwrap().is_zero());
        }
        // d ≤ 0 gives a non-decaying kernel under the displayed operator
        assert!(holomorphic_basis(&params(5, -1)).is_err());
    }

    #[test]
    fn z_shift_is_linear() {
        let p = params(2, 1);
        let z = QuadComplex::from_rationals(rat(1, 3), rat(-2, 7));
        let pz = p.clone().with_z(z.clone());
        let f = gaussian(2, 1);
        let lhs = nabla_z(&f, &pz).unwrap();
        let rhs = nabla_z(&f, &p).unwrap().add(&f.scale(&TPoly::t_times(z))).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn displayed_basis_is_not_in_kernel() {
        let p = params(2, 1);
        for f in displayed_basis(&p).unwrap() {
            assert!(!nabla_z(&f, &p).unwrap().is_zero());
        }
    }

    #[test]
    fn leibniz_defect_closed_form() {
        for conv in [NablaConvention::AsPrinted, NablaConvention::DegreeWeighted] {
            let p = params(3, 2).with_convention(conv);
            let f = gaussian(3, 0);
            for (n, m) in [(1, 0), (0, 1), (2, -1), (-1, 2)] {
                let d = leibniz_defect(&f, n, m, &p).unwrap();
                assert_eq!(d, predicted_defect(&f, n, m, &p).unwrap());
            }
        }
        let p = params(3, 2).with_convention(NablaConvention::DegreeWeighted);
        assert!(leibniz_defect(&gaussian(3, 0), 1, 1, &p).unwrap().is_zero());
    }
}

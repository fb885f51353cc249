use num::integer::Integer;
use num::BigRational;

use super::theta::{tau_eff_from, theta_const, ThetaChar};
use super::ThetaError;
use crate::nctorus::{ComplexStructure, QuadIrr, SL2Mat};
use crate::precision::{Certified, Precision};

/// x with x ≡ a (mod m) and x ≡ b (mod n), as (residue, lcm), if consistent.
pub fn crt(a: i64, m: i64, b: i64, n: i64) -> Option<(i64, i64)> {
    let e = m.extended_gcd(&n);
    let g = e.gcd;
    if (b - a).rem_euclid(g) != 0 {
        return None;
    }
    let l = m / g * n;
    let k = ((b - a) / g) as i128 * e.x as i128 % (n / g) as i128;
    let x = (a as i128 + m as i128 * k).rem_euclid(l as i128);
    Some((x as i64, l))
}

fn degrees(g1: &SL2Mat, g2: &SL2Mat) -> Result<(i64, i64, i64, SL2Mat), ThetaError> {
    let g12 = g1.mul(g2);
    let (c1, c2, c12) = (g1.degree(), g2.degree(), g12.degree());
    if c1 <= 0 || c2 <= 0 || c12 <= 0 {
        return Err(ThetaError::NonPositiveDegree(format!("deg {g1} = {c1}, deg {g2} = {c2}")));
    }
    Ok((c1, c2, c12, g12))
}

/// The residue class of I(α, β, γ): n ≡ −c₁γ + c₁₂α (mod c₁₂c₁) and
/// n ≡ c₂d₁₂γ − c₁₂d₂β (mod c₁₂c₂).
pub fn index_class(
    g1: &SL2Mat,
    g2: &SL2Mat,
    alpha: i64,
    beta: i64,
    gamma: i64,
) -> Result<Option<(i64, i64)>, ThetaError> {
    let (c1, c2, c12, g12) = degrees(g1, g2)?;
    let a = -c1 * gamma + c12 * alpha;
    let b = c2 * g12.d * gamma - c12 * g2.d * beta;
    Ok(crt(a.rem_euclid(c12 * c1), c12 * c1, b.rem_euclid(c12 * c2), c12 * c2))
}

/// Members of I(α, β, γ) in [−M, M].
pub fn index_set(
    g1: &SL2Mat,
    g2: &SL2Mat,
    alpha: i64,
    beta: i64,
    gamma: i64,
    window: i64,
) -> Result<Vec<i64>, ThetaError> {
    let Some((x, l)) = index_class(g1, g2, alpha, beta, gamma)? else {
        return Ok(Vec::new());
    };
    let start = x + Integer::div_ceil(&(-window - x), &l) * l;
    Ok((0..).map(|k| start + k * l).take_while(|&n| n <= window).collect())
}

/// C^γ_{α,β} with 1-based indices and a certified error per entry.
#[derive(Clone, Debug)]
pub struct StructTensor {
    dims: (usize, usize, usize),
    entries: Vec<Certified>,
}

impl StructTensor {
    /// (c₁₂, c₁, c₂).
    pub fn dims(&self) -> (usize, usize, usize) {
        self.dims
    }

    fn offset(&self, gamma: usize, alpha: usize, beta: usize) -> usize {
        let (n12, n1, n2) = self.dims;
        assert!(
            (1..=n12).contains(&gamma) && (1..=n1).contains(&alpha) && (1..=n2).contains(&beta),
            "index ({gamma},{alpha},{beta}) outside {:?}",
            self.dims
        );
        ((gamma - 1) * n1 + (alpha - 1)) * n2 + (beta - 1)
    }

    pub fn get(&self, gamma: usize, alpha: usize, beta: usize) -> &Certified {
        &self.entries[self.offset(gamma, alpha, beta)]
    }

    /// Entries in (γ, α, β) lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize, usize), &Certified)> {
        let (_, n1, n2) = self.dims;
        self.entries.iter().enumerate().map(move |(k, c)| {
            let beta = k % n2 + 1;
            let alpha = (k / n2) % n1 + 1;
            let gamma = k / (n1 * n2) + 1;
            ((gamma, alpha, beta), c)
        })
    }

    pub fn max_err(&self) -> f64 {
        self.entries.iter().map(|c| c.err).fold(0.0, f64::max)
    }
}

/// Structure constants of t_{g₁,g₂}: ℋ_{g₁}(g₂θ) ⊗ ℋ_{g₂}(θ) → ℋ_{g₁g₂}(θ).
///
/// A consistent index set is a coset x + Lℤ, so each entry is
/// ϑ_{x/L}(l·τ_eff) with l = L²/(2c₁c₂c₁₂) and τ_eff = −τ.
pub fn struct_constants(
    g1: &SL2Mat,
    g2: &SL2Mat,
    theta: &QuadIrr,
    tau: &ComplexStructure,
    eps: f64,
    prec: Precision,
) -> Result<StructTensor, ThetaError> {
    let (c1, c2, c12, _) = degrees(g1, g2)?;
    let inner = theta.denominator_for(g2);
    let outer = theta
        .morita(g2)
        .map_err(|e| ThetaError::Domain(e.to_string()))?
        .denominator_for(g1);
    if inner.signum() <= 0 || outer.signum() <= 0 {
        return Err(ThetaError::NonPositiveDegree(format!(
            "c*theta + d must be positive for {g2} at theta and {g1} at g2.theta"
        )));
    }
    let tau_eff = tau_eff_from(&tau.to_complex(prec));
    let denom = BigRational::from_integer((2 * c1 * c2 * c12).into());
    let mut entries = Vec::with_capacity((c12 * c1 * c2) as usize);
    for gamma in 1..=c12 {
        for alpha in 1..=c1 {
            for beta in 1..=c2 {
                entries.push(match index_class(g1, g2, alpha, beta, gamma)? {
                    None => Certified::exact_zero(prec),
                    Some((x, l)) => {
                        let r = BigRational::new(x.into(), l.into());
                        let scale = BigRational::from_integer((l as i128 * l as i128).into()) / &denom;
                        let ch = ThetaChar::new(r, scale)?;
                        theta_const(&ch, &tau_eff, eps, prec)?.0
                    }
                });
            }
        }
    }
    Ok(StructTensor {
        dims: (c12 as usize, c1 as usize, c2 as usize),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unipotent() -> SL2Mat {
        SL2Mat::new(1, 0, 1, 1).unwrap()
    }

    #[test]
    fn crt_matches_scan() {
        for (a, m, b, n) in [(1, 4, 3, 6), (1, 4, 2, 6), (0, 3, 2, 5), (5, 10, 5, 15)] {
            let scan: Vec<i64> = (0..200).filter(|x| x % m == a && x % n == b).collect();
            match crt(a, m, b, n) {
                None => assert!(scan.is_empty()),
                Some((x, l)) => {
                    assert_eq!(scan[0], x);
                    assert!(scan.iter().all(|y| (y - x) % l == 0));
                    assert_eq!(scan.len() as i64, (200 - x + l - 1) / l);
                }
            }
        }
    }

    #[test]
    fn parity_classes_for_unipotent_square() {
        let g = unipotent();
        let odd = index_set(&g, &g, 1, 1, 1, 7).unwrap();
        assert_eq!(odd, vec![-7, -5, -3, -1, 1, 3, 5, 7]);
        let even = index_set(&g, &g, 1, 1, 2, 6).unwrap();
        assert_eq!(even, vec![-6, -4, -2, 0, 2, 4, 6]);
    }

    #[test]
    fn index_set_agrees_with_direct_filter() {
        let g = SL2Mat::new(4, -1, 5, -1).unwrap();
        let h = g.mul(&g);
        let g12 = h.mul(&g);
        let (c1, c2, c12) = (h.c, g.c, g12.c);
        for (alpha, beta, gamma) in [(1, 1, 1), (3, 2, 7), (15, 5, 40), (2, 4, 11)] {
            let direct: Vec<i64> = (-500..=500)
                .filter(|n| {
                    (n - (-c1 * gamma + c12 * alpha)).rem_euclid(c12 * c1) == 0
                        && (n - (c2 * g12.d * gamma - c12 * g.d * beta)).rem_euclid(c12 * c2) == 0
                })
                .collect();
            assert_eq!(index_set(&h, &g, alpha, beta, gamma, 500).unwrap(), direct);
        }
    }

    #[test]
    fn inconsistent_system_is_empty() {
        let g = SL2Mat::new(4, -1, 5, -1).unwrap();
        let empty = (1..=15)
            .flat_map(|c| (1..=5).flat_map(move |a| (1..=5).map(move |b| (a, b, c))))
            .filter(|&(a, b, c)| index_set(&g, &g, a, b, c, 100).unwrap().is_empty())
            .count();
        assert!(empty > 0);
    }

    #[test]
    fn rejects_nonpositive_degree() {
        let s = SL2Mat::new(0, -1, 1, 0).unwrap().neg();
        assert!(matches!(
            index_class(&s, &s, 1, 1, 1),
            Err(ThetaError::NonPositiveDegree(_))
        ));
    }
}

//! Characteristic variety of the Λ-deformed four-plane relations.
//!
//! Each relation is a bilinear form uᵀB_i v on ℂ⁴. A point u lies on the
//! variety when M(u), the 6×4 matrix with rows uᵀB_i, has rank at most 3;
//! σ(u) is then its null vector.

use nalgebra::{DMatrix, DVector};
use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::s3::{hermitian_relations, multilinearize, PhiParams, CYCLIC};
use super::SphereError;
use crate::linalg;

/// Relative singular-value tolerance for rank decisions on M(u).
pub const RANK_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct BilinearSystem {
    forms: Vec<DMatrix<Complex64>>,
}

impl BilinearSystem {
    /// Coefficients read off the exact relations.
    pub fn from_phi(phi: &PhiParams) -> Result<Self, SphereError> {
        let forms = hermitian_relations(phi)
            .iter()
            .map(|r| {
                let b = multilinearize(r)?;
                Ok(DMatrix::from_fn(4, 4, |i, j| b[i][j].eval_c64(0.0)))
            })
            .collect::<Result<_, SphereError>>()?;
        Ok(BilinearSystem { forms })
    }

    /// Same forms from floating angles, any φ ∈ ℝ³.
    pub fn from_angles(phi: [f64; 3]) -> Self {
        let pi = std::f64::consts::PI;
        let i = Complex64::i();
        let mut forms = Vec::with_capacity(6);
        for &(k, l, m) in &CYCLIC {
            let (pk, plm) = (phi[k - 1], phi[l - 1] - phi[m - 1]);
            let mut b = DMatrix::zeros(4, 4);
            b[(0, k)] += (pi * pk).cos();
            b[(k, 0)] -= (pi * pk).cos();
            b[(l, m)] -= i * (pi * plm).sin();
            b[(m, l)] -= i * (pi * plm).sin();
            forms.push(b);
            let mut b = DMatrix::zeros(4, 4);
            b[(l, m)] += (pi * plm).cos();
            b[(m, l)] -= (pi * plm).cos();
            b[(0, k)] += i * (pi * pk).sin();
            b[(k, 0)] += i * (pi * pk).sin();
            forms.push(b);
        }
        BilinearSystem { forms }
    }

    pub fn forms(&self) -> &[DMatrix<Complex64>] {
        &self.forms
    }

    /// Rows uᵀB_i.
    pub fn m_of(&self, u: &DVector<Complex64>) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.forms.len(), 4);
        for (r, b) in self.forms.iter().enumerate() {
            m.set_row(r, &(u.transpose() * b));
        }
        m
    }

    /// Numerical rank of M(u) and σ_min/σ_max.
    pub fn rank_at(&self, u: &DVector<Complex64>, tol: f64) -> (usize, f64) {
        let s = linalg::spectrum(&self.m_of(u)).values;
        let rel = if s[0] > 0.0 { s[s.len() - 1] / s[0] } else { 0.0 };
        (linalg::numerical_rank(&s, tol), rel)
    }

    /// σ(u), unit length; None off the variety or where the kernel is not a line.
    pub fn sigma(&self, u: &DVector<Complex64>, tol: f64) -> Option<DVector<Complex64>> {
        linalg::null_vector(&self.m_of(u), tol).map(|v| v.normalize())
    }

    /// max_i |uᵀB_i v| / (|u||v|).
    pub fn residual(&self, u: &DVector<Complex64>, v: &DVector<Complex64>) -> f64 {
        let scale = u.norm() * v.norm();
        self.forms
            .iter()
            .map(|b| (u.transpose() * b * v)[(0, 0)].norm() / scale)
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug)]
pub struct CharPoint {
    pub u: DVector<Complex64>,
    pub v: DVector<Complex64>,
    pub residual: f64,
    pub rank: usize,
    pub smin_rel: f64,
}

fn random_vec(rng: &mut ChaCha8Rng) -> DVector<Complex64> {
    DVector::from_fn(4, |_, _| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
}

/// Gauss–Newton on uᵀB_i v = 0 with u on a random affine plane and v on a
/// random affine 3-space; converged starts that pass the rank test are kept.
pub fn find_points(sys: &BilinearSystem, attempts: usize, seed: u64, tol: f64) -> Vec<CharPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = sys.forms.len();
    let mut out = Vec::new();
    for _ in 0..attempts {
        let p: Vec<_> = (0..3).map(|_| random_vec(&mut rng)).collect();
        let q: Vec<_> = (0..4).map(|_| random_vec(&mut rng)).collect();
        let mut x = DVector::from_fn(5, |_, _| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
        let point = |x: &DVector<Complex64>| {
            let u = &p[0] + &p[1] * x[0] + &p[2] * x[1];
            let v = &q[0] + &q[1] * x[2] + &q[2] * x[3] + &q[3] * x[4];
            (u, v)
        };
        for _ in 0..100 {
            let (u, v) = point(&x);
            let f = DVector::from_fn(n, |i, _| (u.transpose() * &sys.forms[i] * &v)[(0, 0)]);
            let j = DMatrix::from_fn(n, 5, |i, c| {
                let b = &sys.forms[i];
                match c {
                    0 => (p[1].transpose() * b * &v)[(0, 0)],
                    1 => (p[2].transpose() * b * &v)[(0, 0)],
                    _ => (u.transpose() * b * &q[c - 1])[(0, 0)],
                }
            });
            let Ok(dx) = j.svd(true, true).solve(&(-f), 1e-14) else { break };
            x += &dx;
            if !x.iter().all(|z| z.is_finite()) || dx.norm() < 1e-14 * (1.0 + x.norm()) {
                break;
            }
        }
        if !x.iter().all(|z| z.is_finite()) {
            continue;
        }
        let (u, v) = point(&x);
        let (u, v) = (u.normalize(), v.normalize());
        let (rank, smin_rel) = sys.rank_at(&u, tol);
        if rank <= 3 {
            let residual = sys.residual(&u, &v);
            out.push(CharPoint { u, v, residual, rank, smin_rel });
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct OrbitReport {
    /// σ_min/σ_max of M at each orbit point after the start.
    pub residuals: Vec<f64>,
    /// Step at which σ(u) ∥ u.
    pub fixed_at: Option<usize>,
    /// σ was undefined at some step.
    pub left_variety: bool,
}

impl OrbitReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Iterates σ from u₀ for up to `steps` steps.
pub fn sigma_orbit(sys: &BilinearSystem, u0: &DVector<Complex64>, steps: usize, tol: f64) -> OrbitReport {
    let mut u = u0.normalize();
    let mut report = OrbitReport { residuals: Vec::new(), fixed_at: None, left_variety: false };
    for step in 0..steps {
        let Some(v) = sys.sigma(&u, tol) else {
            report.left_variety = true;
            break;
        };
        let (_, rel) = sys.rank_at(&v, tol);
        report.residuals.push(rel);
        if (u.dotc(&v).norm() - 1.0).abs() < 1e-10 {
            report.fixed_at = Some(step);
            break;
        }
        u = v;
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Rational64;

    fn phi() -> PhiParams {
        PhiParams::new([Rational64::new(1, 7), Rational64::new(2, 5), Rational64::new(3, 11)]).unwrap()
    }

    #[test]
    fn exact_and_float_forms_agree() {
        let p = phi();
        let a = BilinearSystem::from_phi(&p).unwrap();
        let b = BilinearSystem::from_angles(p.to_f64());
        for (x, y) in a.forms().iter().zip(b.forms()) {
            assert!((x - y).norm() < 1e-14);
        }
    }

    #[test]
    fn generic_point_has_full_rank() {
        let sys = BilinearSystem::from_phi(&phi()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        assert_eq!(sys.rank_at(&random_vec(&mut rng), RANK_TOL).0, 4);
    }

    #[test]
    fn commutative_limit_is_diagonal() {
        let sys = BilinearSystem::from_phi(&PhiParams::zero()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let u = random_vec(&mut rng).normalize();
        assert_eq!(sys.rank_at(&u, RANK_TOL).0, 3);
        let o = sigma_orbit(&sys, &u, 3, RANK_TOL);
        assert_eq!(o.fixed_at, Some(0));
    }

    #[test]
    fn newton_finds_points() {
        let sys = BilinearSystem::from_phi(&phi()).unwrap();
        let pts = find_points(&sys, 10, 1, RANK_TOL);
        assert!(!pts.is_empty());
        for p in &pts {
            assert!(p.residual < 1e-10 && p.smin_rel < RANK_TOL);
        }
    }
}

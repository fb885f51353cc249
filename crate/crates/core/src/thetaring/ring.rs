use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use nalgebra::DMatrix;
use num::complex::Complex64;
use rug::Complex;
use serde::Serialize;

use super::structure::{struct_constants, StructTensor};
use super::ThetaError;
use crate::linalg::{self, Plateau};
use crate::nctorus::{ComplexStructure, QuadIrr, SL2Mat};
use crate::precision::{abs_f64, complex_to_c64, Certified, Precision};

/// B_g(θ, τ) = ⊕_n ℋ_{gⁿ} with lazily computed multiplication tables.
pub struct GradedRing {
    g: SL2Mat,
    theta: QuadIrr,
    tau: ComplexStructure,
    eps: f64,
    prec: Precision,
    tables: RefCell<HashMap<(u32, u32), Rc<StructTensor>>>,
}

impl GradedRing {
    pub fn new(
        g: SL2Mat,
        theta: QuadIrr,
        tau: ComplexStructure,
        eps: f64,
        prec: Precision,
    ) -> Result<Self, ThetaError> {
        let image = theta.morita(&g).map_err(|e| ThetaError::Domain(e.to_string()))?;
        if image != theta {
            return Err(ThetaError::Domain(format!("{g} does not fix theta = {theta}")));
        }
        if theta.denominator_for(&g).signum() <= 0 || g.degree() < 0 {
            return Err(ThetaError::NonPositiveDegree(format!(
                "{g} needs c >= 0 and c*theta + d > 0"
            )));
        }
        Ok(GradedRing {
            g,
            theta,
            tau,
            eps,
            prec,
            tables: RefCell::new(HashMap::new()),
        })
    }

    pub fn g(&self) -> SL2Mat {
        self.g
    }

    pub fn theta(&self) -> &QuadIrr {
        &self.theta
    }

    pub fn tau(&self) -> &ComplexStructure {
        &self.tau
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// dim ℋ_{gⁿ} = lower-left entry of gⁿ.
    pub fn dim(&self, n: u32) -> usize {
        self.g.pow(n).degree().max(0) as usize
    }

    /// Table of t_{gⁿ, gᵐ}.
    pub fn table(&self, n: u32, m: u32) -> Result<Rc<StructTensor>, ThetaError> {
        if let Some(t) = self.tables.borrow().get(&(n, m)) {
            return Ok(t.clone());
        }
        let t = Rc::new(struct_constants(
            &self.g.pow(n),
            &self.g.pow(m),
            &self.theta,
            &self.tau,
            self.eps,
            self.prec,
        )?);
        self.tables.borrow_mut().insert((n, m), t.clone());
        Ok(t)
    }

    /// w_γ = Σ C^γ_{α,β} u_α v_β for u of degree n and v of degree m.
    pub fn multiply(
        &self,
        n: u32,
        u: &[Certified],
        m: u32,
        v: &[Certified],
    ) -> Result<Vec<Certified>, ThetaError> {
        for (deg, vec) in [(n, u), (m, v)] {
            if vec.len() != self.dim(deg) {
                return Err(ThetaError::DimMismatch {
                    expected: self.dim(deg),
                    got: vec.len(),
                });
            }
        }
        let out_dim = self.dim(n + m);
        if u.is_empty() || v.is_empty() {
            return Ok(vec![Certified::exact_zero(self.prec); out_dim]);
        }
        let t = self.table(n, m)?;
        let bits = self.prec.bits();
        let unit = self.prec.unit_roundoff();
        let mut out = Vec::with_capacity(out_dim);
        for gamma in 1..=out_dim {
            let mut acc = self.prec.zero_complex();
            let (mut err, mut mag) = (0.0, 0.0);
            for (alpha, ua) in u.iter().enumerate() {
                if ua.err == 0.0 && ua.value.is_zero() {
                    continue;
                }
                for (beta, vb) in v.iter().enumerate() {
                    let c = t.get(gamma, alpha + 1, beta + 1);
                    let prod = Complex::with_val(bits, &c.value * &ua.value) * &vb.value;
                    let (ac, au, av) = (abs_f64(&c.value), ua.abs_f64(), vb.abs_f64());
                    err += (ac + c.err) * (au + ua.err) * (av + vb.err) - ac * au * av;
                    mag += ac * au * av;
                    acc += prod;
                }
            }
            let count = (u.len() * v.len()) as f64;
            err += 4.0 * unit * (count + 2.0) * mag;
            out.push(Certified { value: acc, err });
        }
        Ok(out)
    }

    /// Standard basis vector e_α (1-based) of degree n.
    pub fn basis_vector(&self, n: u32, alpha: usize) -> Vec<Certified> {
        (1..=self.dim(n))
            .map(|k| Certified {
                value: Complex::with_val(self.prec.bits(), if k == alpha { 1 } else { 0 }),
                err: 0.0,
            })
            .collect()
    }

    /// max over basis triples of |(e_α e_β) e_γ − e_α (e_β e_γ)|∞.
    pub fn associativity_defect(&self, n: u32, m: u32, k: u32) -> Result<Defect, ThetaError> {
        let (dn, dm, dk) = (self.dim(n), self.dim(m), self.dim(k));
        let mut d = Defect { value: 0.0, bound: 0.0 };
        if dn == 0 || dm == 0 || dk == 0 {
            return Ok(d);
        }
        for a in 1..=dn {
            let ea = self.basis_vector(n, a);
            for b in 1..=dm {
                let eb = self.basis_vector(m, b);
                let ab = self.multiply(n, &ea, m, &eb)?;
                for c in 1..=dk {
                    let ec = self.basis_vector(k, c);
                    let left = self.multiply(n + m, &ab, k, &ec)?;
                    let bc = self.multiply(m, &eb, k, &ec)?;
                    let right = self.multiply(n, &ea, m + k, &bc)?;
                    for (l, r) in left.iter().zip(&right) {
                        let diff = Complex::with_val(self.prec.bits(), &l.value - &r.value);
                        d.value = d.value.max(abs_f64(&diff));
                        d.bound = d.bound.max(l.err + r.err);
                    }
                }
            }
        }
        Ok(d)
    }

    /// The deg(g²) × c² matrix of ℋ_g ⊗ ℋ_g → ℋ_{g²}, columns ordered (α, β).
    pub fn multiplication_matrix(&self) -> Result<(DMatrix<Complex64>, f64), ThetaError> {
        let c = self.dim(1);
        let rows = self.dim(2);
        if c == 0 || rows == 0 {
            return Ok((DMatrix::zeros(rows, c * c), 0.0));
        }
        let t = self.table(1, 1)?;
        let mut m = DMatrix::zeros(rows, c * c);
        let mut err2 = 0.0;
        for ((gamma, alpha, beta), v) in t.iter() {
            m[(gamma - 1, (alpha - 1) * c + (beta - 1))] = complex_to_c64(&v.value);
            let e = v.err + f64::EPSILON * v.abs_f64();
            err2 += e * e;
        }
        Ok((m, err2.sqrt()))
    }

    pub fn quadratic_kernel(&self, tol: f64) -> Result<QuadraticKernel, ThetaError> {
        let (m, entry_err) = self.multiplication_matrix()?;
        Ok(QuadraticKernel::of(&m, tol, entry_err))
    }

    /// Generators x₁..x_c and the degree-2 relations.
    pub fn presentation(&self, tol: f64, seed: Option<u64>) -> Result<Presentation, ThetaError> {
        let class = classify_poli2(&self.g);
        if !matches!(class, Poli2Class::Quadratic | Poli2Class::Koszul) {
            return Err(ThetaError::Outside(format!("{} is {class}", self.g)));
        }
        let k = self.quadratic_kernel(tol)?;
        let g = self.g;
        Ok(Presentation::from_kernel(
            self.dim(1),
            &k,
            PresentationParams {
                theta: self.theta.to_string(),
                tau: self.tau.to_string(),
                g: [g.a, g.b, g.c, g.d],
                epsilon: self.eps,
                tol,
                class: class.to_string(),
            },
            seed,
        ))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Defect {
    pub value: f64,
    /// Accumulated certified error of the two products compared.
    pub bound: f64,
}

#[derive(Clone, Debug)]
pub struct QuadraticKernel {
    pub rank: usize,
    pub kernel_dim: usize,
    /// Orthonormal columns in ℂ^{c²}.
    pub basis: DMatrix<Complex64>,
    pub singular_values: Vec<f64>,
    pub plateau: Plateau,
    /// Per-coefficient error of the kernel basis from the entry errors.
    pub coeff_err: f64,
}

impl QuadraticKernel {
    pub fn of(m: &DMatrix<Complex64>, tol: f64, entry_err: f64) -> Self {
        let sp = linalg::spectrum(m);
        let rank = linalg::numerical_rank(&sp.values, tol);
        let cols = m.ncols();
        let basis = sp.right.columns(rank, cols - rank).into_owned();
        let smax = sp.values.first().copied().unwrap_or(0.0);
        let gap = if rank > 0 { sp.values[rank - 1] } else { 0.0 };
        let perturb = entry_err + 8.0 * f64::EPSILON * smax * (cols as f64);
        let coeff_err = if gap > 0.0 { perturb / gap } else { f64::INFINITY };
        QuadraticKernel {
            rank,
            kernel_dim: cols - rank,
            basis,
            plateau: linalg::rank_sweep(&sp.values, 6, 10),
            singular_values: sp.values,
            coeff_err,
        }
    }
}

/// Strongest conclusion of the inequalities c ≥ a + d (+1, +2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Poli2Class {
    GeneratedInDegreeOne,
    Quadratic,
    Koszul,
    Outside,
}

impl fmt::Display for Poli2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Poli2Class::GeneratedInDegreeOne => "generated-in-degree-1",
            Poli2Class::Quadratic => "quadratic",
            Poli2Class::Koszul => "koszul",
            Poli2Class::Outside => "outside",
        })
    }
}

/// Requires positive real eigenvalues, i.e. trace ≥ 2 for det 1.
pub fn classify_poli2(g: &SL2Mat) -> Poli2Class {
    let tr = g.trace();
    if tr * tr < 4 || tr <= 0 {
        return Poli2Class::Outside;
    }
    match g.c - tr {
        s if s >= 2 => Poli2Class::Koszul,
        1 => Poli2Class::Quadratic,
        0 => Poli2Class::GeneratedInDegreeOne,
        _ => Poli2Class::Outside,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationTerm {
    pub i: usize,
    pub j: usize,
    pub re: f64,
    pub im: f64,
    pub err: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationParams {
    pub theta: String,
    pub tau: String,
    pub g: [i64; 4],
    pub epsilon: f64,
    pub tol: f64,
    pub class: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub version: String,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    /// Each relation is Σ v_k x_{i_k} x_{j_k} = 0.
    pub relations: Vec<Vec<RelationTerm>>,
    pub params: PresentationParams,
    pub provenance: Provenance,
    #[serde(skip)]
    pub basis: DMatrix<Complex64>,
}

impl Presentation {
    pub fn from_kernel(
        c: usize,
        k: &QuadraticKernel,
        params: PresentationParams,
        seed: Option<u64>,
    ) -> Self {
        let relations = (0..k.basis.ncols())
            .map(|col| {
                (0..k.basis.nrows())
                    .filter_map(|row| {
                        let v = k.basis[(row, col)];
                        (v.norm() > 1e-15).then(|| RelationTerm {
                            i: row / c + 1,
                            j: row % c + 1,
                            re: v.re,
                            im: v.im,
                            err: k.coeff_err,
                        })
                    })
                    .collect()
            })
            .collect();
        Presentation {
            generators: (1..=c).map(|i| format!("x{i}")).collect(),
            relations,
            params,
            provenance: Provenance {
                version: env!("CARGO_PKG_VERSION").to_string(),
                seed,
            },
            basis: k.basis.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classifier_cases() {
        let g = SL2Mat::new(4, -1, 5, -1).unwrap();
        assert_eq!(classify_poli2(&g), Poli2Class::Koszul);
        assert_eq!(classify_poli2(&SL2Mat::new(2, 1, 1, 1).unwrap()), Poli2Class::Outside);
        // trace 1: complex eigenvalues
        assert_eq!(classify_poli2(&SL2Mat::new(1, -1, 1, 0).unwrap()), Poli2Class::Outside);
        // trace −3: negative eigenvalues
        assert_eq!(classify_poli2(&SL2Mat::new(-4, 1, -5, 1).unwrap()), Poli2Class::Outside);
        assert_eq!(classify_poli2(&SL2Mat::new(1, -1, 4, -3).unwrap().neg()), Poli2Class::Outside);
        assert_eq!(classify_poli2(&SL2Mat::new(1, 0, 3, 1).unwrap()), Poli2Class::Quadratic);
        assert_eq!(classify_poli2(&SL2Mat::new(3, -1, 4, -1).unwrap()), Poli2Class::Koszul);
        assert_eq!(classify_poli2(&SL2Mat::new(3, -2, 2, -1).unwrap()), Poli2Class::GeneratedInDegreeOne);
    }

    #[test]
    fn empty_kernel_gives_no_relations() {
        let m = DMatrix::<Complex64>::identity(4, 4);
        let k = QuadraticKernel::of(&m, 1e-8, 0.0);
        assert_eq!((k.rank, k.kernel_dim), (4, 0));
        let params = PresentationParams {
            theta: String::new(),
            tau: String::new(),
            g: [1, 0, 0, 1],
            epsilon: 1e-10,
            tol: 1e-8,
            class: "quadratic".into(),
        };
        let p = Presentation::from_kernel(2, &k, params, None);
        assert_eq!(p.generators.len(), 2);
        assert!(p.relations.is_empty());
    }
}

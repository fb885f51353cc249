//! Rank-revealing dense linear algebra over ℂ in double precision.

use nalgebra::{DMatrix, DVector};
use num::complex::Complex64;

/// Singular values (descending) with the matching right singular vectors.
pub struct Spectrum {
    pub values: Vec<f64>,
    /// Column k pairs with `values[k]`; always a full basis of ℂ^cols.
    pub right: DMatrix<Complex64>,
}

/// Full SVD spectrum; wide matrices are padded with zero rows so the right
/// factor spans the whole domain.
pub fn spectrum(m: &DMatrix<Complex64>) -> Spectrum {
    let (r, c) = m.shape();
    let padded = if r < c {
        let mut p = DMatrix::zeros(c, c);
        p.view_mut((0, 0), (r, c)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("right singular vectors requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let mut right = DMatrix::zeros(c, c);
    for (k, &i) in order.iter().enumerate() {
        for j in 0..c {
            right[(j, k)] = vt[(i, j)].conj();
        }
    }
    let values = order
        .iter()
        .map(|&i| svd.singular_values[i])
        .take(r.min(c))
        .collect();
    Spectrum { values, right }
}

/// Count of singular values above tol·σ_max.
pub fn numerical_rank(values: &[f64], tol: f64) -> usize {
    let smax = values.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0;
    }
    values.iter().filter(|&&s| s > tol * smax).count()
}

/// Rank and an orthonormal kernel basis (as columns).
pub fn kernel(m: &DMatrix<Complex64>, tol: f64) -> (usize, DMatrix<Complex64>) {
    let sp = spectrum(m);
    let rank = numerical_rank(&sp.values, tol);
    let cols = m.ncols();
    let basis = sp.right.columns(rank, cols - rank).into_owned();
    (rank, basis)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Plateau {
    pub tols: Vec<f64>,
    pub ranks: Vec<usize>,
}

impl Plateau {
    pub fn stable(&self) -> bool {
        self.ranks.windows(2).all(|w| w[0] == w[1])
    }

    /// The rank if it does not move across the sweep.
    pub fn rank(&self) -> Option<usize> {
        self.stable().then(|| self.ranks.first().copied()).flatten()
    }
}

/// Ranks at tol = 10^-lo ... 10^-hi.
pub fn rank_sweep(values: &[f64], lo: i32, hi: i32) -> Plateau {
    let tols: Vec<f64> = (lo..=hi).map(|k| 10f64.powi(-k)).collect();
    let ranks = tols.iter().map(|&t| numerical_rank(values, t)).collect();
    Plateau { tols, ranks }
}

/// Principal angles between the column spans of two orthonormal bases.
pub fn principal_angles(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Vec<f64> {
    if a.ncols() == 0 || b.ncols() == 0 {
        return Vec::new();
    }
    let m = a.adjoint() * b;
    m.singular_values()
        .iter()
        .map(|&s| s.clamp(0.0, 1.0).acos())
        .collect()
}

/// Largest principal angle, π/2 if dimensions differ.
pub fn subspace_distance(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    if a.ncols() != b.ncols() {
        return std::f64::consts::FRAC_PI_2;
    }
    principal_angles(a, b).into_iter().fold(0.0, f64::max)
}

/// Projective null vector when the kernel is exactly one-dimensional.
pub fn null_vector(m: &DMatrix<Complex64>, tol: f64) -> Option<DVector<Complex64>> {
    let (_, k) = kernel(m, tol);
    (k.ncols() == 1).then(|| k.column(0).into_owned())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rank_of_outer_product() {
        let u = DVector::from_vec(vec![c(1.0, 0.0), c(0.0, 2.0), c(-1.0, 1.0)]);
        let v = DVector::from_vec(vec![c(1.0, 1.0), c(3.0, 0.0), c(0.0, 0.0), c(2.0, -1.0)]);
        let m = &u * v.transpose();
        let (r, k) = kernel(&m, 1e-12);
        assert_eq!(r, 1);
        assert_eq!(k.ncols(), 3);
        assert!((&m * &k).norm() < 1e-12);
        let gram = k.adjoint() * &k;
        assert!((gram - DMatrix::identity(3, 3)).norm() < 1e-12);
    }

    #[test]
    fn wide_matrix_kernel_spans_complement() {
        let m = DMatrix::from_row_slice(2, 4, &[
            c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0),
            c(0.0, 0.0), c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0),
        ]);
        let (r, k) = kernel(&m, 1e-12);
        assert_eq!((r, k.ncols()), (2, 2));
        for j in 0..2 {
            assert!(k[(0, j)].norm() < 1e-14 && k[(1, j)].norm() < 1e-14);
        }
    }

    #[test]
    fn angles_of_equal_and_orthogonal_spans() {
        let e = DMatrix::<Complex64>::identity(3, 3);
        let a = e.columns(0, 1).into_owned();
        let b = e.columns(1, 1).into_owned();
        assert!(subspace_distance(&a, &a) < 1e-12);
        assert!((subspace_distance(&a, &b) - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn sweep_detects_borderline_gap() {
        let p = rank_sweep(&[1.0, 1e-3, 1e-8], 6, 10);
        assert!(!p.stable());
        let q = rank_sweep(&[1.0, 0.5, 1e-14], 6, 10);
        assert_eq!(q.rank(), Some(2));
    }
}

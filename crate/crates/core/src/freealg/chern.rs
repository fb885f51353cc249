//! Components of the even and odd Chern characters in A ⊗ Ã^{⊗n}.

use num::BigRational;

use super::element::{FreeElement, GeneratorTable};
use super::matrix::AlgMatrix;
use super::tensor::TensorElement;

/// Index chains i₀ → i₁ → … → i_{len−1} → i₀ over q values.
fn chains(q: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = q.pow(len as u32);
    (0..total).map(move |mut k| {
        let mut idx = vec![0; len];
        for slot in idx.iter_mut().rev() {
            *slot = k % q;
            k /= q;
        }
        idx
    })
}

fn chain_sum(mats: &[&AlgMatrix], first_shift: Option<&BigRational>) -> TensorElement {
    let q = mats[0].size();
    let n = mats.len();
    let mut total = TensorElement::zero(n);
    for idx in chains(q, n) {
        let mut factors = Vec::with_capacity(n);
        for s in 0..n {
            let (a, b) = (idx[s], idx[(s + 1) % n]);
            let mut f = mats[s].get(a, b).clone();
            if s == 0 && a == b {
                if let Some(h) = first_shift {
                    f = &f - &FreeElement::scalar(super::UniScalar::rational(h.clone()));
                }
            }
            factors.push(f);
        }
        if factors.iter().any(FreeElement::is_zero) {
            continue;
        }
        total = total + TensorElement::pure(&factors);
    }
    total
}

/// ch_k(e) = Σ (e^{i₀}_{i₁} − ½δ) ⊗ e^{i₁}_{i₂} ⊗ … ⊗ e^{i_{2k}}_{i₀}, arity 2k+1.
pub fn chern_even(e: &AlgMatrix, k: usize) -> TensorElement {
    let mats: Vec<&AlgMatrix> = vec![e; 2 * k + 1];
    chain_sum(&mats, Some(&BigRational::new(1.into(), 2.into())))
}

/// ch_{k+½}(U) = Σ U⊗U*⊗…⊗U* − U*⊗U⊗…⊗U, arity 2k+2.
pub fn chern_odd(u: &AlgMatrix, k: usize, table: &GeneratorTable) -> TensorElement {
    let us = u.adjoint(table);
    let n = 2 * k + 2;
    let plus: Vec<&AlgMatrix> = (0..n).map(|s| if s % 2 == 0 { u } else { &us }).collect();
    let minus: Vec<&AlgMatrix> = (0..n).map(|s| if s % 2 == 0 { &us } else { u }).collect();
    chain_sum(&plus, None) - chain_sum(&minus, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::UniScalar;

    #[test]
    fn unit_matrix_cases() {
        let one = AlgMatrix::identity(1);
        let t = chern_even(&one, 0);
        assert_eq!(t, TensorElement::pure(&[FreeElement::scalar(UniScalar::ratio(1, 2))]));
        let table = GeneratorTable::hermitian(&[]);
        assert!(chern_odd(&one, 0, &table).is_zero());
    }

    /// Independent nested loops over a 2×2 matrix of generic entries.
    #[test]
    fn matches_naive_loops_on_2x2() {
        let table = GeneratorTable::new(
            (0..8).map(|i| format!("g{i}")).collect(),
            vec![4, 5, 6, 7, 0, 1, 2, 3],
        )
        .unwrap();
        let entry = |i: u16, c: i64| {
            &FreeElement::gen(i).scale(&UniScalar::int(c)) + &FreeElement::scalar(UniScalar::i())
        };
        let m = AlgMatrix::from_rows(vec![
            vec![entry(0, 1), entry(1, 2)],
            vec![entry(2, -1), entry(3, 3)],
        ])
        .unwrap();
        let half = FreeElement::scalar(UniScalar::ratio(1, 2));
        let mut naive = TensorElement::zero(3);
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    let mut f0 = m.get(a, b).clone();
                    if a == b {
                        f0 = &f0 - &half;
                    }
                    naive = naive
                        + TensorElement::pure(&[f0, m.get(b, c).clone(), m.get(c, a).clone()]);
                }
            }
        }
        assert_eq!(chern_even(&m, 1), naive);

        let ms = m.adjoint(&table);
        let mut naive_odd = TensorElement::zero(2);
        for a in 0..2 {
            for b in 0..2 {
                naive_odd = naive_odd
                    + TensorElement::pure(&[m.get(a, b).clone(), ms.get(b, a).clone()])
                    - TensorElement::pure(&[ms.get(a, b).clone(), m.get(b, a).clone()]);
            }
        }
        assert_eq!(chern_odd(&m, 0, &table), naive_odd);
    }
}

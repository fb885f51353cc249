use super::element::{FreeElement, GeneratorTable};
use super::rewrite::{RewriteError, RewriteSystem};
use super::scalar::UniScalar;

/// Square matrix with free-algebra entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgMatrix {
    q: usize,
    entries: Vec<FreeElement>,
}

impl AlgMatrix {
    pub fn from_rows(rows: Vec<Vec<FreeElement>>) -> Result<Self, String> {
        let q = rows.len();
        if q == 0 || rows.iter().any(|r| r.len() != q) {
            return Err("matrix must be square and nonempty".into());
        }
        Ok(AlgMatrix {
            q,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zero(q: usize) -> Self {
        AlgMatrix {
            q,
            entries: vec![FreeElement::zero(); q * q],
        }
    }

    pub fn identity(q: usize) -> Self {
        let mut m = Self::zero(q);
        for i in 0..q {
            m.entries[i * q + i] = FreeElement::one();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.q
    }

    pub fn get(&self, i: usize, j: usize) -> &FreeElement {
        &self.entries[i * self.q + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FreeElement) {
        self.entries[i * self.q + j] = v;
    }

    pub fn map(&self, f: impl Fn(&FreeElement) -> FreeElement) -> Self {
        AlgMatrix {
            q: self.q,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &UniScalar) -> Self {
        self.map(|e| e.scale(s))
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.q, o.q);
        AlgMatrix {
            q: self.q,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.q, o.q);
        AlgMatrix {
            q: self.q,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect(),
        }
    }

    /// Product in the free algebra (no reduction).
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.q, o.q);
        let q = self.q;
        let mut m = Self::zero(q);
        for i in 0..q {
            for j in 0..q {
                let mut acc = FreeElement::zero();
                for k in 0..q {
                    acc = acc + self.get(i, k) * o.get(k, j);
                }
                m.entries[i * q + j] = acc;
            }
        }
        m
    }

    /// Entrywise star, transposed.
    pub fn adjoint(&self, table: &GeneratorTable) -> Self {
        let q = self.q;
        let mut m = Self::zero(q);
        for i in 0..q {
            for j in 0..q {
                m.entries[i * q + j] = self.get(j, i).star(table);
            }
        }
        m
    }

    pub fn normal_form(&self, rs: &RewriteSystem) -> Result<Self, RewriteError> {
        let entries = self
            .entries
            .iter()
            .map(|e| rs.normal_form(e))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AlgMatrix { q: self.q, entries })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FreeElement::is_zero)
    }

    pub fn reduces_to_zero(&self, rs: &RewriteSystem) -> Result<bool, RewriteError> {
        Ok(self.normal_form(rs)?.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjoint_is_involutive() {
        let t = GeneratorTable::new(vec!["a".into(), "a*".into()], vec![1, 0]).unwrap();
        let m = AlgMatrix::from_rows(vec![
            vec![FreeElement::gen(0), FreeElement::term(vec![0, 1], UniScalar::i())],
            vec![FreeElement::one(), FreeElement::zero()],
        ])
        .unwrap();
        assert_eq!(m.adjoint(&t).adjoint(&t), m);
        assert_eq!(m.adjoint(&t).get(0, 1), &FreeElement::one());
        assert_eq!(
            AlgMatrix::identity(2).mul(&m),
            m
        );
    }
}

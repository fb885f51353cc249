use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use serde_json::{json, Value};

use super::element::{scalar_json, FreeElement, GeneratorTable, Word};
use super::rewrite::{RewriteError, RewriteSystem};
use super::scalar::UniScalar;

/// Element of A ⊗ Ã^{⊗k}: constant terms are dropped in every slot after the first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    arity: usize,
    terms: BTreeMap<Vec<Word>, UniScalar>,
}

impl TensorElement {
    pub fn zero(arity: usize) -> Self {
        assert!(arity >= 1, "tensor arity must be at least 1");
        TensorElement {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &UniScalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, words: Vec<Word>, s: UniScalar) {
        assert_eq!(words.len(), self.arity);
        if s.is_zero() || words[1..].iter().any(Vec::is_empty) {
            return;
        }
        match self.terms.entry(words) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(s);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &s;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// f₀ ⊗ f₁ ⊗ … expanded multilinearly.
    pub fn pure(factors: &[FreeElement]) -> Self {
        let mut acc: Vec<(Vec<Word>, UniScalar)> = vec![(Vec::new(), UniScalar::one())];
        for (slot, f) in factors.iter().enumerate() {
            let f = if slot == 0 { f.clone() } else { f.without_constant() };
            let mut next = Vec::with_capacity(acc.len() * f.len());
            for (ws, c) in &acc {
                for (w, d) in f.terms() {
                    let mut ws2 = ws.clone();
                    ws2.push(w.clone());
                    next.push((ws2, c * d));
                }
            }
            acc = next;
        }
        let mut t = TensorElement::zero(factors.len());
        for (ws, c) in acc {
            t.add_term(ws, c);
        }
        t
    }

    pub fn scale(&self, s: &UniScalar) -> Self {
        let mut t = TensorElement::zero(self.arity);
        for (ws, c) in &self.terms {
            t.add_term(ws.clone(), c * s);
        }
        t
    }

    /// Every slot replaced by its normal form; constants stripped again afterwards.
    pub fn normalize(&self, rs: &RewriteSystem) -> Result<Self, RewriteError> {
        let mut out = TensorElement::zero(self.arity);
        let mut cache: BTreeMap<Word, FreeElement> = BTreeMap::new();
        for (ws, c) in &self.terms {
            let mut factors = Vec::with_capacity(ws.len());
            for w in ws {
                if !cache.contains_key(w) {
                    cache.insert(w.clone(), rs.normal_form(&FreeElement::word(w))?);
                }
                factors.push(cache[w].clone());
            }
            factors[0] = factors[0].scale(c);
            out = out + TensorElement::pure(&factors);
        }
        Ok(out)
    }

    pub fn display(&self, table: &GeneratorTable) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(ws, c)| {
                let slots: Vec<String> = ws.iter().map(|w| table.word_string(w)).collect();
                format!("({})·{}", c, slots.join("⊗"))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn to_json(&self, table: &GeneratorTable) -> Value {
        json!({
            "arity": self.arity,
            "terms": self.terms.iter().map(|(ws, c)| json!({
                "slots": ws.iter().map(|w| w.iter().map(|&g| table.name(g)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "coeff": scalar_json(c),
            })).collect::<Vec<_>>(),
        })
    }
}

/// True iff t vanishes after reducing every slot by rs.
pub fn tensor_is_zero(t: &TensorElement, rs: &RewriteSystem) -> Result<bool, RewriteError> {
    Ok(t.normalize(rs)?.is_zero())
}

impl Add for TensorElement {
    type Output = TensorElement;
    fn add(mut self, o: TensorElement) -> TensorElement {
        assert_eq!(self.arity, o.arity, "tensor arity mismatch");
        for (ws, c) in o.terms {
            self.add_term(ws, c);
        }
        self
    }
}

impl Neg for TensorElement {
    type Output = TensorElement;
    fn neg(self) -> TensorElement {
        TensorElement {
            arity: self.arity,
            terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect(),
        }
    }
}

impl Sub for TensorElement {
    type Output = TensorElement;
    fn sub(self, o: TensorElement) -> TensorElement {
        self + (-o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn constants_stripped_after_first_slot() {
        let x = FreeElement::gen(0);
        let y = FreeElement::gen(1);
        let shifted = &y + &FreeElement::scalar(UniScalar::int(7));
        assert_eq!(
            TensorElement::pure(&[x.clone(), shifted]),
            TensorElement::pure(&[x.clone(), y.clone()])
        );
        let t = TensorElement::pure(&[FreeElement::one(), FreeElement::one()]);
        assert!(t.is_zero());
        let u = TensorElement::pure(&[x.clone(), y.clone()]) - TensorElement::pure(&[y, x]);
        assert!(!u.is_zero());
    }

    #[test]
    fn commutative_quotient_keeps_slots_apart() {
        let mut rs = RewriteSystem::new(GeneratorTable::hermitian(&["x", "y"]));
        rs.add_commuting(0, 1).unwrap();
        let x = FreeElement::gen(0);
        let y = FreeElement::gen(1);
        let t = TensorElement::pure(&[x.clone(), y.clone()]) - TensorElement::pure(&[y, x]);
        assert!(!tensor_is_zero(&t, &rs).unwrap());
        assert!(tensor_is_zero(&TensorElement::zero(2), &rs).unwrap());
    }

    proptest! {
        #[test]
        fn constant_shift_is_invisible(c in -5i64..6, slot in 1usize..3) {
            let mut f = vec![FreeElement::gen(0), FreeElement::gen(1) + FreeElement::gen(0), FreeElement::word(&[1, 1])];
            let base = TensorElement::pure(&f);
            f[slot] = &f[slot] + &FreeElement::scalar(UniScalar::int(c));
            prop_assert_eq!(TensorElement::pure(&f), base);
        }
    }
}

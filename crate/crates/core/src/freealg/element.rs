use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num::BigRational;
use serde_json::{json, Value};

use super::scalar::UniScalar;

/// Sequence of generator indices; empty is the unit.
pub type Word = Vec<u16>;

/// Degree-lexicographic comparison of words.
pub fn deglex(a: &[u16], b: &[u16]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Generator names plus the star involution; the order is the index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorTable {
    names: Vec<String>,
    star: Vec<u16>,
}

impl GeneratorTable {
    /// `star[i]` is the index of gᵢ*; must be an involution.
    pub fn new(names: Vec<String>, star: Vec<u16>) -> Result<Self, String> {
        if names.len() != star.len() {
            return Err("names and star table differ in length".into());
        }
        for (i, &s) in star.iter().enumerate() {
            if s as usize >= names.len() || star[s as usize] as usize != i {
                return Err(format!("star is not an involution at {}", names[i]));
            }
        }
        Ok(GeneratorTable { names, star })
    }

    /// All generators self-adjoint.
    pub fn hermitian(names: &[&str]) -> Self {
        let n = names.len() as u16;
        GeneratorTable {
            names: names.iter().map(|s| s.to_string()).collect(),
            star: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: u16) -> &str {
        &self.names[i as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn star_of(&self, i: u16) -> u16 {
        self.star[i as usize]
    }

    pub fn index(&self, name: &str) -> Option<u16> {
        self.names.iter().position(|n| n == name).map(|i| i as u16)
    }

    pub fn word_string(&self, w: &[u16]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&g| self.name(g)).collect::<Vec<_>>().join("·")
    }
}

/// Noncommutative polynomial: word → scalar, zero coefficients never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FreeElement {
    terms: BTreeMap<Word, UniScalar>,
}

impl FreeElement {
    pub fn zero() -> Self {
        FreeElement::default()
    }

    pub fn one() -> Self {
        Self::scalar(UniScalar::one())
    }

    pub fn scalar(s: UniScalar) -> Self {
        Self::term(Vec::new(), s)
    }

    pub fn gen(i: u16) -> Self {
        Self::term(vec![i], UniScalar::one())
    }

    pub fn word(w: &[u16]) -> Self {
        Self::term(w.to_vec(), UniScalar::one())
    }

    pub fn term(w: Word, s: UniScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(w, s);
        }
        FreeElement { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, UniScalar)>>(it: I) -> Self {
        let mut e = FreeElement::zero();
        for (w, s) in it {
            e.add_term(w, s);
        }
        e
    }

    pub fn add_term(&mut self, w: Word, s: UniScalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &UniScalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, UniScalar)> {
        self.terms.into_iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[u16]) -> UniScalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Coefficient of the empty word.
    pub fn constant(&self) -> UniScalar {
        self.coeff(&[])
    }

    pub fn without_constant(&self) -> Self {
        let mut e = self.clone();
        e.terms.remove(&Vec::new());
        e
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }

    pub fn is_homogeneous(&self, d: usize) -> bool {
        self.terms.keys().all(|w| w.len() == d)
    }

    pub fn scale(&self, s: &UniScalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        FreeElement::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), c * s)))
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        self.scale(&UniScalar::rational(q.clone()))
    }

    /// Involution: reverse the word, star each letter, conjugate the scalar.
    pub fn star(&self, table: &GeneratorTable) -> Self {
        FreeElement::from_terms(self.terms.iter().map(|(w, c)| {
            (
                w.iter().rev().map(|&g| table.star_of(g)).collect(),
                c.star(),
            )
        }))
    }

    /// Applies a letter substitution g ↦ images[g] multiplicatively.
    pub fn substitute(&self, images: &[FreeElement]) -> Self {
        let mut out = FreeElement::zero();
        for (w, c) in &self.terms {
            let mut t = FreeElement::scalar(c.clone());
            for &g in w {
                t = &t * &images[g as usize];
            }
            out = out + t;
        }
        out
    }

    pub fn display(&self, table: &GeneratorTable) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(w, c)| format!("({})·{}", c, table.word_string(w)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn to_json(&self, table: &GeneratorTable) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(w, c)| {
                    json!({
                        "word": w.iter().map(|&g| table.name(g)).collect::<Vec<_>>(),
                        "coeff": scalar_json(c),
                    })
                })
                .collect(),
        )
    }
}

pub fn scalar_json(s: &UniScalar) -> Value {
    Value::Array(
        s.terms()
            .map(|(p, q)| {
                json!({
                    "q": q.to_string(),
                    "turn": p.turn.to_string(),
                    "theta": p.theta.to_string(),
                })
            })
            .collect(),
    )
}

impl<'a> Add<&'a FreeElement> for &'a FreeElement {
    type Output = FreeElement;
    fn add(self, o: &FreeElement) -> FreeElement {
        let mut e = self.clone();
        for (w, c) in &o.terms {
            e.add_term(w.clone(), c.clone());
        }
        e
    }
}

impl Add for FreeElement {
    type Output = FreeElement;
    fn add(mut self, o: FreeElement) -> FreeElement {
        for (w, c) in o.terms {
            self.add_term(w, c);
        }
        self
    }
}

impl Neg for &FreeElement {
    type Output = FreeElement;
    fn neg(self) -> FreeElement {
        FreeElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Neg for FreeElement {
    type Output = FreeElement;
    fn neg(self) -> FreeElement {
        -&self
    }
}

impl<'a> Sub<&'a FreeElement> for &'a FreeElement {
    type Output = FreeElement;
    fn sub(self, o: &FreeElement) -> FreeElement {
        self + &(-o)
    }
}

impl Sub for FreeElement {
    type Output = FreeElement;
    fn sub(self, o: FreeElement) -> FreeElement {
        self + (-o)
    }
}

impl<'a> Mul<&'a FreeElement> for &'a FreeElement {
    type Output = FreeElement;
    fn mul(self, o: &FreeElement) -> FreeElement {
        let mut e = FreeElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                e.add_term(w, c1 * c2);
            }
        }
        e
    }
}

impl Mul for FreeElement {
    type Output = FreeElement;
    fn mul(self, o: FreeElement) -> FreeElement {
        &self * &o
    }
}

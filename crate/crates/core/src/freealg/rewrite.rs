//! String rewriting modulo two-sided ideals, with critical-pair checking.

use std::cmp::Ordering;
use std::collections::HashMap;

use thiserror::Error;

use super::element::{deglex, FreeElement, GeneratorTable, Word};
use super::scalar::UniScalar;

pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("rewrite budget exceeded ({0} steps)")]
    BudgetExceeded(usize),
    #[error("invalid rule: {0}")]
    InvalidRule(String),
}

#[derive(Clone, Debug)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: FreeElement,
}

/// Overlap or inclusion whose two reductions disagree.
#[derive(Clone, Debug)]
pub struct CriticalPair {
    pub word: Word,
    pub rules: (usize, usize),
    pub left: FreeElement,
    pub right: FreeElement,
}

#[derive(Clone, Debug)]
pub struct RewriteSystem {
    table: GeneratorTable,
    rules: Vec<Rule>,
    by_first: HashMap<u16, Vec<usize>>,
    budget: usize,
}

impl RewriteSystem {
    pub fn new(table: GeneratorTable) -> Self {
        RewriteSystem {
            table,
            rules: Vec::new(),
            by_first: HashMap::new(),
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn table(&self) -> &GeneratorTable {
        &self.table
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// gⱼ gᵢ → λ·gᵢ gⱼ for j > i, |λ| = 1.
    pub fn add_swap(&mut self, j: u16, i: u16, lambda: UniScalar) -> Result<(), RewriteError> {
        if j <= i {
            return Err(RewriteError::InvalidRule(format!(
                "swap needs {} after {}",
                self.table.name(j),
                self.table.name(i)
            )));
        }
        if !lambda.is_unimodular() {
            return Err(RewriteError::InvalidRule(format!(
                "swap phase {lambda} is not unimodular"
            )));
        }
        self.push(vec![j, i], FreeElement::term(vec![i, j], lambda));
        Ok(())
    }

    /// Makes each listed generator commute with everything it does not already meet in a rule.
    pub fn add_commuting(&mut self, a: u16, b: u16) -> Result<(), RewriteError> {
        let (j, i) = if a > b { (a, b) } else { (b, a) };
        self.add_swap(j, i, UniScalar::one())
    }

    /// word → rhs, every term of rhs strictly deglex-smaller than the word.
    pub fn add_substitution(&mut self, lhs: Word, rhs: FreeElement) -> Result<(), RewriteError> {
        if lhs.is_empty() {
            return Err(RewriteError::InvalidRule("empty left-hand side".into()));
        }
        if let Some((w, _)) = rhs.terms().find(|(w, _)| deglex(w, &lhs) != Ordering::Less) {
            return Err(RewriteError::InvalidRule(format!(
                "{} is not smaller than {}",
                self.table.word_string(w),
                self.table.word_string(&lhs)
            )));
        }
        self.push(lhs, rhs);
        Ok(())
    }

    fn push(&mut self, lhs: Word, rhs: FreeElement) {
        self.by_first
            .entry(lhs[0])
            .or_default()
            .push(self.rules.len());
        self.rules.push(Rule { lhs, rhs });
    }

    /// Redex ending earliest (then starting latest, i.e. innermost): (start, rule).
    fn find_redex(&self, w: &[u16]) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for start in 0..w.len() {
            let Some(cands) = self.by_first.get(&w[start]) else {
                continue;
            };
            for &r in cands {
                let lhs = &self.rules[r].lhs;
                let end = start + lhs.len();
                if end <= w.len() && w[start..end] == lhs[..] {
                    let better = match best {
                        None => true,
                        Some((bs, be, _)) => end < be || (end == be && start > bs),
                    };
                    if better {
                        best = Some((start, end, r));
                    }
                    break;
                }
            }
        }
        best.map(|(s, _, r)| (s, r))
    }

    pub fn is_irreducible_word(&self, w: &[u16]) -> bool {
        self.find_redex(w).is_none()
    }

    /// Irreducible representative of x modulo the rule ideal.
    pub fn normal_form(&self, x: &FreeElement) -> Result<FreeElement, RewriteError> {
        let mut steps = 0usize;
        let mut done = FreeElement::zero();
        let mut pending = x.clone();
        while !pending.is_zero() {
            let mut next = FreeElement::zero();
            for (w, c) in pending.into_terms() {
                match self.find_redex(&w) {
                    None => done.add_term(w, c),
                    Some((start, r)) => {
                        steps += 1;
                        if steps > self.budget {
                            return Err(RewriteError::BudgetExceeded(self.budget));
                        }
                        let rule = &self.rules[r];
                        let prefix = &w[..start];
                        let suffix = &w[start + rule.lhs.len()..];
                        for (mid, d) in rule.rhs.terms() {
                            let mut nw = Vec::with_capacity(prefix.len() + mid.len() + suffix.len());
                            nw.extend_from_slice(prefix);
                            nw.extend_from_slice(mid);
                            nw.extend_from_slice(suffix);
                            next.add_term(nw, &c * d);
                        }
                    }
                }
            }
            pending = next;
        }
        Ok(done)
    }

    /// Normal form of a product.
    pub fn mul(&self, a: &FreeElement, b: &FreeElement) -> Result<FreeElement, RewriteError> {
        self.normal_form(&(a * b))
    }

    pub fn reduces_to_zero(&self, x: &FreeElement) -> Result<bool, RewriteError> {
        Ok(self.normal_form(x)?.is_zero())
    }

    /// All overlaps and inclusions of left-hand sides whose reductions disagree.
    pub fn check_local_confluence(&self) -> Result<Vec<CriticalPair>, RewriteError> {
        let mut bad = Vec::new();
        for (a, ra) in self.rules.iter().enumerate() {
            for (b, rb) in self.rules.iter().enumerate() {
                let (la, lb) = (&ra.lhs, &rb.lhs);
                // suffix of la equal to prefix of lb
                for k in 1..la.len().min(lb.len()) {
                    if la[la.len() - k..] != lb[..k] {
                        continue;
                    }
                    let head = &la[..la.len() - k];
                    let tail = &lb[k..];
                    let left = &ra.rhs * &FreeElement::word(tail);
                    let right = &FreeElement::word(head) * &rb.rhs;
                    let mut word = la.clone();
                    word.extend_from_slice(tail);
                    self.resolve(word, (a, b), left, right, &mut bad)?;
                }
                // lb inside la
                let inclusion = if la == lb {
                    a < b
                } else {
                    a != b && lb.len() <= la.len()
                };
                if inclusion {
                    for s in 0..=la.len() - lb.len() {
                        if la[s..s + lb.len()] != lb[..] {
                            continue;
                        }
                        let left = ra.rhs.clone();
                        let right = &(&FreeElement::word(&la[..s]) * &rb.rhs)
                            * &FreeElement::word(&la[s + lb.len()..]);
                        self.resolve(la.clone(), (a, b), left, right, &mut bad)?;
                    }
                }
            }
        }
        Ok(bad)
    }

    fn resolve(
        &self,
        word: Word,
        rules: (usize, usize),
        left: FreeElement,
        right: FreeElement,
        bad: &mut Vec<CriticalPair>,
    ) -> Result<(), RewriteError> {
        let l = self.normal_form(&left)?;
        let r = self.normal_form(&right)?;
        if l != r {
            bad.push(CriticalPair {
                word,
                rules,
                left: l,
                right: r,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::rational::Rational64;

    fn torus() -> RewriteSystem {
        let table = GeneratorTable::hermitian(&["U", "V"]);
        let mut rs = RewriteSystem::new(table);
        rs.add_swap(1, 0, UniScalar::phase(Rational64::from_integer(0), Rational64::from_integer(-1)))
            .unwrap();
        rs
    }

    #[test]
    fn vu_reorders_with_phase() {
        let rs = torus();
        let vu = FreeElement::word(&[1, 0]);
        let nf = rs.normal_form(&vu).unwrap();
        let expected = FreeElement::term(
            vec![0, 1],
            UniScalar::phase(Rational64::from_integer(0), Rational64::from_integer(-1)),
        );
        assert_eq!(nf, expected);
        assert_eq!(rs.normal_form(&FreeElement::one()).unwrap(), FreeElement::one());
        assert!(rs.check_local_confluence().unwrap().is_empty());
    }

    #[test]
    fn conflicting_rules_give_one_pair() {
        let table = GeneratorTable::hermitian(&["V", "U"]);
        let mut rs = RewriteSystem::new(table);
        rs.add_substitution(vec![1, 0], FreeElement::word(&[0, 1])).unwrap();
        rs.add_substitution(vec![1, 0], FreeElement::term(vec![0, 1], UniScalar::int(2)))
            .unwrap();
        assert_eq!(rs.check_local_confluence().unwrap().len(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let rs = torus().with_budget(5);
        let long = FreeElement::word(&[1, 1, 1, 0, 0, 0]);
        assert_eq!(
            rs.normal_form(&long).unwrap_err().to_string(),
            "rewrite budget exceeded (5 steps)"
        );
    }

    #[test]
    fn rejects_increasing_substitution() {
        let mut rs = RewriteSystem::new(GeneratorTable::hermitian(&["x", "y"]));
        assert!(rs.add_substitution(vec![0], FreeElement::gen(1)).is_err());
        assert!(rs.add_swap(1, 0, UniScalar::int(2)).is_err());
    }
}

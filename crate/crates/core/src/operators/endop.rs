use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::derivation::Derivation;
use super::diffop::DiffOperator;
use crate::error::{Error, Result};
use crate::galgebra::{Monomial, Poly};
use crate::rational::{q, Q};

/// A letter of an [`EndOperator`]: a concrete linear map on the algebra.
#[derive(Clone, Debug)]
pub enum Letter {
    Der(Derivation),
    Diff(DiffOperator),
}

impl Letter {
    fn apply(&self, p: &Poly, cache: &mut HashMap<Monomial, Poly>) -> Poly {
        match self {
            Letter::Der(d) => d.apply_cached(p, cache),
            Letter::Diff(op) => op.apply(p),
        }
    }

    fn degree(&self) -> i32 {
        match self {
            Letter::Der(d) => d.degree(),
            Letter::Diff(op) => op.degree().unwrap_or(0),
        }
    }
}

/// A rational combination of composites of fixed letters.
///
/// A word `[a, b, c]` denotes `a ∘ b ∘ c`, so `c` acts first. All operators
/// built from the same alphabet can be added and composed.
#[derive(Clone)]
pub struct EndOperator {
    letters: Arc<Vec<Letter>>,
    terms: BTreeMap<Vec<u8>, Q>,
}

impl EndOperator {
    /// The alphabet operators themselves, one single-letter operator per
    /// letter.
    pub fn alphabet(letters: Vec<Letter>) -> Vec<EndOperator> {
        let letters = Arc::new(letters);
        (0..letters.len())
            .map(|i| EndOperator { letters: letters.clone(), terms: BTreeMap::from([(vec![i as u8], q(1))]) })
            .collect()
    }

    pub fn zero_like(&self) -> EndOperator {
        EndOperator { letters: self.letters.clone(), terms: BTreeMap::new() }
    }

    pub fn identity_like(&self) -> EndOperator {
        EndOperator { letters: self.letters.clone(), terms: BTreeMap::from([(vec![], q(1))]) }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u8>, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Grade shift, taken from the first word (operators built by the
    /// provided constructors are homogeneous).
    pub fn degree(&self) -> i32 {
        self.terms.keys().next().map(|w| w.iter().map(|&l| self.letters[l as usize].degree()).sum()).unwrap_or(0)
    }

    fn check_same(&self, other: &EndOperator) -> Result<()> {
        if Arc::ptr_eq(&self.letters, &other.letters) {
            Ok(())
        } else {
            Err(Error::DifferentPresentations)
        }
    }

    fn add_word(&mut self, w: Vec<u8>, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &EndOperator) -> Result<EndOperator> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_word(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Q) -> EndOperator {
        let mut out = self.zero_like();
        for (w, c) in &self.terms {
            out.add_word(w.clone(), c * s);
        }
        out
    }

    pub fn compose(&self, other: &EndOperator) -> Result<EndOperator> {
        self.check_same(other)?;
        let mut out = self.zero_like();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_word(w, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<EndOperator> {
        let mut acc = self.identity_like();
        for _ in 0..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Graded commutator with a single letter:
    /// `letter ∘ φ - (-1)^{|letter||φ|} φ ∘ letter`.
    pub fn commutator_with_letter(&self, letter: u8) -> EndOperator {
        let dl = self.letters[letter as usize].degree();
        let mut out = self.zero_like();
        for (w, c) in &self.terms {
            let deg: i32 = w.iter().map(|&l| self.letters[l as usize].degree()).sum();
            let mut left = vec![letter];
            left.extend_from_slice(w);
            out.add_word(left, c.clone());
            let mut right = w.clone();
            right.push(letter);
            let neg = (dl * deg).rem_euclid(2) == 0;
            out.add_word(right, if neg { -c.clone() } else { c.clone() });
        }
        out
    }

    /// Sequential application of the letters of every word.
    pub fn apply(&self, p: &Poly) -> Poly {
        let mut caches: Vec<HashMap<Monomial, Poly>> = (0..self.letters.len()).map(|_| HashMap::new()).collect();
        // suffixes shared between words are evaluated once
        let mut memo: HashMap<Vec<u8>, Poly> = HashMap::new();
        let mut out = Poly::zero();
        for (w, c) in &self.terms {
            let mut start = w.len();
            while start > 0 && memo.contains_key(&w[start - 1..]) {
                start -= 1;
            }
            let mut cur = if start == w.len() { p.clone() } else { memo[&w[start..]].clone() };
            for i in (0..start).rev() {
                let l = w[i] as usize;
                cur = if cur.is_zero() { cur } else { self.letters[l].apply(&cur, &mut caches[l]) };
                memo.insert(w[i..].to_vec(), cur.clone());
            }
            out.add_scaled(&cur, c);
        }
        out
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }
}

impl fmt::Debug for EndOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EndOperator{:?}", self.terms)
    }
}

/// `d_End^l(e)` for the induced derivation `d_End(φ) = d∘φ - (-1)^{|φ|} φ∘d`,
/// as an operator over the alphabet `[d, e]`.
pub fn end_derivative(d: &Derivation, e: &Derivation, l: u32) -> Result<EndOperator> {
    d.same_presentation(e)?;
    if d.degree() != 1 {
        return Err(Error::Precondition("d must have degree one".into()));
    }
    let ops = EndOperator::alphabet(vec![Letter::Der(d.clone()), Letter::Der(e.clone())]);
    let mut phi = ops[1].clone();
    for _ in 0..l {
        phi = phi.commutator_with_letter(0);
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galgebra::{parse_poly, GVar, Presentation};

    #[test]
    fn first_derivative_is_anticommutator_for_odd_e() {
        let (x, y) = (GVar::x(1, 0), GVar::x(2, 0));
        let (dx, dy) = (GVar::x(1, 1), GVar::x(2, 1));
        let p = Arc::new(Presentation::free([x, y, dx, dy]).unwrap());
        let d = Derivation::new(p.clone(), 1, [(x, Poly::var(dx)), (y, Poly::var(dy))]).unwrap();
        let e = Derivation::new(p.clone(), 1, [(x, parse_poly("x2*dx1", &p).unwrap())]).unwrap();
        assert_eq!(end_derivative(&d, &e, 0).unwrap().terms().len(), 1);
        let e1 = end_derivative(&d, &e, 1).unwrap();
        for src in ["x1^2*x2", "x1*d1x2", "x2"] {
            let f = parse_poly(src, &p).unwrap();
            let expected = &d.apply(&e.apply(&f)) + &e.apply(&d.apply(&f));
            assert_eq!(e1.apply(&f), expected, "on {src}");
        }
        let words: Vec<_> = e1.terms().keys().cloned().collect();
        assert_eq!(words, vec![vec![0, 1], vec![1, 0]]);
    }
}

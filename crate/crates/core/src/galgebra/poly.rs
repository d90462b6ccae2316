use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::var::GVar;
use crate::rational::{fmt_q, q, Q};

/// Exact-rational linear combination of canonical monomials.
///
/// A `Poly` carries no presentation; [`Presentation`](super::Presentation)
/// supplies the quotient relations when multiplying or normalizing. The
/// products defined directly on `Poly` are the free graded-commutative ones.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(q(n))
    }

    pub fn var(v: GVar) -> Self {
        Poly::term(Monomial::var(v), Q::one())
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Poly::term(m, Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Q)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// The constant term.
    pub fn constant_term(&self) -> Q {
        self.coeff(&Monomial::one())
    }

    /// Largest monomial in canonical order together with its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Poly, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// The grade shared by every term, or `None` for mixed grades. Zero is
    /// homogeneous of every grade and reports `None` here as well.
    pub fn homogeneous_grade(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(Monomial::grade);
        let g = it.next()?;
        it.all(|h| h == g).then_some(g)
    }

    pub fn is_homogeneous_of(&self, grade: i32) -> bool {
        self.terms.keys().all(|m| m.grade() == grade)
    }

    /// Splits into homogeneous components keyed by grade.
    pub fn by_grade(&self) -> BTreeMap<i32, Poly> {
        let mut out: BTreeMap<i32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.grade()).or_default().add_term(m.clone(), c.clone());
        }
        out
    }

    /// All variables occurring in some term, in canonical order.
    pub fn vars(&self) -> std::collections::BTreeSet<GVar> {
        self.terms.keys().flat_map(|m| m.vars().collect::<Vec<_>>()).collect()
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(Monomial::word_len).max().unwrap_or(0)
    }

    /// Free graded-commutative product (no quotient relations beyond odd
    /// squares).
    pub fn mul_free(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((neg, m)) = m1.mul(m2) {
                    let c = c1 * c2;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// Left partial derivative `∂/∂v`, graded: moving `∂_v` past an odd
    /// factor costs a sign when `v` is odd.
    pub fn partial(&self, v: &GVar) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if let Some((neg, e, rest)) = m.partial(v) {
                let c = c * q(e as i64);
                out.add_term(rest, if neg { -c } else { c });
            }
        }
        out
    }

    /// Keeps the terms accepted by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Poly {
        Poly { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Applies `f` to every monomial and re-collects; `f` returns a
    /// replacement polynomial for the monomial.
    pub fn map_monomials(&self, mut f: impl FnMut(&Monomial) -> Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_scaled(&f(m), c);
        }
        out
    }

    /// Coefficient of `v^1` when the polynomial is viewed as linear in `v`
    /// (terms not containing `v` are dropped, `v` removed from the rest).
    /// Terms with `v^2` or higher are dropped too.
    pub fn linear_coefficient(&self, v: &GVar) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if m.exponent(v) == 1 {
                let (neg, _, rest) = m.partial(v).expect("contains v");
                out.add_term(rest, if neg { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    /// Sets every variable in `zeroed` to 0.
    pub fn without_vars(&self, zeroed: &dyn Fn(&GVar) -> bool) -> Poly {
        self.filter(|m| !m.vars().any(|v| zeroed(&v)))
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // terms by ascending grade, then length, then canonical order
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(m, _)| (m.grade(), m.word_len()));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                f.write_str(&fmt_q(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_q(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul<&Q> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Q) -> Poly {
        self.scale(rhs)
    }
}

impl FromIterator<(Monomial, Q)> for Poly {
    fn from_iter<I: IntoIterator<Item = (Monomial, Q)>>(iter: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_frac;

    #[test]
    fn zero_coefficients_are_dropped() {
        let x = GVar::x(1, 0);
        let p = &Poly::var(x) - &Poly::var(x);
        assert!(p.is_zero());
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn rendering() {
        let x = GVar::x(1, 0);
        let dx = GVar::x(2, 1);
        let mut p = Poly::int(1);
        p.add_term(Monomial::var(x), q(-1));
        p.add_term(Monomial::var(x).mul(&Monomial::var(dx)).unwrap().1, q_frac(3, 2));
        assert_eq!(p.to_string(), "1 - x1 + 3/2*x1*d1x2");
    }

    #[test]
    fn odd_partials() {
        let (a, b) = (GVar::theta(1), GVar::theta(2));
        let ab = Poly::var(a).mul_free(&Poly::var(b));
        assert_eq!(ab.partial(&b), -Poly::var(a));
        assert_eq!(ab.partial(&a), Poly::var(b));
        assert_eq!(ab.linear_coefficient(&b), -Poly::var(a));
    }
}

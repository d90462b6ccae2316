use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::derivation::Derivation;
use crate::error::{Error, Result};
use crate::galgebra::{GVar, Monomial, Poly, Presentation};
use crate::rational::{sign, Q};

/// A finite-order differential operator `Σ_I c_I ∂_I`.
///
/// `∂_I` is stored as a canonical monomial in the variables being
/// differentiated; `∂_v` has grade `-|v|`, so its parity matches `v` and the
/// Koszul rules of [`Monomial`] apply verbatim. A term acts as
/// `p ↦ c_I · ∂_{v1}(∂_{v2}(… p))` for `I = v1 v2 …`. The key
/// `Monomial::one()` is the order-zero (multiplication) part.
///
/// Only variables that appear in no relation can be differentiated, since
/// partial derivatives in other variables do not descend to the quotient.
#[derive(Clone)]
pub struct DiffOperator {
    pres: Arc<Presentation>,
    terms: BTreeMap<Monomial, Poly>,
}

impl DiffOperator {
    pub fn new(pres: Arc<Presentation>, terms: impl IntoIterator<Item = (Monomial, Poly)>) -> Result<Self> {
        let mut op = DiffOperator::zero(pres);
        for (k, c) in terms {
            for v in k.vars() {
                if !op.pres.is_free_in(&v) {
                    return Err(Error::InvalidDerivation(format!(
                        "cannot differentiate in {v}, which appears in a relation"
                    )));
                }
            }
            let c = op.pres.normalize(&c)?;
            op.add_term(k, &c);
        }
        Ok(op)
    }

    pub fn zero(pres: Arc<Presentation>) -> Self {
        DiffOperator { pres, terms: BTreeMap::new() }
    }

    pub fn identity(pres: Arc<Presentation>) -> Self {
        DiffOperator::multiplication(pres, Poly::one())
    }

    /// Multiplication by a normal polynomial.
    pub fn multiplication(pres: Arc<Presentation>, c: Poly) -> Self {
        let mut op = DiffOperator::zero(pres);
        op.add_term(Monomial::one(), &c);
        op
    }

    /// `∂/∂v`.
    pub fn partial(pres: Arc<Presentation>, v: GVar) -> Result<Self> {
        DiffOperator::new(pres, [(Monomial::var(v), Poly::one())])
    }

    /// The first-order operator `Σ D(v) ∂_v` of a derivation.
    pub fn from_derivation(d: &Derivation) -> Result<Self> {
        DiffOperator::new(d.presentation().clone(), d.images().iter().map(|(v, img)| (Monomial::var(*v), img.clone())))
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Poly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, k: Monomial, c: &Poly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    /// Maximal number of partial derivatives in a term (0 for the zero
    /// operator).
    pub fn order(&self) -> usize {
        self.terms.keys().map(Monomial::word_len).max().unwrap_or(0)
    }

    /// Grade shift of a homogeneous operator.
    pub fn degree(&self) -> Option<i32> {
        let mut degs = self.terms.iter().flat_map(|(k, c)| c.terms().map(move |(m, _)| m.grade() - k.grade()));
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    /// Terms with exactly one partial derivative.
    pub fn first_order_part(&self) -> DiffOperator {
        DiffOperator {
            pres: self.pres.clone(),
            terms: self.terms.iter().filter(|(k, _)| k.word_len() == 1).map(|(k, c)| (k.clone(), c.clone())).collect(),
        }
    }

    /// Reads a first-order operator as a derivation of the given degree.
    pub fn to_derivation(&self, degree: i32) -> Result<Derivation> {
        if self.order() > 1 || self.terms.contains_key(&Monomial::one()) {
            return Err(Error::InvalidDerivation("operator is not a pure vector field".into()));
        }
        Derivation::new(self.pres.clone(), degree, self.terms.iter().map(|(k, c)| (k.factors()[0].0, c.clone())))
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (k, c) in &self.terms {
            let mut cur = p.clone();
            for &(v, e) in k.factors().iter().rev() {
                for _ in 0..e {
                    cur = cur.partial(&v);
                }
            }
            out += &self.pres.mul(c, &cur);
        }
        out
    }

    pub fn add(&self, other: &DiffOperator) -> Result<DiffOperator> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Q) -> DiffOperator {
        let mut out = DiffOperator::zero(self.pres.clone());
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &c.scale(s));
        }
        out
    }

    fn check_same(&self, other: &DiffOperator) -> Result<()> {
        if Arc::ptr_eq(&self.pres, &other.pres) || *self.pres == *other.pres {
            Ok(())
        } else {
            Err(Error::DifferentPresentations)
        }
    }

    /// `∂_v ∘ self`, using `∂_v ∘ c = ∂_v(c) + (-1)^{|v||c|} c ∂_v`.
    fn left_partial(&self, v: &GVar) -> DiffOperator {
        let mut out = DiffOperator::zero(self.pres.clone());
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &c.partial(v));
            if let Some((neg_k, vk)) = Monomial::var(*v).mul(k) {
                for (grade, piece) in c.by_grade() {
                    let neg = neg_k ^ (v.is_odd() && grade.rem_euclid(2) == 1);
                    out.add_term(vk.clone(), &piece.scale(&sign(neg)));
                }
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &DiffOperator) -> Result<DiffOperator> {
        self.check_same(other)?;
        let mut out = DiffOperator::zero(self.pres.clone());
        for (k, c) in &self.terms {
            let mut inner = other.clone();
            for &(v, e) in k.factors().iter().rev() {
                for _ in 0..e {
                    inner = inner.left_partial(&v);
                }
            }
            for (k2, c2) in &inner.terms {
                out.add_term(k2.clone(), &self.pres.mul(c, c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<DiffOperator> {
        let mut acc = DiffOperator::identity(self.pres.clone());
        for _ in 0..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }
}

impl PartialEq for DiffOperator {
    fn eq(&self, other: &Self) -> bool {
        self.check_same(other).is_ok() && self.terms == other.terms
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for &(v, e) in k.factors() {
                if e == 1 {
                    write!(f, "*D[{v}]")?;
                } else {
                    write!(f, "*D[{v}]^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOperator({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galgebra::parse_poly;
    use num_traits::One;

    #[test]
    fn canonical_commutation() {
        let x = GVar::x(1, 0);
        let p = Arc::new(Presentation::free([x]).unwrap());
        let dx = DiffOperator::partial(p.clone(), x).unwrap();
        let mx = DiffOperator::multiplication(p.clone(), Poly::var(x));
        let comm = dx.compose(&mx).unwrap().add(&mx.compose(&dx).unwrap().scale(&-Q::one())).unwrap();
        assert_eq!(comm, DiffOperator::identity(p));
    }

    #[test]
    fn odd_euler_operator_is_idempotent() {
        let th = GVar::theta(1);
        let p = Arc::new(Presentation::free([th]).unwrap());
        let e = DiffOperator::new(p.clone(), [(Monomial::var(th), Poly::var(th))]).unwrap();
        let ee = e.compose(&e).unwrap();
        assert_eq!(ee, e);
        assert_eq!(ee.apply(&Poly::var(th)), Poly::var(th));
        assert!(ee.apply(&Poly::one()).is_zero());
    }

    #[test]
    fn composition_matches_sequential_application() {
        let (x, th1, th2) = (GVar::x(1, 0), GVar::theta(1), GVar::theta(2));
        let p = Arc::new(Presentation::free([x, th1, th2]).unwrap());
        let a = DiffOperator::new(
            p.clone(),
            [
                (Monomial::var(th1), parse_poly("x1*th2", &p).unwrap()),
                (Monomial::var(x), parse_poly("th1*th2 + x1^2", &p).unwrap()),
            ],
        )
        .unwrap();
        let b = DiffOperator::new(
            p.clone(),
            [
                (Monomial::var(th2), parse_poly("x1", &p).unwrap()),
                (Monomial::from_ordered(&[(x, 1), (th1, 1)]).unwrap().1, parse_poly("th2", &p).unwrap()),
            ],
        )
        .unwrap();
        let ab = a.compose(&b).unwrap();
        for src in ["x1^3*th1*th2", "x1*th1", "th2", "x1^2*th2"] {
            let f = parse_poly(src, &p).unwrap();
            assert_eq!(ab.apply(&f), a.apply(&b.apply(&f)), "on {src}");
        }
    }
}

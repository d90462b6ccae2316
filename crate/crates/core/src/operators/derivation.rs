use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::galgebra::{GVar, Monomial, Poly, Presentation};
use crate::rational::{q, sign, Q};

/// A graded derivation determined by its values on generators.
///
/// `D(ab) = D(a) b + (-1)^{deg·|a|} a D(b)`. Generators missing from the
/// image table are sent to zero.
#[derive(Clone)]
pub struct Derivation {
    pres: Arc<Presentation>,
    degree: i32,
    images: BTreeMap<GVar, Poly>,
}

impl Derivation {
    pub fn new(pres: Arc<Presentation>, degree: i32, images: impl IntoIterator<Item = (GVar, Poly)>) -> Result<Self> {
        let mut table = BTreeMap::new();
        for (g, img) in images {
            if !pres.is_generator(&g) {
                return Err(Error::InvalidDerivation(format!("{g} is not a generator")));
            }
            let img = pres.normalize(&img)?;
            if !img.is_homogeneous_of(g.grade() + degree) {
                return Err(Error::InvalidDerivation(format!(
                    "image of {g} must have grade {}, got {img}",
                    g.grade() + degree
                )));
            }
            if !img.is_zero() {
                table.insert(g, img);
            }
        }
        Ok(Derivation { pres, degree, images: table })
    }

    pub fn zero(pres: Arc<Presentation>, degree: i32) -> Self {
        Derivation { pres, degree, images: BTreeMap::new() }
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn images(&self) -> &BTreeMap<GVar, Poly> {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.is_empty()
    }

    /// Value on a generator or an eliminated variable.
    pub fn image(&self, v: &GVar) -> Poly {
        if let Some(img) = self.images.get(v) {
            return img.clone();
        }
        match self.pres.substitutions().get(v) {
            Some(sub) => self.apply(sub),
            None => Poly::zero(),
        }
    }

    pub(crate) fn same_presentation(&self, other: &Derivation) -> Result<()> {
        if Arc::ptr_eq(&self.pres, &other.pres) || *self.pres == *other.pres {
            Ok(())
        } else {
            Err(Error::DifferentPresentations)
        }
    }

    /// Applies the derivation to a polynomial that is normal in its
    /// presentation.
    pub fn apply(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            out.add_scaled(&self.apply_monomial(m), c);
        }
        out
    }

    /// Like [`apply`](Self::apply) but validates and normalizes the input.
    pub fn apply_checked(&self, p: &Poly) -> Result<Poly> {
        Ok(self.apply(&self.pres.normalize(p)?))
    }

    /// `apply` with a per-monomial memo shared between calls.
    pub fn apply_cached(&self, p: &Poly, cache: &mut HashMap<Monomial, Poly>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            if let Some(img) = cache.get(m) {
                out.add_scaled(img, c);
            } else {
                let img = self.apply_monomial(m);
                out.add_scaled(&img, c);
                cache.insert(m.clone(), img);
            }
        }
        out
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Poly {
        let factors = m.factors();
        let mut out = Poly::zero();
        let mut prefix_grade = 0i32;
        for (idx, &(v, e)) in factors.iter().enumerate() {
            let dv = self.image(&v);
            if !dv.is_zero() {
                // D(v^e) = e v^(e-1) D(v); only even v can have e > 1
                let mut middle = dv.scale(&q(e as i64));
                if e > 1 {
                    let rest = Monomial::power(v, e - 1).expect("even power");
                    middle = self.pres.mul(&Poly::monomial(rest), &middle);
                }
                let head = Monomial::from_ordered(&factors[..idx]).expect("canonical").1;
                let tail = Monomial::from_ordered(&factors[idx + 1..]).expect("canonical").1;
                let mut term = self.pres.mul(&Poly::monomial(head), &middle);
                term = self.pres.mul(&term, &Poly::monomial(tail));
                let neg = (self.degree * prefix_grade).rem_euclid(2) == 1;
                out.add_scaled(&term, &sign(neg));
            }
            prefix_grade += v.grade() * e as i32;
        }
        out
    }

    /// `n`-fold application.
    pub fn apply_n(&self, p: &Poly, n: u32) -> Poly {
        let mut cur = p.clone();
        let mut cache = HashMap::new();
        for _ in 0..n {
            if cur.is_zero() {
                break;
            }
            cur = self.apply_cached(&cur, &mut cache);
        }
        cur
    }

    pub fn add(&self, other: &Derivation) -> Result<Derivation> {
        self.same_presentation(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::InvalidDerivation(format!(
                "cannot add derivations of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let mut images = self.images.clone();
        for (g, img) in &other.images {
            let e = images.entry(*g).or_default();
            *e += img;
        }
        images.retain(|_, p| !p.is_zero());
        Ok(Derivation { pres: self.pres.clone(), degree, images })
    }

    pub fn scale(&self, c: &Q) -> Derivation {
        let images = self.images.iter().map(|(g, p)| (*g, p.scale(c))).filter(|(_, p)| !p.is_zero()).collect();
        Derivation { pres: self.pres.clone(), degree: self.degree, images }
    }

    /// First-order part of `self ∘ other`: the derivation with generator
    /// values `self(other(g))`.
    pub fn diamond(&self, other: &Derivation) -> Result<Derivation> {
        self.same_presentation(other)?;
        let mut cache = HashMap::new();
        let images = self
            .pres
            .generators()
            .iter()
            .map(|g| (*g, self.apply_cached(&other.image(g), &mut cache)))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        Ok(Derivation { pres: self.pres.clone(), degree: self.degree + other.degree, images })
    }

    /// Right-associated `D ⋄ (D ⋄ (… ⋄ D))` with `n` factors.
    pub fn diamond_power(&self, n: u32) -> Result<Derivation> {
        if n == 0 {
            return Err(Error::OutOfRange("diamond power 0".into()));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.diamond(&acc)?;
        }
        Ok(acc)
    }

    /// The same generator table read in another (compatible) presentation.
    pub fn rebase(&self, pres: Arc<Presentation>) -> Result<Derivation> {
        Derivation::new(pres, self.degree, self.images.clone())
    }
}

impl PartialEq for Derivation {
    fn eq(&self, other: &Self) -> bool {
        self.same_presentation(other).is_ok()
            && self.images == other.images
            && (self.degree == other.degree || self.images.is_empty())
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation(deg {}; ", self.degree)?;
        for (k, (g, p)) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g} -> {p}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galgebra::parse_poly;

    fn omega3() -> (Arc<Presentation>, Derivation) {
        let mut b = Presentation::builder();
        for j in 0..3 {
            b = b.generator(GVar::x(1, j));
        }
        for j in 1..3 {
            for k in j..3 {
                b = b.annihilate(GVar::x(1, j), GVar::x(1, k));
            }
        }
        let p = Arc::new(b.build().unwrap());
        let d = Derivation::new(
            p.clone(),
            1,
            [(GVar::x(1, 0), Poly::var(GVar::x(1, 1))), (GVar::x(1, 1), Poly::var(GVar::x(1, 2)))],
        )
        .unwrap();
        (p, d)
    }

    #[test]
    fn leibniz_on_forms() {
        let (p, d) = omega3();
        let x_dx = parse_poly("x1*dx1", &p).unwrap();
        assert_eq!(d.apply(&x_dx), parse_poly("x1*d2x1", &p).unwrap());
        assert!(d.apply(&Poly::int(5)).is_zero());
        assert_eq!(d.apply_n(&Poly::var(GVar::x(1, 0)), 2).to_string(), "d2x1");
        assert!(d.apply_n(&parse_poly("x1^3", &p).unwrap(), 3).is_zero());
    }

    #[test]
    fn images_must_match_grade() {
        let (p, _) = omega3();
        let bad = Derivation::new(p, 1, [(GVar::x(1, 0), Poly::var(GVar::x(1, 2)))]);
        assert!(bad.is_err());
    }

    #[test]
    fn diamond_square_is_composite_on_generators() {
        let (_, d) = omega3();
        let dd = d.diamond(&d).unwrap();
        assert_eq!(dd.image(&GVar::x(1, 0)).to_string(), "d2x1");
        assert!(d.diamond_power(3).unwrap().is_zero());
        assert_eq!(d.diamond_power(1).unwrap(), d);
    }
}

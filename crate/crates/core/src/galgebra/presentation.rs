use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::poly::Poly;
use super::var::{GVar, VarKey};
use crate::error::{Error, Result};
use crate::rational::Q;

/// One factor-ordered product as written by a user, before normalization.
#[derive(Clone, Debug, PartialEq)]
pub struct RawTerm {
    pub coeff: Q,
    pub factors: Vec<(GVar, u32)>,
}

/// A graded-commutative polynomial algebra over ℚ modulo
///
/// * monomial relations `v·w = 0` for annihilator pairs,
/// * triangular substitutions eliminating some variables,
/// * a finite list of further relations, each homogeneous in grade and in
///   the number of grade-zero factors.
///
/// The last kind arises when an annihilator pair involves eliminated
/// variables (the simplex quotients); such relations are reduced per
/// homogeneous piece by exact row reduction, with pivots on the largest
/// monomials, so normal forms remain canonical.
pub struct Presentation {
    generators: Vec<GVar>,
    index: BTreeMap<VarKey, GVar>,
    annihilators: BTreeMap<GVar, BTreeSet<GVar>>,
    substitutions: BTreeMap<GVar, Poly>,
    relations: Vec<Poly>,
    reducers: Mutex<HashMap<(i32, u32), Arc<Echelon>>>,
}

impl Clone for Presentation {
    fn clone(&self) -> Self {
        Presentation {
            generators: self.generators.clone(),
            index: self.index.clone(),
            annihilators: self.annihilators.clone(),
            substitutions: self.substitutions.clone(),
            relations: self.relations.clone(),
            reducers: Mutex::new(HashMap::new()),
        }
    }
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
            && self.annihilators == other.annihilators
            && self.substitutions == other.substitutions
            && self.relations == other.relations
    }
}

impl Eq for Presentation {}

impl std::fmt::Debug for Presentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Presentation")
            .field("generators", &self.generators)
            .field("annihilators", &self.annihilator_pairs())
            .field("substitutions", &self.substitutions)
            .field("relations", &self.relations)
            .finish()
    }
}

#[derive(Default, Clone, Debug)]
pub struct PresentationBuilder {
    generators: BTreeSet<GVar>,
    eliminated: BTreeMap<GVar, Poly>,
    pairs: BTreeSet<(GVar, GVar)>,
    relations: Vec<Poly>,
}

impl PresentationBuilder {
    pub fn generator(mut self, v: GVar) -> Self {
        self.generators.insert(v);
        self
    }

    pub fn generators(mut self, vs: impl IntoIterator<Item = GVar>) -> Self {
        self.generators.extend(vs);
        self
    }

    /// Declares `v·w = 0`. Either variable may be eliminated, in which case
    /// the product of the images becomes a relation.
    pub fn annihilate(mut self, v: GVar, w: GVar) -> Self {
        self.pairs.insert(if v <= w { (v, w) } else { (w, v) });
        self
    }

    pub fn substitute(mut self, v: GVar, image: Poly) -> Self {
        self.eliminated.insert(v, image);
        self
    }

    pub fn relation(mut self, r: Poly) -> Self {
        self.relations.push(r);
        self
    }

    pub fn build(self) -> Result<Presentation> {
        let mut index = BTreeMap::new();
        for v in self.generators.iter().chain(self.eliminated.keys()) {
            if let Some(prev) = index.insert(v.key(), *v) {
                return Err(Error::InvalidPresentation(format!(
                    "variable {v} declared twice (grades {} and {})",
                    prev.grade(),
                    v.grade()
                )));
            }
        }
        for (v, image) in &self.eliminated {
            for w in image.vars() {
                if !self.generators.contains(&w) {
                    return Err(Error::InvalidPresentation(format!(
                        "image of {v} mentions {w}, which is not a generator"
                    )));
                }
            }
            if !image.is_homogeneous_of(v.grade()) {
                return Err(Error::InvalidPresentation(format!(
                    "image of {v} is not homogeneous of grade {}",
                    v.grade()
                )));
            }
        }
        let mut pres = Presentation {
            generators: self.generators.iter().copied().collect(),
            index,
            annihilators: BTreeMap::new(),
            substitutions: self.eliminated,
            relations: Vec::new(),
            reducers: Mutex::new(HashMap::new()),
        };
        let mut mixed = Vec::new();
        for (v, w) in self.pairs {
            for u in [v, w] {
                if !pres.index.contains_key(&u.key()) {
                    return Err(Error::InvalidPresentation(format!("annihilator mentions unknown variable {u}")));
                }
            }
            if pres.substitutions.contains_key(&v) || pres.substitutions.contains_key(&w) {
                mixed.push((v, w));
            } else {
                pres.annihilators.entry(v).or_default().insert(w);
                pres.annihilators.entry(w).or_default().insert(v);
            }
        }
        let mut relations = Vec::new();
        for (v, w) in mixed {
            let r = pres.drop_annihilated(&pres.image(v).mul_free(&pres.image(w)));
            relations.push(r);
        }
        for r in self.relations {
            for v in r.vars() {
                if !pres.index.contains_key(&v.key()) {
                    return Err(Error::InvalidPresentation(format!("relation mentions unknown variable {v}")));
                }
            }
            relations.push(pres.drop_annihilated(&pres.substitute_all(&r)));
        }
        for r in relations {
            if r.is_zero() {
                continue;
            }
            let b = bidegree(r.terms().next().unwrap().0);
            if !r.terms().all(|(m, _)| bidegree(m) == b) {
                return Err(Error::InvalidPresentation(format!("relation {r} is not homogeneous in grade and weight")));
            }
            if !pres.relations.contains(&r) {
                pres.relations.push(r);
            }
        }
        if !pres.relations.is_empty() && pres.generators.iter().any(|g| g.grade() < 0) {
            return Err(Error::InvalidPresentation("relations require nonnegative generator grades".into()));
        }
        Ok(pres)
    }
}

fn bidegree(m: &Monomial) -> (i32, u32) {
    (m.grade(), m.weight())
}

impl Presentation {
    pub fn builder() -> PresentationBuilder {
        PresentationBuilder::default()
    }

    /// Free graded-commutative algebra on `gens`.
    pub fn free(gens: impl IntoIterator<Item = GVar>) -> Result<Presentation> {
        Presentation::builder().generators(gens).build()
    }

    pub fn generators(&self) -> &[GVar] {
        &self.generators
    }

    pub fn substitutions(&self) -> &BTreeMap<GVar, Poly> {
        &self.substitutions
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    /// Annihilator pairs `(v, w)` with `v <= w`, in canonical order.
    pub fn annihilator_pairs(&self) -> Vec<(GVar, GVar)> {
        let mut out = Vec::new();
        for (v, ws) in &self.annihilators {
            for w in ws.range(*v..) {
                out.push((*v, *w));
            }
        }
        out
    }

    pub fn is_generator(&self, v: &GVar) -> bool {
        self.generators.binary_search(v).is_ok()
    }

    pub fn is_eliminated(&self, v: &GVar) -> bool {
        self.substitutions.contains_key(v)
    }

    /// Looks up a generator or eliminated variable by its identifying key.
    pub fn lookup(&self, key: VarKey) -> Option<GVar> {
        self.index.get(&key).copied()
    }

    pub fn knows(&self, v: &GVar) -> bool {
        self.index.get(&v.key()) == Some(v)
    }

    pub fn annihilates(&self, v: &GVar, w: &GVar) -> bool {
        self.annihilators.get(v).is_some_and(|s| s.contains(w))
    }

    /// True when `v` appears in no relation of any kind, so that the
    /// partial derivative `∂/∂v` descends to the quotient.
    pub fn is_free_in(&self, v: &GVar) -> bool {
        self.is_generator(v)
            && !self.annihilators.contains_key(v)
            && !self.substitutions.values().any(|p| p.vars().contains(v))
            && !self.relations.iter().any(|p| p.vars().contains(v))
    }

    pub fn is_annihilated(&self, m: &Monomial) -> bool {
        let f = m.factors();
        for (i, (v, e)) in f.iter().enumerate() {
            if let Some(ws) = self.annihilators.get(v) {
                if *e >= 2 && ws.contains(v) {
                    return true;
                }
                if f[i + 1..].iter().any(|(w, _)| ws.contains(w)) {
                    return true;
                }
            }
        }
        false
    }

    fn drop_annihilated(&self, p: &Poly) -> Poly {
        if self.annihilators.is_empty() {
            return p.clone();
        }
        p.filter(|m| !self.is_annihilated(m))
    }

    fn image(&self, v: GVar) -> Poly {
        self.substitutions.get(&v).cloned().unwrap_or_else(|| Poly::var(v))
    }

    fn substitute_all(&self, p: &Poly) -> Poly {
        if !p.terms().any(|(m, _)| m.vars().any(|v| self.is_eliminated(&v))) {
            return p.clone();
        }
        p.map_monomials(|m| {
            if !m.vars().any(|v| self.is_eliminated(&v)) {
                return Poly::monomial(m.clone());
            }
            let mut acc = Poly::one();
            for &(v, e) in m.factors() {
                for _ in 0..e {
                    acc = acc.mul_free(&self.image(v));
                }
            }
            acc
        })
    }

    fn check_known(&self, p: &Poly) -> Result<()> {
        for v in p.vars() {
            if !self.knows(&v) {
                return Err(Error::PresentationMismatch(v.to_string()));
            }
        }
        Ok(())
    }

    /// Canonical representative of `p` in the quotient.
    pub fn normalize(&self, p: &Poly) -> Result<Poly> {
        self.check_known(p)?;
        Ok(self.reduce(&self.substitute_all(p)))
    }

    /// Like [`normalize`](Self::normalize) for inputs known to mention only
    /// variables of this presentation.
    pub(crate) fn reduce(&self, p: &Poly) -> Poly {
        let p = self.drop_annihilated(p);
        if self.relations.is_empty() || p.is_zero() {
            return p;
        }
        let mut pieces: BTreeMap<(i32, u32), Poly> = BTreeMap::new();
        for (m, c) in p.terms() {
            pieces.entry(bidegree(m)).or_default().add_term(m.clone(), c.clone());
        }
        let mut out = Poly::zero();
        for (b, piece) in pieces {
            out += &self.echelon(b).reduce(&piece);
        }
        out
    }

    /// Sorts, substitutes and reduces user-supplied ordered products.
    pub fn normal_form(&self, raw: &[RawTerm]) -> Result<Poly> {
        let mut out = Poly::zero();
        for t in raw {
            let mut acc = Poly::constant(t.coeff.clone());
            for &(v, e) in &t.factors {
                if !self.knows(&v) {
                    return Err(Error::PresentationMismatch(v.to_string()));
                }
                for _ in 0..e {
                    acc = self.drop_annihilated(&acc.mul_free(&self.image(v)));
                }
            }
            out += &acc;
        }
        Ok(self.reduce(&out))
    }

    /// Product in the quotient; operands must already be normal.
    pub fn mul(&self, p: &Poly, q: &Poly) -> Poly {
        self.reduce(&p.mul_free(q))
    }

    /// Checked product: both operands are validated against the presentation.
    pub fn try_mul(&self, p: &Poly, q: &Poly) -> Result<Poly> {
        self.check_known(p)?;
        self.check_known(q)?;
        Ok(self.mul(&self.normalize(p)?, &self.normalize(q)?))
    }

    pub fn pow(&self, p: &Poly, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = self.mul(&acc, p);
        }
        acc
    }

    /// Normal product of the given variables in the given order.
    pub fn product(&self, vars: &[GVar]) -> Poly {
        let mut acc = Poly::one();
        for v in vars {
            acc = self.mul(&acc, &self.image(*v));
        }
        acc
    }

    /// Every monomial in the generators that survives the annihilator
    /// relations, with grade at most `max_grade` and at most `max_word`
    /// factors, in canonical order.
    pub fn monomials(&self, max_grade: i32, max_word: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        self.enumerate(
            &mut Vec::new(),
            0,
            0,
            0,
            0,
            &mut |m, _, _| {
                if m.grade() <= max_grade {
                    out.push(m.clone());
                }
            },
            &|g, _, word| word <= max_word && (g <= max_grade || self.generators.iter().any(|v| v.grade() < 0)),
        );
        out.sort();
        out
    }

    /// Monomials of exactly the given grade and weight (nonnegative grades).
    fn monomials_of_bidegree(&self, grade: i32, weight: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        self.enumerate(
            &mut Vec::new(),
            0,
            0,
            0,
            0,
            &mut |m, g, w| {
                if g == grade && w == weight {
                    out.push(m.clone());
                }
            },
            &|g, w, _| g <= grade && w <= weight,
        );
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate(
        &self,
        factors: &mut Vec<(GVar, u32)>,
        start: usize,
        grade: i32,
        weight: u32,
        word: usize,
        visit: &mut dyn FnMut(&Monomial, i32, u32),
        within: &dyn Fn(i32, u32, usize) -> bool,
    ) {
        visit(&Monomial::from_sorted_unchecked(factors.clone()), grade, weight);
        for i in start..self.generators.len() {
            let v = self.generators[i];
            let ws = self.annihilators.get(&v);
            if ws.is_some_and(|ws| factors.iter().any(|(u, _)| ws.contains(u))) {
                continue;
            }
            let max_e = if v.is_odd() || ws.is_some_and(|ws| ws.contains(&v)) { 1 } else { u32::MAX };
            let mut e = 1;
            while e <= max_e {
                let g = grade + v.grade() * e as i32;
                let w = weight + if v.grade() == 0 { e } else { 0 };
                let k = word + e as usize;
                if !within(g, w, k) {
                    break;
                }
                factors.push((v, e));
                self.enumerate(factors, i + 1, g, w, k, visit, within);
                factors.pop();
                e += 1;
            }
        }
    }

    fn echelon(&self, b: (i32, u32)) -> Arc<Echelon> {
        if let Some(e) = self.reducers.lock().unwrap().get(&b) {
            return e.clone();
        }
        let mut ech = Echelon::default();
        for r in &self.relations {
            let (rg, rw) = bidegree(r.terms().next().unwrap().0);
            if rg > b.0 || rw > b.1 {
                continue;
            }
            for m in self.monomials_of_bidegree(b.0 - rg, b.1 - rw) {
                let prod = self.drop_annihilated(&Poly::monomial(m).mul_free(r));
                ech.insert(prod);
            }
        }
        let ech = Arc::new(ech);
        self.reducers.lock().unwrap().insert(b, ech.clone());
        ech
    }

    /// Merges two presentations with disjoint variables.
    pub fn tensor(&self, other: &Presentation) -> Result<Presentation> {
        for key in other.index.keys() {
            if let Some(v) = self.index.get(key) {
                return Err(Error::NamespaceCollision(v.to_string()));
            }
        }
        let mut b = Presentation::builder()
            .generators(self.generators.iter().copied())
            .generators(other.generators.iter().copied());
        for (v, w) in self.annihilator_pairs().into_iter().chain(other.annihilator_pairs()) {
            b = b.annihilate(v, w);
        }
        for (v, p) in self.substitutions.iter().chain(other.substitutions.iter()) {
            b = b.substitute(*v, p.clone());
        }
        for r in self.relations.iter().chain(other.relations.iter()) {
            b = b.relation(r.clone());
        }
        b.build()
    }
}

/// Reduced row echelon form of a subspace of polynomials, pivoting on the
/// largest monomial of each row.
#[derive(Default, Debug)]
struct Echelon {
    rows: BTreeMap<Monomial, Poly>,
}

impl Echelon {
    fn reduce(&self, p: &Poly) -> Poly {
        let mut out = p.clone();
        for (pivot, row) in &self.rows {
            let c = out.coeff(pivot);
            if !c.is_zero() {
                out.add_scaled(row, &-c);
            }
        }
        out
    }

    fn insert(&mut self, v: Poly) {
        let v = self.reduce(&v);
        let Some((lead, c)) = v.leading() else { return };
        let lead = lead.clone();
        let v = v.scale(&(Q::one() / c));
        for row in self.rows.values_mut() {
            let c = row.coeff(&lead);
            if !c.is_zero() {
                row.add_scaled(&v, &-c);
            }
        }
        self.rows.insert(lead, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn omega3_line() -> Presentation {
        let mut b = Presentation::builder();
        for j in 0..3 {
            b = b.generator(GVar::x(1, j));
        }
        for j in 1..3 {
            for k in j..3 {
                b = b.annihilate(GVar::x(1, j), GVar::x(1, k));
            }
        }
        b.build().unwrap()
    }

    #[test]
    fn same_site_differentials_annihilate() {
        let p = omega3_line();
        let prod = p.product(&[GVar::x(1, 1), GVar::x(1, 2)]);
        assert!(prod.is_zero());
        let x_plus_dx = &Poly::var(GVar::x(1, 0)) + &Poly::var(GVar::x(1, 1));
        let sq = p.mul(&x_plus_dx, &x_plus_dx);
        let mut expected = p.product(&[GVar::x(1, 0), GVar::x(1, 0)]);
        expected.add_scaled(&p.product(&[GVar::x(1, 0), GVar::x(1, 1)]), &q(2));
        assert_eq!(sq, expected);
    }

    #[test]
    fn substitution_and_derived_relations() {
        let x = |i, j| GVar::x(i, j);
        // x0 + x1 + x2 = 1 with differential closure for N = 3
        let mut b = Presentation::builder();
        for i in 1..=2 {
            for j in 0..3 {
                b = b.generator(x(i, j));
            }
        }
        for j in 0..3 {
            let mut img = if j == 0 { Poly::one() } else { Poly::zero() };
            img -= &Poly::var(x(1, j));
            img -= &Poly::var(x(2, j));
            b = b.substitute(x(0, j), img);
        }
        for i in 0..=2 {
            for j in 1..3 {
                for k in j..3 {
                    b = b.annihilate(x(i, j), x(i, k));
                }
            }
        }
        let p = b.build().unwrap();
        assert_eq!(p.relations().len(), 2);
        let x0 = p.normalize(&Poly::var(x(0, 0))).unwrap();
        assert_eq!(x0.to_string(), "1 - x1 - x2");
        // (d2x0)^2 = 0 forces d2x1 d2x2 = 0
        assert!(p.product(&[x(1, 2), x(2, 2)]).is_zero());
        // d1x0 d2x0 = 0 identifies d1x1 d2x2 with -d1x2 d2x1
        let a = p.product(&[x(1, 1), x(2, 2)]);
        let b2 = p.product(&[x(2, 1), x(1, 2)]);
        assert_eq!(a, -b2.clone());
        assert_eq!(p.reduce(&a), a);
    }

    #[test]
    fn unknown_variables_are_rejected() {
        let p = omega3_line();
        let err = p.normalize(&Poly::var(GVar::x(2, 0))).unwrap_err();
        assert!(matches!(err, Error::PresentationMismatch(_)));
    }

    #[test]
    fn enumeration_respects_relations() {
        let p = omega3_line();
        let ms = p.monomials(2, 3);
        assert!(ms.iter().all(|m| !p.is_annihilated(m)));
        assert!(ms.contains(&Monomial::one()));
        let names: Vec<String> = ms.iter().filter(|m| m.grade() == 2).map(|m| m.to_string()).collect();
        assert_eq!(names, ["x1*d2x1", "x1^2*d2x1", "d2x1"]);
    }
}

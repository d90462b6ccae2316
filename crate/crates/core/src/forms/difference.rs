use std::collections::BTreeMap;
use std::sync::Arc;

use super::omega::{depth_derivation, depth_presentation, simplex_morphism, DeltaMap};
use crate::error::{Error, Result};
use crate::galgebra::{Family, GVar, Monomial, Morphism, Poly, Presentation};
use crate::operators::Derivation;
use crate::rational::sign;

/// Difference forms of depth `N` with polynomial coefficients: on `ℤⁿ`, or
/// on the affine lattice `m_0 + … + m_n = 1` with `m_0` and `δ^j m_0`
/// eliminated.
#[derive(Clone, Debug)]
pub struct DifferenceAlgebra {
    n: u32,
    depth: u32,
    pres: Arc<Presentation>,
    generators_d: Derivation,
}

/// `ω = Σ_I ω_I dm_I` with `I(i)` the depth of the `δ m_i` factor (0 when
/// absent). Keys are `I` as a vector indexed by `i - 1`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DifferenceForm {
    pub terms: BTreeMap<Vec<u32>, Poly>,
}

impl DifferenceForm {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&mut self, key: Vec<u32>, p: &Poly) {
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += p;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }
}

impl DifferenceAlgebra {
    /// `D_N(ℤⁿ)`.
    pub fn lattice(n: u32, depth: u32) -> Result<Self> {
        DifferenceAlgebra::build(n, depth, false)
    }

    /// `D_N(n)` on the affine lattice of the `n`-simplex.
    pub fn simplex(n: u32, depth: u32) -> Result<Self> {
        DifferenceAlgebra::build(n, depth, true)
    }

    fn build(n: u32, depth: u32, simplex: bool) -> Result<Self> {
        if depth < 2 {
            return Err(Error::OutOfRange(format!("depth N = {depth}")));
        }
        let pres = Arc::new(depth_presentation(Family::m(), depth, n, simplex)?);
        let generators_d = depth_derivation(pres.clone(), depth)?;
        Ok(DifferenceAlgebra { n, depth, pres, generators_d })
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Nilpotency order of `δ`: `n(N-1)+1`.
    pub fn order(&self) -> u32 {
        self.n * (self.depth - 1) + 1
    }

    fn m(&self, i: u32) -> GVar {
        GVar::m(i, 0)
    }

    /// `g(m + e_i)`.
    pub fn shift(&self, g: &Poly, i: u32) -> Poly {
        let v = self.m(i);
        let shifted = &Poly::var(v) + &Poly::one();
        g.map_monomials(|mono| {
            let mut acc = Poly::one();
            for &(w, e) in mono.factors() {
                let base = if w == v { shifted.clone() } else { Poly::var(w) };
                for _ in 0..e {
                    acc = self.pres.mul(&acc, &base);
                }
            }
            acc
        })
    }

    /// `Δ_i g = g(m + e_i) - g(m)`.
    pub fn finite_difference(&self, g: &Poly, i: u32) -> Poly {
        &self.shift(g, i) - g
    }

    /// Splits a normal polynomial into its coefficient functions.
    pub fn to_form(&self, p: &Poly) -> Result<DifferenceForm> {
        let p = self.pres.normalize(p)?;
        let mut form = DifferenceForm::default();
        for (mono, c) in p.terms() {
            let mut key = vec![0; self.n as usize];
            let mut func = Vec::new();
            for &(v, e) in mono.factors() {
                if v.depth() == 0 {
                    func.push((v, e));
                } else {
                    key[v.site() as usize - 1] = v.depth();
                }
            }
            let g = Monomial::from_ordered(&func).expect("even factors").1;
            form.add(key, &Poly::term(g, c.clone()));
        }
        Ok(form)
    }

    /// `dm_I` as a normal polynomial.
    pub fn dm(&self, key: &[u32]) -> Poly {
        let vars: Vec<GVar> =
            key.iter().enumerate().filter(|(_, &d)| d > 0).map(|(i, &d)| GVar::m(i as u32 + 1, d)).collect();
        self.pres.product(&vars)
    }

    pub fn to_poly(&self, form: &DifferenceForm) -> Poly {
        let mut out = Poly::zero();
        for (key, g) in &form.terms {
            out += &self.pres.mul(g, &self.dm(key));
        }
        out
    }

    /// `δω` through the defining rules: `δ(g dm_I) = Σ_i Δ_i(g) δm_i dm_I
    /// + g δ(dm_I)`, with `δ` a graded derivation on the `δ^j m_i`.
    pub fn delta_leibniz(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (mono, c) in p.terms() {
            let (func, diff): (Vec<_>, Vec<_>) = mono.factors().iter().partition(|(v, _)| v.depth() == 0);
            let g = Poly::monomial(Monomial::from_ordered(&func).expect("even").1);
            let dm = Poly::monomial(Monomial::from_ordered(&diff).expect("canonical").1);
            for i in 1..=self.n {
                let dg = self.finite_difference(&g, i);
                if dg.is_zero() {
                    continue;
                }
                let t = self.pres.mul(&self.pres.mul(&dg, &Poly::var(GVar::m(i, 1))), &dm);
                out.add_scaled(&t, c);
            }
            let t = self.pres.mul(&g, &self.generators_d.apply(&dm));
            out.add_scaled(&t, c);
        }
        out
    }

    /// `δω` through the coefficient formula
    /// `(δω)_J = Σ_{J(i)=1} ± Δ_i ω_{J-e_i} + Σ_{J(i)>=2} ± ω_{J-e_i}`,
    /// with sign `(-1)^{|J_{<i}|}`.
    pub fn delta_closed(&self, form: &DifferenceForm) -> DifferenceForm {
        let mut out = DifferenceForm::default();
        for (key, w) in &form.terms {
            for i in 0..self.n as usize {
                if key[i] + 1 >= self.depth {
                    continue;
                }
                let mut j = key.clone();
                j[i] += 1;
                let below: u32 = j[..i].iter().sum();
                let s = sign(below % 2 == 1);
                let coeff = if j[i] == 1 { self.finite_difference(w, i as u32 + 1) } else { w.clone() };
                out.add(j, &coeff.scale(&s));
            }
        }
        out
    }

    /// `δω`, computed by both routes; disagreement is an error.
    pub fn delta(&self, p: &Poly) -> Result<Poly> {
        let p = self.pres.normalize(p)?;
        let a = self.delta_leibniz(&p);
        let b = self.to_poly(&self.delta_closed(&self.to_form(&p)?));
        if a != b {
            return Err(Error::RouteDisagreement(format!(
                "δ({p}): Leibniz expansion gives {a}, coefficient formula gives {b}"
            )));
        }
        Ok(a)
    }

    pub fn delta_power(&self, p: &Poly, k: u32) -> Poly {
        let mut cur = p.clone();
        for _ in 0..k {
            if cur.is_zero() {
                break;
            }
            cur = self.delta_leibniz(&cur);
        }
        cur
    }
}

/// The simplex algebra `D_N(n)`.
pub fn dn_simplex(n: u32, depth: u32) -> Result<DifferenceAlgebra> {
    DifferenceAlgebra::simplex(n, depth)
}

/// `D_N(f): D_N(m) → D_N(n)` for `f: [n] → [m]`, acting on coefficient
/// polynomials by `m_j ↦ Σ_{f(i)=j} m_i` and on differentials likewise.
pub fn dn_map(f: &DeltaMap, depth: u32) -> Result<Morphism> {
    let source = dn_simplex(f.target_dim(), depth)?.pres;
    let target = dn_simplex(f.source_dim(), depth)?.pres;
    simplex_morphism(Family::m(), depth, f, source, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galgebra::parse_poly;

    #[test]
    fn delta_of_square() {
        let alg = DifferenceAlgebra::lattice(1, 3).unwrap();
        let p = parse_poly("m1^2", alg.presentation()).unwrap();
        assert_eq!(alg.delta(&p).unwrap().to_string(), "d1m1 + 2*m1*d1m1");
        let top = parse_poly("d2m1", alg.presentation()).unwrap();
        assert!(alg.delta(&top).unwrap().is_zero());
    }

    #[test]
    fn routes_agree_with_two_directions() {
        let alg = DifferenceAlgebra::lattice(2, 3).unwrap();
        let p = parse_poly("m1*m2^2*d1m1 + m1^3 - 2*m2*d2m1*d1m2", alg.presentation()).unwrap();
        let once = alg.delta(&p).unwrap();
        alg.delta(&once).unwrap();
        assert!(alg.delta_power(&p, alg.order()).is_zero());
    }
}

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::omega::{simplex_algebra, simplex_morphism, DeltaMap};
use crate::error::{Error, Result};
use crate::galgebra::{Family, Monomial, Morphism, Poly, Presentation};
use crate::linalg::Matrix;
use crate::operators::basis_monomials;
use crate::rational::Q;

/// A simplex written as `s_{j1} s_{j2} … base` with `j1 > j2 > …` and
/// `base` nondegenerate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SimplexRef {
    pub base: String,
    pub degeneracies: Vec<u32>,
}

impl SimplexRef {
    fn nondegenerate(name: &str) -> Self {
        SimplexRef { base: name.to_string(), degeneracies: Vec::new() }
    }

    /// Applies `s_j` on the left and restores canonical order using
    /// `s_i s_j = s_{j+1} s_i` for `i <= j`.
    fn degenerate(mut self, j: u32) -> Self {
        self.degeneracies.insert(0, j);
        let d = &mut self.degeneracies;
        let mut k = 0;
        while k + 1 < d.len() {
            if d[k] <= d[k + 1] {
                let (a, b) = (d[k], d[k + 1]);
                d[k] = b + 1;
                d[k + 1] = a;
                k = k.saturating_sub(1);
            } else {
                k += 1;
            }
        }
        self
    }
}

/// Ingestion format:
/// `{"K": 1, "simplices": {"0": ["v0", "v1"], "1": ["e01"]},
///   "faces": {"e01": ["v0", "v1"]}, "degeneracies": {}}`.
///
/// `faces[p][i]` names `d_i p`; a named degenerate simplex is declared as
/// `"degeneracies": {"name": ["base", j]}`, meaning `name = s_j(base)`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SimplicialSetDoc {
    #[serde(rename = "K")]
    pub k: u32,
    pub simplices: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub faces: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub degeneracies: BTreeMap<String, (String, u32)>,
}

/// A simplicial set generated by finitely many nondegenerate simplices of
/// dimension at most `K`.
#[derive(Clone, Debug)]
pub struct SimplicialSet {
    bound: u32,
    dims: BTreeMap<String, u32>,
    faces: BTreeMap<String, Vec<SimplexRef>>,
}

impl SimplicialSet {
    pub fn from_json(s: &str) -> Result<Self> {
        SimplicialSet::from_doc(&serde_json::from_str(s)?)
    }

    pub fn from_doc(doc: &SimplicialSetDoc) -> Result<Self> {
        let bad = |m: String| Error::InvalidSimplicialSet(m);
        let mut dims = BTreeMap::new();
        for (dim, names) in &doc.simplices {
            let d: u32 = dim.parse().map_err(|_| bad(format!("dimension key `{dim}`")))?;
            if d > doc.k {
                return Err(bad(format!("simplex of dimension {d} above the bound K = {}", doc.k)));
            }
            for n in names {
                if dims.insert(n.clone(), d).is_some() {
                    return Err(bad(format!("simplex `{n}` listed twice")));
                }
            }
        }
        // named degenerate simplices, resolved recursively
        let mut named: BTreeMap<String, (SimplexRef, u32)> = BTreeMap::new();
        fn resolve(
            name: &str,
            doc: &SimplicialSetDoc,
            dims: &BTreeMap<String, u32>,
            named: &mut BTreeMap<String, (SimplexRef, u32)>,
            depth: usize,
        ) -> Result<(SimplexRef, u32)> {
            if let Some(d) = dims.get(name) {
                return Ok((SimplexRef::nondegenerate(name), *d));
            }
            if let Some(r) = named.get(name) {
                return Ok(r.clone());
            }
            let (base, j) = doc
                .degeneracies
                .get(name)
                .ok_or_else(|| Error::InvalidSimplicialSet(format!("unknown simplex `{name}`")))?;
            if depth > doc.degeneracies.len() {
                return Err(Error::InvalidSimplicialSet("cyclic degeneracy declarations".into()));
            }
            let (b, d) = resolve(base, doc, dims, named, depth + 1)?;
            if *j > d {
                return Err(Error::InvalidSimplicialSet(format!("s_{j} of a {d}-simplex")));
            }
            let r = (b.degenerate(*j), d + 1);
            named.insert(name.to_string(), r.clone());
            Ok(r)
        }
        let mut faces = BTreeMap::new();
        for (name, &d) in &dims {
            if d == 0 {
                if doc.faces.get(name).is_some_and(|f| !f.is_empty()) {
                    return Err(bad(format!("vertex `{name}` has faces")));
                }
                continue;
            }
            let fs = doc.faces.get(name).ok_or_else(|| bad(format!("no faces for `{name}`")))?;
            if fs.len() != d as usize + 1 {
                return Err(bad(format!("`{name}` has dimension {d} but {} faces", fs.len())));
            }
            let mut refs = Vec::new();
            for f in fs {
                let (r, fd) = resolve(f, doc, &dims, &mut named, 0)?;
                if fd + 1 != d {
                    return Err(bad(format!("face `{f}` of `{name}` has dimension {fd}")));
                }
                refs.push(r);
            }
            faces.insert(name.clone(), refs);
        }
        for extra in doc.faces.keys() {
            if !dims.contains_key(extra) {
                return Err(bad(format!("faces given for unknown simplex `{extra}`")));
            }
        }
        let s = SimplicialSet { bound: doc.k, dims, faces };
        s.check_identities()?;
        Ok(s)
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn dim(&self, name: &str) -> Option<u32> {
        self.dims.get(name).copied()
    }

    /// Nondegenerate simplices ordered by dimension, then name.
    pub fn simplices(&self) -> Vec<(String, u32)> {
        let mut v: Vec<(String, u32)> = self.dims.iter().map(|(n, d)| (n.clone(), *d)).collect();
        v.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        v
    }

    /// `d_i x` in canonical form.
    pub fn face(&self, x: &SimplexRef, i: u32) -> SimplexRef {
        match x.degeneracies.split_first() {
            None => self.faces[&x.base][i as usize].clone(),
            Some((&j, rest)) => {
                let inner = SimplexRef { base: x.base.clone(), degeneracies: rest.to_vec() };
                if i < j {
                    self.face(&inner, i).degenerate(j - 1)
                } else if i == j || i == j + 1 {
                    inner
                } else {
                    self.face(&inner, i - 1).degenerate(j)
                }
            }
        }
    }

    fn check_identities(&self) -> Result<()> {
        for (name, &d) in &self.dims {
            if d < 2 {
                continue;
            }
            let p = SimplexRef::nondegenerate(name);
            for j in 0..=d {
                for i in 0..j {
                    let lhs = self.face(&self.face(&p, j), i);
                    let rhs = self.face(&self.face(&p, i), j - 1);
                    if lhs != rhs {
                        return Err(Error::InvalidSimplicialSet(format!(
                            "d_{i} d_{j} {name} != d_{} d_{i} {name}",
                            j - 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A truncated basis of the forms of one degree on a simplicial set.
#[derive(Clone, Debug)]
pub struct FormsOnSimplicialSet {
    pub degree: i32,
    pub poly_bound: u32,
    pub simplices: Vec<String>,
    /// Each basis element lists its component on every nondegenerate simplex.
    pub basis: Vec<BTreeMap<String, Poly>>,
}

/// Compatible families `(a_p)` of forms of the given degree, one per
/// nondegenerate simplex, with `a_{d_i p} = A(δ^i)(a_p)` and degenerate
/// faces resolved through `A(σ^j)`. Each `a_p` is restricted to monomials
/// with at most `poly_bound` grade-zero factors.
pub fn forms_on_simplicial_set(
    s: &SimplicialSet,
    family: Family,
    depth: u32,
    degree: i32,
    poly_bound: u32,
) -> Result<FormsOnSimplicialSet> {
    let simplices = s.simplices();
    let max_dim = simplices.iter().map(|(_, d)| *d).max().unwrap_or(0);
    let algebras: Vec<Arc<Presentation>> =
        (0..=max_dim).map(|k| simplex_algebra(family, depth, k)).collect::<Result<_>>()?;
    let bases: Vec<Vec<Monomial>> = algebras
        .iter()
        .map(|a| {
            basis_monomials(a, degree, poly_bound as usize + degree.max(0) as usize)
                .into_iter()
                .filter(|m| m.grade() == degree && m.weight() <= poly_bound)
                .collect()
        })
        .collect();
    // unknown offsets per simplex
    let mut offset = BTreeMap::new();
    let mut total = 0;
    for (name, d) in &simplices {
        offset.insert(name.clone(), total);
        total += bases[*d as usize].len();
    }
    let mut morphisms: BTreeMap<(u32, Vec<u32>), Morphism> = BTreeMap::new();
    let mut morphism = |f: DeltaMap| -> Result<Morphism> {
        let key = (f.target_dim(), f.values().to_vec());
        if let Some(m) = morphisms.get(&key) {
            return Ok(m.clone());
        }
        let m = simplex_morphism(
            family,
            depth,
            &f,
            algebras[f.target_dim() as usize].clone(),
            algebras[f.source_dim() as usize].clone(),
        )?;
        morphisms.insert(key, m.clone());
        Ok(m)
    };
    // each constraint is a vector of polynomials indexed by unknown
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (name, d) in &simplices {
        if *d == 0 {
            continue;
        }
        let p = SimplexRef::nondegenerate(name);
        for i in 0..=*d {
            let face = s.face(&p, i);
            let restrict = morphism(DeltaMap::coface(*d, i))?;
            let mut columns: Vec<(usize, Poly)> = Vec::new();
            for (k, m) in bases[*d as usize].iter().enumerate() {
                columns.push((offset[name] + k, restrict.apply(&Poly::monomial(m.clone()))));
            }
            // a_{s_{j1} … s_{jr} q} = A(σ^{j1}) ⋯ A(σ^{jr}) a_q
            let qdim = s.dim(&face.base).expect("known simplex");
            for (k, m) in bases[qdim as usize].iter().enumerate() {
                let mut img = Poly::monomial(m.clone());
                let mut cur = qdim;
                for &j in face.degeneracies.iter().rev() {
                    img = morphism(DeltaMap::codegeneracy(cur, j))?.apply(&img);
                    cur += 1;
                }
                columns.push((offset[&face.base] + k, -img));
            }
            let mut monos: BTreeSet<Monomial> = BTreeSet::new();
            for (_, p) in &columns {
                monos.extend(p.terms().map(|(m, _)| m.clone()));
            }
            for mono in monos {
                let mut row = vec![Q::zero(); total];
                for (col, p) in &columns {
                    row[*col] += p.coeff(&mono);
                }
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() { Matrix::zeros(0, total).kernel() } else { Matrix::from_rows(rows)?.kernel() };
    let basis = kernel
        .into_iter()
        .map(|v| {
            simplices
                .iter()
                .map(|(name, d)| {
                    let p = bases[*d as usize]
                        .iter()
                        .enumerate()
                        .map(|(k, m)| (m.clone(), v[offset[name] + k].clone()))
                        .collect();
                    (name.clone(), p)
                })
                .collect()
        })
        .collect();
    Ok(FormsOnSimplicialSet { degree, poly_bound, simplices: simplices.into_iter().map(|(n, _)| n).collect(), basis })
}

/// `Ω_N^i(s)` truncated to polynomial degree `poly_bound`.
pub fn omega_simplicial_set(
    s: &SimplicialSet,
    depth: u32,
    degree: i32,
    poly_bound: u32,
) -> Result<FormsOnSimplicialSet> {
    forms_on_simplicial_set(s, Family::x(), depth, degree, poly_bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degeneracy_words_are_canonical() {
        let r = SimplexRef::nondegenerate("v").degenerate(0).degenerate(0);
        assert_eq!(r.degeneracies, [1, 0]);
        let r = SimplexRef::nondegenerate("v").degenerate(0).degenerate(1);
        assert_eq!(r.degeneracies, [1, 0]);
    }

    #[test]
    fn rejects_broken_identities() {
        let doc = r#"{"K": 2, "simplices": {"0": ["a", "b", "c"], "1": ["ab", "bc", "ac"], "2": ["t"]},
            "faces": {"ab": ["b", "a"], "bc": ["c", "b"], "ac": ["c", "a"], "t": ["bc", "ab", "ac"]}}"#;
        assert!(SimplicialSet::from_json(doc).is_err());
        let doc = r#"{"K": 2, "simplices": {"0": ["a", "b", "c"], "1": ["ab", "bc", "ac"], "2": ["t"]},
            "faces": {"ab": ["b", "a"], "bc": ["c", "b"], "ac": ["c", "a"], "t": ["bc", "ac", "ab"]}}"#;
        assert!(SimplicialSet::from_json(doc).is_ok());
    }

    #[test]
    fn interval_and_its_boundary() {
        let interval = SimplicialSet::from_json(
            r#"{"K": 1, "simplices": {"0": ["v0", "v1"], "1": ["e01"]}, "faces": {"e01": ["v1", "v0"]}}"#,
        )
        .unwrap();
        let f = omega_simplicial_set(&interval, 3, 0, 1).unwrap();
        assert_eq!(f.basis.len(), 2);
        let boundary = SimplicialSet::from_json(r#"{"K": 0, "simplices": {"0": ["v0", "v1"]}}"#).unwrap();
        assert_eq!(omega_simplicial_set(&boundary, 3, 0, 2).unwrap().basis.len(), 2);
        let point = SimplicialSet::from_json(r#"{"K": 0, "simplices": {"0": ["p"]}}"#).unwrap();
        assert_eq!(omega_simplicial_set(&point, 3, 0, 0).unwrap().basis.len(), 1);
    }
}

//! Finite-dimensional N-complexes over ℚ and their cohomology
//! `ₚHⁱ = Ker d^p / Im d^{N-p}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Q;

#[derive(Clone, Debug)]
pub struct NComplex {
    order: u32,
    dims: BTreeMap<i32, usize>,
    /// `maps[i]: V^i → V^{i+1}`, stored as a `dim(i+1) × dim(i)` matrix.
    maps: BTreeMap<i32, Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexVerdict {
    /// First degree `i` with `d^N ≠ 0` on `V^i`, if any.
    pub failure: Option<i32>,
    /// Some `(N-1)`-fold composite is nonzero.
    pub proper: bool,
}

impl ComplexVerdict {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cohomology {
    pub p: u32,
    pub degree: i32,
    pub kernel_dim: usize,
    pub image_dim: usize,
    pub dim: usize,
    /// Representatives completing a basis of the image to one of the kernel.
    pub basis: Vec<Vec<Q>>,
}

impl NComplex {
    pub fn new(order: u32, dims: BTreeMap<i32, usize>, maps: BTreeMap<i32, Matrix>) -> Result<Self> {
        if order == 0 {
            return Err(Error::OutOfRange("complex order 0".into()));
        }
        for (i, m) in &maps {
            let src = dims.get(i).copied().unwrap_or(0);
            let dst = dims.get(&(i + 1)).copied().unwrap_or(0);
            if m.cols() != src || m.rows() != dst {
                return Err(Error::DimensionMismatch(format!(
                    "map at degree {i} is {}x{}, expected {dst}x{src}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(NComplex { order, dims, maps })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dim(&self, i: i32) -> usize {
        self.dims.get(&i).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i32, usize> {
        &self.dims
    }

    pub fn map(&self, i: i32) -> Matrix {
        self.maps.get(&i).cloned().unwrap_or_else(|| Matrix::zeros(self.dim(i + 1), self.dim(i)))
    }

    /// `d^k: V^i → V^{i+k}`.
    pub fn power(&self, i: i32, k: u32) -> Matrix {
        let mut acc = Matrix::identity(self.dim(i));
        for s in 0..k as i32 {
            acc = self.map(i + s).mul(&acc).expect("conforming maps");
        }
        acc
    }

    fn support(&self) -> (i32, i32) {
        let lo = self.dims.iter().find(|(_, &d)| d > 0).map_or(0, |(i, _)| *i);
        let hi = self.dims.iter().rev().find(|(_, &d)| d > 0).map_or(0, |(i, _)| *i);
        (lo, hi)
    }

    pub fn check(&self) -> ComplexVerdict {
        let (lo, hi) = self.support();
        let failure = (lo..=hi).find(|&i| !self.power(i, self.order).is_zero());
        let proper = self.order >= 1 && (lo..=hi).any(|i| !self.power(i, self.order - 1).is_zero());
        ComplexVerdict { failure, proper }
    }

    pub fn cohomology(&self, p: u32, i: i32) -> Result<Cohomology> {
        if p == 0 || p >= self.order {
            return Err(Error::OutOfRange(format!("p = {p} for an {}-complex", self.order)));
        }
        let kernel = self.power(i, p).kernel();
        let q = self.order - p;
        let image = self.power(i - q as i32, q).image();
        let n = self.dim(i);
        if image.is_empty() {
            return Ok(Cohomology {
                p,
                degree: i,
                kernel_dim: kernel.len(),
                image_dim: 0,
                dim: kernel.len(),
                basis: kernel,
            });
        }
        // columns: image basis first, then kernel basis
        let cols: Vec<&Vec<Q>> = image.iter().chain(kernel.iter()).collect();
        let mut m = Matrix::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for r in 0..n {
                m[(r, j)] = c[r].clone();
            }
        }
        let pivots = m.rref().pivots;
        let k_only = {
            let mut mk = Matrix::zeros(n, kernel.len());
            for (j, c) in kernel.iter().enumerate() {
                for r in 0..n {
                    mk[(r, j)] = c[r].clone();
                }
            }
            mk.rank()
        };
        if pivots.len() != k_only {
            return Err(Error::Precondition(format!(
                "image of d^{q} is not contained in the kernel of d^{p} at degree {i}"
            )));
        }
        let basis: Vec<Vec<Q>> = pivots.iter().filter(|&&c| c >= image.len()).map(|&c| cols[c].clone()).collect();
        Ok(Cohomology { p, degree: i, kernel_dim: kernel.len(), image_dim: image.len(), dim: basis.len(), basis })
    }
}

impl NComplex {
    /// The same complex written in new bases: `d'_i = P_{i+1} d_i P_i⁻¹`,
    /// given `(P_i, P_i⁻¹)` per degree (identity where absent).
    pub fn transport(&self, bases: &BTreeMap<i32, (Matrix, Matrix)>) -> Result<NComplex> {
        let mut maps = BTreeMap::new();
        for (&i, m) in &self.maps {
            let mut d = m.clone();
            if let Some((_, inv)) = bases.get(&i) {
                d = d.mul(inv)?;
            }
            if let Some((p, _)) = bases.get(&(i + 1)) {
                d = p.mul(&d)?;
            }
            maps.insert(i, d);
        }
        NComplex::new(self.order, self.dims.clone(), maps)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct DegreeDoc {
    dim: usize,
    #[serde(default)]
    map: Option<Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ComplexDoc {
    order: u32,
    degrees: BTreeMap<String, DegreeDoc>,
}

impl NComplex {
    /// `{"order": 3, "degrees": {"0": {"dim": 2, "map": [[...]]}, ...}}`,
    /// where the map at degree `i` goes to degree `i + 1`.
    pub fn from_json(s: &str) -> Result<Self> {
        let doc: ComplexDoc = serde_json::from_str(s)?;
        let mut dims = BTreeMap::new();
        for (k, d) in &doc.degrees {
            let i: i32 = k.parse().map_err(|_| Error::DimensionMismatch(format!("degree key `{k}`")))?;
            dims.insert(i, d.dim);
        }
        let mut maps = BTreeMap::new();
        for (k, d) in &doc.degrees {
            let i: i32 = k.parse().expect("checked");
            if let Some(v) = &d.map {
                let rows = dims.get(&(i + 1)).copied().unwrap_or(0);
                maps.insert(i, Matrix::from_json(v, rows, d.dim)?);
            }
        }
        NComplex::new(doc.order, dims, maps)
    }

    pub fn to_json(&self) -> Value {
        let degrees: serde_json::Map<String, Value> = self
            .dims
            .iter()
            .map(|(i, d)| {
                let mut entry = serde_json::json!({ "dim": d });
                if let Some(m) = self.maps.get(i) {
                    entry["map"] = m.to_json();
                }
                (i.to_string(), entry)
            })
            .collect();
        serde_json::json!({ "order": self.order, "degrees": degrees })
    }
}

pub fn check_ncomplex(c: &NComplex) -> ComplexVerdict {
    c.check()
}

pub fn cohomology(c: &NComplex, p: u32, i: i32) -> Result<Cohomology> {
    c.cohomology(p, i)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity_chain(order: u32) -> NComplex {
        let dims = BTreeMap::from([(0, 1), (1, 1), (2, 1)]);
        let maps = BTreeMap::from([(0, Matrix::identity(1)), (1, Matrix::identity(1))]);
        NComplex::new(order, dims, maps).unwrap()
    }

    #[test]
    fn identity_chain_is_a_proper_three_complex() {
        let c = identity_chain(3);
        let v = c.check();
        assert!(v.is_valid() && v.proper);
        assert_eq!(c.cohomology(1, 1).unwrap().dim, 0);
        let two = identity_chain(2).check();
        assert_eq!(two.failure, Some(0));
    }

    #[test]
    fn zero_differential_keeps_everything() {
        let c = NComplex::new(3, BTreeMap::from([(0, 2), (1, 3)]), BTreeMap::new()).unwrap();
        for p in 1..3 {
            assert_eq!(c.cohomology(p, 0).unwrap().dim, 2);
            assert_eq!(c.cohomology(p, 1).unwrap().dim, 3);
        }
        assert!(c.cohomology(3, 0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let src = r#"{"order": 3, "degrees": {"0": {"dim": 1, "map": [[1]]}, "1": {"dim": 1, "map": [["2/3"]]}, "2": {"dim": 1}}}"#;
        let c = NComplex::from_json(src).unwrap();
        assert!(c.check().is_valid());
        let again = NComplex::from_json(&c.to_json().to_string()).unwrap();
        assert_eq!(again.map(1), c.map(1));
        let bad = r#"{"order": 2, "degrees": {"0": {"dim": 2, "map": [[1]]}, "1": {"dim": 1}}}"#;
        assert!(NComplex::from_json(bad).is_err());
    }
}

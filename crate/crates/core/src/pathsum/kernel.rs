use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::graph::{PathCounter, WeightTable};
use super::multiindex::MultiIndex;
use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, Q};
use crate::strategy::Registry;

/// A finite weighted digraph on vertices `0..vertices`; parallel edges add.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteDigraph {
    vertices: usize,
    edges: Vec<(usize, usize, Q)>,
}

#[derive(Serialize, Deserialize)]
struct DigraphDoc {
    vertices: usize,
    edges: Vec<(usize, usize, String)>,
}

impl FiniteDigraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize, Q)>) -> Result<Self> {
        if let Some((s, t, _)) = edges.iter().find(|(s, t, _)| *s >= vertices || *t >= vertices) {
            return Err(Error::OutOfRange(format!("edge {s} -> {t} in a graph on {vertices} vertices")));
        }
        Ok(FiniteDigraph { vertices, edges })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize, Q)] {
        &self.edges
    }

    fn out_edges(&self) -> Vec<Vec<(usize, &Q)>> {
        let mut out = vec![Vec::new(); self.vertices];
        for (s, t, w) in &self.edges {
            out[*s].push((*t, w));
        }
        out
    }

    /// `{"vertices": 2, "edges": [[0, 1, "3/2"], …]}`.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let doc: DigraphDoc = serde_json::from_value(v.clone())?;
        let edges = doc.edges.into_iter().map(|(s, t, w)| Ok((s, t, parse_q(&w)?))).collect::<Result<Vec<_>>>()?;
        FiniteDigraph::new(doc.vertices, edges)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = DigraphDoc {
            vertices: self.vertices,
            edges: self.edges.iter().map(|(s, t, w)| (*s, *t, fmt_q(w))).collect(),
        };
        serde_json::to_value(doc).expect("digraph serializes")
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertices {
            return Err(Error::OutOfRange(format!("vertex {v} in a graph on {} vertices", self.vertices)));
        }
        Ok(())
    }
}

/// The part of the Maurer-Cartan graph with `|s| + l(s) <= bound`,
/// vertices listed as `∅` followed by `E_bound` in canonical order.
pub fn truncated_mc_graph(table: &WeightTable, bound: u32) -> (FiniteDigraph, Vec<MultiIndex>) {
    let mut labels = vec![MultiIndex::empty()];
    labels.extend(MultiIndex::all_in_e(bound));
    let index: HashMap<&MultiIndex, usize> = labels.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut edges = Vec::new();
    for (i, s) in labels.iter().enumerate() {
        for (_, t, w) in table.edges(s) {
            if let Some(&j) = index.get(&t) {
                edges.push((i, j, Q::from_integer(w.into())));
            }
        }
    }
    let graph = FiniteDigraph { vertices: labels.len(), edges };
    (graph, labels)
}

/// A way of evaluating the weighted path kernel `ω_n(y, x)`.
pub trait KernelBackend: Send + Sync {
    fn finite(&self, g: &FiniteDigraph, n: u32, x: usize, y: usize) -> Result<Q>;

    /// Kernel on the Maurer-Cartan graph. `truncation` is a bound on
    /// `|s| + l(s)` beyond which no vertex needs to be visited.
    fn mc(&self, table: &WeightTable, truncation: Option<u32>, n: u32, x: &MultiIndex, y: &MultiIndex) -> Result<Q>;
}

/// Walks every path explicitly; on the Maurer-Cartan graph the monotone
/// potential `|s| + l(s)` bounds the search, so no truncation is needed.
pub struct Enumeration;

impl KernelBackend for Enumeration {
    fn finite(&self, g: &FiniteDigraph, n: u32, x: usize, y: usize) -> Result<Q> {
        g.check_vertex(x)?;
        g.check_vertex(y)?;
        let out = g.out_edges();
        fn walk(out: &[Vec<(usize, &Q)>], v: usize, left: u32, y: usize, w: &Q, acc: &mut Q) {
            if left == 0 {
                if v == y {
                    *acc += w;
                }
                return;
            }
            for (t, ew) in &out[v] {
                walk(out, *t, left - 1, y, &(w * *ew), acc);
            }
        }
        let mut acc = Q::zero();
        walk(&out, x, n, y, &Q::one(), &mut acc);
        Ok(acc)
    }

    fn mc(&self, table: &WeightTable, _truncation: Option<u32>, n: u32, x: &MultiIndex, y: &MultiIndex) -> Result<Q> {
        Ok(Q::from_integer(PathCounter::new(*table, y).weighted(x, n).into()))
    }
}

/// Repeated vector-matrix products; on the Maurer-Cartan graph it works on
/// a finite truncation and so needs the caller's bound.
pub struct TransferMatrix;

impl KernelBackend for TransferMatrix {
    fn finite(&self, g: &FiniteDigraph, n: u32, x: usize, y: usize) -> Result<Q> {
        g.check_vertex(x)?;
        g.check_vertex(y)?;
        let mut v = vec![Q::zero(); g.vertices];
        v[x] = Q::one();
        for _ in 0..n {
            let mut next = vec![Q::zero(); g.vertices];
            for (s, t, w) in &g.edges {
                if !v[*s].is_zero() {
                    next[*t] += &v[*s] * w;
                }
            }
            v = next;
        }
        Ok(v.swap_remove(y))
    }

    fn mc(&self, table: &WeightTable, truncation: Option<u32>, n: u32, x: &MultiIndex, y: &MultiIndex) -> Result<Q> {
        let Some(bound) = truncation else {
            return Err(Error::MissingPruningCertificate(
                "the transfer-matrix backend needs a bound on |s|+l(s)".into(),
            ));
        };
        if bound < y.potential() {
            return Err(Error::MissingPruningCertificate(format!(
                "bound {bound} is below |y|+l(y) = {}",
                y.potential()
            )));
        }
        if x.potential() > y.potential() {
            return Ok(Q::zero());
        }
        let (g, labels) = truncated_mc_graph(table, bound);
        let pos = |s: &MultiIndex| labels.iter().position(|l| l == s).expect("within the bound");
        self.finite(&g, n, pos(x), pos(y))
    }
}

pub fn kernel_registry() -> Registry<dyn KernelBackend> {
    Registry::<dyn KernelBackend>::new("kernel backend")
        .with("enumeration", Box::new(Enumeration))
        .with("transfer", Box::new(TransferMatrix))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn self_loop_powers() {
        let g = FiniteDigraph::new(1, vec![(0, 0, q(-3))]).unwrap();
        for (name, b) in kernel_registry().iter() {
            assert_eq!(b.finite(&g, 4, 0, 0).unwrap(), q(81), "{name}");
        }
    }

    #[test]
    fn mc_backends_agree() {
        let t = WeightTable::standard();
        let y = MultiIndex::new(vec![2]);
        let reg = kernel_registry();
        let a = reg.get("enumeration").unwrap().mc(&t, None, 3, &MultiIndex::empty(), &y).unwrap();
        let b = reg.get("transfer").unwrap().mc(&t, Some(3), 3, &MultiIndex::empty(), &y).unwrap();
        assert_eq!(a, q(1));
        assert_eq!(a, b);
        assert!(matches!(
            reg.get("transfer").unwrap().mc(&t, None, 3, &MultiIndex::empty(), &y),
            Err(Error::MissingPruningCertificate(_))
        ));
    }

    #[test]
    fn digraph_json() {
        let v = serde_json::json!({"vertices": 2, "edges": [[0, 1, "2"], [1, 0, "1/2"]]});
        let g = FiniteDigraph::from_json(&v).unwrap();
        assert_eq!(FiniteDigraph::from_json(&g.to_json()).unwrap(), g);
        assert!(FiniteDigraph::from_json(&serde_json::json!({"vertices": 1, "edges": [[0, 3, "1"]]})).is_err());
    }
}

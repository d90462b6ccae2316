use std::fmt;

use crate::error::{Error, Result};

/// A vertex `s = (s_1, …, s_l)` of the Maurer-Cartan graph; the empty
/// sequence is the root `∅`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `l(s)`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|s|`.
    pub fn norm(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `|s_{<i}|` for 1-based `i`.
    pub fn prefix_norm(&self, i: usize) -> u32 {
        self.0[..i - 1].iter().sum()
    }

    /// `|s| + l(s)`; it never decreases along an edge.
    pub fn potential(&self) -> u32 {
        self.norm() + self.len() as u32
    }

    /// Membership in `E_N`: nonempty with `|s| + l(s) <= N`.
    pub fn in_e(&self, n: u32) -> bool {
        !self.is_empty() && self.potential() <= n
    }

    /// `N(s) = N - |s| - l(s)`.
    pub fn rest(&self, n: u32) -> Option<u32> {
        n.checked_sub(self.potential())
    }

    /// `(0, s)`.
    pub fn prepend_zero(&self) -> Self {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(0);
        v.extend_from_slice(&self.0);
        MultiIndex(v)
    }

    /// `s + e_i` for 1-based `i`.
    pub fn increment(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v[i - 1] += 1;
        MultiIndex(v)
    }

    /// Whether `t` can be reached from `self`: prepends add entries on the
    /// left and increments only grow entries, so `self` must sit
    /// entrywise below the last `l(self)` entries of `t`.
    pub fn can_reach(&self, t: &MultiIndex) -> bool {
        if self.len() > t.len() {
            return false;
        }
        let tail = &t.0[t.len() - self.len()..];
        self.0.iter().zip(tail).all(|(a, b)| a <= b)
    }

    /// Parses `1,0,2`, `(1,0,2)`, `()` or `∅`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t).trim();
        if t.is_empty() || t == "∅" {
            return Ok(MultiIndex::empty());
        }
        t.split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::parse(0, format!("`{s}` is not a multi-index"))))
            .collect::<Result<Vec<_>>>()
            .map(MultiIndex)
    }

    /// All `s ∈ E_N` in order of length, then entries.
    pub fn all_in_e(n: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for l in 1..=n {
            let mut cur = vec![0u32; l as usize];
            compositions(&mut cur, 0, n - l, &mut |s| out.push(MultiIndex(s.to_vec())));
        }
        out
    }
}

/// Visits every vector with the given length whose entries sum to at most
/// `budget`, in lexicographic order.
fn compositions(cur: &mut [u32], pos: usize, budget: u32, visit: &mut dyn FnMut(&[u32])) {
    if pos == cur.len() {
        visit(cur);
        return;
    }
    for v in 0..=budget {
        cur[pos] = v;
        compositions(cur, pos + 1, budget - v, visit);
    }
    cur[pos] = 0;
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_quantities() {
        let s = MultiIndex::new(vec![2, 0, 1]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.norm(), 3);
        assert_eq!(s.prefix_norm(1), 0);
        assert_eq!(s.prefix_norm(3), 2);
        assert!(s.in_e(6));
        assert!(!s.in_e(5));
        assert_eq!(s.rest(7), Some(1));
        assert_eq!(s.to_string(), "(2,0,1)");
        assert_eq!(MultiIndex::parse("(2, 0,1)").unwrap(), s);
        assert_eq!(MultiIndex::parse("∅").unwrap(), MultiIndex::empty());
        assert!(MultiIndex::parse("1,x").is_err());
    }

    #[test]
    fn e_n_enumeration() {
        let e3 = MultiIndex::all_in_e(3);
        let names: Vec<String> = e3.iter().map(|s| s.to_string()).collect();
        assert_eq!(names, ["(0)", "(1)", "(2)", "(0,0)", "(0,1)", "(1,0)", "(0,0,0)"]);
        assert!(MultiIndex::new(vec![1]).can_reach(&MultiIndex::new(vec![0, 2])));
        assert!(!MultiIndex::new(vec![1, 0]).can_reach(&MultiIndex::new(vec![0, 1])));
    }
}

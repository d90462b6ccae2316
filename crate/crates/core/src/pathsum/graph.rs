use std::collections::HashMap;
use std::fmt;

use super::multiindex::MultiIndex;

/// The three kinds of edge leaving a vertex `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// `s -> (0, s)`.
    Prepend,
    /// `s -> s`.
    Loop,
    /// `s -> s + e_i`, 1-based.
    Increment(usize),
}

impl Move {
    /// Recovers the move between two vertices, if they are adjacent.
    pub fn between(s: &MultiIndex, t: &MultiIndex) -> Option<Move> {
        if s == t {
            return Some(Move::Loop);
        }
        if t.len() == s.len() + 1 && t.entries()[0] == 0 && t.entries()[1..] == *s.entries() {
            return Some(Move::Prepend);
        }
        if t.len() == s.len() {
            let diff: Vec<usize> = (0..s.len()).filter(|&i| s.entries()[i] != t.entries()[i]).collect();
            if let [i] = diff[..] {
                if t.entries()[i] == s.entries()[i] + 1 {
                    return Some(Move::Increment(i + 1));
                }
            }
        }
        None
    }

    pub fn apply(self, s: &MultiIndex) -> MultiIndex {
        match self {
            Move::Prepend => s.prepend_zero(),
            Move::Loop => s.clone(),
            Move::Increment(i) => s.increment(i),
        }
    }
}

/// Edge weights of the Maurer-Cartan graph.
///
/// The standard table gives prepend weight 1, loop weight
/// `(-1)^{|s|+l(s)}` and increment weight `(-1)^{|s_{<i}|+i-1}`. The flip
/// switches exist so that tests can check the downstream identities really
/// depend on each sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeightTable {
    pub flip_prepend: bool,
    pub flip_loop: bool,
    pub flip_increment: bool,
}

impl Default for WeightTable {
    fn default() -> Self {
        WeightTable::standard()
    }
}

impl WeightTable {
    pub const fn standard() -> Self {
        WeightTable { flip_prepend: false, flip_loop: false, flip_increment: false }
    }

    pub const fn with_flipped_loop() -> Self {
        WeightTable { flip_prepend: false, flip_loop: true, flip_increment: false }
    }

    pub fn is_standard(&self) -> bool {
        *self == WeightTable::standard()
    }

    pub fn weight(&self, s: &MultiIndex, mv: Move) -> i128 {
        let (parity, flip) = match mv {
            Move::Prepend => (0, self.flip_prepend),
            Move::Loop => (s.potential(), self.flip_loop),
            Move::Increment(i) => (s.prefix_norm(i) + i as u32 - 1, self.flip_increment),
        };
        if (parity % 2 == 1) != flip {
            -1
        } else {
            1
        }
    }

    /// Outgoing edges of `s` in canonical order: prepend, loop, then
    /// increments by position.
    pub fn edges(&self, s: &MultiIndex) -> Vec<(Move, MultiIndex, i128)> {
        let mut out = Vec::with_capacity(s.len() + 2);
        for mv in
            std::iter::once(Move::Prepend).chain(std::iter::once(Move::Loop)).chain((1..=s.len()).map(Move::Increment))
        {
            out.push((mv, mv.apply(s), self.weight(s, mv)));
        }
        out
    }
}

/// A walk in the Maurer-Cartan graph together with its weight.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Path {
    vertices: Vec<MultiIndex>,
    weight: i128,
}

impl Path {
    pub fn vertices(&self) -> &[MultiIndex] {
        &self.vertices
    }

    pub fn weight(&self) -> i128 {
        self.weight
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn source(&self) -> &MultiIndex {
        &self.vertices[0]
    }

    pub fn target(&self) -> &MultiIndex {
        self.vertices.last().unwrap()
    }

    pub fn steps(&self) -> impl Iterator<Item = (&MultiIndex, &MultiIndex)> {
        self.vertices.windows(2).map(|w| (&w[0], &w[1]))
    }

    /// Builds a path from its vertex sequence, checking every step is a
    /// legal edge, and weighs it with `table`.
    pub fn from_vertices(vertices: Vec<MultiIndex>, table: &WeightTable) -> Option<Path> {
        if vertices.is_empty() {
            return None;
        }
        let mut weight = 1;
        for w in vertices.windows(2) {
            weight *= table.weight(&w[0], Move::between(&w[0], &w[1])?);
        }
        Some(Path { vertices, weight })
    }

    /// Recomputes the weight edge by edge; true when it matches the stored
    /// one and every step is legal.
    pub fn validate(&self, table: &WeightTable) -> bool {
        Path::from_vertices(self.vertices.clone(), table).is_some_and(|p| p.weight == self.weight)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("→"))
    }
}

/// Memoized weighted path sums towards a fixed target.
///
/// Every prepend or increment raises `|s| + l(s)` by one and loops keep it,
/// so from `v` with `r` steps left the target is reachable only when
/// `v.can_reach(target)` and the potential gap is at most `r`.
pub struct PathCounter<'a> {
    table: WeightTable,
    target: &'a MultiIndex,
    weighted: HashMap<(MultiIndex, u32), i128>,
    counts: HashMap<(MultiIndex, u32), u128>,
}

impl<'a> PathCounter<'a> {
    pub fn new(table: WeightTable, target: &'a MultiIndex) -> Self {
        PathCounter { table, target, weighted: HashMap::new(), counts: HashMap::new() }
    }

    fn viable(&self, v: &MultiIndex, steps: u32) -> bool {
        v.can_reach(self.target)
            && v.potential() <= self.target.potential()
            && self.target.potential() - v.potential() <= steps
    }

    /// Sum of weights of length-`steps` paths from `v` to the target.
    pub fn weighted(&mut self, v: &MultiIndex, steps: u32) -> i128 {
        if !self.viable(v, steps) {
            return 0;
        }
        if steps == 0 {
            return i128::from(v == self.target);
        }
        if let Some(&c) = self.weighted.get(&(v.clone(), steps)) {
            return c;
        }
        let mut total = 0;
        for (_, next, w) in self.table.edges(v) {
            total += w * self.weighted(&next, steps - 1);
        }
        self.weighted.insert((v.clone(), steps), total);
        total
    }

    /// Number of length-`steps` paths from `v` to the target.
    pub fn count(&mut self, v: &MultiIndex, steps: u32) -> u128 {
        if !self.viable(v, steps) {
            return 0;
        }
        if steps == 0 {
            return u128::from(v == self.target);
        }
        if let Some(&c) = self.counts.get(&(v.clone(), steps)) {
            return c;
        }
        let mut total = 0;
        for (_, next, _) in self.table.edges(v) {
            total += self.count(&next, steps - 1);
        }
        self.counts.insert((v.clone(), steps), total);
        total
    }

    /// Materializes the paths from `v`, in canonical edge order.
    pub fn paths(&self, v: &MultiIndex, steps: u32) -> Vec<Path> {
        let mut out = Vec::new();
        let mut stack = vec![v.clone()];
        self.walk(steps, 1, &mut stack, &mut out);
        out
    }

    fn walk(&self, steps: u32, weight: i128, stack: &mut Vec<MultiIndex>, out: &mut Vec<Path>) {
        let v = stack.last().unwrap().clone();
        if !self.viable(&v, steps) {
            return;
        }
        if steps == 0 {
            if &v == self.target {
                out.push(Path { vertices: stack.clone(), weight });
            }
            return;
        }
        for (_, next, w) in self.table.edges(&v) {
            stack.push(next);
            self.walk(steps - 1, weight * w, stack, out);
            stack.pop();
        }
    }
}

/// All length-`n` paths `∅ -> target` under the standard weights.
pub fn enumerate_paths(target: &MultiIndex, n: u32) -> Vec<Path> {
    enumerate_paths_with(&WeightTable::standard(), target, n)
}

pub fn enumerate_paths_with(table: &WeightTable, target: &MultiIndex, n: u32) -> Vec<Path> {
    PathCounter::new(*table, target).paths(&MultiIndex::empty(), n)
}

/// `c(s, N)`: the weighted number of length-`N` paths from `∅` to `s`.
pub fn mc_coefficient(s: &MultiIndex, n: u32) -> i128 {
    mc_coefficient_with(&WeightTable::standard(), s, n)
}

pub fn mc_coefficient_with(table: &WeightTable, s: &MultiIndex, n: u32) -> i128 {
    PathCounter::new(*table, s).weighted(&MultiIndex::empty(), n)
}

/// Unweighted number of length-`N` paths from `∅` to `s`.
pub fn path_count(s: &MultiIndex, n: u32) -> u128 {
    PathCounter::new(WeightTable::standard(), s).count(&MultiIndex::empty(), n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(s: &str) -> MultiIndex {
        MultiIndex::parse(s).unwrap()
    }

    #[test]
    fn single_path_to_two() {
        let paths = enumerate_paths(&mi("2"), 3);
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].to_string(), "∅→(0)→(1)→(2)");
        assert_eq!(paths[0].weight(), 1);
    }

    #[test]
    fn two_paths_cancel() {
        let paths = enumerate_paths(&mi("0,1"), 3);
        let mut ws: Vec<i128> = paths.iter().map(Path::weight).collect();
        ws.sort();
        assert_eq!(ws, [-1, 1]);
        assert_eq!(mc_coefficient(&mi("0,1"), 3), 0);
        assert_eq!(mc_coefficient(&mi("1,0"), 3), 1);
    }

    #[test]
    fn worked_coefficients() {
        let cases =
            [("2", 3, 1, 1), ("1,0", 3, 1, 1), ("0", 3, 1, 3), ("1,1", 4, 1, 3), ("0", 4, 0, 4), ("0,0,0,0", 4, 1, 1)];
        for (s, n, c, count) in cases {
            assert_eq!(mc_coefficient(&mi(s), n), c, "c({s},{n})");
            assert_eq!(path_count(&mi(s), n), count, "#P({s},{n})");
        }
        assert_eq!(mc_coefficient(&mi("5"), 3), 0);
        assert!(enumerate_paths(&mi("5"), 3).is_empty());
    }

    #[test]
    fn counts_match_enumeration() {
        for n in 1..=6 {
            for s in MultiIndex::all_in_e(n) {
                let paths = enumerate_paths(&s, n);
                assert_eq!(paths.len() as u128, path_count(&s, n), "{s} {n}");
                let sum: i128 = paths.iter().map(Path::weight).sum();
                assert_eq!(sum, mc_coefficient(&s, n));
                assert!(paths.iter().all(|p| p.validate(&WeightTable::standard())));
            }
        }
    }

    #[test]
    fn illegal_steps_rejected() {
        let t = WeightTable::standard();
        assert!(Path::from_vertices(vec![mi("∅"), mi("1")], &t).is_none());
        assert!(Path::from_vertices(vec![mi("0"), mi("0,0"), mi("0,1")], &t).is_some());
        assert_eq!(Move::between(&mi("1,0"), &mi("1,1")), Some(Move::Increment(2)));
    }
}

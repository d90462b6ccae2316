//! Integer combinations of words in the two letters `d` and `e`.

use std::collections::BTreeMap;
use std::fmt;

use super::ncpoly::NcPoly;

pub const D: u8 = b'd';
pub const E: u8 = b'e';

/// A word-indexed integer table; words read left to right as operator
/// composition.
pub type WordTable = BTreeMap<Vec<u8>, i128>;

fn add_to(t: &mut WordTable, w: Vec<u8>, c: i128) {
    if c == 0 {
        return;
    }
    let slot = t.entry(w.clone()).or_insert(0);
    *slot += c;
    if *slot == 0 {
        t.remove(&w);
    }
}

/// Whether `w` contains `d^run` as a factor.
pub fn has_d_run(w: &[u8], run: usize) -> bool {
    run > 0 && w.windows(run).any(|x| x.iter().all(|&l| l == D))
}

/// Word form of `e^{(j)}` from `E_0 = e` and `E_{j+1} = d E_j + (-1)^j E_j d`.
pub fn derived_e(j: u32) -> WordTable {
    let mut cur = WordTable::new();
    cur.insert(vec![E], 1);
    for i in 0..j {
        let mut next = WordTable::new();
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for (w, c) in &cur {
            let mut left = vec![D];
            left.extend_from_slice(w);
            add_to(&mut next, left, *c);
            let mut right = w.clone();
            right.push(D);
            add_to(&mut next, right, sign * c);
        }
        cur = next;
    }
    cur
}

/// Expands `Σ c·E_{s_1}⋯E_{s_l} d^k` into words, discarding any word that
/// contains `d^kill` when `kill` is given.
pub fn expand(p: &NcPoly, kill: Option<usize>) -> WordTable {
    let mut cache: BTreeMap<u32, WordTable> = BTreeMap::new();
    let dead = |w: &[u8]| kill.is_some_and(|r| has_d_run(w, r));
    let mut out = WordTable::new();
    for (word, k, c) in p.terms() {
        let mut acc = WordTable::new();
        acc.insert(Vec::new(), c);
        for &j in word {
            let ej = cache.entry(j).or_insert_with(|| derived_e(j)).clone();
            let mut next = WordTable::new();
            for (a, ca) in &acc {
                for (b, cb) in &ej {
                    let mut w = a.clone();
                    w.extend_from_slice(b);
                    if !dead(&w) {
                        add_to(&mut next, w, ca * cb);
                    }
                }
            }
            acc = next;
        }
        for (mut w, cw) in acc {
            w.extend(std::iter::repeat_n(D, k as usize));
            if !dead(&w) {
                add_to(&mut out, w, cw);
            }
        }
    }
    out
}

/// All `2^n` words of `(d + e)^n`, optionally restricted to those with
/// exactly `e_count` letters `e`, and without `d^kill` factors.
pub fn binomial_words(n: u32, e_count: Option<u32>, kill: Option<usize>) -> WordTable {
    let mut out = WordTable::new();
    for mask in 0u64..(1u64 << n) {
        if e_count.is_some_and(|c| mask.count_ones() != c) {
            continue;
        }
        let w: Vec<u8> = (0..n).map(|i| if mask >> (n - 1 - i) & 1 == 1 { E } else { D }).collect();
        if kill.is_some_and(|r| has_d_run(&w, r)) {
            continue;
        }
        out.insert(w, 1);
    }
    out
}

/// Keeps the words with exactly `count` letters `e`.
pub fn with_e_count(t: &WordTable, count: usize) -> WordTable {
    t.iter().filter(|(w, _)| w.iter().filter(|&&l| l == E).count() == count).map(|(w, c)| (w.clone(), *c)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordMismatch {
    pub word: String,
    pub lhs: i128,
    pub rhs: i128,
}

/// Result of comparing two word tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordVerdict {
    pub label: String,
    pub words_compared: usize,
    pub mismatches: Vec<WordMismatch>,
}

impl WordVerdict {
    pub fn compare(label: impl Into<String>, lhs: &WordTable, rhs: &WordTable) -> WordVerdict {
        let mut keys: Vec<&Vec<u8>> = lhs.keys().chain(rhs.keys()).collect();
        keys.sort();
        keys.dedup();
        let mismatches = keys
            .iter()
            .filter_map(|w| {
                let a = lhs.get(*w).copied().unwrap_or(0);
                let b = rhs.get(*w).copied().unwrap_or(0);
                (a != b).then(|| WordMismatch { word: String::from_utf8_lossy(w).into_owned(), lhs: a, rhs: b })
            })
            .collect();
        WordVerdict { label: label.into(), words_compared: keys.len(), mismatches }
    }

    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "check": self.label,
            "holds": self.holds(),
            "words_compared": self.words_compared,
            "mismatches": self.mismatches.iter().map(|m| serde_json::json!({
                "word": m.word, "lhs": m.lhs.to_string(), "rhs": m.rhs.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for WordVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds() {
            return write!(f, "{}: holds ({} words)", self.label, self.words_compared);
        }
        write!(f, "{}: fails on {} of {} words", self.label, self.mismatches.len(), self.words_compared)?;
        for m in self.mismatches.iter().take(8) {
            write!(f, "\n  {}: {} vs {}", m.word, m.lhs, m.rhs)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(entries: &[(&str, i128)]) -> WordTable {
        entries.iter().map(|(w, c)| (w.as_bytes().to_vec(), *c)).collect()
    }

    #[test]
    fn derived_words() {
        assert_eq!(derived_e(1), table(&[("de", 1), ("ed", 1)]));
        assert_eq!(derived_e(2), table(&[("dde", 1), ("edd", -1)]));
    }

    #[test]
    fn binomial_without_ddd() {
        let t = binomial_words(3, None, Some(3));
        assert_eq!(t.len(), 7);
        assert!(!t.contains_key(b"ddd".as_slice()));
    }
}

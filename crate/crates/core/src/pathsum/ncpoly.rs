use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A noncommuting polynomial in the symbols `E_0, E_1, …` (standing for
/// `e, d(e), d^2(e), …`) with each term followed by a power of `d`.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct NcPoly {
    terms: BTreeMap<(Vec<u32>, u32), i128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NcTerm {
    pub word: Vec<u32>,
    pub dpow: u32,
    pub coeff: i128,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, word: Vec<u32>, dpow: u32, coeff: i128) {
        if coeff == 0 {
            return;
        }
        let key = (word, dpow);
        let c = self.terms.entry(key.clone()).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, word: &[u32], dpow: u32) -> i128 {
        self.terms.get(&(word.to_vec(), dpow)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], u32, i128)> {
        self.terms.iter().map(|((w, k), c)| (w.as_slice(), *k, *c))
    }

    /// Right multiplication by `d^k`.
    pub fn times_d(&self, k: u32) -> NcPoly {
        NcPoly { terms: self.terms.iter().map(|((w, p), c)| ((w.clone(), p + k), *c)).collect() }
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, k, c) in other.terms() {
            out.add_term(w.to_vec(), k, c);
        }
        out
    }

    /// The part with trailing power `k`, with that power stripped.
    pub fn coefficient_of_d(&self, k: u32) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, p, c) in self.terms() {
            if p == k {
                out.add_term(w.to_vec(), 0, c);
            }
        }
        out
    }

    pub fn max_dpow(&self) -> Option<u32> {
        self.terms.keys().map(|(_, k)| *k).max()
    }

    pub fn to_terms(&self) -> Vec<NcTerm> {
        self.terms.iter().map(|((w, k), c)| NcTerm { word: w.clone(), dpow: *k, coeff: *c }).collect()
    }

    pub fn from_terms(terms: &[NcTerm]) -> NcPoly {
        let mut out = NcPoly::zero();
        for t in terms {
            out.add_term(t.word.clone(), t.dpow, t.coeff);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_terms()).expect("terms serialize")
    }

    /// Renders the `d`-free part: shorter words first, ties broken by
    /// descending word order so `d2(e)` precedes `d(e)` precedes `e`.
    fn render_words(&self) -> String {
        let mut ts: Vec<(&Vec<u32>, i128)> =
            self.terms.iter().filter(|((_, k), _)| *k == 0).map(|((w, _), c)| (w, *c)).collect();
        ts.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| b.0.cmp(a.0)));
        let mut out = String::new();
        for (i, (w, c)) in ts.iter().enumerate() {
            let body = render_word(w);
            let mag = c.unsigned_abs();
            let lead = if mag == 1 && !w.is_empty() { String::new() } else { mag.to_string() };
            match (i, *c < 0) {
                (0, false) => {}
                (0, true) => out.push('-'),
                (_, false) => out.push_str(" + "),
                (_, true) => out.push_str(" - "),
            }
            out.push_str(&lead);
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// `c_0 + c_1 d + c_2 d^2 + … = 0` in the notation `e, d(e), d2(e)`.
    pub fn render_equation(&self) -> String {
        let Some(top) = self.max_dpow() else {
            return "0 = 0".to_string();
        };
        let mut parts = Vec::new();
        for k in 0..=top {
            let c = self.coefficient_of_d(k);
            if c.is_zero() {
                continue;
            }
            let body = c.render_words();
            let single = c.len() == 1 && c.terms().next().is_some_and(|(_, _, x)| x == 1);
            let body = if single { body } else { format!("({body})") };
            parts.push(match k {
                0 => body,
                1 => format!("{body} d"),
                _ => format!("{body} d^{k}"),
            });
        }
        format!("{} = 0", parts.join(" + "))
    }
}

fn render_symbol(j: u32) -> String {
    match j {
        0 => "e".to_string(),
        1 => "d(e)".to_string(),
        _ => format!("d{j}(e)"),
    }
}

/// Juxtaposes symbols, collapsing runs: `e e` becomes `e^2`, `d(e) d(e)`
/// becomes `(d(e))^2`.
pub fn render_word(w: &[u32]) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < w.len() {
        let mut r = i;
        while r < w.len() && w[r] == w[i] {
            r += 1;
        }
        let run = r - i;
        let sym = render_symbol(w[i]);
        match (run, w[i]) {
            (1, _) => out.push_str(&sym),
            (_, 0) => out.push_str(&format!("{sym}^{run}")),
            _ => out.push_str(&format!("({sym})^{run}")),
        }
        i = r;
    }
    out
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.max_dpow() {
            None | Some(0) => f.write_str(&self.render_words()),
            Some(_) => {
                let eq = self.render_equation();
                f.write_str(eq.strip_suffix(" = 0").unwrap_or(&eq))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_rendering() {
        assert_eq!(render_word(&[0, 0, 0]), "e^3");
        assert_eq!(render_word(&[1, 1]), "(d(e))^2");
        assert_eq!(render_word(&[2, 0]), "d2(e)e");
        assert_eq!(render_word(&[0, 1, 0]), "ed(e)e");
    }

    #[test]
    fn equation_rendering() {
        let mut p = NcPoly::zero();
        p.add_term(vec![0, 0], 0, 1);
        p.add_term(vec![2], 0, 1);
        p.add_term(vec![0], 2, 1);
        p.add_term(vec![1], 1, 2);
        p.add_term(vec![0, 0], 1, -1);
        assert_eq!(p.render_equation(), "(d2(e) + e^2) + (2d(e) - e^2) d + e d^2 = 0");
        let back = NcPoly::from_terms(&serde_json::from_value::<Vec<NcTerm>>(p.to_json()).unwrap());
        assert_eq!(back, p);
    }
}

use std::fmt;

use super::graph::mc_coefficient;
use super::multiindex::MultiIndex;
use super::ncpoly::NcPoly;
use super::words::{binomial_words, expand, WordVerdict};

/// A weak composition `(p_1, …, p_m)`: non-negative parts with a fixed
/// length and sum.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Composition {
    pub parts: Vec<u32>,
}

impl Composition {
    /// `w(p) = Σ (i - 1) p_i`.
    pub fn w(&self) -> u32 {
        self.parts.iter().enumerate().map(|(i, p)| i as u32 * p).sum()
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `Par(k, m)`: all weak compositions of `k` into `m` parts, in
/// lexicographic order.
pub fn par(k: u32, m: u32) -> Vec<Composition> {
    fn go(k: u32, m: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if m == 1 {
            cur.push(k);
            out.push(Composition { parts: cur.clone() });
            cur.pop();
            return;
        }
        for v in 0..=k {
            cur.push(v);
            go(k - v, m - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m > 0 {
        go(k, m, &mut Vec::new(), &mut out);
    } else if k == 0 {
        out.push(Composition { parts: Vec::new() });
    }
    out
}

/// `Σ_{p ∈ Par(k, N-k+1)} (-1)^{w(p)}` for `k = 0..N-1`.
pub fn infinitesimal_coefficients(n: u32) -> Vec<i128> {
    (0..n).map(|k| par(k, n - k + 1).iter().map(|p| if p.w() % 2 == 0 { 1 } else { -1 }).sum()).collect()
}

/// The same numbers read off the path graph as `c((N-k-1), N)`.
pub fn infinitesimal_coefficients_from_paths(n: u32) -> Vec<i128> {
    (0..n).map(|k| mc_coefficient(&MultiIndex::new(vec![n - k - 1]), n)).collect()
}

/// Which trailing power of `d` follows `d^{N-k-1}(e)` in the `k`th term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trailing {
    /// `d^k`, forced by `(d + te)^N = Σ c_k d^k`.
    K,
    /// `d^{N-k-1}`, as the formula is sometimes displayed.
    Mirrored,
}

/// The `t`-linear part of `(d + te)^N` as a combination of `E_j d^i`.
pub fn infinitesimal_terms(n: u32, trailing: Trailing) -> NcPoly {
    let mut out = NcPoly::zero();
    for (k, c) in infinitesimal_coefficients(n).into_iter().enumerate() {
        let k = k as u32;
        let j = n - k - 1;
        let pow = match trailing {
            Trailing::K => k,
            Trailing::Mirrored => j,
        };
        out.add_term(vec![j], pow, c);
    }
    out
}

/// Checks the `t`-linear part word by word against the words of
/// `(d + e)^N` with exactly one `e`. No `d`-power is discarded, so the
/// comparison holds in any algebra.
pub fn verify_infinitesimal(n: u32, trailing: Trailing) -> WordVerdict {
    let lhs = binomial_words(n, Some(1), None);
    let rhs = expand(&infinitesimal_terms(n, trailing), None);
    let label = match trailing {
        Trailing::K => "infinitesimal identity (d^k)",
        Trailing::Mirrored => "infinitesimal identity (d^(N-k-1))",
    };
    WordVerdict::compare(format!("{label}, N={n}"), &lhs, &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(infinitesimal_coefficients(2), [1, 0]);
        assert_eq!(infinitesimal_coefficients(3), [1, 1, 1]);
        assert_eq!(par(1, 2).len(), 2);
        assert_eq!(par(2, 3).len(), 6);
    }

    #[test]
    fn agrees_with_paths() {
        for n in 2..=10 {
            assert_eq!(infinitesimal_coefficients(n), infinitesimal_coefficients_from_paths(n), "N={n}");
        }
    }

    #[test]
    fn word_check() {
        for n in 2..=8 {
            assert!(verify_infinitesimal(n, Trailing::K).holds(), "N={n}");
        }
        assert!(!verify_infinitesimal(4, Trailing::Mirrored).holds());
    }
}

use super::graph::{mc_coefficient_with, WeightTable};
use super::multiindex::MultiIndex;
use super::ncpoly::NcPoly;
use super::words::{binomial_words, expand, WordVerdict};

/// The coefficients `c_0, …, c_{N-1}` of `(d + e)^N = Σ c_k d^k` for a
/// deformation `d + e` of a 3-dga.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McEquation {
    pub n: u32,
    /// Whether multi-indices with an entry `>= 3` were kept.
    pub complete: bool,
    pub coeffs: Vec<NcPoly>,
}

impl McEquation {
    pub fn coeff(&self, k: u32) -> &NcPoly {
        &self.coeffs[k as usize]
    }

    /// `c_0 + c_1 d + c_2 d^2`; higher powers vanish since `d^3 = 0`.
    pub fn equation(&self) -> NcPoly {
        let mut out = NcPoly::zero();
        for (k, c) in self.coeffs.iter().enumerate().take(3) {
            out = out.add(&c.times_d(k as u32));
        }
        out
    }

    /// All of `Σ c_k d^k`, including the powers killed by `d^3 = 0`.
    pub fn full_sum(&self) -> NcPoly {
        let mut out = NcPoly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            out = out.add(&c.times_d(k as u32));
        }
        out
    }

    pub fn render(&self) -> String {
        self.equation().render_equation()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "N": self.n,
            "complete": self.complete,
            "equation": self.render(),
            "c": self.coeffs.iter().map(NcPoly::to_json).collect::<Vec<_>>(),
        })
    }
}

fn build(table: &WeightTable, n: u32, complete: bool) -> McEquation {
    let mut coeffs = vec![NcPoly::zero(); n as usize];
    for s in MultiIndex::all_in_e(n) {
        if !complete && s.entries().iter().any(|&x| x >= 3) {
            continue;
        }
        let c = mc_coefficient_with(table, &s, n);
        let k = s.rest(n).expect("s in E_N");
        coeffs[k as usize].add_term(s.entries().to_vec(), 0, c);
    }
    McEquation { n, complete, coeffs }
}

/// The `(3, N)` Maurer-Cartan coefficients with the filter `s_i < 3`.
pub fn mc_equation(n: u32) -> McEquation {
    build(&WeightTable::standard(), n, false)
}

/// Same sum without the `s_i < 3` filter.
pub fn mc_equation_complete(n: u32) -> McEquation {
    build(&WeightTable::standard(), n, true)
}

pub fn mc_equation_with(table: &WeightTable, n: u32, complete: bool) -> McEquation {
    build(table, n, complete)
}

/// Compares the words of `(d + e)^N` against the word expansion of
/// `Σ c_k d^k`, both taken modulo words containing `ddd`.
pub fn verify_mc_identity(n: u32) -> WordVerdict {
    verify_equation(&mc_equation(n))
}

pub fn verify_mc_identity_complete(n: u32) -> WordVerdict {
    verify_equation(&mc_equation_complete(n))
}

pub fn verify_equation(eq: &McEquation) -> WordVerdict {
    let lhs = binomial_words(eq.n, None, Some(3));
    let rhs = expand(&eq.full_sum(), Some(3));
    let label = if eq.complete { "mc identity (all s)" } else { "mc identity (s_i < 3)" };
    WordVerdict::compare(format!("{label}, N={}", eq.n), &lhs, &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_three() {
        let eq = mc_equation(3);
        assert_eq!(eq.render(), "(d2(e) + d(e)e + e^3) + (d(e) + e^2) d + e d^2 = 0");
        assert!(verify_mc_identity(3).holds());
    }

    #[test]
    fn three_four_coefficients() {
        let eq = mc_equation(4);
        let mut c0 = NcPoly::zero();
        for w in [vec![0, 0, 0, 0], vec![0, 0, 1], vec![1, 0, 0], vec![2, 0], vec![0, 2], vec![1, 1]] {
            c0.add_term(w, 0, 1);
        }
        let mut c2 = NcPoly::zero();
        c2.add_term(vec![0, 0], 0, 2);
        c2.add_term(vec![1], 0, 2);
        assert_eq!(eq.coeff(0), &c0);
        assert!(eq.coeff(1).is_zero());
        assert_eq!(eq.coeff(2), &c2);
        assert!(eq.coeff(3).is_zero());
    }

    #[test]
    fn complete_identity_holds() {
        for n in 3..=7 {
            assert!(verify_mc_identity_complete(n).holds(), "N={n}");
        }
    }

    #[test]
    fn filter_matters_from_four() {
        let v = verify_mc_identity(4);
        assert!(!v.holds());
        let bad: Vec<&str> = v.mismatches.iter().map(|m| m.word.as_str()).collect();
        assert_eq!(bad, ["dded", "dedd"]);
    }

    #[test]
    fn flipped_loop_breaks_identity() {
        let eq = mc_equation_with(&WeightTable::with_flipped_loop(), 3, true);
        assert!(!verify_equation(&eq).holds());
    }
}

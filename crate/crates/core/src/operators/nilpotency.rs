use std::collections::HashMap;
use std::fmt;

use serde_json::json;

use super::derivation::Derivation;
use crate::galgebra::{Monomial, Poly, Presentation};

/// Result of checking `T^N = 0` on a truncated monomial basis.
#[derive(Clone, Debug, PartialEq)]
pub struct NilpotencyVerdict {
    pub order_tested: u32,
    pub degree_bound: i32,
    pub word_bound: usize,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Verified { monomials_checked: usize },
    Counterexample { monomial: Monomial, image: Poly },
}

impl NilpotencyVerdict {
    pub fn is_verified(&self) -> bool {
        matches!(self.outcome, Outcome::Verified { .. })
    }

    pub fn counterexample(&self) -> Option<(&Monomial, &Poly)> {
        match &self.outcome {
            Outcome::Counterexample { monomial, image } => Some((monomial, image)),
            Outcome::Verified { .. } => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = json!({
            "order": self.order_tested,
            "degree_bound": self.degree_bound,
            "word_bound": self.word_bound,
            "verified": self.is_verified(),
        });
        match &self.outcome {
            Outcome::Verified { monomials_checked } => {
                v["monomials_checked"] = json!(monomials_checked);
            }
            Outcome::Counterexample { monomial, image } => {
                v["counterexample"] = json!({
                    "monomial": monomial.to_string(),
                    "image": image.to_string(),
                });
            }
        }
        v
    }
}

impl fmt::Display for NilpotencyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Verified { monomials_checked } => write!(
                f,
                "order {} verified on {} monomials (grade <= {}, word length <= {})",
                self.order_tested, monomials_checked, self.degree_bound, self.word_bound
            ),
            Outcome::Counterexample { monomial, image } => write!(
                f,
                "order {} fails (grade <= {}, word length <= {}): T^{}({monomial}) = {image}",
                self.order_tested, self.degree_bound, self.word_bound, self.order_tested
            ),
        }
    }
}

/// Normal monomials of the presentation within the bounds, in canonical
/// order.
pub fn basis_monomials(pres: &Presentation, degree_bound: i32, word_bound: usize) -> Vec<Monomial> {
    pres.monomials(degree_bound, word_bound)
        .into_iter()
        .filter(|m| pres.reduce(&Poly::monomial(m.clone())) == Poly::monomial(m.clone()))
        .collect()
}

/// Checks that `op` vanishes on every normal monomial within the bounds and
/// reports the first monomial (canonical order) where it does not.
pub fn check_operator(
    pres: &Presentation,
    order: u32,
    degree_bound: i32,
    word_bound: usize,
    mut op: impl FnMut(&Poly) -> Poly,
) -> NilpotencyVerdict {
    let basis = basis_monomials(pres, degree_bound, word_bound);
    let mut outcome = Outcome::Verified { monomials_checked: basis.len() };
    for m in basis {
        let image = op(&Poly::monomial(m.clone()));
        if !image.is_zero() {
            outcome = Outcome::Counterexample { monomial: m, image };
            break;
        }
    }
    NilpotencyVerdict { order_tested: order, degree_bound, word_bound, outcome }
}

/// Certifies `D^N = 0` on monomials of grade `<= degree_bound` with at most
/// `word_bound` factors.
pub fn nilpotency_check(d: &Derivation, n: u32, degree_bound: i32, word_bound: usize) -> NilpotencyVerdict {
    let mut cache: HashMap<Monomial, Poly> = HashMap::new();
    check_operator(d.presentation(), n, degree_bound, word_bound, |p| {
        let mut cur = p.clone();
        for _ in 0..n {
            if cur.is_zero() {
                break;
            }
            cur = d.apply_cached(&cur, &mut cache);
        }
        cur
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::galgebra::GVar;

    #[test]
    fn zero_derivation_is_one_nilpotent() {
        let p = Arc::new(Presentation::free([GVar::x(1, 0), GVar::theta(1)]).unwrap());
        let v = nilpotency_check(&Derivation::zero(p, 1), 1, 3, 3);
        assert!(v.is_verified());
    }
}

use super::derivation::Derivation;
use super::endop::{EndOperator, Letter};
use super::nilpotency::{check_operator, nilpotency_check, NilpotencyVerdict};
use crate::error::{Error, Result};

/// The curvature `F_e = d_End(e) + e∘e` over the alphabet `[d, e]`.
pub fn curvature(d: &Derivation, e: &Derivation) -> Result<EndOperator> {
    d.same_presentation(e)?;
    let ops = EndOperator::alphabet(vec![Letter::Der(d.clone()), Letter::Der(e.clone())]);
    ops[1].commutator_with_letter(0).add(&ops[1].compose(&ops[1])?)
}

/// Checks whether `d + e` is an `N`-differential through the curvature:
/// `F_e^{N/2} = 0` for even `N`, `F_e^{(N-1)/2} ∘ (d + e) = 0` for odd `N`.
pub fn curvature_condition(
    d: &Derivation,
    e: &Derivation,
    n: u32,
    degree_bound: i32,
    word_bound: usize,
) -> Result<NilpotencyVerdict> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("curvature order {n}")));
    }
    if d.degree() != 1 || (e.degree() != 1 && !e.is_zero()) {
        return Err(Error::Precondition("d and e must have degree one".into()));
    }
    let sq = nilpotency_check(d, 2, degree_bound, word_bound);
    if !sq.is_verified() {
        return Err(Error::Precondition(format!("d is not a differential: {sq}")));
    }
    let ops = EndOperator::alphabet(vec![Letter::Der(d.clone()), Letter::Der(e.clone())]);
    let f = ops[1].commutator_with_letter(0).add(&ops[1].compose(&ops[1])?)?;
    let op = if n % 2 == 0 { f.pow(n / 2)? } else { f.pow((n - 1) / 2)?.compose(&ops[0].add(&ops[1])?)? };
    Ok(check_operator(d.presentation(), n, degree_bound, word_bound, |p| op.apply(p)))
}

use std::sync::Arc;

use super::derivation::Derivation;
use super::nilpotency::{nilpotency_check, NilpotencyVerdict};
use crate::error::{Error, Result};
use crate::galgebra::Presentation;

/// A presentation with a degree-one derivation and the nilpotency order it
/// is claimed to have. The claim is a label; [`Dga::certify`] checks it.
#[derive(Clone, Debug)]
pub struct Dga {
    pub d: Derivation,
    pub claimed_order: u32,
}

impl Dga {
    pub fn new(d: Derivation, claimed_order: u32) -> Result<Self> {
        if d.degree() != 1 && !d.is_zero() {
            return Err(Error::InvalidDerivation("the differential must have degree one".into()));
        }
        Ok(Dga { d, claimed_order })
    }

    /// The ground field with zero differential, a 1-dga.
    pub fn ground() -> Self {
        let pres = Arc::new(Presentation::builder().build().expect("empty presentation"));
        Dga { d: Derivation::zero(pres, 1), claimed_order: 1 }
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        self.d.presentation()
    }

    pub fn certify(&self, degree_bound: i32, word_bound: usize) -> NilpotencyVerdict {
        nilpotency_check(&self.d, self.claimed_order, degree_bound, word_bound)
    }
}

/// `A ⊗ B` with `d(a⊗b) = d_A(a)⊗b + (-1)^{|a|} a⊗d_B(b)`, claimed order
/// `N + P - 1`.
///
/// With disjoint generators the tensor product is the merged presentation
/// and the differential is the derivation agreeing with `d_A` and `d_B` on
/// the respective generators; the sign comes from the Leibniz rule.
pub fn tensor_dga(a: &Dga, b: &Dga) -> Result<Dga> {
    let pres = Arc::new(a.presentation().tensor(b.presentation())?);
    let images = a.d.images().iter().chain(b.d.images()).map(|(g, p)| (*g, p.clone()));
    let d = Derivation::new(pres, 1, images)?;
    Dga::new(d, a.claimed_order + b.claimed_order - 1)
}

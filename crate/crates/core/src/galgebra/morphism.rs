use std::collections::BTreeMap;
use std::sync::Arc;

use super::poly::Poly;
use super::presentation::Presentation;
use super::var::GVar;
use crate::error::{Error, Result};

/// An algebra morphism given by images of generators and eliminated
/// variables of the source.
#[derive(Clone, Debug)]
pub struct Morphism {
    source: Arc<Presentation>,
    target: Arc<Presentation>,
    images: BTreeMap<GVar, Poly>,
}

impl Morphism {
    /// `images` must cover every generator of `source`; images of eliminated
    /// variables are derived from their substitutions when missing.
    pub fn new(
        source: Arc<Presentation>,
        target: Arc<Presentation>,
        images: impl IntoIterator<Item = (GVar, Poly)>,
    ) -> Result<Self> {
        let mut table = BTreeMap::new();
        for (v, img) in images {
            if !source.knows(&v) {
                return Err(Error::PresentationMismatch(v.to_string()));
            }
            table.insert(v, target.normalize(&img)?);
        }
        for g in source.generators() {
            if !table.contains_key(g) {
                return Err(Error::InvalidPresentation(format!("no image given for {g}")));
            }
        }
        let mut m = Morphism { source, target, images: table };
        let subs: Vec<(GVar, Poly)> = m.source.substitutions().iter().map(|(v, p)| (*v, p.clone())).collect();
        for (v, sub) in subs {
            if !m.images.contains_key(&v) {
                let img = m.apply(&sub);
                m.images.insert(v, img);
            }
        }
        Ok(m)
    }

    pub fn source(&self) -> &Arc<Presentation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Presentation> {
        &self.target
    }

    pub fn image(&self, v: &GVar) -> Option<&Poly> {
        self.images.get(v)
    }

    pub fn images(&self) -> &BTreeMap<GVar, Poly> {
        &self.images
    }

    /// Image of a polynomial (in source variables, normal or not).
    pub fn apply(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            let mut acc = Poly::constant(c.clone());
            for &(v, e) in m.factors() {
                let img = self.images.get(&v).cloned().unwrap_or_else(|| {
                    // eliminated variable whose image is not yet known
                    let sub = &self.source.substitutions()[&v];
                    self.apply(sub)
                });
                for _ in 0..e {
                    acc = self.target.mul(&acc, &img);
                }
            }
            out += &acc;
        }
        out
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Morphism) -> Result<Morphism> {
        if *other.target != *self.source {
            return Err(Error::DifferentPresentations);
        }
        Morphism::new(
            other.source.clone(),
            self.target.clone(),
            other.source.generators().iter().map(|g| (*g, self.apply(&other.images[g]))),
        )
    }

    /// Agreement on all generators.
    pub fn same_as(&self, other: &Morphism) -> bool {
        *self.source == *other.source
            && *self.target == *other.target
            && self.source.generators().iter().all(|g| self.images[g] == other.images[g])
    }
}

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::galgebra::{Family, GVar, Morphism, Poly, Presentation};
use crate::operators::{Derivation, Dga};

/// An order-preserving map `{0..n} → {0..m}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeltaMap {
    target_dim: u32,
    values: Vec<u32>,
}

impl DeltaMap {
    pub fn new(target_dim: u32, values: Vec<u32>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::OutOfRange("empty simplex map".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::NotOrderPreserving(values));
        }
        if values.iter().any(|&v| v > target_dim) {
            return Err(Error::OutOfRange(format!("map {values:?} into [0, {target_dim}]")));
        }
        Ok(DeltaMap { target_dim, values })
    }

    pub fn identity(n: u32) -> Self {
        DeltaMap { target_dim: n, values: (0..=n).collect() }
    }

    /// `δ^i: [n-1] → [n]`, the injection skipping `i`.
    pub fn coface(n: u32, i: u32) -> Self {
        DeltaMap { target_dim: n, values: (0..=n).filter(|&k| k != i).collect() }
    }

    /// `σ^j: [n+1] → [n]`, the surjection hitting `j` twice.
    pub fn codegeneracy(n: u32, j: u32) -> Self {
        DeltaMap { target_dim: n, values: (0..=n + 1).map(|k| if k <= j { k } else { k - 1 }).collect() }
    }

    pub fn source_dim(&self) -> u32 {
        self.values.len() as u32 - 1
    }

    pub fn target_dim(&self) -> u32 {
        self.target_dim
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &DeltaMap) -> Result<DeltaMap> {
        if after.source_dim() != self.target_dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose a map into [{}] with a map from [{}]",
                self.target_dim,
                after.source_dim()
            )));
        }
        DeltaMap::new(after.target_dim, self.values.iter().map(|&v| after.values[v as usize]).collect())
    }
}

/// Depth-`N` polynomial forms on sites `1..=n` of a variable family: the
/// generators `d^j v_i` for `0 <= j < N`, with `d^j v_i · d^k v_i = 0` for
/// `j, k >= 1`. With `simplex`, site 0 is added and eliminated through
/// `v_0 = 1 - Σ v_i` and `d^j v_0 = -Σ d^j v_i`.
pub(crate) fn depth_presentation(family: Family, depth: u32, n: u32, simplex: bool) -> Result<Presentation> {
    let var = |site, j| GVar::new(family, site, j, j as i32);
    let mut b = Presentation::builder();
    for i in 1..=n {
        for j in 0..depth {
            b = b.generator(var(i, j));
        }
    }
    let first = if simplex { 0 } else { 1 };
    for i in first..=n {
        for j in 1..depth {
            for k in j..depth {
                b = b.annihilate(var(i, j), var(i, k));
            }
        }
    }
    if simplex {
        for j in 0..depth {
            let mut img = if j == 0 { Poly::one() } else { Poly::zero() };
            for i in 1..=n {
                img -= &Poly::var(var(i, j));
            }
            b = b.substitute(var(0, j), img);
        }
    }
    b.build()
}

/// The derivation `d^j v ↦ d^{j+1} v`, vanishing on the top depth.
pub(crate) fn depth_derivation(pres: Arc<Presentation>, depth: u32) -> Result<Derivation> {
    let images: Vec<(GVar, Poly)> =
        pres.generators().iter().filter(|g| g.depth() + 1 < depth).map(|g| (*g, Poly::var(g.deeper(1)))).collect();
    Derivation::new(pres, 1, images)
}

/// `Ω_N(ℝⁿ)`, or the simplex algebra `Ω_N(n)` when `simplex` is set.
///
/// The claimed nilpotency order is `n(N-1)+1`; it is a claim, certified
/// separately by [`Dga::certify`].
pub fn omega_space(depth: u32, n: u32, simplex: bool) -> Result<Dga> {
    if depth < 2 {
        return Err(Error::OutOfRange(format!("depth N = {depth}")));
    }
    if n == 0 && !simplex {
        return Err(Error::OutOfRange("dimension n = 0".into()));
    }
    let pres = Arc::new(depth_presentation(Family::x(), depth, n, simplex)?);
    let d = depth_derivation(pres, depth)?;
    Dga::new(d, n * (depth - 1) + 1)
}

/// The simplex algebra of dimension `n` for a family, cached per call site.
pub(crate) fn simplex_algebra(family: Family, depth: u32, n: u32) -> Result<Arc<Presentation>> {
    Ok(Arc::new(depth_presentation(family, depth, n, true)?))
}

/// The morphism `A(m) → A(n)` induced by `f: [n] → [m]` on simplex
/// algebras of the given family: `d^k v_j ↦ Σ_{f(i)=j} d^k v_i`.
pub(crate) fn simplex_morphism(
    family: Family,
    depth: u32,
    f: &DeltaMap,
    source: Arc<Presentation>,
    target: Arc<Presentation>,
) -> Result<Morphism> {
    let mut images = Vec::new();
    for j in 0..=f.target_dim() {
        for k in 0..depth {
            let mut img = Poly::zero();
            for (i, &fi) in f.values().iter().enumerate() {
                if fi == j {
                    img += &target.normalize(&Poly::var(GVar::new(family, i as u32, k, k as i32)))?;
                }
            }
            images.push((GVar::new(family, j, k, k as i32), img));
        }
    }
    Morphism::new(source, target, images.into_iter().filter(|(v, _)| v.site() != 0))
}

/// `Ω_N(f): Ω_N(m) → Ω_N(n)` for `f: [n] → [m]`.
pub fn omega_map(f: &DeltaMap, depth: u32) -> Result<Morphism> {
    let source = simplex_algebra(Family::x(), depth, f.target_dim())?;
    let target = simplex_algebra(Family::x(), depth, f.source_dim())?;
    simplex_morphism(Family::x(), depth, f, source, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galgebra::parse_poly;

    #[test]
    fn simplex_elimination() {
        let dga = omega_space(3, 1, true).unwrap();
        let p = dga.presentation();
        assert_eq!(parse_poly("x0", p).unwrap().to_string(), "1 - x1");
        assert_eq!(parse_poly("d2x0", p).unwrap().to_string(), "-d2x1");
        assert_eq!(dga.d.apply(&parse_poly("x0", p).unwrap()).to_string(), "-d1x1");
    }

    #[test]
    fn delta_maps() {
        assert!(DeltaMap::new(1, vec![1, 0]).is_err());
        assert!(DeltaMap::new(1, vec![0, 2]).is_err());
        let s = DeltaMap::codegeneracy(1, 0);
        assert_eq!(s.values(), [0, 0, 1]);
        let d = DeltaMap::coface(2, 1);
        assert_eq!(d.values(), [0, 2]);
        // σ^j δ^j = id
        assert_eq!(DeltaMap::coface(2, 0).then(&s).unwrap(), DeltaMap::identity(1));
    }

    #[test]
    fn degeneracy_of_an_edge_sends_x0_to_one() {
        let f = DeltaMap::new(0, vec![0, 0]).unwrap();
        let phi = omega_map(&f, 3).unwrap();
        let x0 = GVar::x(0, 0);
        assert_eq!(phi.image(&x0).unwrap(), &Poly::one());
        let face = DeltaMap::new(1, vec![1]).unwrap();
        let psi = omega_map(&face, 3).unwrap();
        assert!(psi.image(&x0).unwrap().is_zero());
        assert_eq!(psi.image(&GVar::x(1, 0)).unwrap(), &Poly::one());
    }
}

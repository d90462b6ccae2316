use std::fmt;

use num_traits::Zero;

use super::structure::{ce_derivation, StructureData};
use crate::error::{Error, Result};
use crate::rational::Q;
use crate::strategy::Registry;

/// Permutations of `1..=k` (as 0-based images) that increase on each block
/// of the given sizes, with their signs.
pub fn shuffles(blocks: &[usize]) -> Vec<(Vec<usize>, bool)> {
    let n: usize = blocks.iter().sum();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        let mut start = 0;
        for &len in blocks {
            if p[start..start + len].windows(2).any(|w| w[0] > w[1]) {
                return;
            }
            start += len;
        }
        out.push((p.to_vec(), odd_permutation(p)));
    });
    out.sort();
    out
}

fn permutations(p: &mut [usize], k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, visit);
        p.swap(k, i);
    }
}

fn odd_permutation(p: &[usize]) -> bool {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
}

fn basis(r: usize, a: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); r];
    v[a] = Q::from_integer(1.into());
    v
}

fn add_signed(acc: &mut [Q], v: &[Q], neg: bool) {
    for (a, b) in acc.iter_mut().zip(v) {
        if neg {
            *a -= b;
        } else {
            *a += b;
        }
    }
}

/// `Σ_{Sh(2,1)} sgn(σ) [[v_σ1, v_σ2], v_σ3]`; vanishes for all triples
/// exactly when the bracket satisfies Jacobi.
pub fn jacobiator(s: &StructureData, v: [&[Q]; 3]) -> Vec<Q> {
    let mut acc = vec![Q::zero(); s.r()];
    for (p, neg) in shuffles(&[2, 1]) {
        let inner = s.bracket(v[p[0]], v[p[1]]);
        add_signed(&mut acc, &s.bracket(&inner, v[p[2]]), neg);
    }
    acc
}

/// `Σ_{Sh(2,1,1)} sgn [[[v_σ1, v_σ2], v_σ3], v_σ4] - Σ_{Sh(2,2)} sgn
/// [[v_σ1, v_σ2], [v_σ3, v_σ4]]`.
pub fn shuffle_defect(s: &StructureData, v: [&[Q]; 4]) -> Vec<Q> {
    let mut acc = vec![Q::zero(); s.r()];
    for (p, neg) in shuffles(&[2, 1, 1]) {
        let b12 = s.bracket(v[p[0]], v[p[1]]);
        let b123 = s.bracket(&b12, v[p[2]]);
        add_signed(&mut acc, &s.bracket(&b123, v[p[3]]), neg);
    }
    for (p, neg) in shuffles(&[2, 2]) {
        let left = s.bracket(v[p[0]], v[p[1]]);
        let right = s.bracket(v[p[2]], v[p[3]]);
        add_signed(&mut acc, &s.bracket(&left, &right), !neg);
    }
    acc
}

/// Outcome of one 3-Lie test route.
#[derive(Clone, Debug, PartialEq)]
pub struct RouteVerdict {
    pub three_lie: bool,
    /// Human-readable descriptions of the first few nonzero residuals.
    pub residuals: Vec<String>,
}

pub trait ThreeLieMethod: Send + Sync {
    fn check(&self, s: &StructureData) -> Result<RouteVerdict>;
}

/// `∂ ⋄ (∂ ⋄ ∂) = 0` for the Chevalley-Eilenberg derivation.
pub struct OperatorRoute;

impl ThreeLieMethod for OperatorRoute {
    fn check(&self, s: &StructureData) -> Result<RouteVerdict> {
        let cube = ce_derivation(s).diamond_power(3)?;
        let residuals = cube.images().iter().take(4).map(|(g, img)| format!("d⋄d⋄d({g}) = {img}")).collect();
        Ok(RouteVerdict { three_lie: cube.is_zero(), residuals })
    }
}

/// The bracket identity over `Sh(2,1,1)` and `Sh(2,2)` on all basis
/// 4-tuples.
pub struct ShuffleRoute;

impl ThreeLieMethod for ShuffleRoute {
    fn check(&self, s: &StructureData) -> Result<RouteVerdict> {
        require_constant(s)?;
        let r = s.r();
        let e: Vec<Vec<Q>> = (0..r).map(|a| basis(r, a)).collect();
        let mut residuals = Vec::new();
        let mut ok = true;
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    for d in 0..r {
                        let v = shuffle_defect(s, [&e[a], &e[b], &e[c], &e[d]]);
                        if v.iter().any(|x| !x.is_zero()) {
                            ok = false;
                            if residuals.len() < 4 {
                                residuals.push(format!("(e{}, e{}, e{}, e{}) -> {v:?}", a + 1, b + 1, c + 1, d + 1));
                            }
                        }
                    }
                }
            }
        }
        Ok(RouteVerdict { three_lie: ok, residuals })
    }
}

fn require_constant(s: &StructureData) -> Result<()> {
    if !s.is_constant() || (0..s.r()).any(|a| (0..s.r()).any(|b| (0..s.r()).any(|g| !s.c(a, b, g).vars().is_empty()))) {
        return Err(Error::Precondition("the bracket identity route needs constant structure data (n = 0)".into()));
    }
    Ok(())
}

pub fn three_lie_registry() -> Registry<dyn ThreeLieMethod> {
    Registry::<dyn ThreeLieMethod>::new("3-Lie method")
        .with("operator", Box::new(OperatorRoute))
        .with("shuffle", Box::new(ShuffleRoute))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThreeLieVerdict {
    pub jacobi: bool,
    /// Jacobi read from the bracket (`Σ_{Sh(2,1)}` on basis triples).
    pub jacobi_bracket: bool,
    pub operator: RouteVerdict,
    pub shuffle: RouteVerdict,
}

impl ThreeLieVerdict {
    pub fn three_lie(&self) -> bool {
        self.operator.three_lie
    }

    pub fn routes_agree(&self) -> bool {
        self.operator.three_lie == self.shuffle.three_lie && self.jacobi == self.jacobi_bracket
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "jacobi": self.jacobi,
            "three_lie": self.three_lie(),
            "routes_agree": self.routes_agree(),
            "operator": {"three_lie": self.operator.three_lie, "residuals": self.operator.residuals},
            "shuffle": {"three_lie": self.shuffle.three_lie, "residuals": self.shuffle.residuals},
        })
    }
}

impl fmt::Display for ThreeLieVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "jacobi: {}", self.jacobi)?;
        writeln!(f, "3-lie (operator): {}", self.operator.three_lie)?;
        writeln!(f, "3-lie (shuffle): {}", self.shuffle.three_lie)?;
        for r in self.operator.residuals.iter().chain(&self.shuffle.residuals) {
            writeln!(f, "  {r}")?;
        }
        write!(f, "routes agree: {}", self.routes_agree())
    }
}

/// Runs both routes and the Jacobi test on constant structure data.
pub fn is_3_lie(s: &StructureData) -> Result<ThreeLieVerdict> {
    require_constant(s)?;
    let jacobi = ce_derivation(s).diamond_power(2)?.is_zero();
    let r = s.r();
    let e: Vec<Vec<Q>> = (0..r).map(|a| basis(r, a)).collect();
    let mut jacobi_bracket = true;
    'outer: for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                if jacobiator(s, [&e[a], &e[b], &e[c]]).iter().any(|x| !x.is_zero()) {
                    jacobi_bracket = false;
                    break 'outer;
                }
            }
        }
    }
    Ok(ThreeLieVerdict { jacobi, jacobi_bracket, operator: OperatorRoute.check(s)?, shuffle: ShuffleRoute.check(s)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galgebra::Poly;
    use crate::liealgebroid::structure::{theta, theta_coefficient};
    use crate::rational::q;

    #[test]
    fn shuffle_sets() {
        assert_eq!(shuffles(&[2, 1, 1]).len(), 12);
        assert_eq!(shuffles(&[2, 2]).len(), 6);
        let sh21: Vec<(Vec<usize>, bool)> = shuffles(&[2, 1]);
        assert_eq!(sh21, [(vec![0, 1, 2], false), (vec![0, 2, 1], true), (vec![1, 2, 0], false)]);
    }

    #[test]
    fn lie_algebras_are_three_lie() {
        for s in [StructureData::sl2(), StructureData::abelian(4)] {
            let v = is_3_lie(&s).unwrap();
            assert!(v.jacobi && v.three_lie() && v.routes_agree(), "{v}");
        }
    }

    /// The 3-form `d²θ^γ` evaluated on basis triples is the Sh(2,1) sum.
    #[test]
    fn square_matches_jacobiator() {
        let mut c = std::collections::BTreeMap::new();
        c.insert((0, 1, 2), q(1));
        c.insert((1, 2, 0), q(2));
        c.insert((0, 2, 1), q(-1));
        c.insert((0, 1, 0), q(3));
        let s = StructureData::lie_algebra(3, &c).unwrap();
        let d = ce_derivation(&s);
        let e: Vec<Vec<Q>> = (0..3).map(|a| basis(3, a)).collect();
        let j = jacobiator(&s, [&e[0], &e[1], &e[2]]);
        for g in 0..3 {
            let dd = d.apply(&d.apply(&Poly::var(theta(g))));
            assert_eq!(theta_coefficient(&dd, &[0, 1, 2]).constant_term(), j[g]);
        }
    }
}

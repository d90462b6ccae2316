use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::galgebra::{parse_poly, render, GVar, Monomial, Poly, Presentation};
use crate::operators::Derivation;
use crate::rational::Q;

/// `x^1, …, x^n` (even) and `θ^1, …, θ^r` (odd), optionally with an even
/// parameter `t` satisfying `t^2 = 0`.
pub fn coordinate_algebra(n: usize, r: usize, with_t: bool) -> Result<Presentation> {
    let mut b = Presentation::builder()
        .generators((1..=n as u32).map(|i| GVar::x(i, 0)))
        .generators((1..=r as u32).map(GVar::theta));
    if with_t {
        b = b.generator(GVar::t()).annihilate(GVar::t(), GVar::t());
    }
    b.build()
}

pub fn x(i: usize) -> GVar {
    GVar::x(i as u32 + 1, 0)
}

pub fn theta(a: usize) -> GVar {
    GVar::theta(a as u32 + 1)
}

/// Coefficient of `θ^{a_1}⋯θ^{a_k}` (indices 0-based, any order) in `p`,
/// read as a polynomial in the even variables: the value of the form `p`
/// on `(e_{a_1}, …, e_{a_k})`.
pub fn theta_coefficient(p: &Poly, idx: &[usize]) -> Poly {
    let factors: Vec<(GVar, u32)> = idx.iter().map(|&a| (theta(a), 1)).collect();
    let Some((neg, target)) = Monomial::from_ordered(&factors) else {
        return Poly::zero();
    };
    let mut out = Poly::zero();
    for (m, c) in p.terms() {
        let thetas: Vec<(GVar, u32)> =
            m.factors().iter().filter(|(v, _)| v.family() == theta(0).family()).copied().collect();
        if thetas != target.factors() {
            continue;
        }
        let rest: Vec<(GVar, u32)> =
            m.factors().iter().filter(|(v, _)| v.family() != theta(0).family()).copied().collect();
        let (_, rest) = Monomial::from_ordered(&rest).expect("even factors");
        out.add_term(rest, if neg { -c.clone() } else { c.clone() });
    }
    out
}

/// Anchor `ρ^i_α` and bracket constants `C^γ_{αβ}` of a Lie algebroid
/// candidate over coordinates `x^1..x^n` with fibre rank `r`.
///
/// `C` are the constants of the bracket, `[e_α, e_β] = C^γ_{αβ} e_γ`. The
/// associated degree-one field is `ρ^i_α θ^α ∂_{x^i} + ½ F^γ_{αβ} θ^α θ^β
/// ∂_{θ^γ}` with `F = -C`, which is the normalization reproducing
/// `dθ(v, w) = -θ([v, w])`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureData {
    n: usize,
    r: usize,
    pres: Arc<Presentation>,
    rho: Vec<Vec<Poly>>,
    c: Vec<Vec<Vec<Poly>>>,
}

impl StructureData {
    /// `rho[i][α]` is `ρ^i_α`; `c[α][β][γ]` is `C^γ_{αβ}`.
    pub fn new(n: usize, r: usize, rho: Vec<Vec<Poly>>, c: Vec<Vec<Vec<Poly>>>) -> Result<Self> {
        let pres = Arc::new(coordinate_algebra(n, r, false)?);
        let bad = |p: &Poly| p.vars().iter().any(|v| v.family() != GVar::x(1, 0).family() || v.grade() != 0);
        if rho.len() != n || rho.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidStructure(format!("anchor must be {n}x{r}")));
        }
        if c.len() != r || c.iter().any(|m| m.len() != r || m.iter().any(|v| v.len() != r)) {
            return Err(Error::InvalidStructure(format!("bracket constants must be {r}x{r}x{r}")));
        }
        for (i, row) in rho.iter().enumerate() {
            for (a, p) in row.iter().enumerate() {
                if bad(p) || p.vars().iter().any(|v| v.site() as usize > n) {
                    return Err(Error::InvalidStructure(format!(
                        "rho^{}_{} = {p} is not a function of x",
                        i + 1,
                        a + 1
                    )));
                }
            }
        }
        for a in 0..r {
            for b in 0..r {
                for g in 0..r {
                    let p = &c[a][b][g];
                    if bad(p) || p.vars().iter().any(|v| v.site() as usize > n) {
                        return Err(Error::InvalidStructure(format!(
                            "C^{}_{}{} is not a function of x",
                            g + 1,
                            a + 1,
                            b + 1
                        )));
                    }
                    if *p != -c[b][a][g].clone() {
                        return Err(Error::InvalidStructure(format!(
                            "C^{}_{{{},{}}} is not antisymmetric",
                            g + 1,
                            a + 1,
                            b + 1
                        )));
                    }
                }
            }
        }
        Ok(StructureData { n, r, pres, rho, c })
    }

    /// Structure constants of a Lie algebra (no base coordinates).
    pub fn lie_algebra(r: usize, c: &BTreeMap<(usize, usize, usize), Q>) -> Result<Self> {
        let mut cc = vec![vec![vec![Poly::zero(); r]; r]; r];
        for (&(a, b, g), v) in c {
            if a >= r || b >= r || g >= r {
                return Err(Error::InvalidStructure(format!(
                    "index out of range in C^{}_{{{},{}}}",
                    g + 1,
                    a + 1,
                    b + 1
                )));
            }
            cc[a][b][g] = Poly::constant(v.clone());
            cc[b][a][g] = Poly::constant(-v.clone());
        }
        StructureData::new(0, r, Vec::new(), cc)
    }

    /// `sl_2` in the basis `(h, e, f)`: `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
    pub fn sl2() -> Self {
        let mut c = BTreeMap::new();
        c.insert((0, 1, 1), Q::from_integer(2.into()));
        c.insert((0, 2, 2), Q::from_integer((-2).into()));
        c.insert((1, 2, 0), Q::from_integer(1.into()));
        StructureData::lie_algebra(3, &c).expect("valid constants")
    }

    pub fn abelian(r: usize) -> Self {
        StructureData::lie_algebra(r, &BTreeMap::new()).expect("valid constants")
    }

    /// The tangent bundle of `R^n`: identity anchor, zero bracket.
    pub fn tangent(n: usize) -> Self {
        let rho = (0..n).map(|i| (0..n).map(|a| if i == a { Poly::one() } else { Poly::zero() }).collect()).collect();
        StructureData::new(n, n, rho, vec![vec![vec![Poly::zero(); n]; n]; n]).expect("valid data")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn rho(&self, i: usize, a: usize) -> &Poly {
        &self.rho[i][a]
    }

    /// `C^γ_{αβ}`.
    pub fn c(&self, a: usize, b: usize, g: usize) -> &Poly {
        &self.c[a][b][g]
    }

    /// Field coefficient `F^γ_{αβ} = -C^γ_{αβ}`.
    pub fn f(&self, a: usize, b: usize, g: usize) -> Poly {
        -self.c[a][b][g].clone()
    }

    pub fn is_constant(&self) -> bool {
        self.n == 0
    }

    /// Constant bracket of two coefficient vectors (requires `n = 0`).
    pub fn bracket(&self, u: &[Q], v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.r];
        for a in 0..self.r {
            if u[a].is_zero() {
                continue;
            }
            for b in 0..self.r {
                if v[b].is_zero() {
                    continue;
                }
                for (g, slot) in out.iter_mut().enumerate() {
                    let c = self.c[a][b][g].constant_term();
                    if !c.is_zero() {
                        *slot += &u[a] * &v[b] * c;
                    }
                }
            }
        }
        out
    }

    /// `{"n":0, "r":3, "C":{"1,2":{"3":"1"}}, "rho":{"1,2":"x1"}}`; indices
    /// are 1-based and antisymmetry of `C` is completed automatically.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::InvalidStructure("expected an object".into()))?;
        let dim = |k: &str| -> Result<usize> {
            match obj.get(k) {
                None => Ok(0),
                Some(x) => x
                    .as_u64()
                    .map(|n| n as usize)
                    .ok_or_else(|| Error::InvalidStructure(format!("`{k}` must be a non-negative integer"))),
            }
        };
        let (n, r) = (dim("n")?, dim("r")?);
        let pres = coordinate_algebra(n, r, false)?;
        let scalar = |x: &Value| -> Result<Poly> {
            match x {
                Value::String(s) => parse_poly(s, &pres),
                Value::Number(num) if num.is_i64() => Ok(Poly::int(num.as_i64().unwrap())),
                _ => Err(Error::InvalidStructure(format!("`{x}` is not a polynomial"))),
            }
        };
        let pair = |k: &str, bound_a: usize, bound_b: usize| -> Result<(usize, usize)> {
            let parts: Vec<&str> = k.split(',').map(str::trim).collect();
            let parse = |s: &str, bound: usize| -> Result<usize> {
                s.parse::<usize>()
                    .ok()
                    .filter(|&i| i >= 1 && i <= bound)
                    .map(|i| i - 1)
                    .ok_or_else(|| Error::InvalidStructure(format!("bad index `{s}` in `{k}`")))
            };
            match parts[..] {
                [a, b] => Ok((parse(a, bound_a)?, parse(b, bound_b)?)),
                _ => Err(Error::InvalidStructure(format!("`{k}` is not an index pair"))),
            }
        };
        let mut c = vec![vec![vec![Poly::zero(); r]; r]; r];
        let mut seen: BTreeMap<(usize, usize, usize), Poly> = BTreeMap::new();
        if let Some(cv) = obj.get("C") {
            let cm = cv.as_object().ok_or_else(|| Error::InvalidStructure("`C` must be an object".into()))?;
            for (k, inner) in cm {
                let (a, b) = pair(k, r, r)?;
                let im =
                    inner.as_object().ok_or_else(|| Error::InvalidStructure(format!("`C.{k}` must be an object")))?;
                for (gk, val) in im {
                    let g = gk
                        .trim()
                        .parse::<usize>()
                        .ok()
                        .filter(|&g| g >= 1 && g <= r)
                        .ok_or_else(|| Error::InvalidStructure(format!("bad index `{gk}`")))?
                        - 1;
                    let p = scalar(val)?;
                    if a == b && !p.is_zero() {
                        return Err(Error::InvalidStructure(format!("C^{}_{{{k}}} must vanish", g + 1)));
                    }
                    if let Some(prev) = seen.get(&(b, a, g)) {
                        if *prev != -p.clone() {
                            return Err(Error::InvalidStructure(format!(
                                "C^{}_{{{k}}} contradicts antisymmetry",
                                g + 1
                            )));
                        }
                    }
                    seen.insert((a, b, g), p.clone());
                    c[b][a][g] = -p.clone();
                    c[a][b][g] = p;
                }
            }
        }
        let mut rho = vec![vec![Poly::zero(); r]; n];
        if let Some(rv) = obj.get("rho") {
            let rm = rv.as_object().ok_or_else(|| Error::InvalidStructure("`rho` must be an object".into()))?;
            for (k, val) in rm {
                let (i, a) = pair(k, n, r)?;
                rho[i][a] = scalar(val)?;
            }
        }
        StructureData::new(n, r, rho, c)
    }

    pub fn to_json(&self) -> Value {
        let mut cm = Map::new();
        for a in 0..self.r {
            for b in a + 1..self.r {
                let mut inner = Map::new();
                for g in 0..self.r {
                    if !self.c[a][b][g].is_zero() {
                        inner.insert((g + 1).to_string(), Value::String(render(&self.c[a][b][g])));
                    }
                }
                if !inner.is_empty() {
                    cm.insert(format!("{},{}", a + 1, b + 1), Value::Object(inner));
                }
            }
        }
        let mut rm = Map::new();
        for i in 0..self.n {
            for a in 0..self.r {
                if !self.rho[i][a].is_zero() {
                    rm.insert(format!("{},{}", i + 1, a + 1), Value::String(render(&self.rho[i][a])));
                }
            }
        }
        json!({"n": self.n, "r": self.r, "C": cm, "rho": rm})
    }
}

/// The degree-one derivation `x^i ↦ ρ^i_α θ^α`,
/// `θ^γ ↦ -Σ_{α<β} C^γ_{αβ} θ^α θ^β`.
pub fn ce_derivation(s: &StructureData) -> Derivation {
    let pres = s.pres.clone();
    let mut images = Vec::new();
    for i in 0..s.n {
        let mut img = Poly::zero();
        for a in 0..s.r {
            img += &pres.mul(&s.rho[i][a], &Poly::var(theta(a)));
        }
        images.push((x(i), img));
    }
    for g in 0..s.r {
        let mut img = Poly::zero();
        for a in 0..s.r {
            for b in a + 1..s.r {
                let tt = pres.product(&[theta(a), theta(b)]);
                img -= &pres.mul(&s.c[a][b][g], &tt);
            }
        }
        images.push((theta(g), img));
    }
    Derivation::new(pres, 1, images).expect("images have degree one")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn cartan_formula_on_one_forms() {
        let s = StructureData::sl2();
        let d = ce_derivation(&s);
        for g in 0..3 {
            let dth = d.apply(&Poly::var(theta(g)));
            for a in 0..3 {
                for b in 0..3 {
                    let mut ea = vec![q(0); 3];
                    let mut eb = vec![q(0); 3];
                    ea[a] = q(1);
                    eb[b] = q(1);
                    let br = s.bracket(&ea, &eb);
                    assert_eq!(theta_coefficient(&dth, &[a, b]).constant_term(), -br[g].clone());
                }
            }
        }
    }

    #[test]
    fn de_rham_and_abelian() {
        assert!(ce_derivation(&StructureData::abelian(3)).is_zero());
        let d = ce_derivation(&StructureData::tangent(2));
        assert_eq!(render(&d.image(&x(1))), "th2");
        assert!(d.diamond_power(2).unwrap().is_zero());
        assert!(ce_derivation(&StructureData::sl2()).diamond_power(2).unwrap().is_zero());
    }

    #[test]
    fn json_round_trip() {
        let v = json!({"n": 1, "r": 2, "C": {"2,1": {"1": "x1"}}, "rho": {"1,2": "x1^2"}});
        let s = StructureData::from_json(&v).unwrap();
        assert_eq!(render(s.c(0, 1, 0)), "-x1");
        assert_eq!(StructureData::from_json(&s.to_json()).unwrap(), s);
        let bad = json!({"n": 0, "r": 2, "C": {"1,2": {"1": "1"}, "2,1": {"1": "1"}}});
        assert!(StructureData::from_json(&bad).is_err());
        assert!(StructureData::from_json(&json!({"r": 1, "C": {"1,1": {"1": "1"}}})).is_err());
    }
}

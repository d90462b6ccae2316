use std::fmt;

use super::structure::{ce_derivation, theta, x, StructureData};
use crate::error::{Error, Result};
use crate::galgebra::{render, GVar, Poly};
use crate::rational::q_frac;

/// Coordinate identities for a structure and the operator verdict they are
/// meant to encode.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub order: u32,
    /// Nonzero residuals with a label naming the free indices.
    pub residuals: Vec<(String, Poly)>,
    /// Whether the `order`-th diamond power of the derivation vanishes.
    pub operator_zero: bool,
}

impl IdentityReport {
    pub fn vanish(&self) -> bool {
        self.residuals.is_empty()
    }

    pub fn agrees(&self) -> bool {
        self.vanish() == self.operator_zero
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.order,
            "residuals_vanish": self.vanish(),
            "operator_zero": self.operator_zero,
            "agree": self.agrees(),
            "residuals": self.residuals.iter().map(|(l, p)| serde_json::json!({"at": l, "value": render(p)})).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order {} identities vanish: {}", self.order, self.vanish())?;
        writeln!(f, "diamond power {} vanishes: {}", self.order, self.operator_zero)?;
        for (l, p) in self.residuals.iter().take(6) {
            writeln!(f, "  {l}: {}", render(p))?;
        }
        write!(f, "agree: {}", self.agrees())
    }
}

struct Ctx<'a> {
    s: &'a StructureData,
}

impl Ctx<'_> {
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.s.presentation().mul(a, b)
    }

    fn dx(&self, p: &Poly, i: usize) -> Poly {
        p.partial(&x(i))
    }

    /// `ρ^j_α ∂_j p`.
    fn anchor_apply(&self, alpha: usize, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for j in 0..self.s.n() {
            out += &self.mul(self.s.rho(j, alpha), &self.dx(p, j));
        }
        out
    }

    fn thetas(&self, idx: &[usize]) -> Poly {
        let vars: Vec<GVar> = idx.iter().map(|&a| theta(a)).collect();
        self.s.presentation().product(&vars)
    }
}

/// Anchor-homomorphism and cyclic identities:
/// `ρ^j_α ∂_j ρ^i_β - ρ^j_β ∂_j ρ^i_α - ρ^i_γ C^γ_{αβ}` and
/// `Σ_cycl(α,β,γ) (ρ^i_α ∂_i C^μ_{βγ} + C^μ_{αν} C^ν_{βγ})`.
pub fn order_two_residuals(s: &StructureData) -> Vec<(String, Poly)> {
    let cx = Ctx { s };
    let (n, r) = (s.n(), s.r());
    let mut out = Vec::new();
    for i in 0..n {
        for a in 0..r {
            for b in a + 1..r {
                let mut res = cx.anchor_apply(a, s.rho(i, b)) - cx.anchor_apply(b, s.rho(i, a));
                for g in 0..r {
                    res -= &cx.mul(s.rho(i, g), s.c(a, b, g));
                }
                if !res.is_zero() {
                    out.push((format!("anchor i={} a={} b={}", i + 1, a + 1, b + 1), res));
                }
            }
        }
    }
    for mu in 0..r {
        for a in 0..r {
            for b in a + 1..r {
                for c in b + 1..r {
                    let mut res = Poly::zero();
                    for (p, q, t) in [(a, b, c), (b, c, a), (c, a, b)] {
                        res += &cx.anchor_apply(p, s.c(q, t, mu));
                        for nu in 0..r {
                            res += &cx.mul(s.c(p, nu, mu), s.c(q, t, nu));
                        }
                    }
                    if !res.is_zero() {
                        out.push((format!("cyclic mu={} a={} b={} c={}", mu + 1, a + 1, b + 1, c + 1), res));
                    }
                }
            }
        }
    }
    out
}

/// The two θ-contracted identities displayed for the third diamond power,
/// evaluated as printed with `C` read as the field coefficient `F` and
/// every index other than the θ indices and the fixed one summed.
pub fn order_three_residuals(s: &StructureData) -> Vec<(String, Poly)> {
    let cx = Ctx { s };
    let (n, r) = (s.n(), s.r());
    let f = |a: usize, b: usize, g: usize| s.f(a, b, g);
    let half = q_frac(1, 2);
    let quarter = q_frac(1, 4);
    let mut out = Vec::new();
    for g in 0..r {
        let mut total = Poly::zero();
        for nu in 0..r {
            for si in 0..r {
                for mu in 0..r {
                    for be in 0..r {
                        let tt = cx.thetas(&[nu, si, mu, be]);
                        if tt.is_zero() {
                            continue;
                        }
                        let mut half_part = cx.anchor_apply(nu, &cx.anchor_apply(be, &f(si, mu, g)));
                        let mut ff = Poly::zero();
                        for al in 0..r {
                            ff += &cx.mul(&f(al, be, g), &f(si, mu, al));
                        }
                        half_part += &cx.anchor_apply(nu, &ff);
                        for la in 0..r {
                            half_part += &cx.mul(&cx.anchor_apply(be, &f(la, mu, g)), &f(mu, si, la));
                        }
                        for al in 0..r {
                            for la in 0..r {
                                half_part += &cx.mul(&cx.mul(&f(al, be, g), &f(la, mu, al)), &f(nu, si, la));
                            }
                        }
                        let mut quarter_part = Poly::zero();
                        for la in 0..r {
                            quarter_part += &cx.mul(&f(nu, si, be), &cx.anchor_apply(be, &f(la, mu, g)));
                        }
                        for al in 0..r {
                            for ep in 0..r {
                                quarter_part += &cx.mul(&cx.mul(&f(be, mu, al), &f(al, ep, g)), &f(nu, si, ep));
                            }
                        }
                        let coeff = half_part.scale(&half) - quarter_part.scale(&quarter);
                        total += &cx.mul(&coeff, &tt);
                    }
                }
            }
        }
        if !total.is_zero() {
            out.push((format!("theta gamma={}", g + 1), total));
        }
    }
    for i in 0..n {
        let mut total = Poly::zero();
        for si in 0..r {
            for nu in 0..r {
                for ga in 0..r {
                    let tt = cx.thetas(&[si, nu, ga]);
                    if tt.is_zero() {
                        continue;
                    }
                    let whole = cx.anchor_apply(ga, &cx.anchor_apply(nu, s.rho(i, ga)));
                    let mut halfp = Poly::zero();
                    let mut rc = Poly::zero();
                    for al in 0..r {
                        rc += &cx.mul(s.rho(i, al), &f(nu, ga, al));
                    }
                    halfp += &cx.anchor_apply(si, &rc);
                    for ep in 0..r {
                        halfp += &cx.mul(&cx.anchor_apply(ep, s.rho(i, ga)), &f(si, nu, ep));
                        halfp -= &cx.mul(&cx.anchor_apply(ga, s.rho(i, ep)), &f(si, nu, ep));
                    }
                    for al in 0..r {
                        for be in 0..r {
                            halfp += &cx.mul(&cx.mul(s.rho(i, al), &f(be, ga, al)), &f(si, nu, be));
                        }
                    }
                    let coeff = whole + halfp.scale(&half);
                    total += &cx.mul(&coeff, &tt);
                }
            }
        }
        if !total.is_zero() {
            out.push((format!("x i={}", i + 1), total));
        }
    }
    out
}

pub fn algebroid_identities(s: &StructureData, order: u32) -> Result<IdentityReport> {
    let residuals = match order {
        2 => order_two_residuals(s),
        3 => order_three_residuals(s),
        _ => return Err(Error::OutOfRange(format!("identity order {order} (expected 2 or 3)"))),
    };
    let operator_zero = ce_derivation(s).diamond_power(order)?.is_zero();
    Ok(IdentityReport { order, residuals, operator_zero })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealgebroid::structure::theta_coefficient;

    #[test]
    fn tangent_bundle() {
        let s = StructureData::tangent(3);
        for order in [2, 3] {
            let rep = algebroid_identities(&s, order).unwrap();
            assert!(rep.vanish() && rep.operator_zero);
        }
    }

    #[test]
    fn order_two_matches_square_coefficients() {
        let v = serde_json::json!({
            "n": 2, "r": 3,
            "rho": {"1,1": "x2", "2,2": "x1", "1,3": "1"},
            "C": {"1,2": {"3": "x1"}, "2,3": {"1": "1", "2": "x2"}},
        });
        let s = StructureData::from_json(&v).unwrap();
        let sq = ce_derivation(&s).diamond_power(2).unwrap();
        let res = order_two_residuals(&s);
        assert!(!res.is_empty());
        let find =
            |label: &str| res.iter().find(|(l, _)| l == label).map(|(_, p)| p.clone()).unwrap_or_else(Poly::zero);
        for i in 0..2 {
            for a in 0..3 {
                for b in a + 1..3 {
                    let got = theta_coefficient(&sq.image(&x(i)), &[a, b]);
                    assert_eq!(got, find(&format!("anchor i={} a={} b={}", i + 1, a + 1, b + 1)));
                }
            }
        }
        for mu in 0..3 {
            let got = theta_coefficient(&sq.image(&theta(mu)), &[0, 1, 2]);
            assert_eq!(got, -find(&format!("cyclic mu={} a=1 b=2 c=3", mu + 1)));
        }
    }
}

use std::sync::Arc;

use serde_json::{json, Value};

use super::structure::{coordinate_algebra, theta, x};
use crate::error::{Error, Result};
use crate::galgebra::{parse_poly, render, GVar, Poly, Presentation};
use crate::operators::Derivation;
use crate::rational::Q;

/// Functions `a^i_α` of the even coordinates deforming the de Rham field
/// `δ^i_α θ^α ∂_{x^i}` into `(δ^i_α + [t] a^i_α) θ^α ∂_{x^i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationMatrix {
    n: usize,
    /// `a[i][α] = a^i_α`.
    a: Vec<Vec<Poly>>,
    infinitesimal: bool,
    pres: Arc<Presentation>,
}

impl DeformationMatrix {
    pub fn new(a: Vec<Vec<Poly>>, infinitesimal: bool) -> Result<Self> {
        let n = a.len();
        if a.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch(format!("deformation matrix must be square, got {n} rows")));
        }
        for p in a.iter().flatten() {
            if p.vars().iter().any(|v| v.family() != GVar::x(1, 0).family() || v.grade() != 0 || v.site() as usize > n)
            {
                return Err(Error::InvalidStructure(format!("{p} is not a function of x1..x{n}")));
            }
        }
        let pres = Arc::new(coordinate_algebra(n, n, infinitesimal)?);
        Ok(DeformationMatrix { n, a, infinitesimal, pres })
    }

    /// Builds from a displayed array whose row `β` lists `a^1_β, …, a^n_β`.
    pub fn from_form_rows(rows: Vec<Vec<Poly>>, infinitesimal: bool) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("deformation matrix must be square".into()));
        }
        let a = (0..n).map(|i| (0..n).map(|b| rows[b][i].clone()).collect()).collect();
        DeformationMatrix::new(a, infinitesimal)
    }

    /// `{"infinitesimal": true, "a": [["x1", "1/2*x4^2"], …]}` with row `i`
    /// holding `a^i_1, …, a^i_n`; `"rows": "form"` reads rows as the lower
    /// index instead.
    pub fn from_json(v: &Value) -> Result<Self> {
        let infinitesimal = v.get("infinitesimal").and_then(Value::as_bool).unwrap_or(false);
        let rows = v
            .get("a")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidStructure("expected an array `a`".into()))?;
        let n = rows.len();
        let pres = coordinate_algebra(n, n, false)?;
        let parsed = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::InvalidStructure("rows of `a` must be arrays".into()))?
                    .iter()
                    .map(|e| match e {
                        Value::String(s) => parse_poly(s, &pres),
                        Value::Number(num) if num.is_i64() => Ok(Poly::int(num.as_i64().unwrap())),
                        _ => Err(Error::InvalidStructure(format!("`{e}` is not a polynomial"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        match v.get("rows").and_then(Value::as_str) {
            Some("form") => DeformationMatrix::from_form_rows(parsed, infinitesimal),
            None | Some("coordinate") => DeformationMatrix::new(parsed, infinitesimal),
            Some(other) => Err(Error::InvalidStructure(format!("unknown row layout `{other}`"))),
        }
    }

    pub fn to_json(&self) -> Value {
        let a: Vec<Vec<String>> = self.a.iter().map(|row| row.iter().map(render).collect()).collect();
        json!({"infinitesimal": self.infinitesimal, "a": a})
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_infinitesimal(&self) -> bool {
        self.infinitesimal
    }

    pub fn entry(&self, i: usize, alpha: usize) -> &Poly {
        &self.a[i][alpha]
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    /// `(δ^i_α + [t] a^i_α)`.
    fn coefficient(&self, i: usize, alpha: usize) -> Poly {
        let mut c = if self.infinitesimal {
            self.pres.mul(&Poly::var(GVar::t()), &self.a[i][alpha])
        } else {
            self.a[i][alpha].clone()
        };
        if i == alpha {
            c += &Poly::one();
        }
        c
    }

    /// `δ^i_α + a^i_α` without the parameter.
    fn full(&self, i: usize, alpha: usize) -> Poly {
        let mut c = self.a[i][alpha].clone();
        if i == alpha {
            c += &Poly::one();
        }
        c
    }

    pub fn field(&self) -> Derivation {
        let images = (0..self.n).map(|i| {
            let mut img = Poly::zero();
            for alpha in 0..self.n {
                img += &self.pres.mul(&self.coefficient(i, alpha), &Poly::var(theta(alpha)));
            }
            (x(i), img)
        });
        Derivation::new(self.pres.clone(), 1, images).expect("degree-one images")
    }

    fn tt(&self, idx: &[usize]) -> Poly {
        let vars: Vec<GVar> = idx.iter().map(|&a| theta(a)).collect();
        self.pres.product(&vars)
    }

    fn d(&self, p: &Poly, i: usize) -> Poly {
        p.partial(&x(i))
    }

    fn from_images(&self, degree: i32, images: Vec<Poly>) -> Derivation {
        Derivation::new(self.pres.clone(), degree, images.into_iter().enumerate().map(|(j, p)| (x(j), p)))
            .expect("closed form has the right degree")
    }

    /// `t ∂_α a^j_β θ^α θ^β ∂_{x^j}`.
    pub fn infinitesimal_square_closed(&self) -> Derivation {
        let t = Poly::var(GVar::t());
        let n = self.n;
        let images = (0..n)
            .map(|j| {
                let mut img = Poly::zero();
                for al in 0..n {
                    for be in 0..n {
                        let c = self.d(&self.a[j][be], al);
                        img += &self.pres.mul(&c, &self.tt(&[al, be]));
                    }
                }
                self.pres.mul(&t, &img)
            })
            .collect();
        self.from_images(2, images)
    }

    /// `(δ^i_α + a^i_α) ∂_i a^j_β θ^α θ^β ∂_{x^j}`, the full-case square.
    pub fn full_square_closed(&self) -> Derivation {
        let n = self.n;
        let images = (0..n)
            .map(|j| {
                let mut img = Poly::zero();
                for al in 0..n {
                    for be in 0..n {
                        let mut c = Poly::zero();
                        for i in 0..n {
                            c += &self.pres.mul(&self.full(i, al), &self.d(&self.a[j][be], i));
                        }
                        img += &self.pres.mul(&c, &self.tt(&[al, be]));
                    }
                }
                img
            })
            .collect();
        self.from_images(2, images)
    }

    /// The full-case cube in the closed form
    /// `(δ^l_γ + a^l_γ){∂_l a^i_α ∂_i a^j_β + w^i_α ∂_l ∂_i a^j_β} θ^γ θ^α θ^β ∂_{x^j}`
    /// with `w^i_α = a^i_α` (`corrected = false`) or `w^i_α = δ^i_α + a^i_α`
    /// (`corrected = true`). Applying the field to the square produces the
    /// second; the first drops the term `a^l_γ ∂_l ∂_α a^j_β`.
    pub fn full_cube_closed(&self, corrected: bool) -> Derivation {
        let n = self.n;
        let images = (0..n)
            .map(|j| {
                let mut img = Poly::zero();
                for g in 0..n {
                    for al in 0..n {
                        for be in 0..n {
                            let mut brace = Poly::zero();
                            for i in 0..n {
                                let dj = self.d(&self.a[j][be], i);
                                let w = if corrected { self.full(i, al) } else { self.a[i][al].clone() };
                                for l in 0..n {
                                    let lead = self.full(l, g);
                                    if lead.is_zero() {
                                        continue;
                                    }
                                    let mut inner = self.pres.mul(&self.d(&self.a[i][al], l), &dj);
                                    inner += &self.pres.mul(&w, &self.d(&dj, l));
                                    brace += &self.pres.mul(&lead, &inner);
                                }
                            }
                            if !brace.is_zero() {
                                img += &self.pres.mul(&brace, &self.tt(&[g, al, be]));
                            }
                        }
                    }
                }
                img
            })
            .collect();
        self.from_images(3, images)
    }
}

/// The first displayed example (rows indexed by the form index).
pub fn displayed_matrix_closed() -> DeformationMatrix {
    example(&[
        ["x1", "1/2*x4^2", "x1", "x1"],
        ["x2", "x2", "x3", "x2"],
        ["x3", "x3", "x2", "x4"],
        ["x4", "x4*x1", "x4", "x3"],
    ])
}

/// The second displayed example, whose square is nonzero.
pub fn displayed_matrix_open() -> DeformationMatrix {
    example(&[
        ["x1*x4", "x1", "x1", "x1"],
        ["x2", "x2*x4", "x2", "x2"],
        ["x3", "x3", "x3*x4", "x3"],
        ["x4", "x4", "x4", "x1*x4"],
    ])
}

fn example(rows: &[[&str; 4]; 4]) -> DeformationMatrix {
    let pres = coordinate_algebra(4, 4, false).expect("free algebra");
    let rows = rows.iter().map(|r| r.iter().map(|s| parse_poly(s, &pres).expect("literal parses")).collect()).collect();
    DeformationMatrix::from_form_rows(rows, true).expect("square")
}

/// `a^i_α = A^i_α x^α` for a constant matrix `A`, full case.
pub fn scaled_coordinates(a: &[Vec<Q>]) -> Result<DeformationMatrix> {
    let entries =
        a.iter().map(|row| row.iter().enumerate().map(|(alpha, c)| Poly::var(x(alpha)).scale(c)).collect()).collect();
    DeformationMatrix::new(entries, false)
}

/// Squares and cubes of `∂_a` with the closed-form comparisons.
#[derive(Clone)]
pub struct DeformationReport {
    pub square: Derivation,
    pub cube: Derivation,
    /// Infinitesimal case: the square equals `t ∂_α a^j_β θ^α θ^β ∂_j`.
    pub square_matches_closed: bool,
    /// Full case: the cube equals the displayed closed form.
    pub cube_matches_printed: Option<bool>,
    /// Full case: the cube equals the closed form with `δ + a` inside.
    pub cube_matches_corrected: Option<bool>,
}

impl DeformationReport {
    pub fn to_json(&self) -> Value {
        let imgs = |d: &Derivation| -> Value {
            d.images()
                .iter()
                .map(|(g, p)| (g.to_string(), Value::String(render(p))))
                .collect::<serde_json::Map<_, _>>()
                .into()
        };
        json!({
            "square_zero": self.square.is_zero(),
            "cube_zero": self.cube.is_zero(),
            "square": imgs(&self.square),
            "cube": imgs(&self.cube),
            "square_matches_closed": self.square_matches_closed,
            "cube_matches_printed": self.cube_matches_printed,
            "cube_matches_corrected": self.cube_matches_corrected,
        })
    }
}

pub fn deform_de_rham(a: &DeformationMatrix) -> Result<DeformationReport> {
    let field = a.field();
    let square = field.diamond_power(2)?;
    let cube = field.diamond(&square)?;
    if a.infinitesimal {
        let closed = a.infinitesimal_square_closed();
        Ok(DeformationReport {
            square_matches_closed: square == closed,
            square,
            cube,
            cube_matches_printed: None,
            cube_matches_corrected: None,
        })
    } else {
        let closed = a.full_square_closed();
        Ok(DeformationReport {
            square_matches_closed: square == closed,
            cube_matches_printed: Some(cube == a.full_cube_closed(false)),
            cube_matches_corrected: Some(cube == a.full_cube_closed(true)),
            square,
            cube,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn displayed_examples() {
        let closed = deform_de_rham(&displayed_matrix_closed()).unwrap();
        assert!(closed.square.is_zero() && closed.square_matches_closed);
        let open = deform_de_rham(&displayed_matrix_open()).unwrap();
        assert!(!open.square.is_zero() && open.square_matches_closed);
        assert!(open.cube.is_zero());
    }

    #[test]
    fn full_case_closed_forms() {
        let pres = coordinate_algebra(3, 3, false).unwrap();
        let p = |s: &str| parse_poly(s, &pres).unwrap();
        let rows = [["x1^2", "x2", "x3*x1"], ["x1*x2", "0", "x3^2"], ["x2", "x1", "x3"]];
        let a = DeformationMatrix::new(rows.iter().map(|r| r.iter().map(|s| p(s)).collect()).collect(), false).unwrap();
        let r = deform_de_rham(&a).unwrap();
        assert!(r.square_matches_closed);
        assert!(!r.cube.is_zero());
        assert_eq!(r.cube_matches_corrected, Some(true));
        assert_eq!(r.cube_matches_printed, Some(false));
        // linear entries: both closed forms coincide with the cube
        let rows = [["x2", "x1", "x3"], ["0", "x1", "x2"], ["x3", "0", "x1"]];
        let lin =
            DeformationMatrix::new(rows.iter().map(|r| r.iter().map(|s| p(s)).collect()).collect(), false).unwrap();
        let r = deform_de_rham(&lin).unwrap();
        assert_eq!(r.cube_matches_printed, Some(true));
        assert_eq!(r.cube_matches_corrected, Some(true));
    }

    #[test]
    fn rank_one_square_zero() {
        // A = e_1 e_2^T has A^2 = 0
        let a = vec![vec![q(0), q(1)], vec![q(0), q(0)]];
        let r = deform_de_rham(&scaled_coordinates(&a).unwrap()).unwrap();
        assert!(r.cube.is_zero());
    }
}

//! Powers of a graded vector field `Σ a^i ∂_i`.

use std::sync::Arc;

use super::diffop::DiffOperator;
use crate::error::{Error, Result};
use crate::galgebra::{GVar, Monomial, Poly, Presentation};
use crate::rational::sign;
use crate::strategy::Registry;

/// `Σ_i a^i ∂_{x_i}` over free variables of a presentation.
#[derive(Clone, Debug)]
pub struct VectorField {
    pres: Arc<Presentation>,
    vars: Vec<GVar>,
    coeffs: Vec<Poly>,
}

impl VectorField {
    pub fn new(pres: Arc<Presentation>, components: Vec<(GVar, Poly)>) -> Result<Self> {
        let mut vars = Vec::new();
        let mut coeffs = Vec::new();
        let mut degree = None;
        for (v, a) in components {
            if !pres.is_free_in(&v) {
                return Err(Error::InvalidDerivation(format!("{v} is not a free variable")));
            }
            if vars.contains(&v) {
                return Err(Error::InvalidDerivation(format!("{v} listed twice")));
            }
            let a = pres.normalize(&a)?;
            if !a.is_zero() {
                let g = a
                    .homogeneous_grade()
                    .ok_or_else(|| Error::InvalidDerivation(format!("coefficient {a} is not homogeneous")))?;
                let deg = g - v.grade();
                if degree.is_some_and(|d| d != deg) {
                    return Err(Error::InvalidDerivation("components have different degrees".into()));
                }
                degree = Some(deg);
            }
            vars.push(v);
            coeffs.push(a);
        }
        Ok(VectorField { pres, vars, coeffs })
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn components(&self) -> impl Iterator<Item = (&GVar, &Poly)> {
        self.vars.iter().zip(&self.coeffs)
    }

    pub fn to_operator(&self) -> DiffOperator {
        DiffOperator::new(self.pres.clone(), self.components().map(|(v, a)| (Monomial::var(*v), a.clone())))
            .expect("validated on construction")
    }

    fn coeff_parity(&self, i: usize) -> bool {
        self.coeffs[i].homogeneous_grade().is_some_and(|g| g.rem_euclid(2) == 1)
    }
}

/// An algorithm computing `(Σ a^i ∂_i)^N`.
pub trait FieldPowerStrategy: Send + Sync {
    fn power(&self, field: &VectorField, n: u32) -> Result<DiffOperator>;
}

/// Literal N-fold composition.
pub struct DirectComposition;

/// The closed sum over `f: [N] → [m]` and `α: [N-1] → [2, N+1]`, `α(i) > i`.
pub struct ClosedSum {
    pub max_order: u32,
}

impl FieldPowerStrategy for DirectComposition {
    fn power(&self, field: &VectorField, n: u32) -> Result<DiffOperator> {
        field_power_direct(field, n)
    }
}

impl FieldPowerStrategy for ClosedSum {
    fn power(&self, field: &VectorField, n: u32) -> Result<DiffOperator> {
        if n > self.max_order {
            return Err(Error::BoundExceeded {
                what: "closed field power order",
                value: n as usize,
                bound: self.max_order as usize,
            });
        }
        field_power_closed(field, n)
    }
}

pub const DEFAULT_CLOSED_MAX_ORDER: u32 = 6;

pub fn field_power_registry() -> Registry<dyn FieldPowerStrategy> {
    Registry::<dyn FieldPowerStrategy>::new("field power method")
        .with("direct", Box::new(DirectComposition))
        .with("closed", Box::new(ClosedSum { max_order: DEFAULT_CLOSED_MAX_ORDER }))
}

pub fn field_power_direct(field: &VectorField, n: u32) -> Result<DiffOperator> {
    field.to_operator().pow(n)
}

/// Evaluates the closed sum.
///
/// A pair `(f, α)` selects the word `a_{f(1)} ∂_{f(1)} … a_{f(N)} ∂_{f(N)}`
/// in which `∂_{f(s)}` hits the coefficient `a_{f(α(s))}` (or passes to
/// the trailing operator when `α(s) = N + 1`; the last `∂` always does).
/// The sign `s(f, α)` is the Koszul sign of the induced reordering of
/// symbols, with `∂_i` carrying the parity of `x_i`, and the trailing
/// partials are then sorted into canonical order.
pub fn field_power_closed(field: &VectorField, n: u32) -> Result<DiffOperator> {
    let pres = field.pres.clone();
    let m = field.vars.len();
    let n = n as usize;
    let mut out = DiffOperator::zero(pres.clone());
    if n == 0 {
        return Ok(DiffOperator::identity(pres));
    }
    if m == 0 {
        return Ok(out);
    }
    let mut terms: Vec<(Monomial, Poly)> = Vec::new();
    let mut f = vec![0usize; n];
    loop {
        // α(s) for s = 0..n-1 (0-based), values in s+1..=n (n = trailing)
        let mut alpha: Vec<usize> = (0..n.saturating_sub(1)).map(|s| s + 1).collect();
        loop {
            if let Some(t) = closed_term(field, &f, &alpha) {
                terms.push(t);
            }
            if !advance_alpha(&mut alpha, n) {
                break;
            }
        }
        if !advance_f(&mut f, m) {
            break;
        }
    }
    for (k, c) in terms {
        out = out.add(&DiffOperator::new(pres.clone(), [(k, c)])?)?;
    }
    Ok(out)
}

fn advance_f(f: &mut [usize], m: usize) -> bool {
    for x in f.iter_mut().rev() {
        *x += 1;
        if *x < m {
            return true;
        }
        *x = 0;
    }
    false
}

fn advance_alpha(alpha: &mut [usize], n: usize) -> bool {
    for s in (0..alpha.len()).rev() {
        alpha[s] += 1;
        if alpha[s] <= n {
            return true;
        }
        alpha[s] = s + 1;
    }
    false
}

fn closed_term(field: &VectorField, f: &[usize], alpha: &[usize]) -> Option<(Monomial, Poly)> {
    let n = f.len();
    let pres = &field.pres;
    let target_of = |s: usize| if s + 1 == n { n } else { alpha[s] };
    // coefficient factors
    let mut coeff = Poly::one();
    for i in 0..n {
        let hits: Vec<usize> = (0..i).filter(|&s| target_of(s) == i).collect();
        let mut a = field.coeffs[f[i]].clone();
        for &s in hits.iter().rev() {
            a = a.partial(&field.vars[f[s]]);
        }
        coeff = pres.mul(&coeff, &a);
        if coeff.is_zero() {
            return None;
        }
    }
    // Koszul sign of the reordering; symbol 2i is a_i, 2s+1 is ∂_s
    let parity = |sym: usize| {
        if sym % 2 == 0 {
            field.coeff_parity(f[sym / 2])
        } else {
            field.vars[f[sym / 2]].is_odd()
        }
    };
    let mut order = Vec::with_capacity(2 * n);
    for i in 0..n {
        order.extend((0..i).filter(|&s| target_of(s) == i).map(|s| 2 * s + 1));
        order.push(2 * i);
    }
    let trailing: Vec<usize> = (0..n).filter(|&s| target_of(s) == n).collect();
    order.extend(trailing.iter().map(|&s| 2 * s + 1));
    let mut neg = false;
    for x in 0..order.len() {
        for y in x + 1..order.len() {
            if order[x] > order[y] && parity(order[x]) && parity(order[y]) {
                neg = !neg;
            }
        }
    }
    let partials: Vec<(GVar, u32)> = trailing.iter().map(|&s| (field.vars[f[s]], 1)).collect();
    let (neg_sort, k) = Monomial::from_ordered(&partials)?;
    Some((k, coeff.scale(&sign(neg ^ neg_sort))))
}

/// The two-term expansion of the square,
/// `Σ_{i,j} (-1)^{|x_i||a_j|} a_i a_j ∂_i ∂_j + a_i ∂_i(a_j) ∂_j`.
pub fn field_square_two_term(field: &VectorField) -> Result<DiffOperator> {
    let pres = field.pres.clone();
    let mut out = DiffOperator::zero(pres.clone());
    for (xi, ai) in field.components() {
        for (j, (xj, aj)) in field.components().enumerate() {
            let neg = xi.is_odd() && field.coeff_parity(j);
            if let Some((neg_k, k)) = Monomial::var(*xi).mul(&Monomial::var(*xj)) {
                let c = pres.mul(ai, aj).scale(&sign(neg ^ neg_k));
                out = out.add(&DiffOperator::new(pres.clone(), [(k, c)])?)?;
            }
            let c = pres.mul(ai, &aj.partial(xi));
            out = out.add(&DiffOperator::new(pres.clone(), [(Monomial::var(*xj), c)])?)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galgebra::parse_poly;

    #[test]
    fn euler_field_fourth_power_has_stirling_coefficients() {
        let x = GVar::x(1, 0);
        let p = Arc::new(Presentation::free([x]).unwrap());
        let field = VectorField::new(p.clone(), vec![(x, Poly::var(x))]).unwrap();
        let closed = field_power_closed(&field, 4).unwrap();
        assert_eq!(closed, field_power_direct(&field, 4).unwrap());
        for (k, s) in [(1, 1), (2, 7), (3, 6), (4, 1)] {
            let key = Monomial::power(x, k).unwrap();
            let expected = Poly::monomial(Monomial::power(x, k).unwrap()).scale(&crate::rational::q(s));
            assert_eq!(closed.terms()[&key], expected);
        }
    }

    #[test]
    fn swap_field_cube() {
        let (x1, x2) = (GVar::x(1, 0), GVar::x(2, 0));
        let p = Arc::new(Presentation::free([x1, x2]).unwrap());
        let field = VectorField::new(p.clone(), vec![(x1, Poly::var(x2)), (x2, Poly::var(x1))]).unwrap();
        let direct = field_power_direct(&field, 3).unwrap();
        assert_eq!(field_power_closed(&field, 3).unwrap(), direct);
        for src in ["x1^3", "x1*x2^2", "x2^4*x1"] {
            let g = parse_poly(src, &p).unwrap();
            let op = field.to_operator();
            assert_eq!(direct.apply(&g), op.apply(&op.apply(&op.apply(&g))));
        }
    }

    #[test]
    fn odd_field_square_matches_two_term_form() {
        let (x, th1, th2) = (GVar::x(1, 0), GVar::theta(1), GVar::theta(2));
        let p = Arc::new(Presentation::free([x, th1, th2]).unwrap());
        let field = VectorField::new(
            p.clone(),
            vec![
                (x, parse_poly("th1", &p).unwrap()),
                (th1, parse_poly("x1*th1*th2", &p).unwrap()),
                (th2, parse_poly("th1*th2", &p).unwrap()),
            ],
        )
        .unwrap();
        let sq = field_power_direct(&field, 2).unwrap();
        assert_eq!(field_square_two_term(&field).unwrap(), sq);
        assert_eq!(field_power_closed(&field, 2).unwrap(), sq);
        assert_eq!(field_power_closed(&field, 3).unwrap(), field_power_direct(&field, 3).unwrap());
    }
}

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{CheckItem, Context};
use crate::error::Result;
use crate::forms::{omega_space, DifferenceAlgebra};
use crate::galgebra::{GVar, Poly, Presentation};
use crate::linalg::bareiss_rank;
use crate::ncomplex::NComplex;
use crate::operators::{field_power_registry, field_square_two_term, nilpotency_check, VectorField};
use crate::random::{random_homogeneous, random_ncomplex, random_poly, seeded};

const DEGREE_BOUND: i32 = 8;
const WORD_BOUND: usize = 4;

fn space(n: u32) -> String {
    if n == 1 {
        "ℝ".into()
    } else {
        format!("ℝ^{n}")
    }
}

pub fn omega_nilpotency(_ctx: &Context) -> Result<Vec<CheckItem>> {
    let mut items = Vec::new();
    let certify = |depth: u32, n: u32| -> Result<CheckItem> {
        let dga = omega_space(depth, n, false)?;
        let v = dga.certify(DEGREE_BOUND, WORD_BOUND);
        Ok(CheckItem::new(
            format!("Ω_{depth}({}) is {}-nilpotent", space(n), dga.claimed_order),
            v.is_verified(),
            v.to_string(),
        ))
    };
    items.push(certify(3, 1)?);
    let one = omega_space(3, 1, false)?;
    let d2x = one.d.apply_n(&Poly::var(GVar::x(1, 0)), 2);
    items.push(CheckItem::new("Ω_3(ℝ) is proper: d²x ≠ 0", !d2x.is_zero(), format!("d²x = {d2x}")));
    items.push(certify(3, 2)?);
    let two = omega_space(3, 2, false)?;
    let v = nilpotency_check(&two.d, 4, DEGREE_BOUND, WORD_BOUND);
    let witness = v.counterexample().map(|(m, img)| format!("d⁴({m}) = {img}")).unwrap_or_default();
    items.push(CheckItem::new("Ω_3(ℝ^2) has a nonzero d⁴", !v.is_verified(), witness));
    items.push(certify(4, 1)?);
    Ok(items)
}

pub fn difference_forms(ctx: &Context) -> Result<Vec<CheckItem>> {
    let mut rng = seeded(ctx.seed);
    let configs = [(1, 3), (2, 3), (1, 4)];
    let algebras: Vec<DifferenceAlgebra> =
        configs.iter().map(|&(n, depth)| DifferenceAlgebra::lattice(n, depth)).collect::<Result<_>>()?;
    let mut items = Vec::new();
    for alg in &algebras {
        let pres = alg.presentation().clone();
        let power = alg.n() * (alg.depth() - 1) + 1;
        let mut failures = 0;
        for _ in 0..100 {
            let p = random_poly(&mut rng, &pres, pres.generators(), WORD_BOUND, 3);
            if !alg.delta_power(&p, power).is_zero() {
                failures += 1;
            }
        }
        items.push(CheckItem::new(
            format!("δ^{power} = 0 on D_{}(ℤ^{})", alg.depth(), alg.n()),
            failures == 0,
            format!("{failures}/100 random forms survive"),
        ));
    }
    let mut mismatches = 0;
    for t in 0..500 {
        let alg = &algebras[t % algebras.len()];
        let pres = alg.presentation().clone();
        let p = random_poly(&mut rng, &pres, pres.generators(), WORD_BOUND, 3);
        let closed = alg.to_poly(&alg.delta_closed(&alg.to_form(&p)?));
        if closed != alg.delta_leibniz(&p) {
            mismatches += 1;
        }
    }
    items.push(CheckItem::new(
        "coefficient formula for δω equals the Leibniz expansion",
        mismatches == 0,
        format!("{mismatches}/500 random forms differ"),
    ));
    Ok(items)
}

fn random_field(rng: &mut crate::random::TestRng) -> Result<VectorField> {
    let pool = [GVar::x(1, 0), GVar::x(2, 0), GVar::theta(1), GVar::theta(2)];
    let m = rng.gen_range(1..=3);
    let mut vars: Vec<GVar> = pool.choose_multiple(rng, m).copied().collect();
    if m >= 2 && vars.iter().all(|v| v.is_odd() == vars[0].is_odd()) {
        let other = *pool.iter().find(|v| v.is_odd() != vars[0].is_odd()).expect("both parities");
        vars[0] = other;
    }
    vars.sort();
    let pres = Arc::new(Presentation::free(vars.clone())?);
    let degree = rng.gen_range(0..=1);
    let comps = vars.iter().map(|v| (*v, random_homogeneous(rng, &pres, &vars, v.grade() + degree, 3, 3))).collect();
    VectorField::new(pres, comps)
}

pub fn field_powers(ctx: &Context) -> Result<Vec<CheckItem>> {
    let mut rng = seeded(ctx.seed);
    let reg = field_power_registry();
    let (direct, closed) = (reg.get("direct")?, reg.get("closed")?);
    let mut mismatches = BTreeMap::from([(2, 0), (3, 0), (4, 0)]);
    let mut two_term = 0;
    for _ in 0..200 {
        let field = random_field(&mut rng)?;
        for (&n, bad) in mismatches.iter_mut() {
            if direct.power(&field, n)? != closed.power(&field, n)? {
                *bad += 1;
            }
        }
        if field_square_two_term(&field)? != direct.power(&field, 2)? {
            two_term += 1;
        }
    }
    let mut items: Vec<CheckItem> = mismatches
        .iter()
        .map(|(n, bad)| {
            CheckItem::new(
                format!("closed sum equals composition, N = {n}"),
                *bad == 0,
                format!("{bad}/200 fields differ"),
            )
        })
        .collect();
    items.push(CheckItem::new(
        "N = 2 equals the two-term form",
        two_term == 0,
        format!("{two_term}/200 fields differ"),
    ));
    Ok(items)
}

/// `dim ₚHⁱ` from ranks alone: `dim Vⁱ - rank d^p - rank d^{N-p}` into degree `i`.
fn oracle_dim(c: &NComplex, p: u32, i: i32) -> usize {
    let q = c.order() - p;
    c.dim(i) - bareiss_rank(&c.power(i, p)) - bareiss_rank(&c.power(i - q as i32, q))
}

fn degrees(c: &NComplex) -> Vec<i32> {
    c.dims().iter().filter(|(_, &d)| d > 0).map(|(&i, _)| i).collect()
}

pub fn cohomology(ctx: &Context) -> Result<Vec<CheckItem>> {
    let mut rng = seeded(ctx.seed);
    let dims = BTreeMap::from([(0, 2), (1, 3), (2, 1), (3, 2)]);
    let zero = NComplex::new(3, dims.clone(), BTreeMap::new())?;
    let mut zero_ok = true;
    for p in 1..3 {
        for (&i, &d) in &dims {
            zero_ok &= zero.cohomology(p, i)?.dim == d;
        }
    }
    let mut items = vec![CheckItem::new("zero differential: ₚHⁱ = Vⁱ", zero_ok, "")];
    let (mut invariant, mut oracle, mut valid) = (0, 0, 0);
    for _ in 0..50 {
        let c = random_ncomplex(&mut rng, 3, 12);
        let bases = c.dims().iter().map(|(&i, &d)| (i, crate::random::random_invertible(&mut rng, d))).collect();
        let moved = c.transport(&bases)?;
        if c.check().is_valid() && moved.check().is_valid() {
            valid += 1;
        }
        let mut same = true;
        let mut agrees = true;
        for p in 1..3 {
            for i in degrees(&c) {
                let a = c.cohomology(p, i)?.dim;
                let b = moved.cohomology(p, i)?.dim;
                same &= a == b;
                agrees &= a == oracle_dim(&c, p, i) && b == oracle_dim(&moved, p, i);
            }
        }
        invariant += usize::from(same);
        oracle += usize::from(agrees);
    }
    items.push(CheckItem::new("random complexes satisfy d³ = 0", valid == 50, format!("{valid}/50")));
    items.push(CheckItem::new(
        "dimensions invariant under change of basis",
        invariant == 50,
        format!("{invariant}/50"),
    ));
    items.push(CheckItem::new("dimensions match the rank oracle", oracle == 50, format!("{oracle}/50")));
    Ok(items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    #[test]
    fn invertible_pairs() {
        let mut rng = seeded(3);
        for n in 1..5 {
            let (p, inv) = crate::random::random_invertible(&mut rng, n);
            assert_eq!(p.mul(&inv).unwrap(), Matrix::identity(n));
        }
    }
}

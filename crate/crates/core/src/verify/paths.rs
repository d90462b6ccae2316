use super::{CheckItem, Context};
use crate::error::Result;
use crate::pathsum::{
    enumerate_paths_with, infinitesimal_coefficients, mc_coefficient_with, mc_equation_with, verify_equation,
    verify_infinitesimal, MultiIndex, NcPoly, Trailing,
};

fn poly(terms: &[(&[u32], i128)]) -> NcPoly {
    let mut p = NcPoly::zero();
    for (w, c) in terms {
        p.add_term(w.to_vec(), 0, *c);
    }
    p
}

fn coefficient_items(ctx: &Context, n: u32, expected: &[NcPoly]) -> Vec<CheckItem> {
    let eq = mc_equation_with(&ctx.table, n, false);
    expected
        .iter()
        .enumerate()
        .map(|(k, want)| {
            let got = eq.coeff(k as u32);
            let show = |p: &NcPoly| if p.is_zero() { "0".to_string() } else { p.to_string() };
            CheckItem::new(format!("c{k} = {}", show(want)), got == want, format!("computed {}", show(got)))
        })
        .collect()
}

pub fn mc_three_three(ctx: &Context) -> Result<Vec<CheckItem>> {
    let expected =
        [poly(&[(&[2], 1), (&[1, 0], 1), (&[0, 0, 0], 1)]), poly(&[(&[1], 1), (&[0, 0], 1)]), poly(&[(&[0], 1)])];
    let mut items = coefficient_items(ctx, 3, &expected);
    let printed = "(d2(e) + d(e)e + e^3) + (d(e) + e^2) d + e d^2 = 0";
    let rendered = mc_equation_with(&ctx.table, 3, false).render();
    items.push(CheckItem::new("rendered equation", rendered == printed, rendered));
    Ok(items)
}

pub fn mc_three_four(ctx: &Context) -> Result<Vec<CheckItem>> {
    let expected = [
        poly(&[(&[0, 0, 0, 0], 1), (&[0, 0, 1], 1), (&[1, 0, 0], 1), (&[2, 0], 1), (&[0, 2], 1), (&[1, 1], 1)]),
        NcPoly::zero(),
        poly(&[(&[0, 0], 2), (&[1], 2)]),
        NcPoly::zero(),
    ];
    Ok(coefficient_items(ctx, 4, &expected))
}

pub fn coefficients(ctx: &Context) -> Result<Vec<CheckItem>> {
    let cases: [(&str, u32, i128, u128); 6] =
        [("2", 3, 1, 1), ("1,0", 3, 1, 1), ("0", 3, 1, 3), ("1,1", 4, 2, 2), ("0", 4, 0, 4), ("0,0,0,0", 4, 1, 1)];
    let mut items = Vec::new();
    for (s, n, c, count) in cases {
        let idx = MultiIndex::parse(s)?;
        let got = mc_coefficient_with(&ctx.table, &idx, n);
        let paths = enumerate_paths_with(&ctx.table, &idx, n);
        let listing: Vec<String> = paths.iter().map(|p| format!("{p} ({:+})", p.weight())).collect();
        items.push(CheckItem::new(format!("c({idx},{n}) = {c}"), got == c, format!("computed {got}")));
        let got_count = paths.len() as u128;
        items.push(CheckItem::new(
            format!("paths to {idx} in {n} steps: {count}"),
            got_count == count,
            format!("computed {got_count}: {}", listing.join("; ")),
        ));
    }
    Ok(items)
}

pub fn word_oracle(ctx: &Context) -> Result<Vec<CheckItem>> {
    Ok((3..=6)
        .map(|n| {
            let v = verify_equation(&mc_equation_with(&ctx.table, n, false));
            let detail = if v.holds() {
                format!("{} words agree", v.words_compared)
            } else {
                let words: Vec<String> =
                    v.mismatches.iter().take(4).map(|m| format!("{} ({} vs {})", m.word, m.lhs, m.rhs)).collect();
                format!("{} of {} words differ: {}", v.mismatches.len(), v.words_compared, words.join(", "))
            };
            CheckItem::new(format!("N = {n}"), v.holds(), detail)
        })
        .collect())
}

pub fn infinitesimal(ctx: &Context) -> Result<Vec<CheckItem>> {
    let mut items = Vec::new();
    for n in 2..=10 {
        let par = infinitesimal_coefficients(n);
        let paths: Vec<i128> =
            (0..n).map(|k| mc_coefficient_with(&ctx.table, &MultiIndex::new(vec![n - k - 1]), n)).collect();
        items.push(CheckItem::new(
            format!("N = {n}: composition sums equal c((N-k-1),N)"),
            par == paths,
            format!("{par:?}"),
        ));
        let v = verify_infinitesimal(n, Trailing::K);
        items.push(CheckItem::new(
            format!("N = {n}: t-linear word identity"),
            v.holds(),
            format!("{} words, {} mismatches", v.words_compared, v.mismatches.len()),
        ));
    }
    Ok(items)
}

use rand::Rng;

use super::{CheckItem, Context};
use crate::error::Result;
use crate::liealgebroid::{
    algebroid_identities, deform_de_rham, displayed_matrix_closed, displayed_matrix_open, is_3_lie, scaled_coordinates,
    StructureData,
};
use crate::random::{random_bracket, random_deformation, random_square_zero, random_structure, seeded};

pub fn deformations(ctx: &Context) -> Result<Vec<CheckItem>> {
    let mut rng = seeded(ctx.seed);
    let mut items = Vec::new();
    let closed = deform_de_rham(&displayed_matrix_closed())?;
    items.push(CheckItem::new(
        "first displayed matrix: square = 0",
        closed.square.is_zero() && closed.square_matches_closed,
        format!("square {}", closed.square),
    ));
    let open = deform_de_rham(&displayed_matrix_open())?;
    items.push(CheckItem::new(
        "second displayed matrix: square ≠ 0",
        !open.square.is_zero() && open.square_matches_closed,
        format!("square {}", open.square),
    ));
    let mut survivors = 0;
    for t in 0..100 {
        let rep = deform_de_rham(&random_deformation(&mut rng, 2 + t % 3, 2, true))?;
        survivors += usize::from(!rep.cube.is_zero());
    }
    items.push(CheckItem::new(
        "infinitesimal case: cube = 0",
        survivors == 0,
        format!("{survivors}/100 random matrices give a nonzero cube"),
    ));
    let (mut printed, mut corrected) = (0, 0);
    for _ in 0..50 {
        let rep = deform_de_rham(&random_deformation(&mut rng, 3, 2, false))?;
        printed += usize::from(rep.cube_matches_printed == Some(true));
        corrected += usize::from(rep.cube_matches_corrected == Some(true));
    }
    items.push(CheckItem::new(
        "full case: cube equals the closed bracketed form",
        printed == 50,
        format!("{printed}/50 match as printed; {corrected}/50 match once the second brace term carries δ^i_α + a^i_α"),
    ));
    let mut nonzero = Vec::new();
    for t in 0..50 {
        let a = random_square_zero(&mut rng, 2 + t % 3);
        let rep = deform_de_rham(&scaled_coordinates(&a)?)?;
        if !rep.cube.is_zero() {
            nonzero.push(a);
        }
    }
    let witness = nonzero
        .first()
        .map(|a| {
            let rows: Vec<String> =
                a.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).collect();
            format!("; e.g. A = [{}]", rows.join("; "))
        })
        .unwrap_or_default();
    items.push(CheckItem::new(
        "constant A with A² = 0: cube = 0",
        nonzero.is_empty(),
        format!("{}/50 give a nonzero cube{witness}", nonzero.len()),
    ));
    Ok(items)
}

pub fn three_lie(ctx: &Context) -> Result<Vec<CheckItem>> {
    let mut rng = seeded(ctx.seed);
    let (mut agree, mut three, mut jacobi) = (0, 0, 0);
    for _ in 0..200 {
        let r = rng.gen_range(2..=4);
        let density = rng.gen_range(0.15..0.5);
        let v = is_3_lie(&StructureData::lie_algebra(r, &random_bracket(&mut rng, r, density))?)?;
        agree += usize::from(v.routes_agree());
        three += usize::from(v.three_lie());
        jacobi += usize::from(v.jacobi);
    }
    let mut items = vec![CheckItem::new(
        "operator and bracket-identity verdicts agree",
        agree == 200,
        format!("{agree}/200 agree; {three} are 3-Lie, {jacobi} are Lie"),
    )];
    for (name, s) in [("sl2", StructureData::sl2()), ("abelian dim 4", StructureData::abelian(4))] {
        let v = is_3_lie(&s)?;
        items.push(CheckItem::new(
            format!("{name} is Lie and 3-Lie by both routes"),
            v.jacobi && v.three_lie() && v.shuffle.three_lie && v.routes_agree(),
            "",
        ));
    }
    Ok(items)
}

pub fn algebroid(ctx: &Context) -> Result<Vec<CheckItem>> {
    let mut rng = seeded(ctx.seed);
    let (mut two, mut three, mut square_zero) = (0, 0, 0);
    for _ in 0..100 {
        let s = random_structure(&mut rng, 2, 2, 1);
        let r2 = algebroid_identities(&s, 2)?;
        two += usize::from(r2.agrees());
        square_zero += usize::from(r2.operator_zero);
        three += usize::from(algebroid_identities(&s, 3)?.agrees());
    }
    Ok(vec![
        CheckItem::new(
            "order-2 residuals vanish iff d² = 0",
            two == 100,
            format!("{two}/100 agree; {square_zero} have d² = 0"),
        ),
        CheckItem::new(
            "order-3 residuals vanish iff the diamond cube is 0",
            three == 100,
            format!("{three}/100 agree"),
        ),
    ])
}

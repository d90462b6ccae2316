use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use ndga::forms::{forms_on_simplicial_set, omega_space, DifferenceAlgebra, SimplicialSet};
use ndga::galgebra::{parse_poly, parse_var_key, presentation_from_json, render, Family, GVar, Poly, Presentation};
use ndga::liealgebroid::{
    algebroid_identities, deform_de_rham, displayed_matrix_closed, displayed_matrix_open, is_3_lie, three_lie_registry,
    DeformationMatrix, StructureData,
};
use ndga::ncomplex::NComplex;
use ndga::operators::{field_power_registry, nilpotency_check, Derivation, DiffOperator, VectorField};
use ndga::pathsum::{
    enumerate_paths_with, infinitesimal_coefficients, infinitesimal_terms, kernel_registry, mc_coefficient_with,
    mc_equation_with, verify_equation, verify_infinitesimal, FiniteDigraph, MultiIndex, Trailing, WeightTable,
};
use ndga::verify::{reproduction_checks, run_check, select, Context, DEFAULT_SEED};
use ndga::Error;
use serde_json::{json, Value};

use crate::args::*;

/// Rendered result of one command. `ok` is false when a check the command
/// performs did not hold.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output { text, json, ok: true }
    }

    fn checked(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(Error::RouteDisagreement(_)) => 1,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(s) => f.write_str(s),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

type Res = std::result::Result<Output, CliError>;

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn read(path: &Path) -> std::result::Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> std::result::Result<Value, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn table(flips: &[WeightFlip]) -> WeightTable {
    let mut t = WeightTable::standard();
    for f in flips {
        match f {
            WeightFlip::Prepend => t.flip_prepend = !t.flip_prepend,
            WeightFlip::Loop => t.flip_loop = !t.flip_loop,
            WeightFlip::Increment => t.flip_increment = !t.flip_increment,
        }
    }
    t
}

pub fn run(cli: &Cli) -> Res {
    match &cli.command {
        Command::Mc(a) => mc(a),
        Command::Infinitesimal(a) => infinitesimal(a),
        Command::Paths(a) => paths(a),
        Command::Kernel(a) => kernel(a),
        Command::Forms(c) => forms(c, cli.bounds),
        Command::Ncomplex(c) => ncomplex(c),
        Command::Lie(c) => lie(c),
        Command::Algebra(c) => algebra(c, cli.bounds),
        Command::VerifyPaper(a) => verify_paper(a, cli.seed.unwrap_or(DEFAULT_SEED)),
    }
}

fn path_listing(table: &WeightTable, s: &MultiIndex, n: u32) -> (Vec<String>, Vec<Value>) {
    let paths = enumerate_paths_with(table, s, n);
    let lines = paths.iter().map(|p| format!("  {p}  weight {:+}", p.weight())).collect();
    let json = paths
        .iter()
        .map(|p| json!({"vertices": p.vertices().iter().map(ToString::to_string).collect::<Vec<_>>(), "weight": p.weight()}))
        .collect();
    (lines, json)
}

fn mc(a: &McArgs) -> Res {
    if a.n < 3 {
        return Err(input(format!("--N must be at least 3, got {}", a.n)));
    }
    let t = WeightTable::standard();
    if let Some(s) = &a.coeff {
        let s = MultiIndex::parse(s)?;
        let c = mc_coefficient_with(&t, &s, a.n);
        let mut text = format!("c({s},{}) = {c}", a.n);
        let mut j = json!({"N": a.n, "s": s.to_string(), "c": c});
        if a.show_paths {
            let (lines, paths) = path_listing(&t, &s, a.n);
            if lines.is_empty() {
                text.push_str("\nno paths");
            } else {
                text.push('\n');
                text.push_str(&lines.join("\n"));
            }
            j["paths"] = Value::Array(paths);
        }
        return Ok(Output::new(text, j));
    }
    let eq = mc_equation_with(&t, a.n, a.complete);
    let mut text = eq.render();
    for k in 0..a.n {
        let c = eq.coeff(k);
        let _ = write!(text, "\nc{k} = {}", if c.is_zero() { "0".to_string() } else { c.to_string() });
    }
    let mut j = eq.to_json();
    if a.show_paths {
        let mut all = Vec::new();
        for s in MultiIndex::all_in_e(a.n) {
            if !a.complete && s.entries().iter().any(|&x| x >= 3) {
                continue;
            }
            let (lines, paths) = path_listing(&t, &s, a.n);
            if lines.is_empty() {
                continue;
            }
            let _ = write!(text, "\npaths to {s}:\n{}", lines.join("\n"));
            all.push(json!({"s": s.to_string(), "paths": paths}));
        }
        j["paths"] = Value::Array(all);
    }
    let mut ok = true;
    if a.check {
        let v = verify_equation(&eq);
        ok = v.holds();
        let _ = write!(text, "\n{v}");
        j["check"] = v.to_json();
    }
    Ok(Output::new(text, j).checked(ok))
}

fn infinitesimal(a: &InfinitesimalArgs) -> Res {
    if a.n < 2 {
        return Err(input(format!("--N must be at least 2, got {}", a.n)));
    }
    let trailing = match a.trailing {
        TrailingArg::K => Trailing::K,
        TrailingArg::Mirrored => Trailing::Mirrored,
    };
    let terms = infinitesimal_terms(a.n, trailing);
    let coeffs = infinitesimal_coefficients(a.n);
    let v = verify_infinitesimal(a.n, trailing);
    let text = format!("t-linear part of (d + te)^{}: {terms}\ncoefficients {coeffs:?}\n{v}", a.n);
    let j = json!({"N": a.n, "terms": terms.to_json(), "coefficients": coeffs, "check": v.to_json()});
    Ok(Output::new(text, j).checked(v.holds()))
}

fn paths(a: &PathsArgs) -> Res {
    let t = table(&a.flip);
    let targets = match &a.target {
        Some(s) => vec![MultiIndex::parse(s)?],
        None => MultiIndex::all_in_e(a.n),
    };
    let mut text = Vec::new();
    let mut out = Vec::new();
    for s in targets {
        let c = mc_coefficient_with(&t, &s, a.n);
        let (lines, paths) = path_listing(&t, &s, a.n);
        text.push(format!("{s}: c = {c}, {} paths", lines.len()));
        text.extend(lines);
        out.push(json!({"s": s.to_string(), "c": c, "paths": paths}));
    }
    Ok(Output::new(text.join("\n"), json!({"N": a.n, "targets": out})))
}

fn kernel(a: &KernelArgs) -> Res {
    let reg = kernel_registry();
    let backend = reg.get(&a.backend)?;
    if let Some(path) = &a.input {
        let g = FiniteDigraph::from_json(&read_json(path)?)?;
        let k = backend.finite(&g, a.n, a.from, a.to)?;
        let text = format!("K^{}({} → {}) = {k} [{}]", a.n, a.from, a.to, a.backend);
        return Ok(Output::new(
            text,
            json!({"backend": a.backend, "N": a.n, "from": a.from, "to": a.to, "value": k.to_string()}),
        ));
    }
    let target = a.target.as_deref().ok_or_else(|| input("either --input or --target is required"))?;
    let y = MultiIndex::parse(target)?;
    let k = backend.mc(&WeightTable::standard(), a.truncation, a.n, &MultiIndex::empty(), &y)?;
    let text = format!("K^{}(∅ → {y}) = {k} [{}]", a.n, a.backend);
    Ok(Output::new(text, json!({"backend": a.backend, "N": a.n, "target": y.to_string(), "value": k.to_string()})))
}

fn forms(c: &FormsCommand, bounds: (i32, usize)) -> Res {
    match c {
        FormsCommand::Omega { n_depth, dim, simplex } => {
            let dga = omega_space(*n_depth, *dim, *simplex)?;
            let v = dga.certify(bounds.0, bounds.1);
            let name = if *simplex { format!("Ω_{n_depth}({dim})") } else { format!("Ω_{n_depth}(ℝ^{dim})") };
            let mut j = v.to_json();
            j["space"] = json!(name);
            Ok(Output::new(format!("{name}: {v}"), j).checked(v.is_verified()))
        }
        FormsCommand::Delta { n_depth, dim, input: file, form, power, simplex } => {
            let alg = if *simplex {
                DifferenceAlgebra::simplex(*dim, *n_depth)?
            } else {
                DifferenceAlgebra::lattice(*dim, *n_depth)?
            };
            let src = match (file, form) {
                (Some(p), _) => read(p)?,
                (None, Some(f)) => f.clone(),
                (None, None) => return Err(input("either --input or --form is required")),
            };
            let p = parse_poly(src.trim(), alg.presentation())?;
            let out = if *power == 1 { alg.delta(&p)? } else { alg.delta_power(&p, *power) };
            let text = format!("δ^{power}({}) = {}", render(&p), render(&out));
            Ok(Output::new(text, json!({"form": render(&p), "power": power, "result": render(&out)})))
        }
        FormsCommand::Sset { input: file, n_depth, degree, poly_bound, difference } => {
            let s = SimplicialSet::from_json(&read(file)?)?;
            let family = if *difference { Family::m() } else { Family::x() };
            let f = forms_on_simplicial_set(&s, family, *n_depth, *degree, *poly_bound)?;
            let mut text = format!(
                "degree {} forms with polynomial degree ≤ {} on {} simplices: dimension {}",
                f.degree,
                f.poly_bound,
                f.simplices.len(),
                f.basis.len()
            );
            let basis: Vec<BTreeMap<String, String>> =
                f.basis.iter().map(|b| b.iter().map(|(k, p)| (k.clone(), render(p))).collect()).collect();
            for (i, b) in basis.iter().enumerate() {
                let parts: Vec<String> = b.iter().map(|(k, p)| format!("{k}: {p}")).collect();
                let _ = write!(text, "\n  [{i}] {}", parts.join(", "));
            }
            let j = json!({"degree": f.degree, "poly_bound": f.poly_bound, "simplices": f.simplices, "dimension": f.basis.len(), "basis": basis});
            Ok(Output::new(text, j))
        }
    }
}

fn ncomplex(c: &NcomplexCommand) -> Res {
    match c {
        NcomplexCommand::Check { input: file } => {
            let cx = NComplex::from_json(&read(file)?)?;
            let v = cx.check();
            let text = match v.failure {
                Some(i) => format!("d^{} ≠ 0 on degree {i}", cx.order()),
                None => format!("valid {}-complex, {}", cx.order(), if v.proper { "proper" } else { "not proper" }),
            };
            Ok(Output::new(
                text,
                json!({"order": cx.order(), "valid": v.is_valid(), "failure": v.failure, "proper": v.proper}),
            )
            .checked(v.is_valid()))
        }
        NcomplexCommand::Cohomology { input: file, p, i } => {
            let cx = NComplex::from_json(&read(file)?)?;
            let h = cx.cohomology(*p, *i)?;
            let basis: Vec<Vec<String>> = h.basis.iter().map(|v| v.iter().map(ToString::to_string).collect()).collect();
            let mut text = format!("{p}H^{i}: dim {} (kernel {}, image {})", h.dim, h.kernel_dim, h.image_dim);
            for v in &basis {
                let _ = write!(text, "\n  [{}]", v.join(", "));
            }
            let j = json!({"p": h.p, "degree": h.degree, "kernel_dim": h.kernel_dim, "image_dim": h.image_dim, "dim": h.dim, "basis": basis});
            Ok(Output::new(text, j))
        }
    }
}

fn lie(c: &LieCommand) -> Res {
    match c {
        LieCommand::Check3 { input: file, method } => {
            let s = StructureData::from_json(&read_json(file)?)?;
            if method == "all" {
                let v = is_3_lie(&s)?;
                let ok = v.three_lie() && v.routes_agree();
                return Ok(Output::new(v.to_string(), v.to_json()).checked(ok));
            }
            let reg = three_lie_registry();
            let v = reg.get(method)?.check(&s)?;
            let mut text = format!("3-Lie by {method}: {}", v.three_lie);
            for r in &v.residuals {
                let _ = write!(text, "\n  {r}");
            }
            Ok(Output::new(text, json!({"method": method, "three_lie": v.three_lie, "residuals": v.residuals}))
                .checked(v.three_lie))
        }
        LieCommand::Deform { input: file, example, infinitesimal } => {
            let a = match (file, example.as_deref()) {
                (Some(p), _) => {
                    let mut v = read_json(p)?;
                    if *infinitesimal {
                        if let Some(obj) = v.as_object_mut() {
                            obj.insert("infinitesimal".into(), Value::Bool(true));
                        }
                    }
                    DeformationMatrix::from_json(&v)?
                }
                (None, Some("closed")) => displayed_matrix_closed(),
                (None, Some("open")) => displayed_matrix_open(),
                (None, Some(other)) => {
                    return Err(input(format!("unknown example `{other}` (available: closed, open)")))
                }
                (None, None) => return Err(input("either --input or --example is required")),
            };
            let rep = deform_de_rham(&a)?;
            let mut text = format!("square: {}\ncube: {}", rep.square, rep.cube);
            let _ = write!(text, "\nsquare matches closed form: {}", rep.square_matches_closed);
            if let Some(b) = rep.cube_matches_printed {
                let _ = write!(text, "\ncube matches displayed form: {b}");
            }
            if let Some(b) = rep.cube_matches_corrected {
                let _ = write!(text, "\ncube matches corrected form: {b}");
            }
            let ok = rep.square_matches_closed && rep.cube_matches_corrected != Some(false);
            Ok(Output::new(text, rep.to_json()).checked(ok))
        }
        LieCommand::Identities { input: file, order } => {
            if !(2..=3).contains(order) {
                return Err(input(format!("--order must be 2 or 3, got {order}")));
            }
            let s = StructureData::from_json(&read_json(file)?)?;
            let rep = algebroid_identities(&s, *order)?;
            Ok(Output::new(rep.to_string(), rep.to_json()).checked(rep.agrees()))
        }
    }
}

fn load_presentation(v: &Value) -> std::result::Result<Arc<Presentation>, CliError> {
    let doc = v.get("presentation").ok_or_else(|| input("missing `presentation`"))?;
    Ok(Arc::new(presentation_from_json(&doc.to_string())?))
}

fn var_table(pres: &Presentation, v: Option<&Value>, what: &str) -> std::result::Result<Vec<(GVar, Poly)>, CliError> {
    let obj = v.and_then(Value::as_object).ok_or_else(|| input(format!("missing object `{what}`")))?;
    obj.iter()
        .map(|(k, p)| {
            let g = pres
                .lookup(parse_var_key(k)?)
                .ok_or_else(|| input(format!("`{k}` is not a generator of the presentation")))?;
            let src = p.as_str().ok_or_else(|| input(format!("image of `{k}` must be a string")))?;
            Ok((g, parse_poly(src, pres)?))
        })
        .collect()
}

fn operator_json(d: &DiffOperator) -> Value {
    Value::String(d.to_string())
}

fn algebra(c: &AlgebraCommand, bounds: (i32, usize)) -> Res {
    match c {
        AlgebraCommand::Nf { presentation, poly } => {
            let pres = presentation_from_json(&read(presentation)?)?;
            let p = parse_poly(poly, &pres)?;
            Ok(Output::new(render(&p), json!({"normal_form": render(&p)})))
        }
        AlgebraCommand::Mul { presentation, a, b } => {
            let pres = presentation_from_json(&read(presentation)?)?;
            let p = pres.mul(&parse_poly(a, &pres)?, &parse_poly(b, &pres)?);
            Ok(Output::new(render(&p), json!({"product": render(&p)})))
        }
        AlgebraCommand::Nilpotency { input: file, order } => {
            let v = read_json(file)?;
            let pres = load_presentation(&v)?;
            let degree = v.get("degree").and_then(Value::as_i64).unwrap_or(1) as i32;
            let images = var_table(&pres, v.get("images"), "images")?;
            let d = Derivation::new(pres, degree, images)?;
            let verdict = nilpotency_check(&d, *order, bounds.0, bounds.1);
            Ok(Output::new(format!("D = {d}\n{verdict}"), verdict.to_json()).checked(verdict.is_verified()))
        }
        AlgebraCommand::Power { input: file, n, method } => {
            let v = read_json(file)?;
            let pres = load_presentation(&v)?;
            let field = VectorField::new(pres.clone(), var_table(&pres, v.get("field"), "field")?)?;
            let reg = field_power_registry();
            if method != "all" {
                let op = reg.get(method)?.power(&field, *n)?;
                let text = format!("({})^{n} = {op}", field.to_operator());
                return Ok(Output::new(text, json!({"method": method, "N": n, "power": operator_json(&op)})));
            }
            let mut results: Vec<(&str, DiffOperator)> = Vec::new();
            for (name, strategy) in reg.iter() {
                results.push((name, strategy.power(&field, *n)?));
            }
            let (first_name, first) = &results[0];
            for (name, op) in &results[1..] {
                if op != first {
                    return Err(CliError::Lib(Error::RouteDisagreement(format!(
                        "{first_name} gives {first}, {name} gives {op}"
                    ))));
                }
            }
            let names: Vec<&str> = results.iter().map(|(n, _)| *n).collect();
            let text = format!("({})^{n} = {first}\nagreed: {}", field.to_operator(), names.join(", "));
            Ok(Output::new(text, json!({"method": "all", "N": n, "power": operator_json(first), "agreed": names})))
        }
    }
}

fn verify_paper(a: &VerifyArgs, seed: u64) -> Res {
    let reg = reproduction_checks();
    let chosen = select(&reg, a.filter.as_deref());
    if chosen.is_empty() {
        return Err(input(format!(
            "no check matches `{}` (available: {})",
            a.filter.as_deref().unwrap_or(""),
            reg.names().join(", ")
        )));
    }
    if a.list {
        let lines: Vec<String> =
            chosen.iter().map(|(name, c)| format!("{:>2} {name} [{}] {}", c.id(), c.group(), c.title())).collect();
        let j: Vec<Value> = chosen
            .iter()
            .map(|(name, c)| json!({"id": c.id(), "name": name, "group": c.group(), "title": c.title()}))
            .collect();
        return Ok(Output::new(lines.join("\n"), Value::Array(j)));
    }
    let ctx = Context { seed, table: table(&a.flip_weight) };
    let mut outcomes = Vec::new();
    for (name, check) in chosen {
        let start = Instant::now();
        let o = run_check(name, check, &ctx);
        // Timing goes to stderr so that stdout stays byte-identical.
        eprintln!("[{}] {name}: {:.2?}", o.id, start.elapsed());
        outcomes.push(o);
    }
    let passed = outcomes.iter().filter(|o| o.pass()).count();
    let first = outcomes.iter().find(|o| !o.pass());
    let mut text: Vec<String> = outcomes.iter().map(ToString::to_string).collect();
    text.push(match first {
        None => format!("{passed}/{} checks pass", outcomes.len()),
        Some(f) => format!("{passed}/{} checks pass; first failure: [{}] {}", outcomes.len(), f.id, f.name),
    });
    let j = json!({
        "seed": seed,
        "pass": first.is_none(),
        "first_failure": first.map(|f| f.name),
        "checks": outcomes.iter().map(|o| o.to_json()).collect::<Vec<_>>(),
    });
    Ok(Output::new(text.join("\n"), j).checked(first.is_none()))
}

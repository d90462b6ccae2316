use ndga::linalg::Matrix;
use ndga::pathsum::*;
use ndga::rational::q;
use ndga::Q;
use proptest::prelude::*;

fn matrix_power_entry(g: &FiniteDigraph, n: u32, x: usize, y: usize) -> Q {
    let mut w = Matrix::zeros(g.vertices(), g.vertices());
    for (s, t, c) in g.edges() {
        w[(*s, *t)] += c;
    }
    let mut acc = Matrix::identity(g.vertices());
    for _ in 0..n {
        acc = acc.mul(&w).unwrap();
    }
    acc[(x, y)].clone()
}

fn digraph() -> impl Strategy<Value = FiniteDigraph> {
    (1usize..5).prop_flat_map(|v| {
        prop::collection::vec((0..v, 0..v, -3i64..=3), 0..10)
            .prop_map(move |es| FiniteDigraph::new(v, es.into_iter().map(|(s, t, c)| (s, t, q(c))).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn finite_backends_match_matrix_powers(g in digraph(), n in 0u32..6, x in 0usize..5, y in 0usize..5) {
        let (x, y) = (x % g.vertices(), y % g.vertices());
        let want = matrix_power_entry(&g, n, x, y);
        for (name, backend) in kernel_registry().iter() {
            prop_assert_eq!(backend.finite(&g, n, x, y).unwrap(), want.clone(), "{}", name);
        }
    }
}

#[test]
fn coefficients_are_sums_of_path_weights() {
    let table = WeightTable::standard();
    let reg = kernel_registry();
    for n in 1..=6 {
        for s in MultiIndex::all_in_e(n) {
            let paths = enumerate_paths(&s, n);
            assert!(paths.iter().all(|p| p.validate(&table) && p.len() == n as usize));
            let total: i128 = paths.iter().map(Path::weight).sum();
            assert_eq!(mc_coefficient(&s, n), total, "{s}");
            assert_eq!(path_count(&s, n), paths.len() as u128);
            let transfer = reg.get("transfer").unwrap().mc(&table, Some(n), n, &MultiIndex::empty(), &s).unwrap();
            assert_eq!(transfer, q(total as i64), "{s}");
        }
    }
}

#[test]
fn truncated_graph_reproduces_coefficients() {
    let table = WeightTable::standard();
    let (g, labels) = truncated_mc_graph(&table, 4);
    let empty = labels.iter().position(MultiIndex::is_empty).unwrap();
    for (i, s) in labels.iter().enumerate() {
        if s.is_empty() || s.potential() > 4 {
            continue;
        }
        let got = kernel_registry().get("enumeration").unwrap().finite(&g, 4, empty, i).unwrap();
        assert_eq!(got, q(mc_coefficient(s, 4) as i64), "{s}");
    }
}

#[test]
fn unreachable_targets_have_no_paths() {
    let s = MultiIndex::new(vec![5]);
    assert!(enumerate_paths(&s, 3).is_empty());
    assert_eq!(mc_coefficient(&s, 3), 0);
}

#[test]
fn flipping_any_weight_family_breaks_the_complete_identity() {
    let flips = [
        WeightTable { flip_prepend: true, ..WeightTable::standard() },
        WeightTable::with_flipped_loop(),
        WeightTable { flip_increment: true, ..WeightTable::standard() },
    ];
    for table in flips {
        let broken = (3..=5).any(|n| !verify_equation(&mc_equation_with(&table, n, true)).holds());
        assert!(broken, "{table:?}");
    }
    for n in 3..=7 {
        assert!(verify_equation(&mc_equation_with(&WeightTable::standard(), n, true)).holds());
    }
}

#[test]
fn equation_json_round_trips_coefficients() {
    let eq = mc_equation(4);
    let v = eq.to_json();
    for k in 0..4u32 {
        let terms: Vec<NcTerm> = serde_json::from_value(v["c"][k as usize].clone()).unwrap();
        assert_eq!(&NcPoly::from_terms(&terms), eq.coeff(k));
    }
}

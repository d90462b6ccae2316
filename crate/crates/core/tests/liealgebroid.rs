use ndga::liealgebroid::*;
use ndga::linalg::Matrix;
use ndga::random::{random_bracket, random_deformation, random_square_zero, random_structure, seeded};
use ndga::rational::q;

fn square_is_zero(a: &[Vec<ndga::Q>]) -> bool {
    let m = Matrix::from_rows(a.to_vec()).unwrap();
    m.mul(&m).unwrap().is_zero()
}

#[test]
fn square_zero_generator_is_square_zero() {
    let mut rng = seeded(5);
    for n in 1..=5 {
        for _ in 0..10 {
            assert!(square_is_zero(&random_square_zero(&mut rng, n)));
        }
    }
}

#[test]
fn rank_one_square_zero_matrices_give_zero_cube() {
    let mut rng = seeded(6);
    let mut cases: Vec<Vec<Vec<ndga::Q>>> = (0..10).map(|t| random_square_zero(&mut rng, 2 + t % 2)).collect();
    let u = [q(1), q(2), q(0), q(-1)];
    let v = [q(2), q(-1), q(5), q(0)];
    cases.push(u.iter().map(|ui| v.iter().map(|vj| ui * vj).collect()).collect());
    for a in cases {
        assert!(square_is_zero(&a));
        assert!(deform_de_rham(&scaled_coordinates(&a).unwrap()).unwrap().cube.is_zero());
    }
}

#[test]
fn square_zero_does_not_force_a_zero_cube() {
    let a: Vec<Vec<ndga::Q>> = [[7, 1, -8, -2], [-1, 1, 0, 2], [5, 1, -6, -1], [4, 0, -4, -2]]
        .iter()
        .map(|r| r.iter().map(|&x| q(x)).collect())
        .collect();
    assert!(square_is_zero(&a));
    let rep = deform_de_rham(&scaled_coordinates(&a).unwrap()).unwrap();
    assert!(!rep.cube.is_zero());
}

#[test]
fn full_cube_matches_corrected_closed_form() {
    let mut rng = seeded(8);
    let mut printed = 0;
    for t in 0..20 {
        let rep = deform_de_rham(&random_deformation(&mut rng, 2 + t % 2, 2, false)).unwrap();
        assert_eq!(rep.cube_matches_corrected, Some(true));
        printed += usize::from(rep.cube_matches_printed == Some(true));
    }
    assert!(printed < 20);
}

#[test]
fn infinitesimal_cube_vanishes() {
    let mut rng = seeded(9);
    for t in 0..20 {
        let rep = deform_de_rham(&random_deformation(&mut rng, 2 + t % 3, 2, true)).unwrap();
        assert!(rep.cube.is_zero());
        assert!(rep.square_matches_closed);
    }
}

#[test]
fn three_lie_routes_agree_and_include_non_lie_examples() {
    let mut rng = seeded(10);
    let mut non_lie_three_lie = 0;
    for t in 0..60 {
        let r = 2 + t % 3;
        let v = is_3_lie(&StructureData::lie_algebra(r, &random_bracket(&mut rng, r, 0.3)).unwrap()).unwrap();
        assert!(v.routes_agree(), "{v}");
        if v.three_lie() && !v.jacobi {
            non_lie_three_lie += 1;
        }
        if v.jacobi {
            assert!(v.three_lie());
        }
    }
    assert!(non_lie_three_lie > 0);
}

#[test]
fn registry_routes_match_direct_calls() {
    let reg = three_lie_registry();
    assert_eq!(reg.names(), ["operator", "shuffle"]);
    let s = StructureData::sl2();
    for (_, route) in reg.iter() {
        assert!(route.check(&s).unwrap().three_lie);
    }
    let with_base = StructureData::tangent(2);
    assert!(reg.get("shuffle").unwrap().check(&with_base).is_err());
}

#[test]
fn order_two_identities_track_the_square() {
    let mut rng = seeded(12);
    for _ in 0..30 {
        let s = random_structure(&mut rng, 2, 3, 1);
        assert!(algebroid_identities(&s, 2).unwrap().agrees());
    }
}

#[test]
fn order_three_identities_agree_on_lie_brackets() {
    let mut rng = seeded(13);
    for _ in 0..20 {
        let s = StructureData::lie_algebra(4, &random_bracket(&mut rng, 4, 0.25)).unwrap();
        let rep = algebroid_identities(&s, 3).unwrap();
        assert!(rep.agrees(), "{rep}");
    }
    assert!(algebroid_identities(&StructureData::tangent(3), 3).unwrap().vanish());
}

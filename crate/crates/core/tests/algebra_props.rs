use std::sync::Arc;

use ndga::forms::omega_space;
use ndga::galgebra::{Family, GVar, Poly, Presentation};
use ndga::random::{random_homogeneous, random_poly, seeded};
use ndga::rational::sign;
use proptest::prelude::*;

/// Even and odd generators of grades 0..=2 with one annihilated odd pair
/// and a substitution.
fn mixed() -> Arc<Presentation> {
    let x = GVar::x(1, 0);
    let y = GVar::new(Family::x(), 2, 0, 2);
    let (a, b) = (GVar::theta(1), GVar::theta(2));
    let z = GVar::new(Family::x(), 3, 0, 2);
    let image = Poly::var(y) - Poly::var(x).mul_free(&Poly::var(y));
    Arc::new(Presentation::builder().generators([x, y, a, b]).annihilate(a, b).substitute(z, image).build().unwrap())
}

fn algebras() -> Vec<Arc<Presentation>> {
    vec![
        mixed(),
        omega_space(3, 1, true).unwrap().presentation().clone(),
        omega_space(3, 2, false).unwrap().presentation().clone(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(seed in any::<u64>(), which in 0usize..3) {
        let pres = &algebras()[which];
        let mut rng = seeded(seed);
        let gens = pres.generators().to_vec();
        let [a, b, c] = [(); 3].map(|_| random_poly(&mut rng, pres, &gens, 3, 3));
        prop_assert_eq!(pres.mul(&pres.mul(&a, &b), &c), pres.mul(&a, &pres.mul(&b, &c)));
    }

    #[test]
    fn products_are_graded_commutative(seed in any::<u64>(), which in 0usize..3, i in 0i32..4, j in 0i32..4) {
        let pres = &algebras()[which];
        let mut rng = seeded(seed);
        let gens = pres.generators().to_vec();
        let a = random_homogeneous(&mut rng, pres, &gens, i, 3, 4);
        let b = random_homogeneous(&mut rng, pres, &gens, j, 3, 4);
        let s = sign((i * j) % 2 == 1);
        prop_assert_eq!(pres.mul(&a, &b), pres.mul(&b, &a).scale(&s));
    }

    #[test]
    fn normal_form_is_idempotent(seed in any::<u64>(), which in 0usize..3) {
        let pres = &algebras()[which];
        let mut rng = seeded(seed);
        let gens = pres.generators().to_vec();
        let a = random_poly(&mut rng, pres, &gens, 3, 4);
        let b = random_poly(&mut rng, pres, &gens, 3, 4);
        let raw = a.mul_free(&b);
        let once = pres.normalize(&raw).unwrap();
        prop_assert_eq!(pres.normalize(&once).unwrap(), once.clone());
        prop_assert_eq!(once, pres.mul(&a, &b));
    }

    #[test]
    fn annihilated_pairs_multiply_to_zero(seed in any::<u64>()) {
        let pres = mixed();
        let mut rng = seeded(seed);
        let gens = pres.generators().to_vec();
        let (a, b) = (Poly::var(GVar::theta(1)), Poly::var(GVar::theta(2)));
        let p = random_poly(&mut rng, &pres, &gens, 2, 3);
        let q = random_poly(&mut rng, &pres, &gens, 2, 3);
        let left = pres.mul(&p, &a);
        let right = pres.mul(&b, &q);
        prop_assert!(pres.mul(&left, &right).is_zero());
    }

    #[test]
    fn depth_differential_obeys_leibniz(seed in any::<u64>(), i in 0i32..4) {
        let dga = omega_space(3, 2, false).unwrap();
        let pres = dga.presentation().clone();
        let mut rng = seeded(seed);
        let gens = pres.generators().to_vec();
        let a = random_homogeneous(&mut rng, &pres, &gens, i, 3, 3);
        let b = random_poly(&mut rng, &pres, &gens, 3, 3);
        let lhs = dga.d.apply(&pres.mul(&a, &b));
        let rhs = pres.mul(&dga.d.apply(&a), &b) + pres.mul(&a, &dga.d.apply(&b)).scale(&sign(i % 2 == 1));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn diamond_square_agrees_with_composition_on_generators() {
    let dga = omega_space(4, 2, false).unwrap();
    let sq = dga.d.diamond_power(2).unwrap();
    for g in dga.presentation().generators() {
        assert_eq!(sq.image(g), dga.d.apply(&dga.d.apply(&Poly::var(*g))));
    }
}

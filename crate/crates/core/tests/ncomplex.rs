use std::collections::BTreeMap;

use ndga::linalg::{bareiss_rank, Matrix};
use ndga::ncomplex::NComplex;
use ndga::random::{random_invertible, random_ncomplex, seeded};
use ndga::rational::q;
use proptest::prelude::*;

fn rational_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec((-4i64..=4, 1i64..=3), r * c).prop_map(move |v| {
            let rows =
                v.chunks(c).map(|row| row.iter().map(|&(n, d)| ndga::rational::q_frac(n, d)).collect()).collect();
            Matrix::from_rows(rows).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn bareiss_rank_matches_row_reduction(m in rational_matrix()) {
        prop_assert_eq!(bareiss_rank(&m), m.rank());
        prop_assert_eq!(bareiss_rank(&m.transpose()), m.rank());
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in rational_matrix()) {
        let k = m.kernel();
        prop_assert_eq!(k.len() + m.rank(), m.cols());
        for v in k {
            prop_assert!(m.mul_vec(&v).iter().all(|x| *x == q(0)));
        }
    }

    #[test]
    fn cohomology_is_basis_independent(seed in any::<u64>(), order in 2u32..5) {
        let mut rng = seeded(seed);
        let c = random_ncomplex(&mut rng, order, 12);
        prop_assert!(c.check().is_valid());
        let bases: BTreeMap<i32, (Matrix, Matrix)> =
            c.dims().iter().map(|(&i, &d)| (i, random_invertible(&mut rng, d))).collect();
        let moved = c.transport(&bases).unwrap();
        for p in 1..order {
            for &i in c.dims().keys() {
                let a = c.cohomology(p, i).unwrap();
                let b = moved.cohomology(p, i).unwrap();
                prop_assert_eq!(a.dim, b.dim);
                let qq = order - p;
                let oracle = c.dim(i) - bareiss_rank(&c.power(i, p)) - bareiss_rank(&c.power(i - qq as i32, qq));
                prop_assert_eq!(a.dim, oracle);
                prop_assert_eq!(a.basis.len(), a.dim);
            }
        }
    }
}

#[test]
fn strings_of_full_length_are_acyclic() {
    // a single string of length N contributes nothing to any ₚHⁱ
    let dims = BTreeMap::from([(0, 1), (1, 1), (2, 1)]);
    let maps = BTreeMap::from([(0, Matrix::from_i64(&[&[2]])), (1, Matrix::from_i64(&[&[-1]]))]);
    let c = NComplex::new(3, dims, maps).unwrap();
    for p in 1..3 {
        for i in 0..3 {
            assert_eq!(c.cohomology(p, i).unwrap().dim, 0, "p={p} i={i}");
        }
    }
}

#[test]
fn json_round_trip() {
    let mut rng = seeded(4);
    let c = random_ncomplex(&mut rng, 3, 8);
    let back = NComplex::from_json(&c.to_json().to_string()).unwrap();
    assert_eq!(back.dims(), c.dims());
    for &i in c.dims().keys() {
        assert_eq!(back.map(i), c.map(i));
    }
}

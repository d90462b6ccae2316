//! Seeded generators for randomized checks. Every generator takes the
//! caller's RNG so a single seed reproduces a whole battery.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::galgebra::{GVar, Poly, Presentation};
use crate::liealgebroid::{coordinate_algebra, x, DeformationMatrix, StructureData};
use crate::linalg::Matrix;
use crate::ncomplex::NComplex;
use crate::rational::Q;

pub type TestRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonzero integer in `-bound..=bound`.
pub fn nonzero_int(rng: &mut TestRng, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

/// A random product of the given variables with at most `max_word` factors
/// (odd variables appear at most once), normalized in `pres`.
pub fn random_monomial(rng: &mut TestRng, pres: &Presentation, vars: &[GVar], max_word: usize) -> Poly {
    let len = rng.gen_range(0..=max_word);
    let mut p = Poly::one();
    for _ in 0..len {
        if vars.is_empty() {
            break;
        }
        let v = vars[rng.gen_range(0..vars.len())];
        p = pres.mul(&p, &Poly::var(v));
    }
    p
}

/// A sum of up to `terms` random monomials with small integer
/// coefficients; may be zero.
pub fn random_poly(rng: &mut TestRng, pres: &Presentation, vars: &[GVar], max_word: usize, terms: usize) -> Poly {
    let mut out = Poly::zero();
    for _ in 0..rng.gen_range(0..=terms) {
        let c = Q::from_integer(nonzero_int(rng, 3).into());
        out += &random_monomial(rng, pres, vars, max_word).scale(&c);
    }
    out
}

/// Like [`random_poly`] but keeps only the part of the given grade.
pub fn random_homogeneous(
    rng: &mut TestRng,
    pres: &Presentation,
    vars: &[GVar],
    grade: i32,
    max_word: usize,
    terms: usize,
) -> Poly {
    random_poly(rng, pres, vars, max_word, terms).filter(|m| m.grade() == grade)
}

fn small_q(rng: &mut TestRng, bound: i64) -> Q {
    Q::from_integer(rng.gen_range(-bound..=bound).into())
}

/// An `n × n` rational matrix with `A² = 0`, built as `U Vᵀ` with the
/// columns of `V` orthogonal to those of `U`. Aims at rank `n/2`, the rank
/// of a generic square-zero matrix; degenerate draws come out lower.
pub fn random_square_zero(rng: &mut TestRng, n: usize) -> Vec<Vec<Q>> {
    let k = (n / 2).max(1);
    let u: Vec<Vec<Q>> = (0..k).map(|_| (0..n).map(|_| small_q(rng, 2)).collect()).collect();
    let ut = Matrix::from_rows(u.clone()).expect("rectangular");
    let perp = ut.kernel();
    let v: Vec<Vec<Q>> = (0..k)
        .map(|_| {
            let mut col = vec![Q::from_integer(0.into()); n];
            for b in &perp {
                let c = small_q(rng, 2);
                for (x, y) in col.iter_mut().zip(b) {
                    *x += &c * y;
                }
            }
            col
        })
        .collect();
    let mut a = vec![vec![Q::from_integer(0.into()); n]; n];
    for t in 0..k {
        for i in 0..n {
            for j in 0..n {
                a[i][j] += &u[t][i] * &v[t][j];
            }
        }
    }
    a
}

/// Random antisymmetric constants `C^γ_{αβ}` with entries in `-2..=2`,
/// each pair filled with probability `density`.
pub fn random_bracket(rng: &mut TestRng, r: usize, density: f64) -> BTreeMap<(usize, usize, usize), Q> {
    let mut c = BTreeMap::new();
    for a in 0..r {
        for b in a + 1..r {
            for g in 0..r {
                if rng.gen_bool(density) {
                    c.insert((a, b, g), Q::from_integer(nonzero_int(rng, 2).into()));
                }
            }
        }
    }
    c
}

/// Structure data with anchor and bracket entries of degree at most
/// `degree` in `x1..xn`.
pub fn random_structure(rng: &mut TestRng, n: usize, r: usize, degree: usize) -> StructureData {
    let pres = coordinate_algebra(n, r, false).expect("free algebra");
    let xs: Vec<GVar> = (0..n).map(x).collect();
    let rho = (0..n).map(|_| (0..r).map(|_| random_poly(rng, &pres, &xs, degree, 2)).collect()).collect();
    let mut c = vec![vec![vec![Poly::zero(); r]; r]; r];
    for a in 0..r {
        for b in a + 1..r {
            for g in 0..r {
                let p = random_poly(rng, &pres, &xs, degree, 2);
                c[b][a][g] = -p.clone();
                c[a][b][g] = p;
            }
        }
    }
    StructureData::new(n, r, rho, c).expect("well formed")
}

/// An `n × n` deformation matrix with entries of degree at most `degree`.
pub fn random_deformation(rng: &mut TestRng, n: usize, degree: usize, infinitesimal: bool) -> DeformationMatrix {
    let pres = coordinate_algebra(n, n, false).expect("free algebra");
    let xs: Vec<GVar> = (0..n).map(x).collect();
    let a = (0..n).map(|_| (0..n).map(|_| random_poly(rng, &pres, &xs, degree, 3)).collect()).collect();
    DeformationMatrix::new(a, infinitesimal).expect("square")
}

/// A random invertible `n × n` matrix with its inverse, as a product of
/// elementary row operations.
pub fn random_invertible(rng: &mut TestRng, n: usize) -> (Matrix, Matrix) {
    let mut p = Matrix::identity(n);
    let mut inv = Matrix::identity(n);
    if n < 2 {
        if n == 1 {
            let c = Q::from_integer(nonzero_int(rng, 3).into());
            p[(0, 0)] = c.clone();
            inv[(0, 0)] = c.recip();
        }
        return (p, inv);
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = Q::from_integer(nonzero_int(rng, 2).into());
        for k in 0..n {
            let v = &c * &p[(j, k)];
            p[(i, k)] += v;
            let w = &c * &inv[(k, i)];
            inv[(k, j)] -= w;
        }
    }
    (p, inv)
}

/// A random `order`-complex of total dimension at most `max_total`: a sum
/// of strings `v → d v → … → d^{ℓ-1} v` with `ℓ <= order`, scrambled by a
/// random change of basis in every degree.
pub fn random_ncomplex(rng: &mut TestRng, order: u32, max_total: usize) -> NComplex {
    let mut strings = Vec::new();
    let mut total = 0;
    let target = rng.gen_range(1..=max_total);
    while total < target {
        let len = rng.gen_range(1..=order as usize).min(target - total);
        let start = rng.gen_range(0..=3);
        strings.push((start, len));
        total += len;
    }
    let mut dims: BTreeMap<i32, usize> = BTreeMap::new();
    let mut slots = Vec::new();
    for &(start, len) in &strings {
        let idx: Vec<(i32, usize)> = (0..len)
            .map(|k| {
                let deg = start + k as i32;
                let d = dims.entry(deg).or_insert(0);
                *d += 1;
                (deg, *d - 1)
            })
            .collect();
        slots.push(idx);
    }
    let mut maps: BTreeMap<i32, Matrix> = BTreeMap::new();
    for idx in &slots {
        for w in idx.windows(2) {
            let (deg, src) = w[0];
            let (_, dst) = w[1];
            let m = maps.entry(deg).or_insert_with(|| Matrix::zeros(dims[&(deg + 1)], dims[&deg]));
            m[(dst, src)] = Q::from_integer(nonzero_int(rng, 3).into());
        }
    }
    let plain = NComplex::new(order, dims.clone(), maps).expect("conforming");
    let bases = dims.iter().map(|(&i, &d)| (i, random_invertible(rng, d))).collect();
    plain.transport(&bases).expect("conforming")
}

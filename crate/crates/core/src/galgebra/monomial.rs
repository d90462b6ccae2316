use std::fmt;

use super::var::GVar;

/// A product of generators in canonical order with positive exponents.
///
/// Odd generators never carry an exponent above one. The ordering is
/// lexicographic on the factor list, which is also the term order used for
/// printing and for pivoting in the relation reducer.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    factors: Vec<(GVar, u32)>,
    grade: i32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: GVar) -> Self {
        Monomial { factors: vec![(v, 1)], grade: v.grade() }
    }

    /// `v^e`; `None` when `v` is odd and `e > 1`.
    pub fn power(v: GVar, e: u32) -> Option<Self> {
        match e {
            0 => Some(Monomial::one()),
            1 => Some(Monomial::var(v)),
            _ if v.is_odd() => None,
            _ => Some(Monomial { factors: vec![(v, e)], grade: v.grade() * e as i32 }),
        }
    }

    /// Sorts an arbitrary ordered product into canonical form.
    ///
    /// Returns the Koszul sign (`true` = negative) and the monomial, or
    /// `None` if an odd generator repeats.
    pub fn from_ordered(factors: &[(GVar, u32)]) -> Option<(bool, Monomial)> {
        let mut neg = false;
        let mut acc = Monomial::one();
        for &(v, e) in factors {
            let (s, m) = acc.mul(&Monomial::power(v, e)?)?;
            neg ^= s;
            acc = m;
        }
        Some((neg, acc))
    }

    pub(crate) fn from_sorted_unchecked(factors: Vec<(GVar, u32)>) -> Self {
        let grade = factors.iter().map(|(v, e)| v.grade() * *e as i32).sum();
        Monomial { factors, grade }
    }

    pub fn factors(&self) -> &[(GVar, u32)] {
        &self.factors
    }

    pub fn grade(&self) -> i32 {
        self.grade
    }

    pub fn is_odd(&self) -> bool {
        self.grade.rem_euclid(2) == 1
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Total number of generator factors counted with multiplicity.
    pub fn word_len(&self) -> usize {
        self.factors.iter().map(|(_, e)| *e as usize).sum()
    }

    /// Exponent sum over grade-zero generators.
    pub fn weight(&self) -> u32 {
        self.factors.iter().filter(|(v, _)| v.grade() == 0).map(|(_, e)| *e).sum()
    }

    pub fn exponent(&self, v: &GVar) -> u32 {
        self.factors.binary_search_by(|(w, _)| w.cmp(v)).map(|i| self.factors[i].1).unwrap_or(0)
    }

    pub fn contains(&self, v: &GVar) -> bool {
        self.exponent(v) > 0
    }

    /// Graded-commutative product `self · other`.
    ///
    /// Returns the Koszul sign picked up while merging and the product, or
    /// `None` when an odd generator would be squared.
    pub fn mul(&self, other: &Monomial) -> Option<(bool, Monomial)> {
        if other.is_one() {
            return Some((false, self.clone()));
        }
        if self.is_one() {
            return Some((false, other.clone()));
        }
        let a = &self.factors;
        let b = &other.factors;
        // odd factors of `a` at or after each index
        let mut odd_suffix = vec![0u32; a.len() + 1];
        for i in (0..a.len()).rev() {
            odd_suffix[i] = odd_suffix[i + 1] + u32::from(a[i].0.is_odd());
        }
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut neg = false;
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (va, ea) = a[i];
            let (vb, eb) = b[j];
            match va.cmp(&vb) {
                std::cmp::Ordering::Less => {
                    out.push((va, ea));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    if vb.is_odd() && odd_suffix[i] % 2 == 1 {
                        neg = !neg;
                    }
                    out.push((vb, eb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    if va.is_odd() {
                        return None;
                    }
                    out.push((va, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Some((neg, Monomial { factors: out, grade: self.grade + other.grade }))
    }

    /// Left partial derivative `∂/∂v`: the exponent of `v` it removes and
    /// the Koszul sign of moving `∂_v` past the factors in front of `v`.
    pub fn partial(&self, v: &GVar) -> Option<(bool, u32, Monomial)> {
        let idx = self.factors.binary_search_by(|(w, _)| w.cmp(v)).ok()?;
        let e = self.factors[idx].1;
        let neg =
            v.is_odd() && self.factors[..idx].iter().filter(|(w, _)| w.is_odd()).map(|(_, k)| *k).sum::<u32>() % 2 == 1;
        let mut factors = self.factors.clone();
        if e == 1 {
            factors.remove(idx);
        } else {
            factors[idx].1 -= 1;
        }
        Some((neg, e, Monomial { factors, grade: self.grade - v.grade() }))
    }

    pub fn vars(&self) -> impl Iterator<Item = GVar> + '_ {
        self.factors.iter().map(|(v, _)| *v)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th(i: u32) -> GVar {
        GVar::theta(i)
    }

    #[test]
    fn odd_generators_anticommute() {
        let (neg, m) = Monomial::var(th(2)).mul(&Monomial::var(th(1))).unwrap();
        assert!(neg);
        assert_eq!(m.to_string(), "th1*th2");
        let (neg, _) = Monomial::var(th(1)).mul(&Monomial::var(th(2))).unwrap();
        assert!(!neg);
        assert!(Monomial::var(th(1)).mul(&Monomial::var(th(1))).is_none());
    }

    #[test]
    fn even_generators_commute_and_accumulate() {
        let x = GVar::x(1, 0);
        let d2x = GVar::x(1, 2);
        let (neg, m) = Monomial::var(d2x).mul(&Monomial::power(x, 2).unwrap()).unwrap();
        assert!(!neg);
        assert_eq!(m.to_string(), "x1^2*d2x1");
        assert_eq!(m.grade(), 2);
        assert_eq!(m.word_len(), 3);
        assert_eq!(m.weight(), 2);
    }

    #[test]
    fn ordered_product_sign() {
        // th3 th1 th2 = th1 th2 th3 (cyclic permutation, even)
        let (neg, m) = Monomial::from_ordered(&[(th(3), 1), (th(1), 1), (th(2), 1)]).unwrap();
        assert!(!neg);
        assert_eq!(m.to_string(), "th1*th2*th3");
        // th2 th1 th3 is odd
        let (neg, _) = Monomial::from_ordered(&[(th(2), 1), (th(1), 1), (th(3), 1)]).unwrap();
        assert!(neg);
    }

    #[test]
    fn partial_derivative_signs() {
        let m = Monomial::from_ordered(&[(th(1), 1), (th(2), 1)]).unwrap().1;
        let (neg, e, rest) = m.partial(&th(2)).unwrap();
        assert!(neg);
        assert_eq!(e, 1);
        assert_eq!(rest.to_string(), "th1");
        let (neg, _, rest) = m.partial(&th(1)).unwrap();
        assert!(!neg);
        assert_eq!(rest.to_string(), "th2");
        let x = GVar::x(1, 0);
        let (neg, e, rest) = Monomial::power(x, 3).unwrap().partial(&x).unwrap();
        assert!(!neg);
        assert_eq!(e, 3);
        assert_eq!(rest.to_string(), "x1^2");
    }
}

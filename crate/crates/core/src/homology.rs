//! Exact integer linear algebra and the arithmetic of cyclic quotients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::presentations::Presentation;
use crate::{Error, Result};

/// Dense matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<BigInt>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i][i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntegerMatrix {
            rows: rows.len(),
            cols,
            entries: rows.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i][j] = v;
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i][j] += &self.entries[i][k] * &other.entries[k][j];
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j][i] = self.entries[i][j].clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.entries.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.entries {
            r.swap(a, b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self.entries[src][j] * k;
            self.entries[dst][j] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in &mut self.entries {
            let v = &r[src] * k;
            r[dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for v in &mut self.entries[i] {
            *v = -&*v;
        }
    }
}

impl Serialize for IntegerMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for r in &self.entries {
            let row: Vec<serde_json::Value> = r
                .iter()
                .map(|v| match v.to_i64() {
                    Some(x) => serde_json::Value::from(x),
                    None => serde_json::Value::from(v.to_string()),
                })
                .collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

/// Result of a Smith normal form computation: `u * m * v = d`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    /// Diagonal entries `d1 | d2 | ...`, nonnegative, zeros last.
    pub diagonal: Vec<BigInt>,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub d: IntegerMatrix,
}

/// Smith normal form with unimodular transforms. Pivots are chosen by
/// smallest nonzero absolute value.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntegerMatrix::identity(r);
    let mut v = IntegerMatrix::identity(c);
    let steps = r.min(c);
    for t in 0..steps {
        loop {
            // Smallest nonzero entry of the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = &a.entries[i][j];
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a.entries[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(a, u, v);
            };
            if pi != t {
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
            }
            if pj != t {
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);
            }
            let pivot = a.entries[t][t].clone();
            let mut dirty = false;
            for i in t + 1..r {
                if a.entries[i][t].is_zero() {
                    continue;
                }
                let q = -a.entries[i][t].div_floor(&pivot);
                a.add_row(i, t, &q);
                u.add_row(i, t, &q);
                dirty |= !a.entries[i][t].is_zero();
            }
            for j in t + 1..c {
                if a.entries[t][j].is_zero() {
                    continue;
                }
                let q = -a.entries[t][j].div_floor(&pivot);
                a.add_col(j, t, &q);
                v.add_col(j, t, &q);
                dirty |= !a.entries[t][j].is_zero();
            }
            if dirty {
                continue;
            }
            // Pivot must divide the rest of the block.
            let offending = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a.entries[i][j].is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a.entries[t][t].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(a, u, v)
}

fn finish(a: IntegerMatrix, mut u: IntegerMatrix, v: IntegerMatrix) -> SmithForm {
    let mut a = a;
    let steps = a.rows.min(a.cols);
    for t in 0..steps {
        if a.entries[t][t].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    let diagonal = (0..steps).map(|i| a.entries[i][i].clone()).collect();
    SmithForm { diagonal, u, v, d: a }
}

/// Finitely generated abelian group `Z^rank + Z/d1 + ... ` with `d1 | d2 | ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    /// Validates the divisibility chain.
    pub fn new(rank: usize, torsion: Vec<u64>) -> Result<Self> {
        if torsion.iter().any(|&d| d < 2) {
            return Err(Error::InvalidInput("torsion coefficients must be at least 2".into()));
        }
        if torsion.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidInput("torsion coefficients must form a divisibility chain".into()));
        }
        Ok(AbelianGroup { rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { rank, torsion: Vec::new() }
    }

    /// Group from arbitrary cyclic orders (0 meaning `Z`), normalized to
    /// invariant factors.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let n = orders.len();
        let mut m = IntegerMatrix::zeros(n, n);
        for (i, &d) in orders.iter().enumerate() {
            m.set(i, i, BigInt::from(d));
        }
        Self::from_relation_diagonal(n, &smith_normal_form(&m).diagonal).expect("fits")
    }

    fn from_relation_diagonal(generators: usize, diagonal: &[BigInt]) -> Result<Self> {
        let nonzero: Vec<&BigInt> = diagonal.iter().filter(|d| !d.is_zero()).collect();
        let torsion = nonzero
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| d.to_u64().ok_or_else(|| Error::InvalidInput("torsion coefficient exceeds 64 bits".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(AbelianGroup { rank: generators - nonzero.len(), torsion })
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> u64 {
        self.torsion.iter().product()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".to_string() } else { format!("Z^{}", self.rank) });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Relation matrix of exponent sums: one row per relator.
pub fn relation_matrix(p: &Presentation) -> IntegerMatrix {
    let k = p.generator_count();
    let rows: Vec<Vec<i64>> = p
        .relators()
        .iter()
        .map(|r| (1..=k).map(|g| r.exponent_sum(g)).collect())
        .collect();
    if rows.is_empty() {
        return IntegerMatrix::zeros(0, k);
    }
    IntegerMatrix::from_rows(&rows)
}

/// First homology of the presented group.
pub fn abelianization(p: &Presentation) -> Result<AbelianGroup> {
    let m = relation_matrix(p);
    let snf = smith_normal_form(&m);
    AbelianGroup::from_relation_diagonal(p.generator_count(), &snf.diagonal)
}

/// First Betti number.
pub fn betti_number(p: &Presentation) -> Result<usize> {
    abelianization(p).map(|a| a.rank)
}

pub fn euler_phi(n: u64) -> u64 {
    prime_factors(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs.
pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Number of positive divisors.
pub fn divisor_count(n: u64) -> u64 {
    assert!(n >= 1, "divisor_count needs n >= 1");
    prime_factors(n).iter().map(|&(_, e)| e as u64 + 1).product()
}

/// Sum of positive divisors.
pub fn divisor_sum(n: u64) -> u64 {
    divisors(n).iter().sum()
}

pub fn mobius(n: u64) -> i64 {
    let f = prime_factors(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `|Hom(A, Z/e)|`.
pub fn homomorphisms_to_cyclic(a: &AbelianGroup, e: u64) -> u128 {
    let mut count = (e as u128).pow(a.rank as u32);
    for &d in &a.torsion {
        count *= num_integer::gcd(d, e) as u128;
    }
    count
}

/// Number of surjections `A -> Z/n`, by Möbius inversion over the
/// subgroups of `Z/n`.
pub fn surjections_to_cyclic(a: &AbelianGroup, n: u64) -> u128 {
    assert!(n >= 1, "modulus must be positive");
    let total: i128 = divisors(n)
        .into_iter()
        .map(|e| mobius(n / e) as i128 * homomorphisms_to_cyclic(a, e) as i128)
        .sum();
    total as u128
}

/// Surjection count by enumerating every generator-image tuple. Exponential
/// in the number of cyclic factors; intended as a cross-check.
pub fn surjections_to_cyclic_brute(a: &AbelianGroup, n: u64) -> u128 {
    let orders: Vec<u64> = std::iter::repeat_n(0, a.rank).chain(a.torsion.iter().copied()).collect();
    // Admissible images of each cyclic generator.
    let choices: Vec<Vec<u64>> = orders
        .iter()
        .map(|&d| (0..n).filter(|&x| d == 0 || (d * x) % n == 0).collect())
        .collect();
    fn rec(choices: &[Vec<u64>], n: u64, g: u64) -> u128 {
        match choices.split_first() {
            None => u128::from(num_integer::gcd(g, n) == 1),
            Some((first, rest)) => first.iter().map(|&x| rec(rest, n, num_integer::gcd(g, x))).sum(),
        }
    }
    rec(&choices, n, 0)
}

/// `phi_2(n)` (surjections `Z^2 -> Z/n`), the lower bound
/// `(2n - phi(n)) phi(n)`, and whether the bound holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Phi2Check {
    pub phi2: u128,
    pub lower_bound: u128,
    pub holds: bool,
}

pub fn phi2_bound_check(n: u64) -> Phi2Check {
    assert!(n >= 2, "phi2_bound_check needs n >= 2");
    let phi2 = surjections_to_cyclic(&AbelianGroup::free(2), n);
    let phi = euler_phi(n) as u128;
    let lower_bound = (2 * n as u128 - phi) * phi;
    Phi2Check { phi2, lower_bound, holds: phi2 >= lower_bound }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diag(m: &IntegerMatrix) -> Vec<i64> {
        smith_normal_form(m).diagonal.iter().map(|d| d.to_i64().unwrap()).collect()
    }

    fn check_transforms(m: &IntegerMatrix) {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert_eq!(det_abs(&s.u), BigInt::one());
        assert_eq!(det_abs(&s.v), BigInt::one());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let nz: Vec<&BigInt> = s.diagonal.iter().filter(|d| !d.is_zero()).collect();
        for w in s.diagonal.windows(2) {
            if !w[1].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]));
            } else {
                // zeros come last
                assert!(s.diagonal.iter().skip_while(|d| !d.is_zero()).all(|d| d.is_zero()));
            }
        }
        assert!(nz.iter().all(|d| d.is_positive()));
    }

    // Fraction-free (Bareiss) determinant, independent of the SNF path.
    fn det_abs(m: &IntegerMatrix) -> BigInt {
        let n = m.rows();
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
        let mut prev = BigInt::one();
        let mut sign = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let Some(s) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, s);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        if n == 0 { BigInt::one() } else { (&a[n - 1][n - 1] * &sign).abs() }
    }

    #[test]
    fn snf_examples() {
        assert_eq!(diag(&IntegerMatrix::from_rows(&[vec![2i64, 0], vec![0, 3]])), vec![1, 6]);
        assert_eq!(diag(&IntegerMatrix::identity(3)), vec![1, 1, 1]);
        assert_eq!(diag(&IntegerMatrix::from_rows(&[vec![0i64]])), vec![0]);
        assert_eq!(diag(&IntegerMatrix::from_rows(&[vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]])), vec![2, 6, 12]);
        check_transforms(&IntegerMatrix::from_rows(&[vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
    }

    #[test]
    fn abelianization_examples() {
        let g2 = Presentation::surface(2);
        assert_eq!(abelianization(&g2).unwrap(), AbelianGroup::free(4));
        let klein = Presentation::parse(&["a", "b"], &["a b a b^-1"]).unwrap();
        assert_eq!(abelianization(&klein).unwrap(), AbelianGroup { rank: 1, torsion: vec![2] });
        assert_eq!(betti_number(&klein).unwrap(), 1);
    }

    #[test]
    fn tietze_invariance() {
        let klein = Presentation::parse(&["a", "b"], &["a b a b^-1"]).unwrap();
        let r = &klein.relators()[0];
        let b = crate::presentations::Word::generator(2);
        let conj = b.concat(r).concat(&b.inverse());
        for extra in [r.pow(2), conj.concat(&r.pow(3))] {
            let redundant = klein.with_relator(extra).unwrap();
            assert_eq!(abelianization(&redundant).unwrap(), abelianization(&klein).unwrap());
        }
    }

    #[test]
    fn surjection_examples() {
        assert_eq!(surjections_to_cyclic(&AbelianGroup::free(2), 2), 3);
        assert_eq!(surjections_to_cyclic(&AbelianGroup::free(2), 6), 24);
        assert_eq!(surjections_to_cyclic(&AbelianGroup::free(1), 5), 4);
        assert_eq!(surjections_to_cyclic(&AbelianGroup::new(0, vec![4]).unwrap(), 2), 1);
        assert_eq!(surjections_to_cyclic(&AbelianGroup::new(0, vec![4]).unwrap(), 8), 0);
    }

    #[test]
    fn phi2_examples() {
        assert_eq!(phi2_bound_check(2), Phi2Check { phi2: 3, lower_bound: 3, holds: true });
        assert_eq!(phi2_bound_check(6), Phi2Check { phi2: 24, lower_bound: 20, holds: true });
        assert_eq!(phi2_bound_check(4), Phi2Check { phi2: 12, lower_bound: 12, holds: true });
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisor_count(1), 1);
        assert_eq!(divisor_count(12), 6);
        assert_eq!(divisor_count(64 * 3), 14);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(36), 12);
    }

    #[test]
    fn abelian_group_validation() {
        assert!(AbelianGroup::new(0, vec![2, 3]).is_err());
        assert!(AbelianGroup::new(0, vec![1]).is_err());
        assert_eq!(AbelianGroup::from_cyclic_orders(&[2, 3, 0]), AbelianGroup { rank: 1, torsion: vec![6] });
        assert_eq!(AbelianGroup::from_cyclic_orders(&[2, 4]).to_string(), "Z/2 + Z/4");
    }

    proptest! {
        #[test]
        fn snf_transforms_hold(rows in proptest::collection::vec(proptest::collection::vec(-20i64..20, 3), 1..5)) {
            let m = IntegerMatrix::from_rows(&rows);
            check_transforms(&m);
        }

        #[test]
        fn det_is_product_of_divisors(rows in proptest::collection::vec(proptest::collection::vec(-9i64..9, 3), 3)) {
            let m = IntegerMatrix::from_rows(&rows);
            let prod: BigInt = smith_normal_form(&m).diagonal.iter().product();
            prop_assert_eq!(det_abs(&m), prod);
        }

        #[test]
        fn kernel_count_integral(rank in 0usize..3, tors in proptest::collection::vec(2u64..7, 0..3), n in 1u64..40) {
            let a = AbelianGroup::from_cyclic_orders(&std::iter::repeat_n(0, rank).chain(tors).collect::<Vec<_>>());
            let s = surjections_to_cyclic(&a, n);
            prop_assert_eq!(s % euler_phi(n) as u128, 0);
            prop_assert_eq!(s, surjections_to_cyclic_brute(&a, n));
        }
    }
}

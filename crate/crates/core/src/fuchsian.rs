//! Signature calculus for Fuchsian groups.
//!
//! A signature `(g, k; m1, .., ms)` records genus, number of cusps and the
//! cone-point orders of the quotient orbifold. Finite-index subgroups are
//! read off transitive permutation representations: cone points come from
//! the short cycles of the torsion generators, cusps from the cycles of the
//! parabolic generators, and the genus from multiplicativity of the orbifold
//! Euler characteristic.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::homology::divisors;
use crate::lowindex::{self, CosetTable, EnumerationOptions};
use crate::par;
use crate::presentations::fuchsian_presentation;
use crate::{Error, Result};

/// Exact rational number.
pub type Rational = BigRational;

/// Fuchsian signature with periods kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Signature {
    genus: u32,
    cusps: u32,
    periods: Vec<u64>,
}

impl Signature {
    pub fn new(genus: u32, cusps: u32, mut periods: Vec<u64>) -> Result<Self> {
        if periods.iter().any(|&m| m < 2) {
            return Err(Error::InvalidInput("periods must be at least 2".into()));
        }
        periods.sort_unstable();
        Ok(Signature { genus, cusps, periods })
    }

    /// The modular group `PSL(2, Z)`, signature `(0, 1; 2, 3)`.
    pub fn modular() -> Self {
        Signature { genus: 0, cusps: 1, periods: vec![2, 3] }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn cusps(&self) -> u32 {
        self.cusps
    }

    pub fn periods(&self) -> &[u64] {
        &self.periods
    }

    /// Parses `g,k;m1,m2,...` (an optional `sig:` prefix is accepted; the
    /// period list may be empty or omitted together with the `;`).
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let t = t.strip_prefix("sig:").unwrap_or(t);
        let (head, tail) = t.split_once(';').unwrap_or((t, ""));
        let err = || Error::Parse(format!("expected 'g,k;m1,m2,...', got {text:?}"));
        let (g, k) = head.split_once(',').ok_or_else(err)?;
        let g = g.trim().parse::<u32>().map_err(|_| err())?;
        let k = k.trim().parse::<u32>().map_err(|_| err())?;
        let periods = tail
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty() && *s != "-")
            .map(|s| s.parse::<u64>().map_err(|_| err()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(g, k, periods)
    }

    /// Whether the orbifold Euler characteristic is negative.
    pub fn is_hyperbolic(&self) -> bool {
        orbifold_euler(self).is_negative()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.periods.iter().map(u64::to_string).collect();
        write!(f, "{},{};{}", self.genus, self.cusps, p.join(","))
    }
}

/// `chi = -(2g - 2 + k + sum(1 - 1/m_i))`.
pub fn orbifold_euler(sig: &Signature) -> Rational {
    let mut neg = Rational::from_integer(BigInt::from(2 * sig.genus as i64 - 2 + sig.cusps as i64));
    for &m in &sig.periods {
        neg += Rational::one() - Rational::new(BigInt::one(), BigInt::from(m));
    }
    -neg
}

/// Isomorphism criterion for Fuchsian groups: equal period multisets, and
/// either both cocompact with equal genus, or both with cusps and equal
/// `2g + k`.
pub fn fuchsian_isomorphic(a: &Signature, b: &Signature) -> bool {
    isomorphism_key(a) == isomorphism_key(b)
}

/// Complete isomorphism invariant matching [`fuchsian_isomorphic`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum IsomorphismKey {
    Cocompact { genus: u32, periods: Vec<u64> },
    /// Free product type: `2g + k` determines the free rank.
    Cusped { two_g_plus_k: u32, periods: Vec<u64> },
}

pub fn isomorphism_key(s: &Signature) -> IsomorphismKey {
    if s.cusps == 0 {
        IsomorphismKey::Cocompact { genus: s.genus, periods: s.periods.clone() }
    } else {
        IsomorphismKey::Cusped { two_g_plus_k: 2 * s.genus + s.cusps, periods: s.periods.clone() }
    }
}

fn check_table(root: &Signature, t: &CosetTable) -> Result<()> {
    let expected = root.periods.len() + root.cusps as usize + 2 * root.genus as usize;
    if t.generator_count() != expected.max(1) {
        return Err(Error::InvalidInput(format!(
            "table has {} generators, signature {root} needs {expected}",
            t.generator_count()
        )));
    }
    Ok(())
}

/// Signature of the point-1 stabilizer of a transitive representation of
/// the Fuchsian group `root`.
pub fn subgroup_signature(root: &Signature, t: &CosetTable) -> Result<Signature> {
    check_table(root, t)?;
    let s = root.periods.len();
    let mut periods = Vec::new();
    for (i, &m) in root.periods.iter().enumerate() {
        for c in t.cycle_type(i) {
            let c = c as u64;
            if m % c != 0 {
                return Err(Error::InvalidInput(format!("cycle of length {c} for a generator of order {m}")));
            }
            if m / c > 1 {
                periods.push(m / c);
            }
        }
    }
    let cusps: usize = (s..s + root.cusps as usize).map(|j| t.cycle_type(j).len()).sum();
    let n = t.degree() as i64;
    // -chi' = n * (-chi) = 2g' - 2 + k' + sum(1 - 1/m')
    let neg_chi = -orbifold_euler(root) * Rational::from_integer(BigInt::from(n));
    let mut rest = neg_chi + Rational::from_integer(BigInt::from(2 - cusps as i64));
    for &m in &periods {
        rest -= Rational::one() - Rational::new(BigInt::one(), BigInt::from(m));
    }
    let two = Rational::from_integer(BigInt::from(2));
    let genus = rest / two;
    if !genus.is_integer() || genus.is_negative() {
        return Err(Error::Inconsistent(format!("derived genus {genus} is not a nonnegative integer")));
    }
    let genus = genus.to_integer().to_u32().ok_or_else(|| Error::Inconsistent("genus overflow".into()))?;
    Signature::new(genus, cusps as u32, periods)
}

/// Number of conjugacy classes of maximal cyclic subgroups of order `m` in
/// the point-1 stabilizer: the number of `(m_i / m)`-cycles of each torsion
/// generator whose order `m_i` is divisible by `m`.
pub fn torsion_class_count(root: &Signature, t: &CosetTable, m: u64) -> Result<usize> {
    check_table(root, t)?;
    if m < 2 {
        return Err(Error::InvalidInput("order must be at least 2".into()));
    }
    Ok(root
        .periods
        .iter()
        .enumerate()
        .filter(|(_, &mi)| mi % m == 0)
        .map(|(i, &mi)| t.cycle_type(i).into_iter().filter(|&c| c as u64 == mi / m).count())
        .sum())
}

/// Census of index-`n` subgroups of a Fuchsian group up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuchsianCensus {
    pub index: usize,
    /// Number of subgroups, `s_n`.
    pub subgroups: usize,
    /// Number of isomorphism types, `e_n`.
    pub isomorphism_types: usize,
    /// One representative signature per isomorphism type, sorted.
    pub representatives: Vec<Signature>,
}

pub fn e_n_fuchsian(root: &Signature, n: usize) -> Result<FuchsianCensus> {
    e_n_fuchsian_with(root, n, EnumerationOptions::default())
}

pub fn e_n_fuchsian_with(root: &Signature, n: usize, opts: EnumerationOptions) -> Result<FuchsianCensus> {
    let tables = lowindex::enumerate_subgroups_with(&fuchsian_presentation(root), n, opts)?;
    let sigs = par::try_map(opts.parallelism, &tables, |t| subgroup_signature(root, t))?;
    let mut seen = BTreeSet::new();
    let mut representatives = Vec::new();
    let mut sorted = sigs.clone();
    sorted.sort();
    for s in sorted {
        if seen.insert(isomorphism_key(&s)) {
            representatives.push(s);
        }
    }
    Ok(FuchsianCensus { index: n, subgroups: tables.len(), isomorphism_types: representatives.len(), representatives })
}

/// Count of lattice points solving the Euler characteristic equation for
/// index-`n` subgroups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LatticeCount {
    pub count: u64,
    /// True when the root has cusps; for cocompact roots the count is only
    /// an upper bound for `e_n`.
    pub exact: bool,
}

/// Number of tuples `(r, k_m : m in Omega, m > 1)` with `k_m >= 0` and
/// `r = 2g' - 2 + k'` for some `g' >= 0, k' >= 1` (that is, `r >= -1`)
/// satisfying `r + sum (1 - 1/m) k_m = n * (-chi)`, where `Omega` is the set
/// of divisors of the root's periods.
pub fn lattice_point_count(root: &Signature, n: u64) -> LatticeCount {
    let omega: Vec<u64> = root
        .periods
        .iter()
        .flat_map(|&m| divisors(m))
        .filter(|&d| d > 1)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let l = omega.iter().fold(1u64, |acc, &m| num_integer::lcm(acc, m)) as i128;
    // Everything scaled by l: r*l + sum (l - l/m) k_m = target.
    let neg_chi = -orbifold_euler(root) * Rational::from_integer(BigInt::from(n));
    let scaled = neg_chi * Rational::from_integer(BigInt::from(l));
    debug_assert!(scaled.is_integer());
    let target = scaled.to_integer().to_i128().expect("small target");
    let weights: Vec<i128> = omega.iter().map(|&m| l - l / m as i128).collect();

    fn rec(weights: &[i128], remaining: i128, l: i128) -> u64 {
        match weights.split_first() {
            None => u64::from(remaining % l == 0 && remaining / l >= -1),
            Some((&w, rest)) => {
                let mut total = 0;
                let mut rem = remaining;
                // r >= -1 bounds the weighted sum by target + l.
                while rem >= -l {
                    total += rec(rest, rem, l);
                    rem -= w;
                }
                total
            }
        }
    }
    let count = if target < -l { 0 } else { rec(&weights, target, l) };
    LatticeCount { count, exact: root.cusps >= 1 }
}

/// Number of partitions of `n` into parts from `parts` (with repetition).
/// An empty part set admits only the empty partition of 0.
pub fn partition_count(parts: &[u64], n: u64) -> u128 {
    let set: BTreeSet<u64> = parts.iter().copied().filter(|&a| a > 0).collect();
    let n = n as usize;
    let mut ways = vec![0u128; n + 1];
    ways[0] = 1;
    for a in set {
        let a = a as usize;
        for v in a..=n {
            ways[v] += ways[v - a];
        }
    }
    ways[n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lowindex::enumerate_subgroups;
    use proptest::prelude::*;

    fn sig(g: u32, k: u32, p: &[u64]) -> Signature {
        Signature::new(g, k, p.to_vec()).unwrap()
    }

    fn rat(a: i64, b: i64) -> Rational {
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn euler_examples() {
        assert_eq!(orbifold_euler(&Signature::modular()), rat(-1, 6));
        assert_eq!(orbifold_euler(&sig(1, 0, &[])), rat(0, 1));
        assert_eq!(orbifold_euler(&sig(0, 0, &[2, 3, 7])), rat(-1, 42));
    }

    #[test]
    fn isomorphism_examples() {
        assert!(fuchsian_isomorphic(&sig(1, 1, &[2]), &sig(0, 3, &[2])));
        assert!(!fuchsian_isomorphic(&sig(1, 0, &[2]), &sig(0, 2, &[2])));
        let s = sig(2, 0, &[3, 3]);
        assert!(fuchsian_isomorphic(&s, &s));
        assert!(!fuchsian_isomorphic(&sig(0, 1, &[2, 3]), &sig(0, 1, &[3, 3])));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0,1;2,3", "1,0;", "0,0;2,3,7"] {
            assert_eq!(Signature::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(Signature::parse("sig:0,1;3,2").unwrap(), Signature::modular());
        assert_eq!(Signature::parse("1,0").unwrap(), sig(1, 0, &[]));
        assert!(Signature::parse("0;2").is_err());
        assert!(Signature::parse("0,0;1").is_err());
    }

    #[test]
    fn modular_index_two() {
        let root = Signature::modular();
        let p = fuchsian_presentation(&root);
        let tables = enumerate_subgroups(&p, 2).unwrap();
        assert_eq!(tables.len(), 1);
        let t = &tables[0];
        assert_eq!(t.cycle_type(0), vec![2]);
        assert_eq!(t.cycle_type(1), vec![1, 1]);
        assert_eq!(subgroup_signature(&root, t).unwrap(), sig(0, 1, &[3, 3]));
        assert_eq!(torsion_class_count(&root, t, 3).unwrap(), 2);
        assert_eq!(torsion_class_count(&root, t, 2).unwrap(), 0);
    }

    #[test]
    fn trivial_table_gives_root() {
        for root in [Signature::modular(), sig(0, 0, &[2, 3, 7]), sig(2, 0, &[]), sig(0, 0, &[2, 4, 5, 4])] {
            let t = CosetTable::trivial(fuchsian_presentation(&root).generator_count());
            assert_eq!(subgroup_signature(&root, &t).unwrap(), root);
            for &m in root.periods() {
                let mult = root.periods().iter().filter(|&&x| x == m).count();
                assert_eq!(torsion_class_count(&root, &t, m).unwrap(), mult);
            }
        }
    }

    #[test]
    fn torsion_free_index_six() {
        let root = Signature::modular();
        let p = fuchsian_presentation(&root);
        let tables = enumerate_subgroups(&p, 6).unwrap();
        let free: Vec<_> = tables
            .iter()
            .filter(|t| t.cycle_type(0).iter().all(|&c| c == 2) && t.cycle_type(1).iter().all(|&c| c == 3))
            .collect();
        assert!(!free.is_empty());
        for t in free {
            let s = subgroup_signature(&root, t).unwrap();
            assert!(s.periods().is_empty());
            assert_eq!(orbifold_euler(&s), rat(-1, 1));
        }
    }

    #[test]
    fn e_n_small() {
        let root = Signature::modular();
        assert_eq!(e_n_fuchsian(&root, 1).unwrap().isomorphism_types, 1);
        let c2 = e_n_fuchsian(&root, 2).unwrap();
        assert_eq!(c2.isomorphism_types, 1);
        assert_eq!(c2.representatives, vec![sig(0, 1, &[3, 3])]);
        assert_eq!(e_n_fuchsian(&root, 6).unwrap().isomorphism_types as u64, lattice_point_count(&root, 6).count);
    }

    #[test]
    fn lattice_examples() {
        let root = Signature::modular();
        // r + k2/2 + 2 k3/3 = 1, r >= -1: (1,0,0), (0,2,0), (-1,4,0), (-1,0,3).
        assert_eq!(lattice_point_count(&root, 6), LatticeCount { count: 4, exact: true });
        assert_eq!(lattice_point_count(&root, 1).count, 1);
        for n in 1..8 {
            assert_eq!(lattice_point_count(&sig(0, 3, &[]), n).count, 1);
        }
        assert!(!lattice_point_count(&sig(0, 0, &[2, 3, 7]), 5).exact);
    }

    #[test]
    fn partition_examples() {
        assert_eq!(partition_count(&[1, 2], 4), 3);
        assert_eq!(partition_count(&[1], 9), 1);
        assert_eq!(partition_count(&[2], 5), 0);
        assert_eq!(partition_count(&[], 0), 1);
        assert_eq!(partition_count(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10], 10), 42);
    }

    #[test]
    fn partition_monotone_on_multiples() {
        for a in [vec![1u64, 2], vec![1, 3], vec![1, 2, 3], vec![1, 2, 4]] {
            let l = a.iter().fold(1, |x, &y| num_integer::lcm(x, y));
            let vals: Vec<u128> = (0..20).map(|j| partition_count(&a, j * l)).collect();
            assert!(vals.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn table_shape_mismatch() {
        let t = CosetTable::trivial(2);
        assert!(subgroup_signature(&sig(0, 0, &[2, 3, 7]), &t).is_err());
    }

    fn signature_strategy() -> impl Strategy<Value = Signature> {
        (0u32..3, 0u32..3, proptest::collection::vec(2u64..5, 0..3)).prop_map(|(g, k, p)| Signature::new(g, k, p).unwrap())
    }

    proptest! {
        #[test]
        fn isomorphism_is_equivalence(a in signature_strategy(), b in signature_strategy(), c in signature_strategy()) {
            prop_assert!(fuchsian_isomorphic(&a, &a));
            prop_assert_eq!(fuchsian_isomorphic(&a, &b), fuchsian_isomorphic(&b, &a));
            if fuchsian_isomorphic(&a, &b) && fuchsian_isomorphic(&b, &c) {
                prop_assert!(fuchsian_isomorphic(&a, &c));
            }
        }
    }
}

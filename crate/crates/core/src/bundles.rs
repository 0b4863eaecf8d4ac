//! Covers of circle bundles and Sol torus bundles.
//!
//! An `(l, m)` cover of a circle bundle with Euler number `e` unwraps the
//! base `l` times and the fiber `m` times; the cover has Euler number
//! `l e / m`. The torsion of `H1` is `Z/|e|`, so two degree-`d` covers with
//! different `|e|` have different total spaces. For Sol bundles the
//! monodromy's leading eigenvalue modulus is compared through traces.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::homology::AbelianGroup;
use crate::{Error, Result};

/// Oriented circle bundle over the closed orientable surface of genus `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CircleBundle {
    pub genus: u32,
    pub euler: i64,
}

impl CircleBundle {
    pub fn new(genus: u32, euler: i64) -> Self {
        CircleBundle { genus, euler }
    }

    /// Parses `g,e` (an optional `bundle:` prefix is accepted).
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let t = t.strip_prefix("bundle:").unwrap_or(t);
        let err = || Error::Parse(format!("expected 'g,e', got {text:?}"));
        let (g, e) = t.split_once(',').ok_or_else(err)?;
        Ok(CircleBundle { genus: g.trim().parse().map_err(|_| err())?, euler: e.trim().parse().map_err(|_| err())? })
    }
}

impl fmt::Display for CircleBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bundle:{},{}", self.genus, self.euler)
    }
}

/// Euler number `l e / m` of an `(l, m)` cover.
pub fn cover_euler(e: i64, ell: u64, m: u64) -> Result<i64> {
    if ell == 0 || m == 0 {
        return Err(Error::InvalidInput("cover degrees must be positive".into()));
    }
    let num = e as i128 * ell as i128;
    if num % m as i128 != 0 {
        return Err(Error::InvalidInput(format!("no ({ell},{m}) cover of a bundle with Euler number {e}")));
    }
    i64::try_from(num / m as i128).map_err(|_| Error::InvalidInput("Euler number overflow".into()))
}

/// `H1 = Z^{2g} + Z/|e|`, or `Z^{2g+1}` when `e = 0`.
pub fn h1_circle_bundle(b: &CircleBundle) -> AbelianGroup {
    let rank = 2 * b.genus as usize;
    match b.euler.unsigned_abs() {
        0 => AbelianGroup::free(rank + 1),
        1 => AbelianGroup::free(rank),
        t => AbelianGroup::new(rank, vec![t]).expect("single torsion coefficient"),
    }
}

/// The bundle covered by an `(l, m)` cover: base genus from
/// `g' - 1 = l (g - 1)`, Euler number `l e / m`.
pub fn cover_bundle(b: &CircleBundle, ell: u64, m: u64) -> Result<CircleBundle> {
    let euler = cover_euler(b.euler, ell, m)?;
    let genus = ell as i64 * (b.genus as i64 - 1) + 1;
    let genus = u32::try_from(genus).map_err(|_| Error::InvalidInput("sphere base has no connected base covers".into()))?;
    Ok(CircleBundle { genus, euler })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundleCover {
    pub ell: u64,
    pub m: u64,
    pub bundle: CircleBundle,
    pub h1: String,
}

fn bundle_cover(b: &CircleBundle, ell: u64, m: u64) -> Result<BundleCover> {
    let bundle = cover_bundle(b, ell, m)?;
    Ok(BundleCover { ell, m, bundle, h1: h1_circle_bundle(&bundle).to_string() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NoWitnessReason {
    /// The trivial bundle over the torus, `T^3`.
    TrivialTorusBundle,
    DegreeOne,
    /// No `(l, m)` with `m > 1`, `l m = d` and `m | l e`.
    NoFiberwiseCoverAtDegree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum CircleWitness {
    Pair { degree: u64, first: BundleCover, second: BundleCover },
    NoWitness { reason: NoWitnessReason },
}

/// Two connected degree-`d` covers with different `H1`, when the
/// construction applies.
pub fn circle_bundle_witness(b: &CircleBundle, d: u64) -> Result<CircleWitness> {
    if b.genus == 0 {
        return Err(Error::InvalidInput("circle bundle witnesses need base genus at least 1".into()));
    }
    if d == 0 {
        return Err(Error::InvalidInput("degree must be positive".into()));
    }
    if d == 1 {
        return Ok(CircleWitness::NoWitness { reason: NoWitnessReason::DegreeOne });
    }
    let (first, second) = if b.euler != 0 {
        let Some(m) = (2..=d).find(|&m| d % m == 0 && ((d / m) as i128 * b.euler as i128) % m as i128 == 0) else {
            return Ok(CircleWitness::NoWitness { reason: NoWitnessReason::NoFiberwiseCoverAtDegree });
        };
        (bundle_cover(b, d, 1)?, bundle_cover(b, d / m, m)?)
    } else if b.genus > 1 {
        (bundle_cover(b, d, 1)?, bundle_cover(b, 1, d)?)
    } else {
        return Ok(CircleWitness::NoWitness { reason: NoWitnessReason::TrivialTorusBundle });
    };
    debug_assert_ne!(first.h1, second.h1);
    Ok(CircleWitness::Pair { degree: d, first, second })
}

/// Torus bundle over the circle with monodromy `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SolBundle {
    pub monodromy: [[i64; 2]; 2],
}

impl SolBundle {
    /// Requires determinant 1 and `|trace| > 2`.
    pub fn new(monodromy: [[i64; 2]; 2]) -> Result<Self> {
        let [[a, b], [c, d]] = monodromy;
        if a as i128 * d as i128 - b as i128 * c as i128 != 1 {
            return Err(Error::InvalidInput("monodromy must have determinant 1".into()));
        }
        if (a as i128 + d as i128).abs() <= 2 {
            return Err(Error::InvalidInput("monodromy is not Anosov (|trace| <= 2)".into()));
        }
        Ok(SolBundle { monodromy })
    }

    /// Parses `a,b,c,d` (an optional `sol:` prefix is accepted).
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let t = t.strip_prefix("sol:").unwrap_or(t);
        let v = t
            .split(',')
            .map(|s| s.trim().parse::<i64>().map_err(|_| Error::Parse(format!("expected 'a,b,c,d', got {text:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let [a, b, c, d] = v[..] else {
            return Err(Error::Parse(format!("expected four entries, got {text:?}")));
        };
        Self::new([[a, b], [c, d]])
    }

    pub fn trace(&self) -> i64 {
        self.monodromy[0][0] + self.monodromy[1][1]
    }
}

impl fmt::Display for SolBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.monodromy;
        write!(f, "sol:{a},{b},{c},{d}")
    }
}

type Mat2 = [[BigInt; 2]; 2];

fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// `trace(A^d)` by repeated squaring.
pub fn trace_of_power(s: &SolBundle, d: u32) -> BigInt {
    let a: Mat2 = s.monodromy.map(|row| row.map(BigInt::from));
    let mut result: Mat2 = [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]];
    let mut base = a;
    let mut k = d;
    while k > 0 {
        if k & 1 == 1 {
            result = mat_mul(&result, &base);
        }
        base = mat_mul(&base, &base);
        k >>= 1;
    }
    &result[0][0] + &result[1][1]
}

/// Traces of the monodromies of two degree-`d` covers: a fiberwise cover
/// keeps the eigenvalue modulus (trace `t`), the cyclic cover along the
/// circle raises it to the `d`-th power (trace of `A^d`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolWitness {
    pub degree: u32,
    pub base_trace: BigInt,
    pub cover_trace: BigInt,
    pub distinct: bool,
}

pub fn sol_witness(s: &SolBundle, d: u32) -> Result<SolWitness> {
    if d == 0 {
        return Err(Error::InvalidInput("degree must be positive".into()));
    }
    let base_trace = BigInt::from(s.trace());
    let cover_trace = trace_of_power(s, d);
    let distinct = base_trace.abs() != cover_trace.abs();
    Ok(SolWitness { degree: d, base_trace, cover_trace, distinct })
}

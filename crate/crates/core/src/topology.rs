//! Surfaces, connected sums and the manifold verdict dispatcher.
//!
//! Manifolds are described by their prime summands. Single summands are
//! delegated to the group, bundle and lens machinery; connected sums are
//! handled by assembling covers summand by summand and comparing the
//! resulting prime decompositions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::bundles::{circle_bundle_witness, sol_witness, CircleBundle, CircleWitness, SolBundle, SolWitness};
use crate::finitegroups::{exceptionality_report, realize_spherical, GroupOptions, GroupVerdict, GroupWitness, LensSpace};
use crate::homology::divisors;
use crate::lowindex::cycle_lengths;
use crate::presentations::{SphericalKind, SphericalTag};
use crate::{Error, Result};

/// Compact surface: genus (number of cross-caps when non-orientable) and
/// number of boundary circles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SurfaceType {
    pub orientable: bool,
    pub genus: u32,
    pub boundary: u32,
}

impl SurfaceType {
    pub fn orientable(genus: u32, boundary: u32) -> Self {
        SurfaceType { orientable: true, genus, boundary }
    }

    /// Non-orientable surface with `crosscaps >= 1`.
    pub fn non_orientable(crosscaps: u32, boundary: u32) -> Result<Self> {
        if crosscaps == 0 {
            return Err(Error::InvalidInput("a non-orientable surface has at least one cross-cap".into()));
        }
        Ok(SurfaceType { orientable: false, genus: crosscaps, boundary })
    }
}

/// Disk, annulus, Moebius band, projective plane and closed orientable
/// surfaces.
pub fn surface_exceptional(s: &SurfaceType) -> bool {
    if s.orientable {
        s.boundary == 0 || (s.genus == 0 && s.boundary <= 2)
    } else {
        s.genus == 1 && s.boundary <= 1
    }
}

/// Boundary-component totals of two degree-`k` cyclic covers of an
/// orientable surface with `k` boundary circles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceWitness {
    pub degree: u32,
    pub phi: Vec<i64>,
    pub psi: Vec<i64>,
    pub phi_boundary: u64,
    pub psi_boundary: u64,
}

/// Components over a boundary circle with image `x` in `Z/k`.
fn components_over(x: i64, k: u32) -> u64 {
    (x.rem_euclid(k as i64) as u64).gcd(&(k as u64))
}

/// `phi = (1, -1, 0, .., 0)` against `psi = (1, .., 1)`.
pub fn surface_cover_witness(s: &SurfaceType) -> Result<SurfaceWitness> {
    let k = s.boundary;
    if !s.orientable || k < 3 {
        return Err(Error::InvalidInput("needs an orientable surface with at least 3 boundary circles".into()));
    }
    let mut phi = vec![0i64; k as usize];
    phi[0] = 1;
    phi[1] = -1;
    let psi = vec![1i64; k as usize];
    let total = |v: &[i64]| v.iter().map(|&x| components_over(x, k)).sum();
    Ok(SurfaceWitness { degree: k, phi_boundary: total(&phi), psi_boundary: total(&psi), phi, psi })
}

/// Builds the regular `Z/k` cover of the genus-0 surface with `k` boundary
/// circles from the images of `a_1..a_{k-1}` (the last boundary loop is the
/// inverse of their product) and counts boundary components as cycles.
/// Returns `None` when the cover is disconnected.
pub fn permutation_cover_boundary_count(k: u32, images: &[i64]) -> Option<u64> {
    let n = k as usize;
    let shift = |x: i64| -> Vec<u32> { (0..n).map(|i| ((i as i64 + x).rem_euclid(n as i64)) as u32).collect() };
    let mut perms: Vec<Vec<u32>> = images[..n - 1].iter().map(|&x| shift(x)).collect();
    let mut product: Vec<u32> = (0..n as u32).collect();
    for p in &perms {
        product = product.iter().map(|&i| p[i as usize]).collect();
    }
    let mut last = vec![0u32; n];
    for (i, &j) in product.iter().enumerate() {
        last[j as usize] = i as u32;
    }
    perms.push(last);
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for p in &perms {
            let y = p[x] as usize;
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return None;
    }
    Some(perms.iter().map(|p| cycle_lengths(p).len() as u64).sum())
}

/// `(k - 1) d = sum(i_j) - 1 + l`.
pub fn consum_cover_check(k: u64, d: u64, parts: &[u64], ell: u64) -> bool {
    parts.len() as u64 == k && (k as i128 - 1) * d as i128 == parts.iter().sum::<u64>() as i128 - 1 + ell as i128
}

/// Number of `S1xS2` summands in a degree-`d` cover of `k S1xS2`.
pub fn sphere_sum_cover(k: u64, d: u64) -> Result<u64> {
    if k < 2 || d == 0 {
        return Err(Error::InvalidInput("needs k >= 2 summands and a positive degree".into()));
    }
    Ok((k - 1) * d + 1)
}

/// A prime 3-manifold (or `S^3`, which is dropped from sums).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeSummand {
    S1xS2,
    S1xTwS2,
    Lens(u64, u64),
    Spherical(SphericalKind),
    CircleBundle(CircleBundle),
    Sol(SolBundle),
    T3,
    T2xI,
    S1xD2,
    Other { label: String, exceptional: Option<bool> },
}

impl PartialOrd for SphericalKind {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SphericalKind {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.to_string().cmp(&other.to_string())
    }
}

impl PartialOrd for CircleBundle {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CircleBundle {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.genus, self.euler).cmp(&(other.genus, other.euler))
    }
}

impl PartialOrd for SolBundle {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SolBundle {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.monodromy.cmp(&other.monodromy)
    }
}

/// Smallest representative of `q` under `q ~ -q ~ q^-1 mod p`.
fn lens_normal_q(p: u64, q: u64) -> u64 {
    if p <= 2 {
        return if p == 2 { 1 } else { 0 };
    }
    let e = (q as i64).extended_gcd(&(p as i64));
    let qi = e.x.rem_euclid(p as i64) as u64;
    [q, p - q, qi, p - qi].into_iter().min().expect("nonempty")
}

impl PrimeSummand {
    pub fn lens(p: u64, q: i64) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidInput("L(0,1) is S1xS2; use that name".into()));
        }
        let l = LensSpace::new(p, q)?;
        Ok(PrimeSummand::Lens(l.p, lens_normal_q(l.p, l.q)))
    }

    pub fn is_sphere(&self) -> bool {
        match self {
            PrimeSummand::Lens(1, _) => true,
            PrimeSummand::Spherical(k) => k.order() == 1,
            _ => false,
        }
    }

    pub fn is_orientable(&self) -> bool {
        !matches!(self, PrimeSummand::S1xTwS2)
    }

    /// Circle bundles over the sphere become lens spaces or `S1xS2`;
    /// cyclic spherical groups become lens spaces.
    fn normalized(self) -> Result<Self> {
        match self {
            PrimeSummand::CircleBundle(b) if b.genus == 0 => match b.euler.unsigned_abs() {
                0 => Ok(PrimeSummand::S1xS2),
                e => PrimeSummand::lens(e, 1),
            },
            PrimeSummand::Spherical(k) if k.coprime_factor <= 1 => match k.tag {
                SphericalTag::Trivial => PrimeSummand::lens(1, 0),
                SphericalTag::Cyclic(p) => PrimeSummand::lens(p, 1),
                _ => Ok(PrimeSummand::Spherical(k)),
            },
            PrimeSummand::Lens(p, q) => PrimeSummand::lens(p, q as i64),
            s => Ok(s),
        }
    }
}

impl fmt::Display for PrimeSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeSummand::S1xS2 => write!(f, "S1xS2"),
            PrimeSummand::S1xTwS2 => write!(f, "S1x~S2"),
            PrimeSummand::Lens(1, _) => write!(f, "S3"),
            PrimeSummand::Lens(p, q) => write!(f, "L({p},{q})"),
            PrimeSummand::Spherical(k) => write!(f, "sph:{k}"),
            PrimeSummand::CircleBundle(b) => write!(f, "{b}"),
            PrimeSummand::Sol(s) => write!(f, "{s}"),
            PrimeSummand::T3 => write!(f, "T3"),
            PrimeSummand::T2xI => write!(f, "T2xI"),
            PrimeSummand::S1xD2 => write!(f, "S1xD2"),
            PrimeSummand::Other { label, exceptional: None } => write!(f, "other:{label}"),
            PrimeSummand::Other { label, exceptional: Some(e) } => {
                write!(f, "other:{label}={}", if *e { "yes" } else { "no" })
            }
        }
    }
}

impl FromStr for PrimeSummand {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        let s = match t {
            "S1xS2" => PrimeSummand::S1xS2,
            "S1x~S2" => PrimeSummand::S1xTwS2,
            "S3" => PrimeSummand::lens(1, 0)?,
            "T3" => PrimeSummand::T3,
            "T2xI" => PrimeSummand::T2xI,
            "S1xD2" => PrimeSummand::S1xD2,
            _ => {
                if let Some(r) = t.strip_prefix("L(").and_then(|r| r.strip_suffix(')')) {
                    let err = || Error::Parse(format!("expected L(p,q), got {t:?}"));
                    let (p, q) = r.split_once(',').ok_or_else(err)?;
                    PrimeSummand::lens(p.trim().parse().map_err(|_| err())?, q.trim().parse().map_err(|_| err())?)?
                } else if let Some(r) = t.strip_prefix("sph:") {
                    PrimeSummand::Spherical(SphericalKind::parse(r)?)
                } else if t.starts_with("bundle:") {
                    PrimeSummand::CircleBundle(CircleBundle::parse(t)?)
                } else if t.starts_with("sol:") {
                    PrimeSummand::Sol(SolBundle::parse(t)?)
                } else if let Some(r) = t.strip_prefix("other:") {
                    let (label, flag) = match r.rsplit_once('=') {
                        Some((l, "yes")) => (l, Some(true)),
                        Some((l, "no")) => (l, Some(false)),
                        Some(_) => return Err(Error::Parse(format!("flag must be yes or no in {t:?}"))),
                        None => (r, None),
                    };
                    if label.is_empty() {
                        return Err(Error::Parse("empty label".into()));
                    }
                    PrimeSummand::Other { label: label.to_string(), exceptional: flag }
                } else {
                    return Err(Error::Parse(format!("unknown summand {t:?}")));
                }
            }
        };
        s.normalized()
    }
}

/// A connected sum of prime summands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldDescriptor {
    summands: Vec<PrimeSummand>,
}

impl ManifoldDescriptor {
    /// Drops `S^3` summands from genuine sums and rejects `S1xS2` in a
    /// non-orientable sum (not a normal decomposition).
    pub fn new(summands: Vec<PrimeSummand>) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::InvalidInput("a manifold needs at least one summand".into()));
        }
        let mut kept: Vec<PrimeSummand> = summands.iter().filter(|s| !s.is_sphere()).cloned().collect();
        if kept.is_empty() {
            kept.push(PrimeSummand::lens(1, 0)?);
        }
        let non_orientable = kept.iter().any(|s| !s.is_orientable());
        if non_orientable && kept.contains(&PrimeSummand::S1xS2) {
            return Err(Error::InvalidInput(
                "non-orientable sums must be written without S1xS2 summands (use S1x~S2)".into(),
            ));
        }
        Ok(ManifoldDescriptor { summands: kept })
    }

    /// Parses `summand (# summand)*` with optional `N*` multiplicities.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Vec::new();
        for part in text.split('#') {
            let part = part.trim();
            let (count, body) = match part.split_once('*') {
                Some((n, body)) => {
                    let n: usize = n.trim().parse().map_err(|_| Error::Parse(format!("bad multiplicity in {part:?}")))?;
                    (n, body)
                }
                None => (1, part),
            };
            if count == 0 {
                return Err(Error::Parse(format!("zero multiplicity in {part:?}")));
            }
            let s: PrimeSummand = body.parse()?;
            out.extend(std::iter::repeat_n(s, count));
        }
        Self::new(out)
    }

    pub fn summands(&self) -> &[PrimeSummand] {
        &self.summands
    }

    pub fn is_orientable(&self) -> bool {
        self.summands.iter().all(PrimeSummand::is_orientable)
    }
}

impl fmt::Display for ManifoldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_multiset(&self.summands).join(" # "))
    }
}

fn render_multiset(summands: &[PrimeSummand]) -> Vec<String> {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for s in summands.iter().filter(|s| !s.is_sphere()) {
        *counts.entry(s.to_string()).or_default() += 1;
    }
    if counts.is_empty() {
        return vec!["S3".into()];
    }
    counts.into_iter().map(|(s, n)| if n == 1 { s } else { format!("{n}*{s}") }).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ManifoldWitness {
    Group(GroupWitness),
    CircleBundle(CircleWitness),
    Sol(SolWitness),
    /// Two covers of a connected sum of the same degree, given by their
    /// prime decompositions.
    ConnectedSum { degree: u64, first: Vec<String>, second: Vec<String> },
    /// A non-exceptional summand, with its own witness when available.
    Summand { summand: String, witness: Option<Box<ManifoldWitness>> },
    /// Connected double covers of `k S1x~S2`: `2^k - 1`, one orientable.
    DoubleCovers { connected: u64, orientable: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    Exceptional { reason: String },
    NotExceptional { reason: String, witness: Option<ManifoldWitness> },
    Undetermined { reason: String },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Exceptional { .. } => "Exceptional",
            Verdict::NotExceptional { .. } => "NotExceptional",
            Verdict::Undetermined { .. } => "Undetermined",
        }
    }

    pub fn is_exceptional(&self) -> bool {
        matches!(self, Verdict::Exceptional { .. })
    }

    pub fn is_not_exceptional(&self) -> bool {
        matches!(self, Verdict::NotExceptional { .. })
    }
}

fn exceptional(reason: &str) -> Verdict {
    Verdict::Exceptional { reason: reason.into() }
}

fn prime_verdict(s: &PrimeSummand, opts: GroupOptions) -> Result<Verdict> {
    Ok(match s {
        PrimeSummand::S1xS2 => exceptional("S1xS2 is its own only connected cover of each degree"),
        PrimeSummand::S1xTwS2 => exceptional("twisted S2-bundle over the circle"),
        PrimeSummand::T3 => exceptional("3-torus"),
        PrimeSummand::T2xI => exceptional("T2 x I"),
        PrimeSummand::S1xD2 => exceptional("solid torus"),
        PrimeSummand::Lens(1, _) => exceptional("the 3-sphere"),
        PrimeSummand::Lens(..) => exceptional("covers of a lens space are lens spaces determined by the degree"),
        PrimeSummand::Spherical(kind) => {
            let g = realize_spherical(kind, opts)?;
            let report = exceptionality_report(&g, opts)?;
            match report.verdict {
                GroupVerdict::Exceptional { reason } => Verdict::Exceptional { reason },
                GroupVerdict::NotExceptional { witness } => Verdict::NotExceptional {
                    reason: format!(
                        "index-{} subgroups {} and {} are not isomorphic",
                        witness.index, witness.first.description, witness.second.description
                    ),
                    witness: Some(ManifoldWitness::Group(witness)),
                },
                GroupVerdict::Undetermined { reason } => Verdict::Undetermined { reason },
            }
        }
        PrimeSummand::CircleBundle(b) => {
            if b.genus == 1 && b.euler == 0 {
                return Ok(exceptional("the trivial circle bundle over the torus is T3"));
            }
            for d in 2..=64 {
                if let w @ CircleWitness::Pair { .. } = circle_bundle_witness(b, d)? {
                    return Ok(Verdict::NotExceptional {
                        reason: format!("two degree-{d} covers with different H1"),
                        witness: Some(ManifoldWitness::CircleBundle(w)),
                    });
                }
            }
            Verdict::Undetermined { reason: "no bundle witness found up to degree 64".into() }
        }
        PrimeSummand::Sol(sb) => {
            let w = sol_witness(sb, 2)?;
            Verdict::NotExceptional {
                reason: "fiberwise and cyclic degree-2 covers have different monodromy traces".into(),
                witness: Some(ManifoldWitness::Sol(w)),
            }
        }
        PrimeSummand::Other { exceptional: Some(true), label } => {
            Verdict::Exceptional { reason: format!("{label}: supplied classification") }
        }
        PrimeSummand::Other { exceptional: Some(false), label } => {
            Verdict::NotExceptional { reason: format!("{label}: supplied classification"), witness: None }
        }
        PrimeSummand::Other { exceptional: None, label } => {
            Verdict::Undetermined { reason: format!("{label}: no computational criterion for this summand") }
        }
    })
}

/// Degrees (ascending, above 1) for which [`standard_cover`] is available.
fn cover_degrees(s: &PrimeSummand) -> Vec<u64> {
    match s {
        PrimeSummand::S1xS2 | PrimeSummand::T3 | PrimeSummand::T2xI | PrimeSummand::S1xD2 => (2..=12).collect(),
        PrimeSummand::CircleBundle(_) | PrimeSummand::Sol(_) => (2..=6).collect(),
        PrimeSummand::Lens(p, _) => divisors(*p).into_iter().filter(|&d| d > 1).collect(),
        PrimeSummand::Spherical(k) if k.order() > 1 => vec![k.order()],
        _ => Vec::new(),
    }
}

/// A connected degree-`d` cover as a list of prime summands (empty for
/// `S^3`).
fn standard_cover(s: &PrimeSummand, d: u64) -> Option<Vec<PrimeSummand>> {
    if d == 1 {
        return Some(vec![s.clone()]);
    }
    match s {
        PrimeSummand::S1xS2 | PrimeSummand::T3 | PrimeSummand::T2xI | PrimeSummand::S1xD2 => Some(vec![s.clone()]),
        PrimeSummand::Lens(p, q) if p % d == 0 => {
            let r = p / d;
            let c = PrimeSummand::lens(r, (*q % r.max(1)) as i64).ok()?;
            Some(if c.is_sphere() { vec![] } else { vec![c] })
        }
        PrimeSummand::Spherical(k) if k.order() == d => Some(vec![]),
        PrimeSummand::CircleBundle(b) => {
            let c = crate::bundles::cover_bundle(b, d, 1).ok()?;
            Some(vec![PrimeSummand::CircleBundle(c)])
        }
        PrimeSummand::Sol(sb) => {
            let [[a, b], [c, e]] = sb.monodromy;
            let mut m = [[1i64, 0], [0, 1]];
            for _ in 0..d {
                m = [
                    [m[0][0].checked_mul(a)?.checked_add(m[0][1].checked_mul(c)?)?, m[0][0].checked_mul(b)?.checked_add(m[0][1].checked_mul(e)?)?],
                    [m[1][0].checked_mul(a)?.checked_add(m[1][1].checked_mul(c)?)?, m[1][0].checked_mul(b)?.checked_add(m[1][1].checked_mul(e)?)?],
                ];
            }
            Some(vec![PrimeSummand::Sol(SolBundle::new(m).ok()?)])
        }
        _ => None,
    }
}

fn multiset(items: Vec<PrimeSummand>) -> Vec<String> {
    render_multiset(&items)
}

/// The two covers `d_k (M_1 # .. # M_{k-1}) # ^M_k` and
/// `(^M_1 # (d_k - d_1) M_1) # (d_1 - 1) S1xS2 # d_k (M_2 # .. # M_{k-1}) # ^M_k`.
fn sum_witness(summands: &[PrimeSummand]) -> Option<ManifoldWitness> {
    for (i, mi) in summands.iter().enumerate() {
        if *mi == PrimeSummand::S1xS2 {
            continue;
        }
        for di in cover_degrees(mi) {
            let cover_i = standard_cover(mi, di)?;
            for (j, mj) in summands.iter().enumerate().rev() {
                if j == i {
                    continue;
                }
                let Some(dj) = cover_degrees(mj).into_iter().find(|&d| d >= di) else {
                    continue;
                };
                let cover_j = standard_cover(mj, dj)?;
                let others: Vec<PrimeSummand> =
                    summands.iter().enumerate().filter(|&(x, _)| x != i && x != j).map(|(_, s)| s.clone()).collect();
                let mut first = Vec::new();
                for _ in 0..dj {
                    first.push(mi.clone());
                    first.extend(others.iter().cloned());
                }
                first.extend(cover_j.iter().cloned());
                let mut second = cover_i.clone();
                second.extend(std::iter::repeat_n(mi.clone(), (dj - di) as usize));
                second.extend(std::iter::repeat_n(PrimeSummand::S1xS2, (di - 1) as usize));
                for _ in 0..dj {
                    second.extend(others.iter().cloned());
                }
                second.extend(cover_j);
                let (first, second) = (multiset(first), multiset(second));
                if first != second {
                    return Some(ManifoldWitness::ConnectedSum { degree: dj, first, second });
                }
            }
        }
    }
    None
}

/// Exceptionality verdict for a compact 3-manifold given by its summands.
pub fn verdict(m: &ManifoldDescriptor, opts: GroupOptions) -> Result<Verdict> {
    let summands = m.summands();
    if summands.len() == 1 {
        return prime_verdict(&summands[0], opts);
    }
    let k = summands.len() as u64;
    if !m.is_orientable() {
        if summands.iter().all(|s| *s == PrimeSummand::S1xTwS2) {
            return Ok(Verdict::NotExceptional {
                reason: format!("H1 = Z^{k} gives {} connected double covers, only one orientable", (1u64 << k.min(63)) - 1),
                witness: Some(ManifoldWitness::DoubleCovers { connected: (1u64 << k.min(63)) - 1, orientable: 1 }),
            });
        }
        let irreducible = summands.iter().find(|s| s.is_orientable()).expect("mixed sum");
        return Ok(Verdict::NotExceptional {
            reason: format!(
                "the orientable double cover contains two copies of {irreducible} beside other summands, and such a sum has non-homeomorphic covers"
            ),
            witness: None,
        });
    }
    if summands.iter().all(|s| *s == PrimeSummand::S1xS2) {
        return Ok(Verdict::Exceptional {
            reason: format!("every degree-d cover is ({}d + 1) S1xS2", k - 1),
        });
    }
    let mut undetermined = None;
    for s in summands {
        match prime_verdict(s, opts)? {
            Verdict::NotExceptional { witness, .. } => {
                return Ok(Verdict::NotExceptional {
                    reason: format!("summand {s} is not exceptional"),
                    witness: Some(ManifoldWitness::Summand { summand: s.to_string(), witness: witness.map(Box::new) }),
                });
            }
            Verdict::Undetermined { .. } => undetermined = Some(s),
            Verdict::Exceptional { .. } => {}
        }
    }
    if let Some(w) = sum_witness(summands) {
        return Ok(Verdict::NotExceptional { reason: "two covers of equal degree with different prime decompositions".into(), witness: Some(w) });
    }
    if let Some(s) = undetermined {
        return Ok(Verdict::Undetermined { reason: format!("summand {s} has no verdict and no usable covers") });
    }
    Ok(Verdict::NotExceptional {
        reason: "a connected sum other than k S1xS2 has non-homeomorphic covers of equal degree".into(),
        witness: None,
    })
}

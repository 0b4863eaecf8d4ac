//! Explicit finite groups, subgroup lattices and exceptionality verdicts.
//!
//! Groups are realized from presentations as the regular representation on
//! the cosets of the trivial subgroup, stored as a full multiplication
//! table. Subgroups are found bottom-up by cyclic extension and grouped into
//! conjugacy classes. The exceptionality report sorts subgroups by index and
//! isomorphism type and applies the verdict rules.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::homology::{prime_factors, AbelianGroup};
use crate::par::{self, Parallelism};
use crate::presentations::{spherical_presentation, Presentation, SphericalKind, Word};
use crate::todd_coxeter::{self, EnumerateOptions, DEFAULT_MAX_COSETS};
use crate::{Error, Result};

pub const DEFAULT_MAX_ORDER: usize = 2000;
pub const DEFAULT_MAX_SUBGROUPS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupOptions {
    pub max_order: usize,
    pub max_cosets: usize,
    pub max_subgroups: usize,
    pub parallelism: Parallelism,
}

impl Default for GroupOptions {
    fn default() -> Self {
        GroupOptions {
            max_order: DEFAULT_MAX_ORDER,
            max_cosets: DEFAULT_MAX_COSETS,
            max_subgroups: DEFAULT_MAX_SUBGROUPS,
            parallelism: Parallelism::default(),
        }
    }
}

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: u32,
    inverse: Vec<u32>,
    element_orders: Vec<u32>,
    generators: Vec<u32>,
    generator_names: Vec<String>,
}

impl FiniteGroup {
    /// Builds a group from a row-major `order x order` table, checking the
    /// Latin square property and locating the identity. Generators are
    /// chosen greedily when not supplied.
    pub fn from_table(order: usize, table: Vec<u32>, generators: Option<Vec<u32>>) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::InvalidInput("table must be order x order".into()));
        }
        let mut seen = vec![0u32; order];
        for (stamp, i) in (0..order).enumerate() {
            let stamp = stamp as u32 + 1;
            for j in 0..order {
                let v = table[i * order + j] as usize;
                if v >= order || seen[v] == stamp {
                    return Err(Error::InvalidInput("rows of the table must be permutations".into()));
                }
                seen[v] = stamp;
            }
        }
        seen.fill(0);
        for (stamp, j) in (0..order).enumerate() {
            let stamp = stamp as u32 + 1;
            for i in 0..order {
                let v = table[i * order + j] as usize;
                if seen[v] == stamp {
                    return Err(Error::InvalidInput("columns of the table must be permutations".into()));
                }
                seen[v] = stamp;
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] as usize == x && table[x * order + e] as usize == x))
            .ok_or_else(|| Error::InvalidInput("table has no identity".into()))? as u32;
        let mut g = FiniteGroup {
            order,
            table,
            identity,
            inverse: Vec::new(),
            element_orders: Vec::new(),
            generators: Vec::new(),
            generator_names: Vec::new(),
        };
        g.fill_derived_data();
        match generators {
            Some(gens) => {
                if gens.iter().any(|&x| x as usize >= order) || g.closure(&gens).len() != order {
                    return Err(Error::InvalidInput("supplied elements do not generate the group".into()));
                }
                g.generators = gens;
            }
            None => g.generators = g.greedy_generators(),
        }
        g.generator_names = default_names(g.generators.len());
        Ok(g)
    }

    fn fill_derived_data(&mut self) {
        let n = self.order;
        self.inverse = (0..n as u32)
            .map(|x| (0..n as u32).find(|&y| self.mul(x, y) == self.identity).expect("latin square"))
            .collect();
        self.element_orders = (0..n as u32)
            .map(|x| {
                let mut k = 1;
                let mut y = x;
                while y != self.identity {
                    y = self.mul(y, x);
                    k += 1;
                }
                k
            })
            .collect();
    }

    fn greedy_generators(&self) -> Vec<u32> {
        let mut by_order: Vec<u32> = (0..self.order as u32).collect();
        by_order.sort_by_key(|&x| (std::cmp::Reverse(self.element_orders[x as usize]), x));
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[self.identity as usize] = true;
        let mut size = 1;
        for x in by_order {
            if size == self.order {
                break;
            }
            if !inside[x as usize] {
                gens.push(x);
                let c = self.closure(&gens);
                size = c.len();
                for e in c {
                    inside[e as usize] = true;
                }
            }
        }
        gens
    }

    /// Cyclic group of order `n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("cyclic order must be positive".into()));
        }
        let table = (0..n).flat_map(|i| (0..n).map(move |j| ((i + j) % n) as u32)).collect();
        let mut g = Self::from_table(n, table, Some(if n == 1 { vec![] } else { vec![1] }))?;
        g.generator_names = vec!["c".into()];
        g.generator_names.truncate(g.generators.len());
        Ok(g)
    }

    /// Direct product; element `(a, b)` is stored as `a * |B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            let (xa, xb) = (x / nb, x % nb);
            for y in 0..n {
                let (ya, yb) = (y / nb, y % nb);
                table[x * n + y] = a.mul(xa as u32, ya as u32) * nb as u32 + b.mul(xb as u32, yb as u32);
            }
        }
        let gens: Vec<u32> = a
            .generators
            .iter()
            .map(|&g| g * nb as u32 + b.identity)
            .chain(b.generators.iter().map(|&g| a.identity * nb as u32 + g))
            .collect();
        let mut g = Self::from_table(n, table, Some(gens)).expect("product of groups is a group");
        let mut names = a.generator_names.clone();
        for name in &b.generator_names {
            let mut name = name.clone();
            while names.contains(&name) {
                name.push('\'');
            }
            names.push(name);
        }
        g.generator_names = names;
        g
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    pub fn inverse(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn element_order(&self, a: u32) -> u32 {
        self.element_orders[a as usize]
    }

    pub fn conjugate(&self, h: u32, s: u32) -> u32 {
        self.mul(self.mul(self.inverse(s), h), s)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.element_orders.iter().any(|&o| o as usize == self.order)
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        self.extend_closure(&[self.identity], gens)
    }

    /// Closure of a set already known to be a subgroup `base` together
    /// with `gens` (which must include generators for `base` or leave it
    /// inside the result).
    fn extend_closure(&self, base: &[u32], gens: &[u32]) -> Vec<u32> {
        let mut inside = vec![false; self.order];
        let mut list: Vec<u32> = Vec::with_capacity(base.len() * 2);
        for &b in base {
            if !inside[b as usize] {
                inside[b as usize] = true;
                list.push(b);
            }
        }
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            i += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y as usize] {
                    inside[y as usize] = true;
                    list.push(y);
                }
            }
        }
        list.sort_unstable();
        list
    }

    pub fn center(&self) -> Vec<u32> {
        (0..self.order as u32)
            .filter(|&z| self.generators.iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    /// Smallest normal subgroup containing `elems`.
    pub fn normal_closure(&self, elems: &[u32]) -> Vec<u32> {
        let mut gens: Vec<u32> = elems.to_vec();
        loop {
            let h = self.closure(&gens);
            let inside: HashSet<u32> = h.iter().copied().collect();
            let extra: Vec<u32> = gens
                .iter()
                .flat_map(|&x| self.generators.iter().map(move |&s| (x, s)))
                .map(|(x, s)| self.conjugate(x, s))
                .filter(|y| !inside.contains(y))
                .collect();
            if extra.is_empty() {
                return h;
            }
            gens.extend(extra);
        }
    }

    pub fn derived_subgroup(&self) -> Vec<u32> {
        let mut comms = Vec::new();
        for &a in &self.generators {
            for &b in &self.generators {
                let c = self.mul(self.mul(self.inverse(a), self.inverse(b)), self.mul(a, b));
                if c != self.identity {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// Invariant factors of `G / [G, G]`.
    pub fn abelianization(&self) -> AbelianGroup {
        let derived = self.derived_subgroup();
        let mut in_d = vec![false; self.order];
        for &d in &derived {
            in_d[d as usize] = true;
        }
        let quotient_order = |x: u32| {
            let mut k = 1u64;
            let mut y = x;
            while !in_d[y as usize] {
                y = self.mul(y, x);
                k += 1;
            }
            k
        };
        let orders: Vec<u64> = (0..self.order as u32).map(quotient_order).collect();
        let q = (self.order / derived.len()) as u64;
        let mut cyclic = Vec::new();
        for (p, e) in prime_factors(q) {
            // c[k] = log_p of the number of cosets whose order divides p^k.
            let mut c = vec![0u32];
            let mut pk = 1u64;
            while *c.last().expect("nonempty") < e {
                pk *= p;
                let n = orders.iter().filter(|&&o| pk % o == 0).count() / derived.len();
                c.push((n as u64).ilog(p));
            }
            // c[k] - c[k-1] factors have order at least p^k.
            for k in 1..c.len() {
                let at_least = c[k] - c[k - 1];
                let next = if k + 1 < c.len() { c[k + 1] - c[k] } else { 0 };
                for _ in next..at_least {
                    cyclic.push(p.pow(k as u32));
                }
            }
        }
        AbelianGroup::from_cyclic_orders(&cyclic)
    }

    /// The subgroup `h` as a group in its own right, with elements relabeled
    /// by position in `h.elements`.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> FiniteGroup {
        let n = h.elements.len();
        let pos: HashMap<u32, u32> = h.elements.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
        let mut table = vec![0u32; n * n];
        for (i, &x) in h.elements.iter().enumerate() {
            for (j, &y) in h.elements.iter().enumerate() {
                table[i * n + j] = pos[&self.mul(x, y)];
            }
        }
        let gens = h.generators.iter().map(|g| pos[g]).collect();
        FiniteGroup::from_table(n, table, Some(gens)).expect("subgroup table")
    }

    /// Shortest word in the generators representing each element.
    pub fn element_words(&self) -> Vec<Word> {
        let mut words: Vec<Option<Word>> = vec![None; self.order];
        words[self.identity as usize] = Some(Word::identity());
        let mut queue = vec![self.identity];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for (k, &g) in self.generators.iter().enumerate() {
                let y = self.mul(x, g);
                if words[y as usize].is_none() {
                    let w = words[x as usize].as_ref().expect("visited").concat(&Word::generator(k + 1));
                    words[y as usize] = Some(w);
                    queue.push(y);
                }
            }
        }
        words.into_iter().map(|w| w.expect("generators generate")).collect()
    }
}

fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("g{i}")).collect()
}

/// Realizes a finite presented group as a multiplication table.
pub fn realize(p: &Presentation, opts: GroupOptions) -> Result<FiniteGroup> {
    let t = todd_coxeter::enumerate_cosets(
        p,
        &[],
        EnumerateOptions { max_cosets: opts.max_cosets, max_index: opts.max_order },
    )?;
    let n = t.degree();
    let gens = p.generator_count();
    // Breadth-first spanning tree over forward generators: element j is the
    // point reached from 0 by its tree word.
    let mut parent: Vec<Option<(u32, usize)>> = vec![None; n];
    let mut order = vec![0u32];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        i += 1;
        for g in 0..gens {
            let y = t.permutation(g)[x as usize];
            if !seen[y as usize] {
                seen[y as usize] = true;
                parent[y as usize] = Some((x, g));
                order.push(y);
            }
        }
    }
    let mut table = vec![0u32; n * n];
    for row in 0..n {
        table[row * n] = row as u32;
        for &j in &order[1..] {
            let (pj, g) = parent[j as usize].expect("tree");
            let v = table[row * n + pj as usize];
            table[row * n + j as usize] = t.permutation(g)[v as usize];
        }
    }
    let gen_elems: Vec<u32> = (0..gens).map(|g| t.permutation(g)[0]).collect();
    let mut group = FiniteGroup::from_table(n, table, Some(gen_elems))?;
    group.generator_names = p.generator_names().to_vec();
    Ok(group)
}

/// Realizes a catalog spherical space-form group.
pub fn realize_spherical(kind: &SphericalKind, opts: GroupOptions) -> Result<FiniteGroup> {
    if kind.order() as usize > opts.max_order {
        return Err(Error::TooLarge { cap: opts.max_order });
    }
    realize(&spherical_presentation(kind)?, opts)
}

/// `G x Z/q` for `q` coprime to `|G|`.
pub fn coprime_product(g: &FiniteGroup, q: usize) -> Result<FiniteGroup> {
    if q == 0 || g.order.gcd(&q) != 1 {
        return Err(Error::InvalidInput(format!("cyclic factor {q} is not coprime to the group order {}", g.order)));
    }
    if q == 1 {
        return Ok(g.clone());
    }
    Ok(FiniteGroup::direct_product(g, &FiniteGroup::cyclic(q)?))
}

/// A subgroup of some parent group, as a sorted element list plus
/// generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Subgroup {
    pub elements: Vec<u32>,
    pub generators: Vec<u32>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Checks identity, products and inverses inside `g`.
    pub fn verify(&self, g: &FiniteGroup) -> bool {
        self.contains(g.identity())
            && self.elements.iter().all(|&x| self.contains(g.inverse(x)))
            && self.elements.iter().all(|&x| self.elements.iter().all(|&y| self.contains(g.mul(x, y))))
    }

    pub fn is_cyclic(&self, g: &FiniteGroup) -> bool {
        self.elements.iter().any(|&x| g.element_order(x) as usize == self.order())
    }
}

/// A conjugacy class of subgroups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupClass {
    pub order: usize,
    pub members: Vec<Subgroup>,
}

/// All subgroups of a group, grouped by conjugacy and sorted by order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupLattice {
    pub classes: Vec<SubgroupClass>,
}

impl SubgroupLattice {
    pub fn subgroups(&self) -> impl Iterator<Item = &Subgroup> {
        self.classes.iter().flat_map(|c| c.members.iter())
    }

    pub fn count(&self) -> usize {
        self.classes.iter().map(|c| c.members.len()).sum()
    }
}

/// Every subgroup exactly once, by cyclic extension from the cyclic
/// subgroups upward.
pub fn all_subgroups(g: &FiniteGroup, opts: GroupOptions) -> Result<SubgroupLattice> {
    if g.order() > opts.max_order {
        return Err(Error::TooLarge { cap: opts.max_order });
    }
    let mut found: HashMap<Vec<u32>, Subgroup> = HashMap::new();
    let mut cyclic_gens = Vec::new();
    for x in 0..g.order() as u32 {
        let elems = g.closure(&[x]);
        if !found.contains_key(&elems) {
            let gens = if x == g.identity() { vec![] } else { vec![x] };
            if x != g.identity() {
                cyclic_gens.push(x);
            }
            found.insert(elems.clone(), Subgroup { elements: elems, generators: gens });
        }
    }
    let mut layer: Vec<Subgroup> = found.values().cloned().collect();
    layer.sort_by(|a, b| a.elements.cmp(&b.elements));
    while !layer.is_empty() {
        let extended = par::map(opts.parallelism, &layer, |h| {
            let mut out = Vec::new();
            let mut local = HashSet::new();
            for &c in &cyclic_gens {
                if h.contains(c) {
                    continue;
                }
                let mut gens = h.generators.clone();
                gens.push(c);
                let elems = g.extend_closure(&h.elements, &gens);
                if local.insert(elems.clone()) {
                    out.push(Subgroup { elements: elems, generators: gens });
                }
            }
            out
        });
        let mut next = Vec::new();
        for s in extended.into_iter().flatten() {
            if !found.contains_key(&s.elements) {
                found.insert(s.elements.clone(), s.clone());
                next.push(s);
                if found.len() > opts.max_subgroups {
                    return Err(Error::TooLarge { cap: opts.max_subgroups });
                }
            }
        }
        next.sort_by(|a, b| a.elements.cmp(&b.elements));
        layer = next;
    }
    Ok(group_by_conjugacy(g, found))
}

fn group_by_conjugacy(g: &FiniteGroup, found: HashMap<Vec<u32>, Subgroup>) -> SubgroupLattice {
    let mut keys: Vec<&Vec<u32>> = found.keys().collect();
    keys.sort_by(|a, b| (a.len(), *a).cmp(&(b.len(), *b)));
    let mut assigned: HashSet<&Vec<u32>> = HashSet::new();
    let mut classes = Vec::new();
    for key in keys {
        if assigned.contains(key) {
            continue;
        }
        let mut orbit = vec![key.clone()];
        let mut members: HashSet<Vec<u32>> = orbit.iter().cloned().collect();
        let mut i = 0;
        while i < orbit.len() {
            let h = orbit[i].clone();
            i += 1;
            for &s in g.generators() {
                let mut c: Vec<u32> = h.iter().map(|&x| g.conjugate(x, s)).collect();
                c.sort_unstable();
                if members.insert(c.clone()) {
                    orbit.push(c);
                }
            }
        }
        orbit.sort();
        for k in &orbit {
            let (stored, _) = found.get_key_value(k).expect("conjugate of a subgroup is a subgroup");
            assigned.insert(stored);
        }
        classes.push(SubgroupClass { order: key.len(), members: orbit.iter().map(|k| found[k].clone()).collect() });
    }
    SubgroupLattice { classes }
}

/// Isomorphism invariants used to screen candidate pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    /// `(element order, number of elements)`, ascending.
    pub element_orders: Vec<(u32, usize)>,
    pub abelian: bool,
    pub center: usize,
    pub derived: usize,
    pub abelianization: Vec<u64>,
}

pub fn fingerprint(g: &FiniteGroup) -> Fingerprint {
    let mut hist: BTreeMap<u32, usize> = BTreeMap::new();
    for &o in &g.element_orders {
        *hist.entry(o).or_default() += 1;
    }
    Fingerprint {
        order: g.order(),
        element_orders: hist.into_iter().collect(),
        abelian: g.is_abelian(),
        center: g.center().len(),
        derived: g.derived_subgroup().len(),
        abelianization: g.abelianization().torsion,
    }
}

/// Short structural name: `Z/n`, abelian products, generalized quaternion
/// `Qn`, or a generic label.
pub fn describe(g: &FiniteGroup) -> String {
    let n = g.order();
    if g.is_cyclic() {
        return format!("Z/{n}");
    }
    if g.is_abelian() {
        return g.abelianization().torsion.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ");
    }
    let involutions = g.element_orders.iter().filter(|&&o| o == 2).count();
    if n.is_power_of_two() && involutions == 1 {
        return format!("Q{n}");
    }
    format!("nonabelian of order {n}")
}

/// An isomorphism `a -> b` as the image of every element, if one exists.
pub fn find_isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Option<Vec<u32>> {
    if a.order() != b.order() {
        return None;
    }
    let gens = a.greedy_generators();
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&x| (0..b.order() as u32).filter(|&y| b.element_order(y) == a.element_order(x)).collect())
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    search_iso(a, b, &gens, &candidates, &mut images)
}

/// Extends the map `gens[..k] -> images` over the generated subgroup,
/// checking multiplicativity and injectivity.
fn extend_map(a: &FiniteGroup, b: &FiniteGroup, gens: &[u32], images: &[u32]) -> Option<Vec<u32>> {
    const NONE: u32 = u32::MAX;
    let mut phi = vec![NONE; a.order()];
    let mut used = vec![false; b.order()];
    phi[a.identity() as usize] = b.identity();
    used[b.identity() as usize] = true;
    let mut list = vec![a.identity()];
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        i += 1;
        for (&g, &h) in gens.iter().zip(images) {
            let y = a.mul(x, g);
            let img = b.mul(phi[x as usize], h);
            match phi[y as usize] {
                NONE => {
                    if used[img as usize] {
                        return None;
                    }
                    used[img as usize] = true;
                    phi[y as usize] = img;
                    list.push(y);
                }
                v if v != img => return None,
                _ => {}
            }
        }
    }
    Some(phi)
}

fn search_iso(a: &FiniteGroup, b: &FiniteGroup, gens: &[u32], cands: &[Vec<u32>], images: &mut Vec<u32>) -> Option<Vec<u32>> {
    let k = images.len();
    if k == gens.len() {
        let phi = extend_map(a, b, gens, images)?;
        return phi.iter().all(|&v| v != u32::MAX).then_some(phi);
    }
    for &y in &cands[k] {
        images.push(y);
        if extend_map(a, b, &gens[..=k], images).is_some() {
            if let Some(phi) = search_iso(a, b, gens, cands, images) {
                return Some(phi);
            }
        }
        images.pop();
    }
    None
}

pub fn are_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    a.order() == b.order() && fingerprint(a) == fingerprint(b) && find_isomorphism(a, b).is_some()
}

/// Lens space `L(p, q)` with `gcd(p, q) = 1`; `q` is stored reduced mod `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LensSpace {
    pub p: u64,
    pub q: u64,
}

impl LensSpace {
    pub fn new(p: u64, q: i64) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidInput("lens space order must be positive".into()));
        }
        let q = q.rem_euclid(p as i64) as u64;
        if p.gcd(&q) != 1 {
            return Err(Error::InvalidInput(format!("L({p},{q}) requires gcd(p, q) = 1")));
        }
        Ok(LensSpace { p, q })
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.p, self.q)
    }
}

fn mod_inverse(q: u64, p: u64) -> u64 {
    let e = (q as i64).extended_gcd(&(p as i64));
    e.x.rem_euclid(p as i64) as u64
}

/// `L(p, q) ~ L(p, q')` iff `q' = +-q^{+-1} mod p`.
pub fn lens_homeomorphic(a: &LensSpace, b: &LensSpace) -> Result<bool> {
    if a.p != b.p {
        return Err(Error::InvalidInput(format!("{a} and {b} have different fundamental groups")));
    }
    let p = a.p;
    if p <= 2 {
        return Ok(true);
    }
    let qi = mod_inverse(a.q, p);
    Ok([a.q, p - a.q, qi, p - qi].contains(&b.q))
}

/// Whether every lens space with fundamental group `Z/p` is homeomorphic
/// to `L(p, 1)`.
pub fn lens_spaces_unique(p: u64) -> bool {
    let base = LensSpace { p, q: 1 % p.max(1) };
    (1..p.max(2))
        .filter(|&q| p.gcd(&q) == 1)
        .all(|q| lens_homeomorphic(&base, &LensSpace { p, q }).unwrap_or(false))
}

/// One isomorphism type among the subgroups of a given index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoType {
    pub description: String,
    pub fingerprint: Fingerprint,
    pub count: usize,
    pub conjugacy_classes: usize,
    pub all_conjugate: bool,
    pub cyclic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexEntry {
    pub index: usize,
    pub subgroup_order: usize,
    pub types: Vec<IsoType>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessSubgroup {
    pub description: String,
    pub order: usize,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupWitness {
    pub index: usize,
    pub first: WitnessSubgroup,
    pub second: WitnessSubgroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum GroupVerdict {
    Exceptional { reason: String },
    NotExceptional { witness: GroupWitness },
    Undetermined { reason: String },
}

impl GroupVerdict {
    pub fn is_exceptional(&self) -> bool {
        matches!(self, GroupVerdict::Exceptional { .. })
    }

    pub fn is_not_exceptional(&self) -> bool {
        matches!(self, GroupVerdict::NotExceptional { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            GroupVerdict::Exceptional { .. } => "Exceptional",
            GroupVerdict::NotExceptional { .. } => "NotExceptional",
            GroupVerdict::Undetermined { .. } => "Undetermined",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionalityReport {
    pub group_order: usize,
    pub subgroup_count: usize,
    pub indices: Vec<IndexEntry>,
    /// Order of the split-off central cyclic Hall factor, when the verdict
    /// was read off the complement.
    pub reduced_by_central_factor: Option<usize>,
    pub verdict: GroupVerdict,
}

struct TypeBucket {
    group: FiniteGroup,
    fingerprint: Fingerprint,
    description: String,
    representative: Subgroup,
    count: usize,
    classes: usize,
    cyclic: bool,
}

pub fn exceptionality_report(g: &FiniteGroup, opts: GroupOptions) -> Result<ExceptionalityReport> {
    let lattice = all_subgroups(g, opts)?;
    let reps: Vec<&SubgroupClass> = lattice.classes.iter().collect();
    let analysed = par::map(opts.parallelism, &reps, |c| {
        let h = g.subgroup_as_group(&c.members[0]);
        let fp = fingerprint(&h);
        let desc = describe(&h);
        (h, fp, desc)
    });
    let mut by_index: BTreeMap<usize, Vec<TypeBucket>> = BTreeMap::new();
    for (class, (h, fp, desc)) in reps.iter().zip(analysed) {
        let buckets = by_index.entry(g.order() / class.order).or_default();
        let cyclic = h.is_cyclic();
        match buckets.iter_mut().find(|b| b.fingerprint == fp && find_isomorphism(&b.group, &h).is_some()) {
            Some(b) => {
                b.count += class.members.len();
                b.classes += 1;
            }
            None => buckets.push(TypeBucket {
                group: h,
                fingerprint: fp,
                description: desc,
                representative: class.members[0].clone(),
                count: class.members.len(),
                classes: 1,
                cyclic,
            }),
        }
    }
    for buckets in by_index.values_mut() {
        buckets.sort_by(|a, b| (!a.cyclic, &a.fingerprint).cmp(&(!b.cyclic, &b.fingerprint)));
    }
    let indices: Vec<IndexEntry> = by_index
        .iter()
        .map(|(&index, buckets)| IndexEntry {
            index,
            subgroup_order: g.order() / index,
            types: buckets
                .iter()
                .map(|b| IsoType {
                    description: b.description.clone(),
                    fingerprint: b.fingerprint.clone(),
                    count: b.count,
                    conjugacy_classes: b.classes,
                    all_conjugate: b.classes == 1,
                    cyclic: b.cyclic,
                })
                .collect(),
        })
        .collect();

    let mut reduced = None;
    let verdict = if let Some((&index, buckets)) = by_index.iter().find(|(_, b)| b.len() > 1) {
        let words = g.element_words();
        let witness = |b: &TypeBucket| WitnessSubgroup {
            description: b.description.clone(),
            order: b.representative.order(),
            generators: b.representative.generators.iter().map(|&x| words[x as usize].render(g.generator_names())).collect(),
        };
        GroupVerdict::NotExceptional { witness: GroupWitness { index, first: witness(&buckets[0]), second: witness(&buckets[1]) } }
    } else {
        let unresolved: Vec<&IsoType> = indices
            .iter()
            .flat_map(|e| e.types.iter())
            .filter(|t| t.cyclic && !t.all_conjugate && t.count > 1 && !lens_spaces_unique(t.fingerprint.order as u64))
            .collect();
        if unresolved.is_empty() {
            GroupVerdict::Exceptional {
                reason: "same-index subgroups are isomorphic; cyclic ones are conjugate or have a unique lens quotient".into(),
            }
        } else if let Some((k, c)) = central_hall_split(g) {
            reduced = Some(c);
            let sub = exceptionality_report(&k, opts)?;
            match sub.verdict {
                GroupVerdict::NotExceptional { .. } => {
                    return Err(Error::Inconsistent("complement has a witness the full group missed".into()));
                }
                GroupVerdict::Exceptional { reason } => GroupVerdict::Exceptional {
                    reason: format!("direct product of Z/{c} with a coprime exceptional group: {reason}"),
                },
                other => other,
            }
        } else {
            let orders: Vec<String> = unresolved.iter().map(|t| t.fingerprint.order.to_string()).collect();
            GroupVerdict::Undetermined {
                reason: format!(
                    "cyclic subgroups of the same order ({}) are not all conjugate; lens comparison required",
                    orders.join(", ")
                ),
            }
        }
    };
    Ok(ExceptionalityReport {
        group_order: g.order(),
        subgroup_count: lattice.count(),
        indices,
        reduced_by_central_factor: reduced,
        verdict,
    })
}

/// Splits `G = K x C` with `C` the largest central cyclic subgroup whose
/// order is coprime to its index. Returns `(K, |C|)` when `C` is nontrivial.
pub fn central_hall_split(g: &FiniteGroup) -> Option<(FiniteGroup, usize)> {
    let center = g.center();
    let mut c = 1usize;
    for (p, e) in prime_factors(g.order() as u64) {
        let full = (p as usize).pow(e);
        let sylow: Vec<u32> = center.iter().copied().filter(|&z| full % g.element_order(z) as usize == 0).collect();
        if sylow.len() == full && sylow.iter().any(|&z| g.element_order(z) as usize == full) {
            c *= full;
        }
    }
    if c == 1 {
        return None;
    }
    let elements: Vec<u32> = (0..g.order() as u32).filter(|&x| (g.element_order(x) as usize).gcd(&c) == 1).collect();
    debug_assert_eq!(elements.len() * c, g.order());
    let gens = g.extend_closure(&[g.identity()], &elements);
    debug_assert_eq!(gens, elements);
    let k = Subgroup { generators: elements.clone(), elements };
    let mut kg = g.subgroup_as_group(&k);
    kg.generators = kg.greedy_generators();
    kg.generator_names = default_names(kg.generators.len());
    Some((kg, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> GroupOptions {
        GroupOptions::default()
    }

    fn catalog(name: &str) -> FiniteGroup {
        realize_spherical(&SphericalKind::parse(name).unwrap(), opts()).unwrap()
    }

    fn orders(l: &SubgroupLattice) -> Vec<usize> {
        let mut v: Vec<usize> = l.subgroups().map(Subgroup::order).collect();
        v.sort();
        v
    }

    #[test]
    fn realize_examples() {
        assert_eq!(catalog("Q8n:1").order(), 8);
        assert_eq!(catalog("P120").order(), 120);
        let c5 = realize(&Presentation::parse(&["x"], &["x^5"]).unwrap(), opts()).unwrap();
        assert_eq!(c5.order(), 5);
        assert!(c5.is_cyclic());
    }

    #[test]
    fn realize_respects_cap() {
        let err = realize_spherical(&SphericalKind::parse("P120").unwrap(), GroupOptions { max_order: 100, ..opts() });
        assert!(matches!(err, Err(Error::TooLarge { .. })));
        let err = realize(&Presentation::free(1), GroupOptions { max_order: 50, max_cosets: 10_000, ..opts() });
        assert!(err.unwrap_err().is_resource_limit());
    }

    #[test]
    fn generator_images_match_words() {
        let p = spherical_presentation(&SphericalKind::parse("Q8n:2").unwrap()).unwrap();
        let g = realize(&p, opts()).unwrap();
        // Each relator evaluates to the identity.
        for r in p.relators() {
            let v = r.letters().iter().fold(g.identity(), |acc, &l| {
                let x = g.generators()[l.unsigned_abs() as usize - 1];
                g.mul(acc, if l > 0 { x } else { g.inverse(x) })
            });
            assert_eq!(v, g.identity());
        }
    }

    #[test]
    fn q8_subgroups() {
        let l = all_subgroups(&catalog("Q8n:1"), opts()).unwrap();
        assert_eq!(orders(&l), vec![1, 2, 4, 4, 4, 8]);
    }

    #[test]
    fn cyclic_subgroups() {
        let l = all_subgroups(&FiniteGroup::cyclic(6).unwrap(), opts()).unwrap();
        assert_eq!(l.count(), 4);
        assert_eq!(l.classes.len(), 4);
    }

    #[test]
    fn p120_sylow_five_conjugate() {
        let g = catalog("P120");
        let l = all_subgroups(&g, opts()).unwrap();
        for order in [5, 10] {
            let classes: Vec<_> = l.classes.iter().filter(|c| c.order == order).collect();
            assert_eq!(classes.len(), 1, "order {order}");
            assert_eq!(classes[0].members.len(), 6);
        }
        assert!(l.subgroups().all(|h| h.verify(&g)));
    }

    #[test]
    fn s3_lattice() {
        let g = realize(&Presentation::parse(&["x", "y"], &["x^2", "y^3", "(xy)^2"]).unwrap(), opts()).unwrap();
        let l = all_subgroups(&g, opts()).unwrap();
        assert_eq!(orders(&l), vec![1, 2, 2, 2, 3, 6]);
        assert_eq!(l.classes.len(), 4);
    }

    #[test]
    fn isomorphism_examples() {
        let z8 = FiniteGroup::cyclic(8).unwrap();
        let z4z2 = FiniteGroup::direct_product(&FiniteGroup::cyclic(4).unwrap(), &FiniteGroup::cyclic(2).unwrap());
        assert!(!are_isomorphic(&z8, &z4z2));
        assert_ne!(fingerprint(&z8).element_orders, fingerprint(&z4z2).element_orders);
        let q8 = catalog("Q8n:1");
        assert!(are_isomorphic(&q8, &q8));
        let d4 = realize(&Presentation::parse(&["x", "y"], &["x^4", "y^2", "(xy)^2"]).unwrap(), opts()).unwrap();
        assert!(!are_isomorphic(&q8, &d4));
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let z2z3 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2).unwrap(), &FiniteGroup::cyclic(3).unwrap());
        assert!(are_isomorphic(&z6, &z2z3));
    }

    #[test]
    fn quaternion_copies_in_p48() {
        let g = catalog("P48");
        let l = all_subgroups(&g, opts()).unwrap();
        let q8s: Vec<FiniteGroup> = l
            .subgroups()
            .filter(|h| h.order() == 8 && !h.is_cyclic(&g))
            .map(|h| g.subgroup_as_group(h))
            .collect();
        assert!(q8s.len() >= 2);
        assert!(q8s.windows(2).all(|w| are_isomorphic(&w[0], &w[1])));
        assert_eq!(describe(&q8s[0]), "Q8");
    }

    #[test]
    fn abelianization_examples() {
        let z4z2 = FiniteGroup::direct_product(&FiniteGroup::cyclic(4).unwrap(), &FiniteGroup::cyclic(2).unwrap());
        assert_eq!(z4z2.abelianization().torsion, vec![2, 4]);
        assert_eq!(catalog("Q8n:1").abelianization().torsion, vec![2, 2]);
        assert!(catalog("P120").abelianization().torsion.is_empty());
        assert_eq!(catalog("P48").abelianization().torsion, vec![2]);
    }

    #[test]
    fn lens_examples() {
        let l = |p, q| LensSpace::new(p, q).unwrap();
        assert!(!lens_homeomorphic(&l(7, 1), &l(7, 2)).unwrap());
        assert!(lens_homeomorphic(&l(5, 2), &l(5, 3)).unwrap());
        assert!(lens_homeomorphic(&l(11, 3), &l(11, 8)).unwrap());
        assert!(lens_homeomorphic(&l(7, 2), &l(7, 4)).unwrap());
        assert!(lens_homeomorphic(&l(5, 2), &l(7, 2)).is_err());
        assert!(LensSpace::new(6, 2).is_err());
        for p in [1, 2, 3, 4, 6] {
            assert!(lens_spaces_unique(p));
        }
        for p in [5, 7, 8, 10, 12] {
            assert!(!lens_spaces_unique(p));
        }
    }

    #[test]
    fn coprime_products() {
        let q8 = catalog("Q8n:1");
        let g = coprime_product(&q8, 3).unwrap();
        assert_eq!(g.order(), 24);
        assert!(are_isomorphic(&coprime_product(&q8, 1).unwrap(), &q8));
        assert!(coprime_product(&q8, 2).is_err());
        let (k, c) = central_hall_split(&g).unwrap();
        assert_eq!(c, 3);
        assert!(are_isomorphic(&k, &q8));
    }

    #[test]
    fn verdict_examples() {
        let r = exceptionality_report(&catalog("Q8n:2"), opts()).unwrap();
        match &r.verdict {
            GroupVerdict::NotExceptional { witness } => {
                assert_eq!(witness.index, 2);
                assert_eq!(witness.first.description, "Z/8");
                assert_eq!(witness.second.description, "Q8");
            }
            v => panic!("unexpected {v:?}"),
        }
        let r = exceptionality_report(&catalog("P48"), opts()).unwrap();
        match &r.verdict {
            GroupVerdict::NotExceptional { witness } => {
                assert_eq!(witness.index, 6);
                assert_eq!((witness.first.description.as_str(), witness.second.description.as_str()), ("Z/8", "Q8"));
            }
            v => panic!("unexpected {v:?}"),
        }
        for name in ["Q8n:1", "P120", "D:2,1", "Pp:1", "Q8n:1xZ:3"] {
            let r = exceptionality_report(&catalog(name), opts()).unwrap();
            assert!(r.verdict.is_exceptional(), "{name}: {:?}", r.verdict);
        }
    }

    #[test]
    fn report_partitions_subgroups() {
        let g = catalog("D:3,1");
        let r = exceptionality_report(&g, opts()).unwrap();
        let total: usize = r.indices.iter().flat_map(|e| e.types.iter()).map(|t| t.count).sum();
        assert_eq!(total, r.subgroup_count);
        for e in &r.indices {
            assert_eq!(g.order() % e.index, 0);
        }
    }

    #[test]
    fn sylow_subgroups_conjugate() {
        for name in ["Q8n:3", "P48", "D:2,2", "Pp:1"] {
            let g = catalog(name);
            let l = all_subgroups(&g, opts()).unwrap();
            for (p, e) in prime_factors(g.order() as u64) {
                let full = (p as usize).pow(e);
                assert_eq!(l.classes.iter().filter(|c| c.order == full).count(), 1, "{name} p={p}");
            }
        }
    }

    #[test]
    fn associativity_spot_check() {
        let g = catalog("P48");
        let n = g.order() as u32;
        for a in (0..n).step_by(5) {
            for b in (0..n).step_by(7) {
                for c in (0..n).step_by(11) {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }
}

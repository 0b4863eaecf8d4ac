//! Coset enumeration (HLT strategy).
//!
//! Cosets of the subgroup generated by a list of words are defined one at a
//! time. Every live coset has each relator scanned from it, with gaps of
//! length one closed by deduction, and is then completed by defining any
//! missing images. Coincidences are resolved with a union-find queue.

use std::collections::VecDeque;

use crate::lowindex::CosetTable;
use crate::presentations::{Presentation, Word};
use crate::{Error, Result};

const NONE: u32 = u32::MAX;

/// Default cap on the number of coset definitions.
pub const DEFAULT_MAX_COSETS: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Total coset definitions allowed (live or dead).
    pub max_cosets: usize,
    /// Largest index accepted for the finished table.
    pub max_index: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { max_cosets: DEFAULT_MAX_COSETS, max_index: usize::MAX }
    }
}

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    queue: VecDeque<u32>,
    max_cosets: usize,
}

fn col(l: i32) -> usize {
    let g = l.unsigned_abs() as usize - 1;
    if l > 0 { 2 * g } else { 2 * g + 1 }
}

fn inv(c: usize) -> usize {
    c ^ 1
}

impl Enumerator {
    fn new(generators: usize, max_cosets: usize) -> Self {
        let cols = 2 * generators;
        Enumerator { cols, table: vec![NONE; cols], parent: vec![0], queue: VecDeque::new(), max_cosets }
    }

    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.cols + x] = v;
    }

    fn live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn define(&mut self, c: u32, x: usize) -> Result<()> {
        let n = self.parent.len();
        if n >= self.max_cosets {
            return Err(Error::TooLarge { cap: self.max_cosets });
        }
        let n = n as u32;
        self.parent.push(n);
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.set(c, x, n);
        self.set(n, inv(x), c);
        Ok(())
    }

    fn merge(&mut self, a: u32, b: u32) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi as usize] = lo;
        self.queue.push_back(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        while let Some(g) = self.queue.pop_front() {
            for x in 0..self.cols {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                self.set(d, inv(x), NONE);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let m = self.get(mu, x);
                if m != NONE {
                    self.merge(nu, m);
                } else {
                    self.set(mu, x, nu);
                }
                let mu = self.rep(mu);
                let nu = self.rep(nu);
                let n = self.get(nu, inv(x));
                if n != NONE {
                    self.merge(mu, n);
                } else {
                    self.set(nu, inv(x), mu);
                }
            }
        }
    }

    /// Scans `w` from `c`, defining cosets until the scan closes.
    fn scan_and_fill(&mut self, c: u32, w: &[usize]) -> Result<()> {
        let mut f = c;
        let mut b = c;
        let mut i = 0isize;
        let mut j = w.len() as isize - 1;
        loop {
            while i <= j && self.get(f, w[i as usize]) != NONE {
                f = self.get(f, w[i as usize]);
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.get(b, inv(w[j as usize])) != NONE {
                b = self.get(b, inv(w[j as usize]));
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            let x = w[i as usize];
            if i == j {
                self.set(f, x, b);
                self.set(b, inv(x), f);
                return Ok(());
            }
            self.define(f, x)?;
        }
    }
}

/// Enumerates the cosets of `<subgroup>` in the group presented by `p` and
/// returns the permutation action on them, in breadth-first standard form
/// with the subgroup's coset as point 0.
pub fn enumerate_cosets(p: &Presentation, subgroup: &[Word], opts: EnumerateOptions) -> Result<CosetTable> {
    let gens = p.generator_count();
    for w in subgroup {
        if w.max_generator() > gens {
            return Err(Error::InvalidInput("subgroup word uses an unknown generator".into()));
        }
    }
    let rels: Vec<Vec<usize>> = p.relators().iter().map(|r| r.letters().iter().map(|&l| col(l)).collect()).collect();
    let sub: Vec<Vec<usize>> = subgroup.iter().map(|w| w.letters().iter().map(|&l| col(l)).collect()).collect();
    let mut e = Enumerator::new(gens, opts.max_cosets.max(1));
    for w in &sub {
        e.scan_and_fill(0, w)?;
    }
    let mut a = 0u32;
    while (a as usize) < e.parent.len() {
        for r in &rels {
            if !e.live(a) {
                break;
            }
            e.scan_and_fill(a, r)?;
        }
        if e.live(a) {
            for x in 0..e.cols {
                if e.get(a, x) == NONE {
                    e.define(a, x)?;
                }
            }
        }
        a += 1;
    }
    standardize(&mut e, gens, opts.max_index)
}

fn standardize(e: &mut Enumerator, gens: usize, max_index: usize) -> Result<CosetTable> {
    let total = e.parent.len();
    let mut label = vec![NONE; total];
    let mut order = vec![0u32];
    label[0] = 0;
    let mut head = 0;
    while head < order.len() {
        let c = order[head];
        head += 1;
        for x in 0..e.cols {
            let d = e.get(c, x);
            if d == NONE {
                return Err(Error::Inconsistent("incomplete coset table after enumeration".into()));
            }
            let d = e.rep(d);
            if label[d as usize] == NONE {
                label[d as usize] = order.len() as u32;
                order.push(d);
            }
        }
    }
    let n = order.len();
    if n > max_index {
        return Err(Error::TooLarge { cap: max_index });
    }
    let mut action = vec![vec![0u32; n]; gens];
    for (i, &c) in order.iter().enumerate() {
        for (g, perm) in action.iter_mut().enumerate() {
            let d = e.get(c, 2 * g);
            perm[i] = label[e.rep(d) as usize];
        }
    }
    if gens == 0 {
        return CosetTable::from_action(1, Vec::new());
    }
    CosetTable::from_action(n, action)
}

/// Index of `<subgroup>` in the group presented by `p`.
pub fn subgroup_index(p: &Presentation, subgroup: &[Word], opts: EnumerateOptions) -> Result<usize> {
    enumerate_cosets(p, subgroup, opts).map(|t| t.degree())
}

/// Order of the group presented by `p`, if at most `max_order`.
pub fn group_order(p: &Presentation, max_order: usize) -> Result<usize> {
    let max_cosets = max_order.saturating_mul(500).clamp(10_000, DEFAULT_MAX_COSETS);
    subgroup_index(p, &[], EnumerateOptions { max_cosets, max_index: max_order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuchsian::Signature;
    use crate::presentations::{fuchsian_presentation, spherical_presentation, SphericalKind};

    fn order(p: &Presentation) -> usize {
        group_order(p, 100_000).unwrap()
    }

    #[test]
    fn small_orders() {
        assert_eq!(order(&Presentation::parse(&["x"], &["x^5"]).unwrap()), 5);
        assert_eq!(order(&Presentation::parse(&["x", "y"], &["x^2", "y^3", "(xy)^2"]).unwrap()), 6);
        assert_eq!(order(&Presentation::parse(&["x", "y"], &["x^2", "y^3", "(xy)^5"]).unwrap()), 60);
        assert_eq!(order(&Presentation::parse(&["x", "y"], &["x^3", "y^3", "(xy)^3", "(x^-1 y)^3"]).unwrap()), 27);
        assert_eq!(order(&Presentation::parse(&["x", "y"], &["x", "y"]).unwrap()), 1);
    }

    #[test]
    fn catalog_orders() {
        for name in ["Q8n:1", "Q8n:2", "Q8n:3", "P48", "P120", "D:2,1", "D:3,1", "D:2,2", "Pp:1", "Pp:2", "Q8n:1xZ:3"] {
            let k = SphericalKind::parse(name).unwrap();
            let p = spherical_presentation(&k).unwrap();
            assert_eq!(order(&p) as u64, k.order(), "{name}");
        }
    }

    #[test]
    fn infinite_group_hits_cap() {
        let p = Presentation::free(2);
        let err = group_order(&p, 1000).unwrap_err();
        assert!(err.is_resource_limit());
        let z2 = Presentation::free_abelian(2);
        let err = enumerate_cosets(&z2, &[], EnumerateOptions { max_cosets: 5000, max_index: usize::MAX }).unwrap_err();
        assert!(matches!(err, Error::TooLarge { .. }));
    }

    #[test]
    fn subgroup_indices() {
        let z2 = Presentation::free_abelian(2);
        let h = [Word::generator(1).pow(2), Word::generator(2).pow(3)];
        assert_eq!(subgroup_index(&z2, &h, EnumerateOptions::default()).unwrap(), 6);
        let modular = fuchsian_presentation(&Signature::modular());
        assert_eq!(subgroup_index(&modular, &[Word::generator(1), Word::generator(2)], EnumerateOptions::default()).unwrap(), 1);
        // <x2, x1 x2 x1> is the index-2 subgroup (0,1;3,3).
        let h = [Word::generator(2), Word::new([1, 2, 1])];
        assert_eq!(subgroup_index(&modular, &h, EnumerateOptions::default()).unwrap(), 2);
    }

    #[test]
    fn table_matches_lowindex_form() {
        let p = Presentation::parse(&["x", "y"], &["x^2", "y^3", "(xy)^2"]).unwrap();
        let t = enumerate_cosets(&p, &[Word::generator(1)], EnumerateOptions::default()).unwrap();
        assert_eq!(t.degree(), 3);
        assert!(t.satisfies(&p));
        assert!(t.is_canonical());
        let subs = crate::lowindex::enumerate_subgroups(&p, 3).unwrap();
        assert!(subs.contains(&t));
    }
}

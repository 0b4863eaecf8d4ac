//! Low-index subgroup enumeration.
//!
//! Index-`n` subgroups of a finitely presented group correspond to transitive
//! actions on `{1..n}` up to relabelings fixing point 1. The search extends
//! partial coset tables depth first, always filling the first undefined cell
//! in row-major order and numbering new points consecutively, so every
//! completed table is already in breadth-first standard form and each
//! subgroup is produced exactly once. Relator scans after each definition
//! supply forced deductions and prune inconsistent branches.

use std::collections::{BTreeMap, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::par::{self, Parallelism};
use crate::presentations::{Presentation, Word};
use crate::{Error, Result};

const UNDEF: u32 = u32::MAX;

/// Default budget: table cells touched during one enumeration.
pub const DEFAULT_MAX_CELLS: u64 = 100_000_000;

/// A complete transitive action of a presentation's generators on
/// `{0..degree}`, stored 0-based. Point 0 is the base point whose
/// stabilizer is the subgroup described by the table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetTable {
    degree: usize,
    action: Vec<Vec<u32>>,
}

impl CosetTable {
    /// Builds a table from 0-based generator permutations, checking that
    /// each is a bijection and that the action is transitive.
    pub fn from_action(degree: usize, action: Vec<Vec<u32>>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidInput("coset table degree must be positive".into()));
        }
        for (g, perm) in action.iter().enumerate() {
            if perm.len() != degree {
                return Err(Error::InvalidInput(format!("generator {} acts on {} points, expected {degree}", g + 1, perm.len())));
            }
            let mut seen = vec![false; degree];
            for &p in perm {
                let p = p as usize;
                if p >= degree || seen[p] {
                    return Err(Error::InvalidInput(format!("generator {} does not act bijectively", g + 1)));
                }
                seen[p] = true;
            }
        }
        let t = CosetTable { degree, action };
        if !t.is_transitive() {
            return Err(Error::InvalidInput("action is not transitive".into()));
        }
        Ok(t)
    }

    /// The one-point table for a group with `generators` generators.
    pub fn trivial(generators: usize) -> Self {
        CosetTable { degree: 1, action: vec![vec![0]; generators] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generator_count(&self) -> usize {
        self.action.len()
    }

    /// Permutation of generator `g` (0-based generator index).
    pub fn permutation(&self, g: usize) -> &[u32] {
        &self.action[g]
    }

    pub fn action(&self) -> &[Vec<u32>] {
        &self.action
    }

    /// Image of `point` under a signed 1-based letter.
    pub fn act_letter(&self, point: usize, letter: i32) -> usize {
        let g = letter.unsigned_abs() as usize - 1;
        if letter > 0 {
            self.action[g][point] as usize
        } else {
            self.action[g].iter().position(|&q| q as usize == point).expect("bijection")
        }
    }

    /// Right action of a word on a point.
    pub fn act_word(&self, point: usize, w: &Word) -> usize {
        let inv = self.inverse_action();
        w.letters().iter().fold(point, |p, &l| {
            let g = l.unsigned_abs() as usize - 1;
            if l > 0 {
                self.action[g][p] as usize
            } else {
                inv[g][p] as usize
            }
        })
    }

    fn inverse_action(&self) -> Vec<Vec<u32>> {
        self.action
            .iter()
            .map(|perm| {
                let mut inv = vec![0u32; self.degree];
                for (i, &j) in perm.iter().enumerate() {
                    inv[j as usize] = i as u32;
                }
                inv
            })
            .collect()
    }

    /// Generator permutations concatenated, the key for sorted output.
    pub fn flattened(&self) -> Vec<u32> {
        self.action.iter().flatten().copied().collect()
    }

    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.degree];
        seen[0] = true;
        let mut stack = vec![0usize];
        let inv = self.inverse_action();
        while let Some(p) = stack.pop() {
            for perms in [&self.action, &inv] {
                for perm in perms.iter() {
                    let q = perm[p] as usize;
                    if !seen[q] {
                        seen[q] = true;
                        stack.push(q);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Whether every relator of `p` acts as the identity.
    pub fn satisfies(&self, p: &Presentation) -> bool {
        p.generator_count() == self.generator_count()
            && p.relators().iter().all(|r| (0..self.degree).all(|pt| self.act_word(pt, r) == pt))
    }

    /// Relabels points in breadth-first discovery order from `base`,
    /// scanning generators as `x1, x1^-1, x2, x2^-1, ...`. The result is the
    /// table of the stabilizer of `base`.
    pub fn canonical_from(&self, base: usize) -> CosetTable {
        let inv = self.inverse_action();
        let mut label = vec![UNDEF; self.degree];
        let mut order = Vec::with_capacity(self.degree);
        label[base] = 0;
        order.push(base);
        let mut head = 0;
        while head < order.len() {
            let p = order[head];
            head += 1;
            for g in 0..self.action.len() {
                for q in [self.action[g][p], inv[g][p]] {
                    if label[q as usize] == UNDEF {
                        label[q as usize] = order.len() as u32;
                        order.push(q as usize);
                    }
                }
            }
        }
        let action = self
            .action
            .iter()
            .map(|perm| {
                let mut out = vec![0u32; self.degree];
                for (p, &q) in perm.iter().enumerate() {
                    out[label[p] as usize] = label[q as usize];
                }
                out
            })
            .collect();
        CosetTable { degree: self.degree, action }
    }

    pub fn canonical(&self) -> CosetTable {
        self.canonical_from(0)
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical() == *self
    }

    /// Cycle lengths of generator `g`, sorted.
    pub fn cycle_type(&self, g: usize) -> Vec<usize> {
        cycle_lengths(&self.action[g])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Sorted cycle lengths of a permutation in array form.
pub fn cycle_lengths(perm: &[u32]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            p = perm[p] as usize;
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable();
    out
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    degree: usize,
    action: Vec<Vec<u32>>,
}

impl Serialize for CosetTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableJson {
            degree: self.degree,
            action: self.action.iter().map(|p| p.iter().map(|&q| q + 1).collect()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CosetTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = TableJson::deserialize(d)?;
        let mut action = Vec::with_capacity(j.action.len());
        for perm in j.action {
            let mut out = Vec::with_capacity(perm.len());
            for q in perm {
                if q == 0 {
                    return Err(serde::de::Error::custom("points are 1-based"));
                }
                out.push(q - 1);
            }
            action.push(out);
        }
        CosetTable::from_action(j.degree, action).map_err(serde::de::Error::custom)
    }
}

/// Search configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Maximum number of table cells touched before giving up.
    pub max_cells: u64,
    pub parallelism: Parallelism,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { max_cells: DEFAULT_MAX_CELLS, parallelism: Parallelism::default() }
    }
}

/// Relator data compiled to column indices: column `2g` is generator `g`,
/// column `2g + 1` its inverse.
struct Compiled {
    degree: usize,
    cols: usize,
    /// Cyclic rotations of every relator and its inverse, keyed by first column.
    by_first: Vec<Vec<Vec<usize>>>,
}

fn letter_col(l: i32) -> usize {
    let g = l.unsigned_abs() as usize - 1;
    if l > 0 { 2 * g } else { 2 * g + 1 }
}

impl Compiled {
    fn new(p: &Presentation, degree: usize) -> Self {
        let cols = 2 * p.generator_count();
        let mut by_first = vec![Vec::new(); cols];
        for r in p.relators() {
            for w in [r.clone(), r.inverse()] {
                let c: Vec<usize> = w.letters().iter().map(|&l| letter_col(l)).collect();
                for s in 0..c.len() {
                    let rot: Vec<usize> = c[s..].iter().chain(c[..s].iter()).copied().collect();
                    if !by_first[rot[0]].contains(&rot) {
                        by_first[rot[0]].push(rot);
                    }
                }
            }
        }
        Compiled { degree, cols, by_first }
    }
}

#[derive(Clone)]
struct Partial {
    cells: Vec<u32>,
    live: usize,
}

impl Partial {
    fn new(c: &Compiled) -> Self {
        Partial { cells: vec![UNDEF; c.degree * c.cols], live: 1 }
    }

    #[inline]
    fn get(&self, cols: usize, p: usize, col: usize) -> u32 {
        self.cells[p * cols + col]
    }

    fn first_undefined(&self, cols: usize) -> Option<(usize, usize)> {
        self.cells[..self.live * cols]
            .iter()
            .position(|&v| v == UNDEF)
            .map(|i| (i / cols, i % cols))
    }

    /// Sets `p·col = q` and the inverse cell, then closes under deductions.
    /// Returns false on a contradiction.
    fn define(&mut self, c: &Compiled, p: usize, col: usize, q: usize, touched: &mut u64) -> bool {
        let cols = c.cols;
        self.cells[p * cols + col] = q as u32;
        self.cells[q * cols + (col ^ 1)] = p as u32;
        let mut queue = VecDeque::from([(p, col), (q, col ^ 1)]);
        while let Some((pt, cl)) = queue.pop_front() {
            for rot in &c.by_first[cl] {
                if !self.scan(c, pt, rot, &mut queue, touched) {
                    return false;
                }
            }
        }
        true
    }

    fn scan(&mut self, c: &Compiled, start: usize, rot: &[usize], queue: &mut VecDeque<(usize, usize)>, touched: &mut u64) -> bool {
        let cols = c.cols;
        let len = rot.len();
        let mut f = start;
        let mut i = 0;
        while i < len {
            let v = self.get(cols, f, rot[i]);
            if v == UNDEF {
                break;
            }
            f = v as usize;
            i += 1;
        }
        *touched += i as u64 + 1;
        if i == len {
            return f == start;
        }
        let mut b = start;
        let mut j = len;
        while j > i {
            let v = self.get(cols, b, rot[j - 1] ^ 1);
            if v == UNDEF {
                break;
            }
            b = v as usize;
            j -= 1;
        }
        *touched += (len - j) as u64;
        if j == i {
            return f == b;
        }
        if j == i + 1 {
            let col = rot[i];
            self.cells[f * cols + col] = b as u32;
            self.cells[b * cols + (col ^ 1)] = f as u32;
            queue.push_back((f, col));
            queue.push_back((b, col ^ 1));
        }
        true
    }

    fn into_table(self, c: &Compiled) -> CosetTable {
        let gens = c.cols / 2;
        let action = (0..gens)
            .map(|g| (0..c.degree).map(|p| self.cells[p * c.cols + 2 * g]).collect())
            .collect();
        CosetTable { degree: c.degree, action }
    }
}

struct Budget {
    used: AtomicU64,
    limit: u64,
}

impl Budget {
    fn charge(&self, amount: u64) -> Result<()> {
        let total = self.used.fetch_add(amount, Ordering::Relaxed) + amount;
        if total > self.limit {
            Err(Error::BudgetExceeded { touched: total, limit: self.limit })
        } else {
            Ok(())
        }
    }
}

enum Step {
    Done(Option<CosetTable>),
    Branch(Vec<Partial>),
}

fn expand(c: &Compiled, node: Partial, budget: &Budget) -> Result<Step> {
    let Some((p, col)) = node.first_undefined(c.cols) else {
        return Ok(Step::Done((node.live == c.degree).then(|| node.into_table(c))));
    };
    let mut touched = 0u64;
    let mut children = Vec::new();
    for q in 0..node.live {
        if node.get(c.cols, q, col ^ 1) != UNDEF {
            continue;
        }
        let mut child = node.clone();
        if child.define(c, p, col, q, &mut touched) {
            children.push(child);
        }
    }
    if node.live < c.degree {
        let mut child = node.clone();
        let q = child.live;
        child.live += 1;
        if child.define(c, p, col, q, &mut touched) {
            children.push(child);
        }
    }
    budget.charge(touched + c.cols as u64)?;
    Ok(Step::Branch(children))
}

fn depth_first(c: &Compiled, root: Partial, budget: &Budget, out: &mut Vec<CosetTable>) -> Result<()> {
    let mut stack = vec![root];
    while let Some(node) = stack.pop() {
        match expand(c, node, budget)? {
            Step::Done(Some(t)) => out.push(t),
            Step::Done(None) => {}
            Step::Branch(children) => stack.extend(children.into_iter().rev()),
        }
    }
    Ok(())
}

/// Enumerates every index-`n` subgroup of the group presented by `p`, as
/// canonical coset tables sorted by flattened action.
pub fn enumerate_subgroups(p: &Presentation, n: usize) -> Result<Vec<CosetTable>> {
    enumerate_subgroups_with(p, n, EnumerationOptions::default())
}

pub fn enumerate_subgroups_with(p: &Presentation, n: usize, opts: EnumerationOptions) -> Result<Vec<CosetTable>> {
    if n == 0 {
        return Err(Error::InvalidInput("index must be at least 1".into()));
    }
    let c = Compiled::new(p, n);
    let budget = Budget { used: AtomicU64::new(0), limit: opts.max_cells };
    let mut out = Vec::new();

    // Breadth-first until the frontier is wide enough to share out, then
    // depth-first per frontier node.
    let target = if opts.parallelism.is_parallel() { 256 } else { 1 };
    let mut frontier = vec![Partial::new(&c)];
    while !frontier.is_empty() && frontier.len() < target {
        let mut next = Vec::new();
        for node in frontier {
            match expand(&c, node, &budget)? {
                Step::Done(Some(t)) => out.push(t),
                Step::Done(None) => {}
                Step::Branch(children) => next.extend(children),
            }
        }
        frontier = next;
    }
    let parts = par::try_map(opts.parallelism, &frontier, |node| {
        let mut local = Vec::new();
        depth_first(&c, node.clone(), &budget, &mut local)?;
        Ok::<_, Error>(local)
    })?;
    out.extend(parts.into_iter().flatten());

    for t in &out {
        if !t.satisfies(p) || !t.is_transitive() {
            return Err(Error::Inconsistent("enumerated table violates a relator".into()));
        }
    }
    out.sort_by_cached_key(CosetTable::flattened);
    Ok(out)
}

/// Number of index-`n` subgroups, `s_n`.
pub fn count_subgroups(p: &Presentation, n: usize) -> Result<usize> {
    count_subgroups_with(p, n, EnumerationOptions::default())
}

pub fn count_subgroups_with(p: &Presentation, n: usize, opts: EnumerationOptions) -> Result<usize> {
    enumerate_subgroups_with(p, n, opts).map(|v| v.len())
}

/// A subgroup with its Schreier generators and Reidemeister–Schreier
/// presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupRecord {
    pub table: CosetTable,
    /// Schreier generators as words in the parent generators.
    pub schreier_generators: Vec<Word>,
    /// `None` when the subgroup has no nontrivial Schreier generators.
    pub presentation: Option<Presentation>,
}

/// Breadth-first Schreier transversal: the coset representative words and
/// the set of tree edges `(point, generator)` in positive orientation.
fn schreier_transversal(t: &CosetTable) -> (Vec<Word>, Vec<Vec<bool>>) {
    let n = t.degree();
    let k = t.generator_count();
    let inv = t.inverse_action();
    let mut reps: Vec<Option<Word>> = vec![None; n];
    let mut tree = vec![vec![false; k]; n];
    reps[0] = Some(Word::identity());
    let mut order = vec![0usize];
    let mut head = 0;
    while head < order.len() {
        let p = order[head];
        head += 1;
        for g in 0..k {
            let q = t.action[g][p] as usize;
            if reps[q].is_none() {
                reps[q] = Some(reps[p].as_ref().unwrap().concat(&Word::generator(g + 1)));
                tree[p][g] = true;
                order.push(q);
            }
            let q = inv[g][p] as usize;
            if reps[q].is_none() {
                reps[q] = Some(reps[p].as_ref().unwrap().concat(&Word::new([-(g as i32 + 1)])));
                tree[q][g] = true;
                order.push(q);
            }
        }
    }
    (reps.into_iter().map(|r| r.expect("transitive")).collect(), tree)
}

/// Schreier generators and the Reidemeister–Schreier presentation of the
/// stabilizer of point 1 in `t`.
pub fn subgroup_record(p: &Presentation, t: &CosetTable) -> Result<SubgroupRecord> {
    if !t.satisfies(p) {
        return Err(Error::InvalidInput("table does not satisfy the presentation".into()));
    }
    let n = t.degree();
    let k = t.generator_count();
    let (reps, tree) = schreier_transversal(t);
    let mut symbol = vec![vec![None; k]; n];
    let mut gens = Vec::new();
    for pt in 0..n {
        for g in 0..k {
            if tree[pt][g] {
                continue;
            }
            let q = t.action[g][pt] as usize;
            symbol[pt][g] = Some(gens.len());
            gens.push(reps[pt].concat(&Word::generator(g + 1)).concat(&reps[q].inverse()));
        }
    }
    let inv = t.inverse_action();
    let mut rels = Vec::new();
    for pt in 0..n {
        for r in p.relators() {
            let mut cur = pt;
            let mut letters = Vec::new();
            for &l in r.letters() {
                let g = l.unsigned_abs() as usize - 1;
                if l > 0 {
                    if let Some(s) = symbol[cur][g] {
                        letters.push(s as i32 + 1);
                    }
                    cur = t.action[g][cur] as usize;
                } else {
                    let prev = inv[g][cur] as usize;
                    if let Some(s) = symbol[prev][g] {
                        letters.push(-(s as i32 + 1));
                    }
                    cur = prev;
                }
            }
            rels.push(Word::new(letters));
        }
    }
    let presentation = if gens.is_empty() {
        None
    } else {
        Some(Presentation::with_generators("s", gens.len(), rels)?)
    };
    Ok(SubgroupRecord { table: t.clone(), schreier_generators: gens, presentation })
}

/// Partitions `tables` (indices into the slice) into conjugacy classes:
/// two tables are conjugate iff some relabeling intertwines all generators.
pub fn conjugacy_classes(tables: &[CosetTable]) -> Result<Vec<Vec<usize>>> {
    let Some(first) = tables.first() else {
        return Ok(Vec::new());
    };
    if tables.iter().any(|t| t.degree() != first.degree() || t.generator_count() != first.generator_count()) {
        return Err(Error::InvalidInput("tables differ in degree or generator count".into()));
    }
    let mut classes: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
    for (i, t) in tables.iter().enumerate() {
        classes.entry(class_key(t)).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = classes.into_values().collect();
    out.sort();
    Ok(out)
}

/// Smallest canonical form over all base points: a conjugacy invariant that
/// determines the class.
pub fn class_key(t: &CosetTable) -> Vec<u32> {
    (0..t.degree()).map(|b| t.canonical_from(b).flattened()).min().expect("degree >= 1")
}

/// Whether the stabilizer of point 1 is normal, i.e. equals every point's
/// stabilizer.
pub fn is_normal(p: &Presentation, t: &CosetTable) -> Result<bool> {
    if !t.satisfies(p) {
        return Err(Error::InvalidInput("table does not satisfy the presentation".into()));
    }
    let base = t.canonical();
    Ok((1..t.degree()).all(|b| t.canonical_from(b) == base))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym3() -> Presentation {
        Presentation::parse(&["x", "y"], &["x^2", "y^3", "(xy)^2"]).unwrap()
    }

    #[test]
    fn index_one_is_whole_group() {
        for p in [Presentation::free(2), Presentation::free_abelian(2), sym3()] {
            let v = enumerate_subgroups(&p, 1).unwrap();
            assert_eq!(v, vec![CosetTable::trivial(p.generator_count())]);
        }
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_subgroups(&Presentation::free(2), 2).unwrap(), 3);
        assert_eq!(count_subgroups(&Presentation::free(2), 3).unwrap(), 13);
        assert_eq!(count_subgroups(&Presentation::free_abelian(2), 4).unwrap(), 7);
        assert_eq!(count_subgroups(&Presentation::free_abelian(2), 6).unwrap(), 12);
        // Sym3: one subgroup of index 2, three of index 3, one of index 6.
        assert_eq!(count_subgroups(&sym3(), 2).unwrap(), 1);
        assert_eq!(count_subgroups(&sym3(), 3).unwrap(), 3);
        assert_eq!(count_subgroups(&sym3(), 6).unwrap(), 1);
        assert_eq!(count_subgroups(&sym3(), 4).unwrap(), 0);
    }

    #[test]
    fn zero_index_rejected() {
        assert!(matches!(enumerate_subgroups(&sym3(), 0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn budget_exhaustion_is_distinct() {
        let opts = EnumerationOptions { max_cells: 50, parallelism: Parallelism::Sequential };
        let r = enumerate_subgroups_with(&Presentation::free(2), 5, opts);
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
        // A finished search with no subgroups is Ok(empty).
        assert_eq!(enumerate_subgroups(&sym3(), 5).unwrap(), vec![]);
    }

    #[test]
    fn outputs_sorted_and_canonical() {
        let v = enumerate_subgroups(&Presentation::free(2), 4).unwrap();
        assert!(v.windows(2).all(|w| w[0].flattened() < w[1].flattened()));
        assert!(v.iter().all(CosetTable::is_canonical));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let p = Presentation::parse(&["x", "y"], &["x^2", "y^3"]).unwrap();
        let seq = EnumerationOptions { parallelism: Parallelism::Sequential, ..Default::default() };
        let par = EnumerationOptions { parallelism: Parallelism::Parallel, ..Default::default() };
        for n in 1..=8 {
            assert_eq!(enumerate_subgroups_with(&p, n, seq).unwrap(), enumerate_subgroups_with(&p, n, par).unwrap());
        }
    }

    #[test]
    fn schreier_free_rank() {
        let f2 = Presentation::free(2);
        for n in 1..=4 {
            for t in enumerate_subgroups(&f2, n).unwrap() {
                let rec = subgroup_record(&f2, &t).unwrap();
                assert_eq!(rec.schreier_generators.len(), 1 + n * (2 - 1));
                let pres = rec.presentation.unwrap();
                assert!(pres.relators().is_empty());
                for w in &rec.schreier_generators {
                    assert_eq!(t.act_word(0, w), 0);
                }
            }
        }
    }

    #[test]
    fn schreier_identity_case() {
        let p = sym3();
        let rec = subgroup_record(&p, &CosetTable::trivial(2)).unwrap();
        let pres = rec.presentation.unwrap();
        assert_eq!(pres.generator_count(), 2);
        let rels: Vec<_> = pres.relators().iter().map(|r| r.letters().to_vec()).collect();
        let orig: Vec<_> = p.relators().iter().map(|r| r.letters().to_vec()).collect();
        assert_eq!(rels, orig);
    }

    #[test]
    fn conjugacy_examples() {
        let f2 = enumerate_subgroups(&Presentation::free(2), 2).unwrap();
        assert_eq!(conjugacy_classes(&f2).unwrap(), vec![vec![0], vec![1], vec![2]]);

        let s3 = enumerate_subgroups(&sym3(), 3).unwrap();
        assert_eq!(conjugacy_classes(&s3).unwrap(), vec![vec![0, 1, 2]]);

        assert_eq!(conjugacy_classes(&f2[..1]).unwrap(), vec![vec![0]]);
        let mixed = vec![f2[0].clone(), s3[0].clone()];
        assert!(conjugacy_classes(&mixed).is_err());
    }

    #[test]
    fn normality_examples() {
        let f2 = Presentation::free(2);
        for t in enumerate_subgroups(&f2, 2).unwrap() {
            assert!(is_normal(&f2, &t).unwrap());
        }
        let p = sym3();
        for t in enumerate_subgroups(&p, 3).unwrap() {
            assert!(!is_normal(&p, &t).unwrap());
        }
        assert!(is_normal(&p, &CosetTable::trivial(2)).unwrap());
        assert!(is_normal(&p, &enumerate_subgroups(&p, 2).unwrap()[0]).unwrap());
    }

    #[test]
    fn json_is_one_based() {
        let t = enumerate_subgroups(&Presentation::free(2), 2).unwrap().remove(0);
        let s = t.to_json();
        assert!(s.starts_with("{\"degree\":2,\"action\":"));
        assert_eq!(CosetTable::from_json(&s).unwrap(), t);
        assert!(CosetTable::from_json("{\"degree\":2,\"action\":[[1,1]]}").is_err());
        assert!(CosetTable::from_json("{\"degree\":2,\"action\":[[1,2]]}").is_err());
    }
}

//! Equal-index abelian and non-abelian subgroups of crystallographic groups.
//!
//! A crystallographic group is given by its lattice `T = Z^n`, a Gram
//! matrix, and affine generators `x -> S x + t`. For a non-trivial point
//! group we pick an element `sigma` of prime order `p`, split `T` along the
//! fixed space of `sigma` and its orthogonal complement, and compare
//! `B = <gamma> T''` with a sublattice `L` of `T` of the same index. All
//! indices are recomputed by coset enumeration.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::homology::{prime_factors, smith_normal_form, IntegerMatrix};
use crate::lowindex::{self, CosetTable, EnumerationOptions};
use crate::presentations::{Presentation, Word};
use crate::todd_coxeter::{self, EnumerateOptions};
use crate::{Error, Result};

type Matrix = Vec<Vec<i64>>;
type Vector = Vec<Rational64>;

const MAX_POINT_GROUP: usize = 10_000;

/// Affine generator `x -> matrix * x + translation`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrystalOp {
    pub matrix: Matrix,
    pub translation: Vector,
}

/// A crystallographic group with translation lattice `Z^dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrystalGroup {
    dim: usize,
    gram: Matrix,
    ops: Vec<CrystalOp>,
    /// Point group elements with translation parts reduced into `[0, 1)`;
    /// the identity comes first.
    elements: Vec<CrystalOp>,
}

#[derive(Serialize, Deserialize)]
struct OpFile {
    matrix: Matrix,
    translation: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct CrystalFile {
    dim: usize,
    gram: Matrix,
    ops: Vec<OpFile>,
}

fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    (0..n).map(|i| (0..m).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum()).collect()).collect()
}

fn transpose(a: &Matrix) -> Matrix {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

fn mat_vec(a: &Matrix, v: &Vector) -> Vector {
    a.iter()
        .map(|row| row.iter().zip(v).fold(Rational64::zero(), |acc, (&x, y)| acc + Rational64::from_integer(x) * y))
        .collect()
}

fn frac(v: &Vector) -> Vector {
    v.iter().map(|x| x - x.floor()).collect()
}

fn det(a: &Matrix) -> i128 {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut prev = 1i128;
    let mut sign = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(s) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    if n == 0 { 1 } else { sign * m[n - 1][n - 1] }
}

fn to_integer_matrix(a: &Matrix, cols: usize) -> IntegerMatrix {
    let mut m = IntegerMatrix::zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            m.set(i, j, BigInt::from(x));
        }
    }
    m
}

/// Basis (as columns) of the integer kernel `{x in Z^cols : a x = 0}`.
fn integer_kernel(a: &Matrix, cols: usize) -> Matrix {
    if a.is_empty() {
        return identity(cols);
    }
    let s = smith_normal_form(&to_integer_matrix(a, cols));
    let kernel_cols: Vec<usize> = (0..cols).filter(|&j| j >= s.diagonal.len() || s.diagonal[j].is_zero()).collect();
    (0..cols)
        .map(|i| kernel_cols.iter().map(|&j| s.v.get(i, j).to_i64().expect("small entries")).collect())
        .collect()
}

fn columns(a: &Matrix) -> Vec<Vec<i64>> {
    transpose(a)
}

impl CrystalGroup {
    /// Validates the Gram matrix and generators and closes the point group.
    pub fn new(dim: usize, gram: Matrix, ops: Vec<CrystalOp>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidInput(m));
        if dim == 0 {
            return bad("dimension must be positive".into());
        }
        if gram.len() != dim || gram.iter().any(|r| r.len() != dim) {
            return bad("gram matrix must be dim x dim".into());
        }
        if gram != transpose(&gram) || (1..=dim).any(|k| {
            let minor: Matrix = gram[..k].iter().map(|r| r[..k].to_vec()).collect();
            det(&minor) <= 0
        }) {
            return bad("gram matrix must be symmetric positive definite".into());
        }
        for op in &ops {
            if op.matrix.len() != dim || op.matrix.iter().any(|r| r.len() != dim) || op.translation.len() != dim {
                return bad("operation has the wrong dimension".into());
            }
            if det(&op.matrix).abs() != 1 {
                return bad("point matrices must be unimodular".into());
            }
            if mat_mul(&mat_mul(&transpose(&op.matrix), &gram), &op.matrix) != gram {
                return bad("point matrix does not preserve the gram matrix".into());
            }
        }
        let mut g = CrystalGroup { dim, gram, ops, elements: Vec::new() };
        g.close()?;
        Ok(g)
    }

    fn close(&mut self) -> Result<()> {
        let id = CrystalOp { matrix: identity(self.dim), translation: vec![Rational64::zero(); self.dim] };
        let mut elements = vec![id];
        let mut index: HashMap<Matrix, usize> = HashMap::new();
        index.insert(elements[0].matrix.clone(), 0);
        let mut i = 0;
        while i < elements.len() {
            for op in &self.ops {
                let prod = compose(&elements[i], op);
                let prod = CrystalOp { translation: frac(&prod.translation), ..prod };
                match index.get(&prod.matrix) {
                    Some(&j) => {
                        if elements[j].translation != prod.translation {
                            return Err(Error::InvalidInput(
                                "translation parts are inconsistent modulo the lattice (pure translations outside Z^n)".into(),
                            ));
                        }
                    }
                    None => {
                        if elements.len() >= MAX_POINT_GROUP {
                            return Err(Error::TooLarge { cap: MAX_POINT_GROUP });
                        }
                        index.insert(prod.matrix.clone(), elements.len());
                        elements.push(prod);
                    }
                }
            }
            i += 1;
        }
        self.elements = elements;
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn ops(&self) -> &[CrystalOp] {
        &self.ops
    }

    pub fn point_group_order(&self) -> usize {
        self.elements.len()
    }

    /// Point group elements with reduced translation parts, identity first.
    pub fn point_elements(&self) -> &[CrystalOp] {
        &self.elements
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: CrystalFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let ops = f
            .ops
            .into_iter()
            .map(|o| {
                let translation = o
                    .translation
                    .iter()
                    .map(|s| s.trim().parse::<Rational64>().map_err(|_| Error::Parse(format!("bad rational {s:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                Ok(CrystalOp { matrix: o.matrix, translation })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(f.dim, f.gram, ops)
    }

    pub fn to_json(&self) -> String {
        let f = CrystalFile {
            dim: self.dim,
            gram: self.gram.clone(),
            ops: self
                .ops
                .iter()
                .map(|o| OpFile { matrix: o.matrix.clone(), translation: o.translation.iter().map(|r| r.to_string()).collect() })
                .collect(),
        };
        serde_json::to_string(&f).expect("serializable")
    }

    /// Built-in examples: `Z3`, `klein`, `p2`, `glide3`, `screw3`.
    pub fn fixture(name: &str) -> Result<Self> {
        let h = Rational64::new(1, 2);
        let z = Rational64::zero();
        let op = |m: Matrix, t: Vec<Rational64>| CrystalOp { matrix: m, translation: t };
        match name {
            "Z3" => Self::new(3, identity(3), vec![]),
            "klein" => Self::new(2, identity(2), vec![op(vec![vec![1, 0], vec![0, -1]], vec![h, z])]),
            "p2" => Self::new(2, identity(2), vec![op(vec![vec![-1, 0], vec![0, -1]], vec![z, z])]),
            "glide3" => Self::new(3, identity(3), vec![op(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, -1]], vec![h, z, z])]),
            "screw3" => Self::new(3, identity(3), vec![op(vec![vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]], vec![h, z, z])]),
            _ => Err(Error::InvalidInput(format!("unknown crystal fixture {name:?}"))),
        }
    }

    /// Presentation on `e1..en` (lattice translations) and one generator
    /// `s_k` per non-identity point element.
    pub fn presentation(&self) -> Presentation {
        let n = self.dim;
        let m = self.elements.len();
        let mut names: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
        names.extend((1..m).map(|k| format!("s{k}")));
        let mut rels = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                rels.push(Word::commutator(&Word::generator(i + 1), &Word::generator(j + 1)));
            }
        }
        let index: HashMap<&Matrix, usize> = self.elements.iter().enumerate().map(|(k, e)| (&e.matrix, k)).collect();
        for k in 1..m {
            let s = self.point_generator(k);
            let sm = &self.elements[k].matrix;
            for i in 0..n {
                let image: Vec<i64> = (0..n).map(|r| sm[r][i]).collect();
                let lhs = s.concat(&Word::generator(i + 1)).concat(&s.inverse());
                rels.push(lhs.concat(&self.translation_word(&image).inverse()));
            }
        }
        for a in 1..m {
            for b in 1..m {
                let prod = compose(&self.elements[a], &self.elements[b]);
                let c = index[&prod.matrix];
                let v: Vec<i64> = prod
                    .translation
                    .iter()
                    .zip(&self.elements[c].translation)
                    .map(|(x, y)| (x - y).to_integer())
                    .collect();
                // s_a s_b = t^v s_c
                let lhs = self.point_generator(a).concat(&self.point_generator(b));
                let rhs = self.translation_word(&v).concat(&self.point_generator(c));
                rels.push(lhs.concat(&rhs.inverse()));
            }
        }
        Presentation::new(names, rels).expect("well-formed presentation")
    }

    fn point_generator(&self, k: usize) -> Word {
        if k == 0 { Word::identity() } else { Word::generator(self.dim + k) }
    }

    fn translation_word(&self, v: &[i64]) -> Word {
        v.iter()
            .enumerate()
            .fold(Word::identity(), |w, (i, &c)| w.concat(&Word::generator(i + 1).pow(c)))
    }

    /// Affine map represented by a word in the presentation generators.
    pub fn evaluate(&self, w: &Word) -> CrystalOp {
        let id = CrystalOp { matrix: identity(self.dim), translation: vec![Rational64::zero(); self.dim] };
        w.letters().iter().fold(id, |acc, &l| {
            let g = self.generator_op(l.unsigned_abs() as usize);
            compose(&acc, &if l > 0 { g } else { inverse(&g) })
        })
    }

    fn generator_op(&self, g: usize) -> CrystalOp {
        if g <= self.dim {
            let mut t = vec![Rational64::zero(); self.dim];
            t[g - 1] = Rational64::one();
            CrystalOp { matrix: identity(self.dim), translation: t }
        } else {
            self.elements[g - self.dim].clone()
        }
    }
}

fn compose(a: &CrystalOp, b: &CrystalOp) -> CrystalOp {
    let matrix = mat_mul(&a.matrix, &b.matrix);
    let translation = mat_vec(&a.matrix, &b.translation).iter().zip(&a.translation).map(|(x, y)| x + y).collect();
    CrystalOp { matrix, translation }
}

fn inverse(a: &CrystalOp) -> CrystalOp {
    let n = a.matrix.len();
    let id = identity(n);
    let mut p = a.matrix.clone();
    let mut inv = id.clone();
    while p != id {
        inv = p.clone();
        p = mat_mul(&p, &a.matrix);
    }
    let t = mat_vec(&inv, &a.translation).into_iter().map(|x| -x).collect();
    CrystalOp { matrix: inv, translation: t }
}

fn commutes(a: &CrystalOp, b: &CrystalOp) -> bool {
    compose(a, b) == compose(b, a)
}

impl fmt::Display for CrystalOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.translation.iter().map(|r| r.to_string()).collect();
        write!(f, "{:?} + ({})", self.matrix, t.join(", "))
    }
}

pub fn is_free_abelian(c: &CrystalGroup) -> bool {
    c.point_group_order() == 1
}

/// Lattice data from the construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitData {
    pub prime: u64,
    /// Index of `sigma` among the point elements.
    pub sigma: usize,
    /// Basis of `T` meet the fixed space, as columns.
    pub fixed_basis: Matrix,
    /// Basis of `T` meet its orthogonal complement, as columns.
    pub complement_basis: Matrix,
    /// `|T / T'|`.
    pub split_index: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessPair {
    pub index: usize,
    pub abelian_generators: Vec<Word>,
    pub nonabelian_generators: Vec<Word>,
    /// Positions in `nonabelian_generators` of two non-commuting elements.
    pub noncommuting: (usize, usize),
    pub split: SplitData,
}

impl WitnessPair {
    pub fn render(&self, names: &[String]) -> (Vec<String>, Vec<String>) {
        (
            self.abelian_generators.iter().map(|w| w.render(names)).collect(),
            self.nonabelian_generators.iter().map(|w| w.render(names)).collect(),
        )
    }
}

fn element_order(m: &Matrix) -> usize {
    let id = identity(m.len());
    let mut p = m.clone();
    let mut k = 1;
    while p != id {
        p = mat_mul(&p, m);
        k += 1;
    }
    k
}

fn lattice_index(basis_cols: &[Vec<i64>], n: usize) -> Result<u64> {
    if basis_cols.len() != n {
        return Err(Error::Inconsistent("sublattice does not have full rank".into()));
    }
    let m: Matrix = (0..n).map(|i| basis_cols.iter().map(|c| c[i]).collect()).collect();
    let d = det(&m).unsigned_abs();
    if d == 0 {
        return Err(Error::Inconsistent("sublattice does not have full rank".into()));
    }
    u64::try_from(d).map_err(|_| Error::Inconsistent("index overflow".into()))
}

/// Splits `T` along the fixed space of `sigma`.
pub fn split_lattice(c: &CrystalGroup) -> Result<SplitData> {
    if is_free_abelian(c) {
        return Err(Error::InvalidInput("free abelian groups have no witness pair".into()));
    }
    let n = c.dim;
    let order = c.point_group_order() as u64;
    let p = prime_factors(order)[0].0;
    let sigma = (1..c.elements.len())
        .find(|&k| element_order(&c.elements[k].matrix) as u64 == p)
        .ok_or_else(|| Error::Inconsistent(format!("no point element of order {p}")))?;
    let s = &c.elements[sigma].matrix;
    let s_minus_i: Matrix = (0..n).map(|i| (0..n).map(|j| s[i][j] - i64::from(i == j)).collect()).collect();
    let fixed = integer_kernel(&s_minus_i, n);
    let fixed_cols = columns(&fixed);
    // x orthogonal to every fixed basis vector b: b^T G x = 0.
    let constraints: Matrix = fixed_cols.iter().map(|b| (0..n).map(|j| (0..n).map(|i| b[i] * c.gram[i][j]).sum()).collect()).collect();
    let complement = integer_kernel(&constraints, n);
    let complement_cols = columns(&complement);
    let both: Vec<Vec<i64>> = fixed_cols.iter().chain(&complement_cols).cloned().collect();
    let split_index = lattice_index(&both, n)?;
    Ok(SplitData { prime: p, sigma, fixed_basis: fixed, complement_basis: complement, split_index })
}

/// The abelian/non-abelian pair of equal index.
pub fn euclidean_witness(c: &CrystalGroup) -> Result<WitnessPair> {
    let split = split_lattice(c)?;
    let n = c.dim;
    let p = split.prime as i64;
    let fixed_cols = columns(&split.fixed_basis);
    let comp_cols = columns(&split.complement_basis);
    let r = comp_cols.len() as u32;
    if r == 0 {
        return Err(Error::Inconsistent("sigma fixes the whole lattice".into()));
    }
    let mut gens = vec![Word::generator(n + split.sigma)];
    for b in &fixed_cols {
        gens.push(c.translation_word(b));
    }
    for b in &comp_cols {
        let pb: Vec<i64> = b.iter().map(|x| x * p).collect();
        gens.push(c.translation_word(&pb));
    }
    let pres = c.presentation();
    let opts = EnumerateOptions::default();
    let index = todd_coxeter::subgroup_index(&pres, &gens, opts)?;
    let m = c.point_group_order();
    let expected = m as u64 * (split.prime).pow(r - 1) * split.split_index;
    if index as u64 != expected {
        return Err(Error::Inconsistent(format!("coset count {index} differs from the lattice count {expected}")));
    }
    if index % m != 0 {
        return Err(Error::Inconsistent("index is not a multiple of the point group order".into()));
    }
    let last = (index / m) as i64;
    let mut abelian = Vec::with_capacity(n);
    for i in 0..n {
        let mut v = vec![0i64; n];
        v[i] = if i + 1 == n { last } else { 1 };
        abelian.push(c.translation_word(&v));
    }
    let ops: Vec<CrystalOp> = gens.iter().map(|w| c.evaluate(w)).collect();
    let noncommuting = (0..ops.len())
        .flat_map(|i| (i + 1..ops.len()).map(move |j| (i, j)))
        .find(|&(i, j)| !commutes(&ops[i], &ops[j]))
        .ok_or_else(|| Error::Inconsistent("the subgroup <gamma> T'' came out abelian".into()))?;
    Ok(WitnessPair { index, abelian_generators: abelian, nonabelian_generators: gens, noncommuting, split })
}

/// Recomputes both indices by coset enumeration and checks commutativity.
pub fn verify_pair(c: &CrystalGroup, w: &WitnessPair) -> bool {
    let pres = c.presentation();
    let opts = EnumerateOptions { max_index: w.index.saturating_mul(4).max(16), ..EnumerateOptions::default() };
    let index_of = |gens: &[Word]| todd_coxeter::subgroup_index(&pres, gens, opts).ok();
    if index_of(&w.abelian_generators) != Some(w.index) || index_of(&w.nonabelian_generators) != Some(w.index) {
        return false;
    }
    let ab: Vec<CrystalOp> = w.abelian_generators.iter().map(|x| c.evaluate(x)).collect();
    let nab: Vec<CrystalOp> = w.nonabelian_generators.iter().map(|x| c.evaluate(x)).collect();
    let all_commute = |ops: &[CrystalOp]| ops.iter().all(|a| ops.iter().all(|b| commutes(a, b)));
    let (i, j) = w.noncommuting;
    all_commute(&ab) && i < nab.len() && j < nab.len() && !commutes(&nab[i], &nab[j])
}

/// Coset table (breadth-first standard form) of the subgroup generated by
/// `gens`.
pub fn subgroup_table(c: &CrystalGroup, gens: &[Word]) -> Result<CosetTable> {
    todd_coxeter::enumerate_cosets(&c.presentation(), gens, EnumerateOptions::default())
}

/// Result of checking a witness against the full list of subgroups of
/// that index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub index: usize,
    pub subgroups_of_index: usize,
    pub abelian_found: bool,
    pub nonabelian_found: bool,
}

/// Enumerates every subgroup of the witness index with the low-index
/// search and confirms both witness subgroups are among them.
pub fn cross_validate(c: &CrystalGroup, w: &WitnessPair, opts: EnumerationOptions) -> Result<CrossCheck> {
    let pres = c.presentation();
    let all = lowindex::enumerate_subgroups_with(&pres, w.index, opts)?;
    let a = subgroup_table(c, &w.abelian_generators)?;
    let b = subgroup_table(c, &w.nonabelian_generators)?;
    Ok(CrossCheck {
        index: w.index,
        subgroups_of_index: all.len(),
        abelian_found: all.contains(&a),
        nonabelian_found: all.contains(&b),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_abelian_examples() {
        assert!(is_free_abelian(&CrystalGroup::fixture("Z3").unwrap()));
        assert!(!is_free_abelian(&CrystalGroup::fixture("klein").unwrap()));
        assert!(!is_free_abelian(&CrystalGroup::fixture("p2").unwrap()));
        assert!(euclidean_witness(&CrystalGroup::fixture("Z3").unwrap()).is_err());
    }

    #[test]
    fn json_round_trip() {
        let k = CrystalGroup::fixture("klein").unwrap();
        let text = k.to_json();
        assert!(text.contains("\"1/2\""));
        assert_eq!(CrystalGroup::from_json(&text).unwrap(), k);
        let bad = r#"{"dim":2,"gram":[[1,0],[0,1]],"ops":[{"matrix":[[1,1],[0,1]],"translation":["0","0"]}]}"#;
        assert!(CrystalGroup::from_json(bad).is_err());
    }

    #[test]
    fn inconsistent_translations_rejected() {
        // A pure translation by 1/2 is not in Z^n.
        let op = CrystalOp { matrix: identity(1), translation: vec![Rational64::new(1, 2)] };
        assert!(CrystalGroup::new(1, identity(1), vec![op]).is_err());
    }

    #[test]
    fn klein_presentation_is_klein() {
        let k = CrystalGroup::fixture("klein").unwrap();
        let p = k.presentation();
        assert_eq!(p.generator_count(), 3);
        let ab = crate::homology::abelianization(&p).unwrap();
        assert_eq!((ab.rank, ab.torsion.clone()), (1, vec![2]));
        // Index-2 subgroup counts agree with <a, b | a b a b^-1>.
        let klein = Presentation::parse(&["a", "b"], &["a b a B"]).unwrap();
        assert_eq!(
            lowindex::count_subgroups(&p, 2).unwrap(),
            lowindex::count_subgroups(&klein, 2).unwrap()
        );
    }

    #[test]
    fn split_ranks() {
        let s = split_lattice(&CrystalGroup::fixture("screw3").unwrap()).unwrap();
        assert_eq!(s.prime, 2);
        assert_eq!(columns(&s.fixed_basis).len(), 1);
        assert_eq!(columns(&s.complement_basis).len(), 2);
        assert_eq!(s.split_index, 1);
        let s = split_lattice(&CrystalGroup::fixture("p2").unwrap()).unwrap();
        assert_eq!(columns(&s.fixed_basis).len(), 0);
        assert_eq!(columns(&s.complement_basis).len(), 2);
    }

    #[test]
    fn skew_gram_split() {
        // Hexagonal lattice with the order-2 swap of basis vectors.
        let gram = vec![vec![2, 1], vec![1, 2]];
        let op = CrystalOp { matrix: vec![vec![0, 1], vec![1, 0]], translation: vec![Rational64::zero(); 2] };
        let c = CrystalGroup::new(2, gram, vec![op]).unwrap();
        let s = split_lattice(&c).unwrap();
        // (1,1) and (1,-1) span an index-2 sublattice.
        assert_eq!(s.split_index, 2);
        let w = euclidean_witness(&c).unwrap();
        assert_eq!(w.index, 2 * 2);
        assert!(verify_pair(&c, &w));
    }

    #[test]
    fn fixture_indices() {
        for (name, idx) in [("klein", 2), ("p2", 4), ("glide3", 2), ("screw3", 4)] {
            let c = CrystalGroup::fixture(name).unwrap();
            let w = euclidean_witness(&c).unwrap();
            assert_eq!(w.index, idx, "{name}");
            assert!(verify_pair(&c, &w), "{name}");
        }
    }

    #[test]
    fn tampered_pairs_rejected() {
        let c = CrystalGroup::fixture("klein").unwrap();
        let w = euclidean_witness(&c).unwrap();
        let mut off = w.clone();
        off.index += 1;
        assert!(!verify_pair(&c, &off));
        let mut both_abelian = w.clone();
        both_abelian.nonabelian_generators = w.abelian_generators.clone();
        both_abelian.noncommuting = (0, 1);
        assert!(!verify_pair(&c, &both_abelian));
    }

    #[test]
    fn gamma_power_in_fixed_lattice() {
        for name in ["klein", "glide3", "screw3", "p2"] {
            let c = CrystalGroup::fixture(name).unwrap();
            let s = split_lattice(&c).unwrap();
            let gamma = &c.point_elements()[s.sigma];
            let mut power = gamma.clone();
            for _ in 1..s.prime {
                power = compose(&power, gamma);
            }
            assert_eq!(power.matrix, identity(c.dim()));
            let sm = &gamma.matrix;
            let fixed = mat_vec(sm, &power.translation);
            assert_eq!(fixed, power.translation);
            assert!(power.translation.iter().all(|x| x.is_integer()));
        }
    }
}

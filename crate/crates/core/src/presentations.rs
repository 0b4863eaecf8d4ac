//! Words, finite presentations and the catalog of presented groups.
//!
//! Letters are signed, 1-based generator indices: `3` is the third generator
//! and `-3` its inverse. Words are kept freely reduced; relators of a
//! [`Presentation`] are additionally cyclically reduced.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::fuchsian::Signature;
use crate::{Error, Result};

/// A freely reduced word in the generators of some presentation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from raw letters, freely reducing them.
    ///
    /// Panics if a letter is zero.
    pub fn new(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "letter 0 is not a generator");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn generator(index: usize) -> Self {
        Word(vec![index as i32])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        Word::new(self.0.iter().chain(other.0.iter()).copied())
    }

    /// `self^k`, negative exponents allowed.
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.0);
        }
        Word::new(letters)
    }

    /// Commutator `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(a: &Word, b: &Word) -> Self {
        Word::new(
            a.0.iter()
                .chain(b.0.iter())
                .copied()
                .chain(a.inverse().0)
                .chain(b.inverse().0),
        )
    }

    /// Removes matching first/last letter pairs `g ... g^-1`.
    pub fn cyclically_reduced(&self) -> Self {
        let w = &self.0;
        let (mut i, mut j) = (0usize, w.len());
        while j >= i + 2 && w[i] == -w[j - 1] {
            i += 1;
            j -= 1;
        }
        Word(w[i..j].to_vec())
    }

    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Exponent sum of generator `g` (1-based).
    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.0
            .iter()
            .map(|&l| match l {
                l if l == g as i32 => 1,
                l if l == -(g as i32) => -1,
                _ => 0,
            })
            .sum()
    }

    /// Renders with the given generator names, compressing runs into powers.
    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let run = (j - i) as i64;
            let name = &names[l.unsigned_abs() as usize - 1];
            let exp = if l < 0 { -run } else { run };
            if exp == 1 {
                parts.push(name.clone());
            } else {
                parts.push(format!("{name}^{exp}"));
            }
            i = j;
        }
        parts.join(" ")
    }
}

impl From<Vec<i32>> for Word {
    fn from(v: Vec<i32>) -> Self {
        Word::new(v)
    }
}

/// Parses `text` as a word over the generator `names`.
///
/// Accepted syntax: generator names (longest match wins), juxtaposition or
/// `*` for products, `^k` with optional sign for powers, parentheses,
/// commutators `[u, v]`, and an upper-case name for the inverse of a
/// lower-case generator when the upper-case spelling is not itself a name.
/// `1` denotes the empty word.
pub fn parse_word(text: &str, names: &[String]) -> Result<Word> {
    let mut p = WordParser { chars: text.chars().collect(), pos: 0, names };
    let w = p.product()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(w)
}

struct WordParser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [String],
}

impl WordParser<'_> {
    fn err(&self, msg: &str) -> Error {
        let s: String = self.chars.iter().collect();
        Error::Parse(format!("{msg} at column {} in {s:?}", self.pos + 1))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && (self.chars[self.pos].is_whitespace() || self.chars[self.pos] == '*') {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn product(&mut self) -> Result<Word> {
        let mut acc = Word::identity();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(')') | Some(']') | Some(',') => return Ok(acc),
                _ => {
                    let f = self.factor()?;
                    acc = acc.concat(&f);
                }
            }
        }
    }

    fn factor(&mut self) -> Result<Word> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.integer()?;
            Ok(base.pow(k))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let mut sign = 1;
        if let Some(c @ ('-' | '+')) = self.peek() {
            if c == '-' {
                sign = -1;
            }
            self.pos += 1;
        }
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected exponent"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<i64>().map(|v| sign * v).map_err(|_| self.err("exponent out of range"))
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.product()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let a = self.product()?;
                self.skip_ws();
                if self.peek() != Some(',') {
                    return Err(self.err("expected ',' in commutator"));
                }
                self.pos += 1;
                let b = self.product()?;
                self.skip_ws();
                if self.peek() != Some(']') {
                    return Err(self.err("expected ']'"));
                }
                self.pos += 1;
                Ok(Word::commutator(&a, &b))
            }
            Some('1') if !self.names.iter().any(|n| n.starts_with('1')) => {
                self.pos += 1;
                Ok(Word::identity())
            }
            Some(_) => self.generator(),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn generator(&mut self) -> Result<Word> {
        let rest: String = self.chars[self.pos..].iter().collect();
        let mut best: Option<(usize, i32)> = None;
        for (i, name) in self.names.iter().enumerate() {
            let len = name.chars().count();
            if rest.starts_with(name.as_str()) && best.is_none_or(|(l, _)| len > l) {
                best = Some((len, i as i32 + 1));
            }
            let upper = name.to_uppercase();
            if upper != *name
                && !self.names.contains(&upper)
                && rest.starts_with(upper.as_str())
                && best.is_none_or(|(l, _)| len > l)
            {
                best = Some((len, -(i as i32 + 1)));
            }
        }
        match best {
            Some((len, letter)) => {
                self.pos += len;
                Ok(Word(vec![letter]))
            }
            None => Err(self.err("unknown generator")),
        }
    }
}

/// A finite presentation `<generators | relators>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Builds a presentation, cyclically reducing relators and dropping the
    /// ones that reduce to the empty word.
    pub fn new(generator_names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        if generator_names.is_empty() {
            return Err(Error::InvalidInput("a presentation needs at least one generator".into()));
        }
        let n = generator_names.len();
        let mut rels = Vec::with_capacity(relators.len());
        for r in relators {
            if r.max_generator() > n {
                return Err(Error::InvalidInput(format!(
                    "relator uses generator {} but only {n} exist",
                    r.max_generator()
                )));
            }
            let r = r.cyclically_reduced();
            if !r.is_empty() {
                rels.push(r);
            }
        }
        Ok(Presentation { generator_names, relators: rels })
    }

    /// Presentation with generators named `prefix1..prefixN`.
    pub fn with_generators(prefix: &str, count: usize, relators: Vec<Word>) -> Result<Self> {
        Self::new((1..=count).map(|i| format!("{prefix}{i}")).collect(), relators)
    }

    /// Free group of the given rank.
    pub fn free(rank: usize) -> Self {
        let names = if rank <= 4 {
            ["a", "b", "c", "d"][..rank].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=rank).map(|i| format!("a{i}")).collect()
        };
        Self::new(names, Vec::new()).expect("rank must be positive")
    }

    /// Free abelian group of the given rank.
    pub fn free_abelian(rank: usize) -> Self {
        let mut rels = Vec::new();
        for i in 1..=rank {
            for j in i + 1..=rank {
                rels.push(Word::commutator(&Word::generator(i), &Word::generator(j)));
            }
        }
        let mut p = Self::free(rank);
        p.relators = rels;
        p
    }

    /// Fundamental group of the closed orientable surface of genus `g >= 1`.
    pub fn surface(genus: usize) -> Self {
        fuchsian_presentation(&Signature::new(genus as u32, 0, vec![]).expect("valid"))
    }

    /// Parses a presentation from its names and relator strings.
    pub fn parse(names: &[&str], relators: &[&str]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let rels = relators.iter().map(|r| parse_word(r, &names)).collect::<Result<Vec<_>>>()?;
        Self::new(names, rels)
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Returns a copy with one more relator.
    pub fn with_relator(&self, r: Word) -> Result<Self> {
        let mut rels = self.relators.clone();
        rels.push(r);
        Self::new(self.generator_names.clone(), rels)
    }

    /// Parses the text format: a `gens:` line followed by `rel:` lines.
    /// Blank lines and lines starting with `#` are ignored.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut names: Option<Vec<String>> = None;
        let mut rel_lines = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("gens:") {
                if names.is_some() {
                    return Err(Error::Parse(format!("line {}: duplicate gens line", lineno + 1)));
                }
                names = Some(rest.split_whitespace().map(str::to_string).collect());
            } else if let Some(rest) = line.strip_prefix("rel:") {
                rel_lines.push((lineno + 1, rest.trim().to_string()));
            } else {
                return Err(Error::Parse(format!("line {}: expected 'gens:' or 'rel:'", lineno + 1)));
            }
        }
        let names = names.ok_or_else(|| Error::Parse("missing 'gens:' line".into()))?;
        let mut rels = Vec::new();
        for (lineno, r) in rel_lines {
            rels.push(parse_word(&r, &names).map_err(|e| Error::Parse(format!("line {lineno}: {e}")))?);
        }
        Self::new(names, rels)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("gens: {}\n", self.generator_names.join(" "));
        for r in &self.relators {
            s.push_str(&format!("rel: {}\n", r.render(&self.generator_names)));
        }
        s
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| r.render(&self.generator_names)).collect();
        write!(f, "< {} | {} >", self.generator_names.join(", "), rels.join(", "))
    }
}

/// Presentation of the Fuchsian group with the given signature.
///
/// Generators are ordered torsion first, then cusps, then handles:
/// `x1..xs, p1..pk, a1, b1, .., ag, bg`. Relators are `xi^mi` followed by
/// the long relator `x1..xs p1..pk [a1,b1]..[ag,bg]`.
pub fn fuchsian_presentation(sig: &Signature) -> Presentation {
    let s = sig.periods().len();
    let k = sig.cusps() as usize;
    let g = sig.genus() as usize;
    let mut names = Vec::with_capacity(s + k + 2 * g);
    names.extend((1..=s).map(|i| format!("x{i}")));
    names.extend((1..=k).map(|j| format!("p{j}")));
    for l in 1..=g {
        names.push(format!("a{l}"));
        names.push(format!("b{l}"));
    }
    let mut rels: Vec<Word> = sig
        .periods()
        .iter()
        .enumerate()
        .map(|(i, &m)| Word::generator(i + 1).pow(m as i64))
        .collect();
    let mut long: Vec<i32> = (1..=(s + k) as i32).collect();
    for l in 0..g {
        let a = (s + k + 2 * l + 1) as i32;
        let b = a + 1;
        long.extend([a, b, -a, -b]);
    }
    rels.push(Word::new(long));
    if names.is_empty() {
        // The sphere with no cone points or cusps: trivial group.
        names.push("x".into());
        rels = vec![Word::generator(1)];
    }
    Presentation::new(names, rels).expect("catalog presentation is well formed")
}

/// The base families of finite fundamental groups of spherical 3-manifolds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SphericalTag {
    Trivial,
    Cyclic(u64),
    /// `Q_{8n}` with parameter `n`.
    Q(u64),
    P48,
    P120,
    /// `D_{2^m (2n+1)}`.
    D { m: u32, n: u64 },
    /// `P'_{8 * 3^m}`.
    PPrime(u32),
}

/// A spherical space-form group: a base family times an optional cyclic
/// factor of coprime order (`coprime_factor <= 1` means none).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SphericalKind {
    pub tag: SphericalTag,
    pub coprime_factor: u64,
}

impl SphericalKind {
    pub fn new(tag: SphericalTag, coprime_factor: u64) -> Result<Self> {
        let k = SphericalKind { tag, coprime_factor };
        k.validate()?;
        Ok(k)
    }

    pub fn base(tag: SphericalTag) -> Result<Self> {
        Self::new(tag, 1)
    }

    pub fn base_order(&self) -> u64 {
        match self.tag {
            SphericalTag::Trivial => 1,
            SphericalTag::Cyclic(p) => p,
            SphericalTag::Q(n) => 8 * n,
            SphericalTag::P48 => 48,
            SphericalTag::P120 => 120,
            SphericalTag::D { m, n } => (1u64 << m) * (2 * n + 1),
            SphericalTag::PPrime(m) => 8 * 3u64.pow(m),
        }
    }

    pub fn order(&self) -> u64 {
        self.base_order() * self.coprime_factor.max(1)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidInput(m.to_string()));
        match self.tag {
            SphericalTag::Cyclic(0) => return bad("cyclic order must be positive"),
            SphericalTag::Q(0) => return bad("Q8n requires n >= 1"),
            SphericalTag::D { m, n } if m < 2 || n < 1 => return bad("D requires m >= 2 and n >= 1"),
            SphericalTag::D { m, .. } if m > 20 => return bad("D parameter m too large"),
            SphericalTag::PPrime(m) if m < 1 => return bad("P' requires m >= 1"),
            SphericalTag::PPrime(m) if m > 12 => return bad("P' parameter m too large"),
            _ => {}
        }
        let q = self.coprime_factor;
        if q > 1 && num_integer::gcd(q, self.base_order()) != 1 {
            return bad("cyclic factor order must be coprime to the base order");
        }
        Ok(())
    }

    /// Parses catalog names: `trivial`, `cyclic:n`, `Q8n:n`, `P48`, `P120`,
    /// `D:m,n`, `Pp:m`, each with an optional `xZ:q` suffix.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (base, q) = match text.find("xZ:") {
            Some(i) => {
                let q = text[i + 3..]
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad cyclic factor in {text:?}")))?;
                (text[..i].trim(), q)
            }
            None => (text, 1),
        };
        let num = |s: &str| s.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad number in {text:?}")));
        let tag = if base.eq_ignore_ascii_case("trivial") {
            SphericalTag::Trivial
        } else if base == "P48" {
            SphericalTag::P48
        } else if base == "P120" {
            SphericalTag::P120
        } else if let Some(r) = base.strip_prefix("cyclic:") {
            SphericalTag::Cyclic(num(r)?)
        } else if let Some(r) = base.strip_prefix("Q8n:") {
            SphericalTag::Q(num(r)?)
        } else if let Some(r) = base.strip_prefix("Pp:") {
            SphericalTag::PPrime(num(r)? as u32)
        } else if let Some(r) = base.strip_prefix("D:") {
            let (m, n) = r.split_once(',').ok_or_else(|| Error::Parse(format!("expected D:m,n in {text:?}")))?;
            SphericalTag::D { m: num(m)? as u32, n: num(n)? }
        } else {
            return Err(Error::Parse(format!("unknown spherical catalog name {text:?}")));
        };
        Self::new(tag, q)
    }
}

impl fmt::Display for SphericalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            SphericalTag::Trivial => write!(f, "trivial")?,
            SphericalTag::Cyclic(p) => write!(f, "cyclic:{p}")?,
            SphericalTag::Q(n) => write!(f, "Q8n:{n}")?,
            SphericalTag::P48 => write!(f, "P48")?,
            SphericalTag::P120 => write!(f, "P120")?,
            SphericalTag::D { m, n } => write!(f, "D:{m},{n}")?,
            SphericalTag::PPrime(m) => write!(f, "Pp:{m}")?,
        }
        if self.coprime_factor > 1 {
            write!(f, "xZ:{}", self.coprime_factor)?;
        }
        Ok(())
    }
}

/// Presentation of a spherical space-form group in the catalog form.
///
/// Chains of equalities `a = b = c` become the relators `a b^-1` and
/// `a c^-1`. A coprime cyclic factor adds a central generator of that order.
pub fn spherical_presentation(kind: &SphericalKind) -> Result<Presentation> {
    kind.validate()?;
    let x = Word::generator(1);
    let y = Word::generator(2);
    let xy = x.concat(&y);
    let x2 = x.pow(2);
    let (mut names, mut rels): (Vec<&str>, Vec<Word>) = match kind.tag {
        SphericalTag::Trivial => (vec!["x"], vec![x.clone()]),
        SphericalTag::Cyclic(p) => (vec!["x"], vec![x.pow(p as i64)]),
        SphericalTag::Q(n) => (
            vec!["x", "y"],
            vec![x2.concat(&xy.pow(-2)), x2.concat(&y.pow(-2 * n as i64))],
        ),
        SphericalTag::P48 => (
            vec!["x", "y"],
            vec![x2.concat(&xy.pow(-3)), x2.concat(&y.pow(-4)), x.pow(4)],
        ),
        SphericalTag::P120 => (
            vec!["x", "y"],
            vec![x2.concat(&xy.pow(-3)), x2.concat(&y.pow(-5)), x.pow(4)],
        ),
        SphericalTag::D { m, n } => (
            vec!["x", "y"],
            vec![
                x.pow(1i64 << m),
                y.pow(2 * n as i64 + 1),
                Word::new([1, 2, -1, 2]),
            ],
        ),
        SphericalTag::PPrime(m) => {
            let z = Word::generator(3);
            (
                vec!["x", "y", "z"],
                vec![
                    x2.concat(&xy.pow(-2)),
                    x2.concat(&y.pow(-2)),
                    Word::new([3, 1, -3, -2]),
                    Word::new([3, 2, -3]).concat(&xy.inverse()),
                    z.pow(3i64.pow(m)),
                ],
            )
        }
    };
    let q = kind.coprime_factor;
    if q > 1 {
        let base_gens = names.len();
        names.push(if names.contains(&"z") { "w" } else { "z" });
        let c = Word::generator(base_gens + 1);
        rels.push(c.pow(q as i64));
        for g in 1..=base_gens {
            rels.push(Word::commutator(&Word::generator(g), &c));
        }
    }
    Presentation::new(names.into_iter().map(String::from).collect(), rels)
}

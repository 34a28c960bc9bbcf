//! ADE root systems and Weyl-word combinatorics.
//!
//! Roots are integer coordinate vectors over the simple roots, vertices are
//! numbered 1..n following Bourbaki:
//!
//! * `A_n`: the path `1 - 2 - ... - n`;
//! * `D_n`: the path `1 - ... - (n-2)` with both `n-1` and `n` attached to
//!   `n-2`;
//! * `E_n` (n = 6, 7, 8): the path `1 - 3 - 4 - 5 - 6 [- 7 [- 8]]` with `2`
//!   attached to `4`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Root = Vec<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TypeLetter {
    A,
    D,
    E,
}

impl fmt::Display for TypeLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeLetter::A => write!(f, "A"),
            TypeLetter::D => write!(f, "D"),
            TypeLetter::E => write!(f, "E"),
        }
    }
}

impl FromStr for TypeLetter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(TypeLetter::A),
            "D" | "d" => Ok(TypeLetter::D),
            "E" | "e" => Ok(TypeLetter::E),
            other => Err(Error::InvalidRootSystem(format!("unknown type `{other}`"))),
        }
    }
}

/// Parses `"A3"`, `"D4"`, `"E6"` into `(letter, rank)`.
pub fn parse_type(s: &str) -> Result<(TypeLetter, usize)> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::InvalidRootSystem("empty type".into()));
    }
    let letter: TypeLetter = s[..1].parse()?;
    let rank: usize = s[1..]
        .parse()
        .map_err(|_| Error::InvalidRootSystem(format!("bad rank in `{s}`")))?;
    Ok((letter, rank))
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub letter: TypeLetter,
    pub rank: usize,
    cartan: Vec<i64>,
    edges: Vec<(usize, usize)>,
    pos_roots: Vec<Root>,
    pos_index: BTreeMap<Root, usize>,
}

impl RootSystem {
    pub fn build(letter: TypeLetter, rank: usize) -> Result<RootSystem> {
        let edges = dynkin_edges(letter, rank)?;
        let n = rank;
        let mut cartan = vec![0i64; n * n];
        for i in 0..n {
            cartan[i * n + i] = 2;
        }
        for &(a, b) in &edges {
            cartan[(a - 1) * n + (b - 1)] = -1;
            cartan[(b - 1) * n + (a - 1)] = -1;
        }
        let mut rs = RootSystem {
            letter,
            rank,
            cartan,
            edges,
            pos_roots: Vec::new(),
            pos_index: BTreeMap::new(),
        };
        rs.generate_roots();
        let m = rs.pos_roots.len();
        let expected = match letter {
            TypeLetter::A => rank * (rank + 1) / 2,
            TypeLetter::D => rank * (rank - 1),
            TypeLetter::E => match rank {
                6 => 36,
                7 => 63,
                8 => 120,
                _ => unreachable!(),
            },
        };
        if m != expected {
            return Err(Error::InvalidRootSystem(format!(
                "closure produced {m} positive roots, expected {expected}"
            )));
        }
        Ok(rs)
    }

    fn generate_roots(&mut self) {
        let n = self.rank;
        let mut seen: BTreeSet<Root> = BTreeSet::new();
        let mut queue: Vec<Root> = Vec::new();
        for i in 0..n {
            let mut v = vec![0i64; n];
            v[i] = 1;
            seen.insert(v.clone());
            queue.push(v);
        }
        while let Some(r) = queue.pop() {
            for i in 1..=n {
                let im = self.reflect(i, &r);
                if seen.insert(im.clone()) {
                    queue.push(im);
                }
            }
        }
        let mut pos: Vec<Root> = seen
            .into_iter()
            .filter(|r| r.iter().all(|&c| c >= 0))
            .collect();
        // Canonical order: height ascending, then lexicographically
        // descending, so the simple roots take positions 1..n in vertex
        // order.
        pos.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        for (i, r) in pos.iter().enumerate() {
            self.pos_index.insert(r.clone(), i);
        }
        self.pos_roots = pos;
    }

    pub fn n(&self) -> usize {
        self.rank
    }

    /// Number of positive roots.
    pub fn m(&self) -> usize {
        self.pos_roots.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Cartan entry `a_ij` for 1-based vertex indices.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[(i - 1) * self.rank + (j - 1)]
    }

    /// Symmetric pairing of two lattice vectors.
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.rank;
        let mut acc = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                acc += x[i] * self.cartan[i * n + j] * y[j];
            }
        }
        acc
    }

    pub fn simple(&self, i: usize) -> Root {
        let mut v = vec![0i64; self.rank];
        v[i - 1] = 1;
        v
    }

    /// Simple reflection `s_i` applied to a lattice vector.
    pub fn reflect(&self, i: usize, x: &[i64]) -> Root {
        let c = self.pairing(&self.simple(i), x);
        let mut out = x.to_vec();
        out[i - 1] -= c;
        out
    }

    pub fn height(&self, x: &[i64]) -> i64 {
        x.iter().sum()
    }

    pub fn is_positive_root(&self, x: &[i64]) -> bool {
        self.pos_index.contains_key(x)
    }

    pub fn is_root(&self, x: &[i64]) -> bool {
        if self.pos_index.contains_key(x) {
            return true;
        }
        let neg: Root = x.iter().map(|&c| -c).collect();
        self.pos_index.contains_key(&neg)
    }

    /// Positive roots in canonical order.
    pub fn pos_roots(&self) -> &[Root] {
        &self.pos_roots
    }

    /// 0-based canonical index of a positive root.
    pub fn pos_root_index(&self, x: &[i64]) -> Option<usize> {
        self.pos_index.get(x).copied()
    }

    pub fn negate(&self, x: &[i64]) -> Root {
        x.iter().map(|&c| -c).collect()
    }
}

fn dynkin_edges(letter: TypeLetter, rank: usize) -> Result<Vec<(usize, usize)>> {
    match letter {
        TypeLetter::A => {
            if rank < 1 {
                return Err(Error::InvalidRootSystem("A_n needs n >= 1".into()));
            }
            Ok((1..rank).map(|i| (i, i + 1)).collect())
        }
        TypeLetter::D => {
            if rank < 4 {
                return Err(Error::InvalidRootSystem("D_n needs n >= 4".into()));
            }
            let mut e: Vec<(usize, usize)> = (1..rank - 1).map(|i| (i, i + 1)).collect();
            e.push((rank - 2, rank));
            Ok(e)
        }
        TypeLetter::E => {
            if !(6..=8).contains(&rank) {
                return Err(Error::InvalidRootSystem("E_n needs n in {6,7,8}".into()));
            }
            let mut e = vec![(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)];
            if rank >= 7 {
                e.push((6, 7));
            }
            if rank == 8 {
                e.push((7, 8));
            }
            Ok(e)
        }
    }
}

/// A word in the simple-reflection alphabet, letters 1..n.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parse(s: &str, rank: usize) -> Result<Word> {
        let mut letters = Vec::new();
        let mut col = 1usize;
        for piece in s.split(',') {
            let t = piece.trim();
            let v: usize = t.parse().map_err(|_| Error::Parse {
                line: 1,
                col,
                msg: format!("bad vertex `{t}`"),
            })?;
            if v == 0 || v > rank {
                return Err(Error::Parse {
                    line: 1,
                    col,
                    msg: format!("vertex {v} out of range 1..{rank}"),
                });
            }
            letters.push(v);
            col += piece.len() + 1;
        }
        Ok(Word(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A Weyl group element stored by the images of the simple roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElt {
    images: Vec<Root>,
}

impl WeylElt {
    pub fn identity(rs: &RootSystem) -> WeylElt {
        WeylElt {
            images: (1..=rs.n()).map(|i| rs.simple(i)).collect(),
        }
    }

    pub fn apply(&self, x: &[i64]) -> Root {
        let n = self.images[0].len();
        let mut out = vec![0i64; n];
        for (i, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for j in 0..n {
                out[j] += c * self.images[i][j];
            }
        }
        out
    }

    /// `self * s_i` (apply `s_i` first).
    pub fn right_mul_simple(&self, rs: &RootSystem, i: usize) -> WeylElt {
        let wi = self.apply(&rs.simple(i));
        let images = (0..rs.n())
            .map(|j| {
                let a = rs.cartan(i, j + 1);
                let mut im = self.images[j].clone();
                for (k, v) in im.iter_mut().enumerate() {
                    *v -= a * wi[k];
                }
                im
            })
            .collect();
        WeylElt { images }
    }

    pub fn compose(&self, other: &WeylElt) -> WeylElt {
        WeylElt {
            images: other.images.iter().map(|im| self.apply(im)).collect(),
        }
    }

    pub fn from_word(rs: &RootSystem, w: &Word) -> WeylElt {
        let mut e = WeylElt::identity(rs);
        for &i in &w.0 {
            e = e.right_mul_simple(rs, i);
        }
        e
    }

    pub fn is_identity(&self, rs: &RootSystem) -> bool {
        (1..=rs.n()).all(|i| self.images[i - 1] == rs.simple(i))
    }

    /// Length as the number of positive roots sent negative.
    pub fn length(&self, rs: &RootSystem) -> usize {
        rs.pos_roots()
            .iter()
            .filter(|r| rs.height(&self.apply(r)) < 0)
            .count()
    }

    /// `true` when `l(w s_i) > l(w)`.
    pub fn ascends_right(&self, rs: &RootSystem, i: usize) -> bool {
        rs.height(&self.apply(&rs.simple(i))) > 0
    }

    pub fn images(&self) -> &[Root] {
        &self.images
    }
}

/// The longest element, built by greedy right ascents.
pub fn longest_element(rs: &RootSystem) -> WeylElt {
    let mut w = WeylElt::identity(rs);
    loop {
        match (1..=rs.n()).find(|&i| w.ascends_right(rs, i)) {
            Some(i) => w = w.right_mul_simple(rs, i),
            None => return w,
        }
    }
}

#[derive(Debug, Clone)]
pub struct WordAnalysis {
    pub is_reduced: bool,
    /// `beta_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k})`, in word order.
    pub beta_roots: Vec<Root>,
    /// Product of the whole word.
    pub weyl: WeylElt,
}

pub fn word_analysis(rs: &RootSystem, w: &Word) -> WordAnalysis {
    let mut acc = WeylElt::identity(rs);
    let mut betas = Vec::with_capacity(w.len());
    for &i in &w.0 {
        betas.push(acc.apply(&rs.simple(i)));
        acc = acc.right_mul_simple(rs, i);
    }
    let is_reduced = betas.iter().all(|b| rs.height(b) > 0);
    WordAnalysis {
        is_reduced,
        beta_roots: betas,
        weyl: acc,
    }
}

pub fn is_reduced(rs: &RootSystem, w: &Word) -> bool {
    word_analysis(rs, w).is_reduced
}

#[derive(Debug, Clone)]
pub struct DemazureCompletion {
    /// Reduced word for the 0-Hecke product of the input letters.
    pub demazure: Word,
    /// Reduced word `v` with `v * demazure = w0` and the concatenation
    /// reduced of maximal length.
    pub prefix_to_w0: Word,
}

/// 0-Hecke product of the letters plus a completion to the longest element.
pub fn demazure_and_complete(rs: &RootSystem, w: &Word) -> DemazureCompletion {
    let mut acc = WeylElt::identity(rs);
    let mut dword = Vec::new();
    for &i in &w.0 {
        if acc.ascends_right(rs, i) {
            acc = acc.right_mul_simple(rs, i);
            dword.push(i);
        }
    }
    // prefix = w0 * d^{-1}; work with its inverse u = d * w0 so that left
    // descents of the prefix become sign tests on u, and each extracted
    // letter is a right multiplication.
    let w0 = longest_element(rs);
    let mut u = WeylElt::from_word(rs, &Word(dword.clone())).compose(&w0);
    let mut prefix = Vec::new();
    loop {
        match (1..=rs.n()).find(|&i| rs.height(&u.apply(&rs.simple(i))) < 0) {
            Some(i) => {
                prefix.push(i);
                u = u.right_mul_simple(rs, i);
            }
            None => break,
        }
    }
    debug_assert!(u.is_identity(rs));
    DemazureCompletion {
        demazure: Word(dword),
        prefix_to_w0: Word(prefix),
    }
}

/// All reduced words of `target`; exponential, meant for small ranks.
pub fn reduced_words(rs: &RootSystem, target: &WeylElt) -> Vec<Word> {
    fn go(rs: &RootSystem, t: &WeylElt, out: &mut Vec<Word>, acc: &mut Vec<usize>) {
        if t.is_identity(rs) {
            let mut w = acc.clone();
            w.reverse();
            out.push(Word(w));
            return;
        }
        for i in 1..=rs.n() {
            if rs.height(&t.apply(&rs.simple(i))) < 0 {
                acc.push(i);
                go(rs, &t.right_mul_simple(rs, i), out, acc);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(rs, target, &mut out, &mut Vec::new());
    out
}

//! Dynkin quivers: orientations, Euler form, admissible vertex orders, the
//! translate-orbit ordering of indecomposables and leftmost words.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rootsys::{parse_type, word_analysis, Root, RootSystem, Word};

#[derive(Debug, Clone)]
pub struct Quiver {
    rs: Arc<RootSystem>,
    /// Oriented edges `(i, j)` meaning `i -> j`, sorted.
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(rs: Arc<RootSystem>, mut arrows: Vec<(usize, usize)>) -> Result<Quiver> {
        arrows.sort_unstable();
        let mut undirected: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &(a, b) in &arrows {
            if a == 0 || b == 0 || a > rs.n() || b > rs.n() {
                return Err(Error::Domain(format!("arrow {a}>{b} out of range")));
            }
            let key = (a.min(b), a.max(b));
            if !undirected.insert(key) {
                return Err(Error::Domain(format!(
                    "edge {}-{} oriented more than once",
                    key.0, key.1
                )));
            }
        }
        let dynkin: BTreeSet<(usize, usize)> = rs.edges().iter().copied().collect();
        if undirected != dynkin {
            return Err(Error::Domain(
                "orientation does not cover the Dynkin graph".into(),
            ));
        }
        Ok(Quiver { rs, arrows })
    }

    /// Natural orientation `i -> j` for each Dynkin edge with `i < j`.
    pub fn natural(rs: Arc<RootSystem>) -> Quiver {
        let arrows = rs.edges().to_vec();
        Quiver::new(rs, arrows).expect("dynkin edges are valid")
    }

    /// Parses `"A3: 1>2, 2>3"`; whitespace-insensitive.
    pub fn parse(spec: &str) -> Result<Quiver> {
        let colon = spec.find(':').ok_or(Error::Parse {
            line: 1,
            col: spec.len().max(1),
            msg: "expected `:` after the type".into(),
        })?;
        let (letter, rank) = parse_type(&spec[..colon]).map_err(|e| Error::Parse {
            line: 1,
            col: 1,
            msg: e.to_string(),
        })?;
        let rs = Arc::new(RootSystem::build(letter, rank)?);
        let mut arrows = Vec::new();
        let body = &spec[colon + 1..];
        let mut col = colon + 2;
        for piece in body.split(',') {
            let t: String = piece.chars().filter(|c| !c.is_whitespace()).collect();
            if t.is_empty() {
                col += piece.len() + 1;
                continue;
            }
            let gt = t.find('>').ok_or(Error::Parse {
                line: 1,
                col,
                msg: format!("expected `i>j`, found `{t}`"),
            })?;
            let a: usize = t[..gt].parse().map_err(|_| Error::Parse {
                line: 1,
                col,
                msg: format!("bad vertex `{}`", &t[..gt]),
            })?;
            let b: usize = t[gt + 1..].parse().map_err(|_| Error::Parse {
                line: 1,
                col,
                msg: format!("bad vertex `{}`", &t[gt + 1..]),
            })?;
            arrows.push((a, b));
            col += piece.len() + 1;
        }
        Quiver::new(rs, arrows)
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn n(&self) -> usize {
        self.rs.n()
    }

    /// Euler form entry `<alpha_i, alpha_j> = delta_ij - #(i -> j)`.
    pub fn euler(&self, i: usize, j: usize) -> i64 {
        let diag = if i == j { 1 } else { 0 };
        let arrow = if self.arrows.contains(&(i, j)) { 1 } else { 0 };
        diag - arrow
    }

    /// Euler form on lattice vectors.
    pub fn euler_form(&self, d: &[i64], e: &[i64]) -> i64 {
        let n = self.n();
        let mut acc = 0;
        for i in 0..n {
            if d[i] == 0 {
                continue;
            }
            for j in 0..n {
                acc += d[i] * self.euler(i + 1, j + 1) * e[j];
            }
        }
        acc
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(_, b)| b != v)
    }

    /// Reverses all arrows at a vertex.
    pub fn sigma(&self, v: usize) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|&(a, b)| if a == v || b == v { (b, a) } else { (a, b) })
            .collect();
        Quiver::new(self.rs.clone(), arrows).expect("sigma preserves the graph")
    }

    /// Topological order of the arrow DAG; ties broken by smallest label.
    pub fn admissible_order(&self) -> Vec<usize> {
        let n = self.n();
        let mut indeg = vec![0usize; n + 1];
        for &(_, b) in &self.arrows {
            indeg[b] += 1;
        }
        let mut ready: BTreeSet<usize> = (1..=n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(&v) = ready.iter().next() {
            ready.remove(&v);
            order.push(v);
            for &(a, b) in &self.arrows {
                if a == v {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        ready.insert(b);
                    }
                }
            }
        }
        order
    }

    /// Injective dimension vector at vertex `v`: support = vertices with a
    /// directed path into `v`.
    pub fn injective_dim(&self, v: usize) -> Root {
        let n = self.n();
        let mut dim = vec![0i64; n];
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            if dim[u - 1] == 1 {
                continue;
            }
            dim[u - 1] = 1;
            for &(a, b) in &self.arrows {
                if b == u {
                    stack.push(a);
                }
            }
        }
        dim
    }

    /// Coxeter transformation `-E^{-1} E^T` on dimension vectors.
    pub fn coxeter_matrix(&self) -> Vec<i64> {
        let n = self.n();
        // E = I - A with A the arrow adjacency; A is nilpotent, so
        // E^{-1} = I + A + A^2 + ...
        let mut adj = vec![0i64; n * n];
        for &(a, b) in &self.arrows {
            adj[(a - 1) * n + (b - 1)] = 1;
        }
        let mut einv = vec![0i64; n * n];
        for i in 0..n {
            einv[i * n + i] = 1;
        }
        let mut power = einv.clone();
        for _ in 0..n {
            let mut next = vec![0i64; n * n];
            for i in 0..n {
                for k in 0..n {
                    if power[i * n + k] == 0 {
                        continue;
                    }
                    for j in 0..n {
                        next[i * n + j] += power[i * n + k] * adj[k * n + j];
                    }
                }
            }
            if next.iter().all(|&x| x == 0) {
                break;
            }
            for i in 0..n * n {
                einv[i] += next[i];
            }
            power = next;
        }
        let euler_t = |i: usize, j: usize| self.euler(j + 1, i + 1);
        let mut cox = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for k in 0..n {
                    acc += einv[i * n + k] * euler_t(k, j);
                }
                cox[i * n + j] = -acc;
            }
        }
        cox
    }

    pub fn coxeter_apply(&self, cox: &[i64], d: &[i64]) -> Root {
        let n = self.n();
        (0..n)
            .map(|i| (0..n).map(|j| cox[i * n + j] * d[j]).sum())
            .collect()
    }

    /// Translate-orbit ordering of the indecomposables, listing injectives
    /// along `order` and applying the Coxeter transformation while the
    /// vector stays a positive root.
    pub fn indec_ordering_with(&self, order: &[usize]) -> Result<IndecOrdering> {
        let n = self.n();
        if order.len() != n {
            return Err(Error::Domain("order must list every vertex once".into()));
        }
        // Validate admissibility: each vertex a source after reflecting the
        // earlier ones.
        let mut q = self.clone();
        for &v in order {
            if !q.is_source(v) {
                return Err(Error::Domain(format!(
                    "vertex {v} is not a source at its position"
                )));
            }
            q = q.sigma(v);
        }
        let cox = self.coxeter_matrix();
        let mut orbits: Vec<Vec<Root>> = Vec::new();
        for &v in order {
            let mut orbit = Vec::new();
            let mut d = self.injective_dim(v);
            while self.rs.is_positive_root(&d) {
                orbit.push(d.clone());
                d = self.coxeter_apply(&cox, &d);
            }
            orbits.push(orbit);
        }
        let mut items = Vec::new();
        let max_power = orbits.iter().map(|o| o.len()).max().unwrap_or(0);
        for power in 0..max_power {
            for (slot, &v) in order.iter().enumerate() {
                if let Some(root) = orbits[slot].get(power) {
                    items.push(OrbitItem {
                        vertex: v,
                        power,
                        root: root.clone(),
                    });
                }
            }
        }
        if items.len() != self.rs.m() {
            return Err(Error::ConventionFailure(format!(
                "orbit ordering produced {} items, expected {}",
                items.len(),
                self.rs.m()
            )));
        }
        let word = Word(items.iter().map(|it| it.vertex).collect());
        let analysis = word_analysis(&self.rs, &word);
        if !analysis.is_reduced {
            return Err(Error::ConventionFailure("orbit word is not reduced".into()));
        }
        for (item, beta) in items.iter().zip(&analysis.beta_roots) {
            if item.root != *beta {
                return Err(Error::ConventionFailure(format!(
                    "dimension vector {:?} disagrees with beta root {:?}",
                    item.root, beta
                )));
            }
        }
        Ok(IndecOrdering { items, word })
    }

    pub fn indec_ordering(&self) -> Result<IndecOrdering> {
        self.indec_ordering_with(&self.admissible_order())
    }

    pub fn leftmost_word(&self) -> Result<Word> {
        Ok(self.indec_ordering()?.word)
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows: Vec<String> = self
            .arrows
            .iter()
            .map(|&(a, b)| format!("{a}>{b}"))
            .collect();
        write!(
            f,
            "{}{}: {}",
            self.rs.letter,
            self.rs.rank,
            arrows.join(", ")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitItem {
    pub vertex: usize,
    /// Number of earlier occurrences of the same vertex.
    pub power: usize,
    pub root: Root,
}

#[derive(Debug, Clone)]
pub struct IndecOrdering {
    pub items: Vec<OrbitItem>,
    pub word: Word,
}

/// Every orientation of the Dynkin graph, for exhaustive small-rank tests.
pub fn all_orientations(rs: &Arc<RootSystem>) -> Vec<Quiver> {
    let edges = rs.edges().to_vec();
    let mut out = Vec::new();
    for mask in 0..(1u32 << edges.len()) {
        let arrows: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .map(
                |(k, &(a, b))| {
                    if mask >> k & 1 == 0 {
                        (a, b)
                    } else {
                        (b, a)
                    }
                },
            )
            .collect();
        out.push(Quiver::new(rs.clone(), arrows).unwrap());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::TypeLetter;

    fn arc(letter: TypeLetter, rank: usize) -> Arc<RootSystem> {
        Arc::new(RootSystem::build(letter, rank).unwrap())
    }

    #[test]
    fn parse_specs() {
        let q = Quiver::parse("A3: 1>2, 2>3").unwrap();
        assert_eq!(q.arrows(), &[(1, 2), (2, 3)]);
        let q2 = Quiver::parse("A2:1>2").unwrap();
        assert_eq!(q2.arrows(), &[(1, 2)]);
        // Orientation freedom: vertex 2 as a sink.
        assert!(Quiver::parse("A3: 1>2, 3>2").is_ok());
        // Missing or doubled edges are rejected.
        assert!(Quiver::parse("A3: 1>2").is_err());
        assert!(Quiver::parse("A3: 1>2, 2>1").is_err());
        assert!(Quiver::parse("A3 1>2").is_err());
    }

    #[test]
    fn euler_plus_transpose_is_cartan() {
        for q in all_orientations(&arc(TypeLetter::D, 4)) {
            let rs = q.system().clone();
            for a in rs.pos_roots() {
                for b in rs.pos_roots() {
                    assert_eq!(q.euler_form(a, b) + q.euler_form(b, a), rs.pairing(a, b));
                }
            }
        }
    }

    #[test]
    fn admissible_orders() {
        let q = Quiver::parse("A3: 1>2, 2>3").unwrap();
        assert_eq!(q.admissible_order(), vec![1, 2, 3]);
        let q2 = Quiver::parse("A3: 2>1, 2>3").unwrap();
        assert_eq!(q2.admissible_order(), vec![2, 1, 3]);
        // Applying sigma along the order returns the quiver.
        for q in all_orientations(&arc(TypeLetter::A, 3)) {
            let mut cur = q.clone();
            for v in q.admissible_order() {
                assert!(cur.is_source(v));
                cur = cur.sigma(v);
            }
            assert_eq!(cur.arrows(), q.arrows());
        }
    }

    #[test]
    fn sigma_involution() {
        let q = Quiver::parse("A3: 1>2, 2>3").unwrap();
        let s1 = q.sigma(1);
        assert_eq!(s1.arrows(), &[(2, 1), (2, 3)]);
        for q in all_orientations(&arc(TypeLetter::D, 4)) {
            for v in 1..=4 {
                assert_eq!(q.sigma(v).sigma(v).arrows(), q.arrows());
            }
        }
    }

    #[test]
    fn leftmost_word_linear_a3() {
        let q = Quiver::parse("A3: 1>2, 2>3").unwrap();
        let ord = q.indec_ordering().unwrap();
        assert_eq!(ord.word, Word(vec![1, 2, 3, 1, 2, 1]));
        let roots: Vec<Root> = ord.items.iter().map(|it| it.root.clone()).collect();
        assert_eq!(
            roots,
            vec![
                vec![1, 0, 0],
                vec![1, 1, 0],
                vec![1, 1, 1],
                vec![0, 1, 0],
                vec![0, 1, 1],
                vec![0, 0, 1],
            ]
        );
        let powers: Vec<usize> = ord.items.iter().map(|it| it.power).collect();
        assert_eq!(powers, vec![0, 0, 0, 1, 1, 2]);
    }

    #[test]
    fn leftmost_word_small() {
        let q = Quiver::natural(arc(TypeLetter::A, 1));
        assert_eq!(q.leftmost_word().unwrap(), Word(vec![1]));
        let q2 = Quiver::parse("A2: 1>2").unwrap();
        let ord = q2.indec_ordering().unwrap();
        assert_eq!(ord.word, Word(vec![1, 2, 1]));
        let roots: Vec<Root> = ord.items.iter().map(|it| it.root.clone()).collect();
        assert_eq!(roots, vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
    }

    #[test]
    fn every_orientation_gives_a_maximal_reduced_word() {
        for (letter, rank) in [(TypeLetter::A, 2), (TypeLetter::A, 3), (TypeLetter::D, 4)] {
            let rs = arc(letter, rank);
            for q in all_orientations(&rs) {
                let ord = q.indec_ordering().unwrap();
                assert_eq!(ord.word.len(), rs.m());
                let an = word_analysis(&rs, &ord.word);
                assert!(an.is_reduced);
                for (item, beta) in ord.items.iter().zip(&an.beta_roots) {
                    assert_eq!(item.root, *beta);
                }
            }
        }
    }

    #[test]
    fn source_reflection_shifts_ordering() {
        // For a source v of Q, the ordering of sigma_v(Q) taken along the
        // rotated admissible order is the s_v-shift of Q's ordering with the
        // first item (root alpha_v) cycling back in as a later item.
        for (letter, rank) in [(TypeLetter::A, 2), (TypeLetter::A, 3), (TypeLetter::D, 4)] {
            let rs = arc(letter, rank);
            for q in all_orientations(&rs) {
                let order = q.admissible_order();
                let v = order[0];
                let ord_q = q.indec_ordering_with(&order).unwrap();
                assert_eq!(ord_q.items[0].root, rs.simple(v));
                let mut rotated = order.clone();
                rotated.rotate_left(1);
                let qp = q.sigma(v);
                let ord_qp = qp.indec_ordering_with(&rotated).unwrap();
                // Transported sequence: s_v of items 2..m of Q's ordering.
                // None of these equals alpha_v, so the reappearing alpha_v
                // item in Q' is unambiguous.
                let transported: Vec<Root> = ord_q.items[1..]
                    .iter()
                    .map(|it| rs.reflect(v, &it.root))
                    .collect();
                assert!(!transported.contains(&rs.simple(v)));
                let pos = ord_qp
                    .items
                    .iter()
                    .position(|it| it.root == rs.simple(v))
                    .unwrap();
                let remaining: Vec<Root> = ord_qp
                    .items
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != pos)
                    .map(|(_, it)| it.root.clone())
                    .collect();
                assert_eq!(remaining, transported);
            }
        }
    }
}

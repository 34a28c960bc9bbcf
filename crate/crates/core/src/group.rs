//! The Chevalley group as exact rational matrices in the adjoint
//! representation: generators, the eta/omega calculus, Gauss decomposition,
//! unipotent normal forms and the collection algorithm.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::chevalley::ChevalleyAlgebra;
use crate::error::{Error, Result};
use crate::exact::{parse_rational, rat_int, rat_pow, Mat, Rational};
use crate::rootsys::Root;

/// Generator token; `n_i` expands to its three `E` factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenToken {
    E(Root, Rational),
    /// Torus generator for the subgroup attached to `root`.
    H(Root, Rational),
}

const WORD_CAP: usize = 8192;

#[derive(Debug, Clone)]
pub struct GroupElement {
    alg: Arc<ChevalleyAlgebra>,
    mat: Mat,
    word: Option<Vec<GenToken>>,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}

impl Eq for GroupElement {}

impl GroupElement {
    pub fn identity(alg: &Arc<ChevalleyAlgebra>) -> GroupElement {
        GroupElement {
            alg: alg.clone(),
            mat: Mat::identity(alg.dim()),
            word: Some(Vec::new()),
        }
    }

    pub fn from_mat(alg: &Arc<ChevalleyAlgebra>, mat: Mat) -> GroupElement {
        GroupElement {
            alg: alg.clone(),
            mat,
            word: None,
        }
    }

    pub fn alg(&self) -> &Arc<ChevalleyAlgebra> {
        &self.alg
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn word(&self) -> Option<&[GenToken]> {
        self.word.as_deref()
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        debug_assert!(Arc::ptr_eq(&self.alg, &other.alg));
        let word = match (&self.word, &other.word) {
            (Some(a), Some(b)) if a.len() + b.len() <= WORD_CAP => {
                let mut w = a.clone();
                w.extend(b.iter().cloned());
                Some(w)
            }
            _ => None,
        };
        GroupElement {
            alg: self.alg.clone(),
            mat: self.mat.mul(&other.mat),
            word,
        }
    }

    pub fn inv(&self) -> GroupElement {
        if let Some(word) = &self.word {
            let inv_word: Vec<GenToken> = word
                .iter()
                .rev()
                .map(|t| match t {
                    GenToken::E(r, t) => GenToken::E(r.clone(), -t.clone()),
                    GenToken::H(r, t) => GenToken::H(r.clone(), t.recip()),
                })
                .collect();
            return from_tokens(&self.alg, &inv_word).expect("inverse tokens are valid");
        }
        GroupElement {
            alg: self.alg.clone(),
            mat: self.mat.inverse().expect("group elements are invertible"),
            word: None,
        }
    }
}

/// `E_[X](t) = exp(t ad e_root)`.
pub fn gen_e(alg: &Arc<ChevalleyAlgebra>, root: &[i64], t: &Rational) -> Result<GroupElement> {
    if !alg.rs().is_root(root) {
        return Err(Error::NotARoot(format!("{root:?}")));
    }
    Ok(GroupElement {
        alg: alg.clone(),
        mat: alg.exp_ad(root, t),
        word: Some(vec![GenToken::E(root.to_vec(), t.clone())]),
    })
}

/// `h_[X](t)` for `X` with root `rho`; `t` must be nonzero.
pub fn gen_h_root(alg: &Arc<ChevalleyAlgebra>, rho: &[i64], t: &Rational) -> Result<GroupElement> {
    if !alg.rs().is_root(rho) {
        return Err(Error::NotARoot(format!("{rho:?}")));
    }
    Ok(GroupElement {
        alg: alg.clone(),
        mat: alg.h_root(rho, t)?,
        word: Some(vec![GenToken::H(rho.to_vec(), t.clone())]),
    })
}

pub fn gen_h(alg: &Arc<ChevalleyAlgebra>, i: usize, t: &Rational) -> Result<GroupElement> {
    gen_h_root(alg, &alg.rs().simple(i), t)
}

/// `n_[X](t) = E_[X](t) E_[TX](1/t) E_[X](t)`.
pub fn gen_n_root(alg: &Arc<ChevalleyAlgebra>, rho: &[i64], t: &Rational) -> Result<GroupElement> {
    if t.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let neg = alg.rs().negate(rho);
    Ok(gen_e(alg, rho, t)?
        .mul(&gen_e(alg, &neg, &t.recip())?)
        .mul(&gen_e(alg, rho, t)?))
}

pub fn gen_n(alg: &Arc<ChevalleyAlgebra>, i: usize, t: &Rational) -> Result<GroupElement> {
    gen_n_root(alg, &alg.rs().simple(i), t)
}

/// `true` when `g` stabilizes the Borel subalgebra of the given sign.
pub fn in_borel(g: &GroupElement, sign: i64) -> bool {
    let alg = &g.alg;
    let nn = alg.dim();
    for j in 0..nn {
        let hj = alg.slot_height(j);
        let in_span = if sign > 0 { hj >= 0 } else { hj <= 0 };
        if !in_span {
            continue;
        }
        for i in 0..nn {
            let hi = alg.slot_height(i);
            let outside = if sign > 0 { hi < 0 } else { hi > 0 };
            if outside && !g.mat.entry_is_zero(i, j) {
                return false;
            }
        }
    }
    true
}

/// Strips a unipotent element into canonical height-ascending coordinates:
/// `u = prod gen_e(sign*gamma, t_gamma)` over the positive roots in
/// canonical order. Fails when the residual does not vanish.
pub fn peel_unipotent(alg: &Arc<ChevalleyAlgebra>, mat: &Mat, sign: i64) -> Result<Vec<Rational>> {
    let rs = alg.rs();
    let m = rs.m();
    let mut coords = vec![Rational::zero(); m];
    let mut residual = mat.clone();
    let max_height = rs.height(rs.pos_roots().last().expect("nonempty"));
    for d in 1..=max_height {
        let level: Vec<usize> = (0..m)
            .filter(|&k| rs.height(&rs.pos_roots()[k]) == d)
            .collect();
        let mut strip = Mat::identity(alg.dim());
        for &k in &level {
            let gamma = &rs.pos_roots()[k];
            let signed: Root = if sign > 0 {
                gamma.clone()
            } else {
                rs.negate(gamma)
            };
            let j = (1..=rs.n())
                .find(|&v| rs.pairing(&rs.simple(v), gamma) != 0)
                .expect("every root pairs with some simple");
            let row = alg.basis_index(&signed).expect("root indexed");
            let col = alg.cartan_index(j);
            let c = residual.entry(row, col);
            let t = -c / rat_int(rs.pairing(&rs.simple(j), &signed));
            coords[k] = t;
        }
        // residual <- F_d^{-1} residual
        for &k in level.iter().rev() {
            if coords[k].is_zero() {
                continue;
            }
            let gamma = &rs.pos_roots()[k];
            let signed: Root = if sign > 0 {
                gamma.clone()
            } else {
                rs.negate(gamma)
            };
            strip = strip.mul(&alg.exp_ad(&signed, &-coords[k].clone()));
        }
        residual = strip.mul(&residual);
    }
    if !residual.is_identity() {
        return Err(Error::NotUnipotent);
    }
    Ok(coords)
}

/// Collection: rewrites a product of positive-root generators into the
/// target root order, merging equal roots and inserting commutator factors
/// `E_{g+d}(c s t)` on swaps. The target must list every positive root
/// once.
///
/// Runs in two phases. First the factors are collected into the canonical
/// height-ascending order; inserted commutators have strictly larger height
/// than the swapped pair, so they always land in the not-yet-collected
/// region and this phase terminates. Then the canonical order is bubbled
/// into the target order one adjacent transposition at a time, with each
/// spawned commutator folded into its (unique) slot by a recursion whose
/// root heights strictly increase and are bounded by the highest root.
pub fn collect_reorder(
    alg: &ChevalleyAlgebra,
    factors: &[(Root, Rational)],
    order: &[Root],
) -> Result<Vec<(Root, Rational)>> {
    let rs = alg.rs();
    if order.len() != rs.m() {
        return Err(Error::Domain(
            "target order must cover all positive roots".into(),
        ));
    }
    let mut rank: std::collections::BTreeMap<Root, usize> = std::collections::BTreeMap::new();
    for (k, r) in order.iter().enumerate() {
        if !rs.is_positive_root(r) || rank.insert(r.clone(), k).is_some() {
            return Err(Error::Domain(
                "target order must be a permutation of the positive roots".into(),
            ));
        }
    }
    let mut list: Vec<(Root, Rational)> = Vec::new();
    for (r, t) in factors {
        if !rs.is_positive_root(r) {
            return Err(Error::Domain(format!("factor root {r:?} is not positive")));
        }
        if !t.is_zero() {
            list.push((r.clone(), t.clone()));
        }
    }
    // Phase 1: canonical height-ascending collection.
    let mut boundary = 0usize;
    for target in rs.pos_roots() {
        let mut placed = false;
        loop {
            let from = boundary + usize::from(placed);
            let Some(found) = (from..list.len()).find(|&k| list[k].0 == *target) else {
                break;
            };
            let mut idx = found;
            while idx > from {
                let (delta, t) = list[idx - 1].clone();
                let (gamma, s) = list[idx].clone();
                list[idx - 1] = (gamma, s.clone());
                list[idx] = (delta.clone(), t.clone());
                let sum: Root = delta
                    .iter()
                    .zip(target.iter())
                    .map(|(a, b)| a + b)
                    .collect();
                if rs.is_root(&sum) {
                    let c = alg.gamma_const(&delta, target)?;
                    let coef = rat_int(c) * &t * &s;
                    if !coef.is_zero() {
                        list.insert(idx + 1, (sum, coef));
                    }
                }
                idx -= 1;
            }
            if placed {
                let add = list.remove(from).1;
                list[boundary].1 += add;
            } else {
                placed = true;
            }
        }
        if placed {
            if list[boundary].1.is_zero() {
                list.remove(boundary);
            } else {
                boundary += 1;
            }
        }
    }
    // Phase 2: bubble into the target order on a full coordinate vector.
    let mut by_root: std::collections::BTreeMap<Root, Rational> = list.into_iter().collect();
    let mut full: Vec<(Root, Rational)> = rs
        .pos_roots()
        .iter()
        .map(|r| (r.clone(), by_root.remove(r).unwrap_or_else(Rational::zero)))
        .collect();
    for pos in 0..order.len() {
        let cur = full[pos..]
            .iter()
            .position(|(r, _)| r == &order[pos])
            .expect("full vector holds every root")
            + pos;
        for k in (pos..cur).rev() {
            // move the target factor one slot left across full[k]
            let (delta, t) = full[k].clone();
            let (gamma, s) = full[k + 1].clone();
            full[k] = (gamma.clone(), s.clone());
            full[k + 1] = (delta.clone(), t.clone());
            let sum: Root = delta.iter().zip(&gamma).map(|(a, b)| a + b).collect();
            if rs.is_root(&sum) {
                let c = alg.gamma_const(&delta, &gamma)?;
                let coef = rat_int(c) * &t * &s;
                fold_commutator(alg, &mut full, k + 2, sum, coef)?;
            }
        }
    }
    Ok(full.into_iter().filter(|(_, t)| !t.is_zero()).collect())
}

/// Folds a commutator factor `E_root(coef)` sitting between slots `at - 1`
/// and `at` into the slot holding `root`, commuting it across the factors
/// in between and recursing on the spawned commutators.
fn fold_commutator(
    alg: &ChevalleyAlgebra,
    full: &mut [(Root, Rational)],
    at: usize,
    root: Root,
    coef: Rational,
) -> Result<()> {
    if coef.is_zero() {
        return Ok(());
    }
    let rs = alg.rs();
    let q = full
        .iter()
        .position(|(r, _)| r == &root)
        .expect("full vector holds every root");
    if q >= at {
        // move right: C D = D C E_{C+D}
        for r in at..q {
            let (tau, u) = full[r].clone();
            let sum: Root = root.iter().zip(&tau).map(|(a, b)| a + b).collect();
            if rs.is_root(&sum) {
                let c = alg.gamma_const(&root, &tau)?;
                fold_commutator(alg, full, r + 1, sum, rat_int(c) * &coef * &u)?;
            }
        }
    } else {
        // move left: D C = C D E_{D+C}
        for r in (q + 1..at).rev() {
            let (tau, u) = full[r].clone();
            let sum: Root = tau.iter().zip(&root).map(|(a, b)| a + b).collect();
            if rs.is_root(&sum) {
                let c = alg.gamma_const(&tau, &root)?;
                fold_commutator(alg, full, r + 1, sum, rat_int(c) * &u * &coef)?;
            }
        }
    }
    full[q].1 += coef;
    Ok(())
}

/// Normal-form coordinates of an upper unipotent element along a root
/// order; includes zero coordinates so the list matches `order` slot by
/// slot.
pub fn nf_coords(u: &GroupElement, order: &[Root]) -> Result<Vec<(Root, Rational)>> {
    let alg = &u.alg;
    let rs = alg.rs();
    let canon = peel_unipotent(alg, &u.mat, 1)?;
    let factors: Vec<(Root, Rational)> = rs
        .pos_roots()
        .iter()
        .zip(&canon)
        .filter(|(_, t)| !t.is_zero())
        .map(|(r, t)| (r.clone(), t.clone()))
        .collect();
    let collected = collect_reorder(alg, &factors, order)?;
    let mut by_root: std::collections::BTreeMap<Root, Rational> = collected.into_iter().collect();
    let out: Vec<(Root, Rational)> = order
        .iter()
        .map(|r| (r.clone(), by_root.remove(r).unwrap_or_else(Rational::zero)))
        .collect();
    // reconstruction must reproduce u exactly
    let mut prod = Mat::identity(alg.dim());
    for (r, t) in &out {
        if !t.is_zero() {
            prod = prod.mul(&alg.exp_ad(r, t));
        }
    }
    if prod != u.mat {
        return Err(Error::NotUnipotent);
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct GaussDecomposition {
    /// Lower factor coordinates on negative roots, height descending (the
    /// canonical order of the underlying positive roots); zeros dropped.
    pub lower: Vec<(Root, Rational)>,
    pub h: Mat,
    pub upper: Vec<(Root, Rational)>,
}

/// Big-cell decomposition `g = u^- h u^+` by scalar LDU on the graded
/// matrix.
pub fn gauss_decompose(g: &GroupElement) -> Result<GaussDecomposition> {
    let alg = &g.alg;
    let rs = alg.rs();
    let nn = alg.dim();
    let mut w: Vec<Rational> = (0..nn * nn).map(|p| g.mat.entry(p / nn, p % nn)).collect();
    let mut lower = vec![Rational::zero(); nn * nn];
    for i in 0..nn {
        lower[i * nn + i] = Rational::one();
    }
    for k in 0..nn {
        if w[k * nn + k].is_zero() {
            return Err(Error::NotInBigCell);
        }
        let pivot = w[k * nn + k].clone();
        for i in k + 1..nn {
            if w[i * nn + k].is_zero() {
                continue;
            }
            let f = &w[i * nn + k] / &pivot;
            for j in k..nn {
                let sub = &w[k * nn + j] * &f;
                w[i * nn + j] -= sub;
            }
            lower[i * nn + k] = f;
        }
    }
    // w is now D*U with D = diag(pivots), U unit upper.
    let mut dvals = vec![Rational::zero(); nn];
    let mut upper = vec![Rational::zero(); nn * nn];
    for i in 0..nn {
        dvals[i] = w[i * nn + i].clone();
        for j in 0..nn {
            upper[i * nn + j] = &w[i * nn + j] / &dvals[i];
        }
    }
    // The torus factor must fix the Cartan block and act multiplicatively
    // on the root lines.
    for v in 1..=rs.n() {
        if !(dvals[alg.cartan_index(v)]).is_one() {
            return Err(Error::NotInBigCell);
        }
    }
    let chi = |root: &[i64]| -> Rational {
        let mut acc = Rational::one();
        for (i, &c) in root.iter().enumerate() {
            let base = dvals[alg.basis_index(&rs.simple(i + 1)).unwrap()].clone();
            acc *= rat_pow(&base, c);
        }
        acc
    };
    for r in rs.pos_roots() {
        for signed in [r.clone(), rs.negate(r)] {
            if dvals[alg.basis_index(&signed).unwrap()] != chi(&signed) {
                return Err(Error::NotInBigCell);
            }
        }
    }
    let lmat = Mat::from_rationals(nn, &lower);
    let umat = Mat::from_rationals(nn, &upper);
    let mut dmat = Mat::zero(nn);
    for (i, v) in dvals.iter().enumerate() {
        dmat.set_entry(i, i, v);
    }
    let lower_coords = peel_unipotent(alg, &lmat, -1).map_err(|_| Error::NotInBigCell)?;
    let upper_coords = peel_unipotent(alg, &umat, 1).map_err(|_| Error::NotInBigCell)?;
    if lmat.mul(&dmat).mul(&umat) != *g.mat() {
        return Err(Error::NotInBigCell);
    }
    let lower_list = rs
        .pos_roots()
        .iter()
        .zip(&lower_coords)
        .filter(|(_, t)| !t.is_zero())
        .map(|(r, t)| (rs.negate(r), t.clone()))
        .collect();
    let upper_list = rs
        .pos_roots()
        .iter()
        .zip(&upper_coords)
        .filter(|(_, t)| !t.is_zero())
        .map(|(r, t)| (r.clone(), t.clone()))
        .collect();
    Ok(GaussDecomposition {
        lower: lower_list,
        h: dmat,
        upper: upper_list,
    })
}

/// Rebuilds the element of a Gauss decomposition.
pub fn gauss_compose(alg: &Arc<ChevalleyAlgebra>, d: &GaussDecomposition) -> GroupElement {
    let mut g = GroupElement::identity(alg);
    for (r, t) in &d.lower {
        g = g.mul(&gen_e(alg, r, t).expect("root"));
    }
    g = g.mul(&GroupElement::from_mat(alg, d.h.clone()));
    for (r, t) in &d.upper {
        g = g.mul(&gen_e(alg, r, t).expect("root"));
    }
    g
}

/// Parses the generator-word grammar: whitespace-separated tokens
/// `+<k>:<t>`, `-<k>:<t>` (k = 1-based canonical index of a positive root,
/// so vertices name the simples), `h<i>:<t>` and `n<i>`.
pub fn parse_genword(alg: &Arc<ChevalleyAlgebra>, text: &str) -> Result<Vec<GenToken>> {
    let rs = alg.rs();
    let mut out = Vec::new();
    let mut col = 1usize;
    for raw in text.split_whitespace() {
        // recompute the column of this token in the original text
        if let Some(pos) = text[col - 1..].find(raw) {
            col += pos;
        }
        let err = |msg: String| Error::Parse { line: 1, col, msg };
        let root_by_index = |k: usize| -> Result<Root> {
            if k == 0 || k > rs.m() {
                Err(err(format!("root index {k} out of range 1..{}", rs.m())))
            } else {
                Ok(rs.pos_roots()[k - 1].clone())
            }
        };
        if let Some(rest) = raw.strip_prefix('+') {
            let (idx, t) = split_param(rest, col)?;
            let root = root_by_index(idx)?;
            out.push(GenToken::E(root, t));
        } else if let Some(rest) = raw.strip_prefix('-') {
            let (idx, t) = split_param(rest, col)?;
            let root = rs.negate(&root_by_index(idx)?);
            out.push(GenToken::E(root, t));
        } else if let Some(rest) = raw.strip_prefix('h') {
            let (idx, t) = split_param(rest, col)?;
            if idx == 0 || idx > rs.n() {
                return Err(err(format!("vertex {idx} out of range 1..{}", rs.n())));
            }
            if t.is_zero() {
                return Err(Error::ZeroParameter);
            }
            out.push(GenToken::H(rs.simple(idx), t));
        } else if let Some(rest) = raw.strip_prefix('n') {
            let idx: usize = rest
                .parse()
                .map_err(|_| err(format!("bad vertex `{rest}`")))?;
            if idx == 0 || idx > rs.n() {
                return Err(err(format!("vertex {idx} out of range 1..{}", rs.n())));
            }
            let a = rs.simple(idx);
            out.push(GenToken::E(a.clone(), rat_int(1)));
            out.push(GenToken::E(rs.negate(&a), rat_int(1)));
            out.push(GenToken::E(a, rat_int(1)));
        } else {
            return Err(err(format!("unknown token `{raw}`")));
        }
        col += raw.len();
    }
    Ok(out)
}

fn split_param(rest: &str, col: usize) -> Result<(usize, Rational)> {
    let err = |msg: String| Error::Parse { line: 1, col, msg };
    let sep = rest
        .find(':')
        .ok_or_else(|| err(format!("expected `:` in `{rest}`")))?;
    let idx: usize = rest[..sep]
        .parse()
        .map_err(|_| err(format!("bad index `{}`", &rest[..sep])))?;
    let t = parse_rational(&rest[sep + 1..])?;
    Ok((idx, t))
}

pub fn from_tokens(alg: &Arc<ChevalleyAlgebra>, tokens: &[GenToken]) -> Result<GroupElement> {
    let mut g = GroupElement::identity(alg);
    for tok in tokens {
        let f = match tok {
            GenToken::E(r, t) => gen_e(alg, r, t)?,
            GenToken::H(r, t) => gen_h_root(alg, r, t)?,
        };
        g = g.mul(&f);
    }
    Ok(g)
}

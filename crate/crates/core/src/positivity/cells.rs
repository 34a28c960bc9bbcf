//! Suffix regions, canonical cell elements, and the word-level
//! normalization of nonnegative generator words into `u^- h u^+` form with
//! both unipotent parts in Demazure cells with positive coordinates.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::chevalley::ChevalleyAlgebra;
use crate::error::{Error, Result};
use crate::exact::{rat_int, rat_pow, Rational};
use crate::group::{from_tokens, gen_e, gen_h, gen_n, in_borel, GenToken, GroupElement};
use crate::positivity::chain::{beta_chain, ChainStatus, RegionChain};
use crate::positivity::signs::{suffix_signs, SuffixSigns};
use crate::positivity::theorems::sample_region;
use crate::rootsys::{word_analysis, RootSystem, WeylElt, Word};

#[derive(Debug, Clone)]
pub struct SuffixRegion {
    pub suffix: Word,
    pub chain: RegionChain,
    pub signs: SuffixSigns,
}

/// Runs the chain on the suffix `(i_{t+1}, ..., i_m)` of a maximal reduced
/// word; the chain is local, so this is the projection of the full region.
pub fn suffix_region(
    alg: &ChevalleyAlgebra,
    word: &Word,
    t: usize,
    b_suffix: &[Rational],
) -> Result<SuffixRegion> {
    let rs = alg.rs();
    if word.len() != rs.m() {
        return Err(Error::Domain(
            "word must be a reduced word of maximal length".into(),
        ));
    }
    if t > word.len() {
        return Err(Error::Domain("prefix length out of range".into()));
    }
    let signs = suffix_signs(alg, word, t)?;
    let suffix = Word(word.0[t..].to_vec());
    let chain = beta_chain(rs, &suffix, b_suffix)?;
    Ok(SuffixRegion {
        suffix,
        chain,
        signs,
    })
}

#[derive(Debug, Clone)]
pub struct CellElement {
    pub element: GroupElement,
    pub b_factor: GroupElement,
    pub u_minus: GroupElement,
}

/// The canonical representative of a negative cell: the suffix-region
/// product followed by the `n`-inverses, together with its positive-Borel
/// correction factor `b = element^{-1} u^-`.
pub fn cell_element(
    alg: &Arc<ChevalleyAlgebra>,
    word: &Word,
    t: usize,
    b_suffix: &[Rational],
) -> Result<CellElement> {
    let sr = suffix_region(alg, word, t, b_suffix)?;
    match sr.chain.status {
        ChainStatus::Member => {}
        ChainStatus::Boundary(k) | ChainStatus::Violated(k) => {
            return Err(Error::NotInRegion(k + t))
        }
    }
    let rs = alg.rs();
    let analysis = word_analysis(rs, &sr.suffix);
    let mut element = GroupElement::identity(alg);
    for k in 0..sr.suffix.len() {
        let coef = rat_int(sr.signs.eps_suffix[k] as i64) * &b_suffix[k];
        element = element.mul(&gen_e(alg, &analysis.beta_roots[k], &coef)?);
    }
    for &i in &sr.suffix.0 {
        element = element.mul(&gen_n(alg, i, &rat_int(1))?.inv());
    }
    let a_t = sr
        .chain
        .stage0()
        .expect("member chain has a stage-0 vector")
        .to_vec();
    let mut u_minus = GroupElement::identity(alg);
    for (k, &i) in sr.suffix.0.iter().enumerate() {
        u_minus = u_minus.mul(&gen_e(alg, &rs.negate(&rs.simple(i)), &-a_t[k].clone())?);
    }
    let b_factor = element.inv().mul(&u_minus);
    if !in_borel(&b_factor, 1) {
        return Err(Error::BorelCheckFailed);
    }
    debug_assert_eq!(element.mul(&b_factor), u_minus);
    Ok(CellElement {
        element,
        b_factor,
        u_minus,
    })
}

#[derive(Debug, Clone)]
pub struct CellPart {
    pub word: Word,
    pub coords: Vec<Rational>,
    /// Suffix-region coordinates: the chain image of `coords`.
    pub region: Vec<Rational>,
}

#[derive(Debug, Clone)]
pub struct TorusPart {
    pub positive: bool,
    /// Parameter per vertex, 1-based order.
    pub coords: Vec<Rational>,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub minus: CellPart,
    pub h: TorusPart,
    pub plus: CellPart,
}

#[derive(Debug, Clone)]
enum Pn {
    /// `E(alpha_v, a)` with `a >= 0`.
    Pos(usize, Rational),
    /// `E(-alpha_v, -c)` with `c >= 0`.
    Neg(usize, Rational),
}

/// Rewrites a nonnegative generator word into `u^- h u^+` normal form using
/// only the monoid presentation relations, then canonicalizes both
/// unipotent parts onto reduced cell words with strictly positive
/// coordinates.
pub fn decompose_nonneg(alg: &Arc<ChevalleyAlgebra>, tokens: &[GenToken]) -> Result<Decomposition> {
    let rs = alg.rs();
    let n = rs.n();
    let simple_vertex = |root: &[i64]| -> Option<(usize, i64)> {
        for v in 1..=n {
            if root == rs.simple(v).as_slice() {
                return Some((v, 1));
            }
            if root == rs.negate(&rs.simple(v)).as_slice() {
                return Some((v, -1));
            }
        }
        None
    };
    // Fold the tokens into a positive/negative letter list and a trailing
    // torus element, conjugating each new letter under the accumulated
    // torus.
    let mut tail: Vec<Rational> = vec![Rational::one(); n];
    let chi = |tail: &[Rational], v: usize, sign: i64| -> Rational {
        let mut acc = Rational::one();
        for i in 1..=n {
            acc *= rat_pow(&tail[i - 1], sign * rs.cartan(i, v));
        }
        acc
    };
    let mut pn: Vec<Pn> = Vec::new();
    for tok in tokens {
        match tok {
            GenToken::E(root, t) => {
                let (v, sg) = simple_vertex(root).ok_or_else(|| {
                    Error::Domain("letters must be simple-root generators".into())
                })?;
                if sg > 0 {
                    if t.is_negative() {
                        return Err(Error::Domain(
                            "positive simple letters need parameters >= 0".into(),
                        ));
                    }
                    pn.push(Pn::Pos(v, t * chi(&tail, v, 1)));
                } else {
                    if t.is_positive() {
                        return Err(Error::Domain(
                            "negative simple letters need parameters <= 0".into(),
                        ));
                    }
                    pn.push(Pn::Neg(v, -t * chi(&tail, v, -1)));
                }
            }
            GenToken::H(root, t) => {
                let Some((v, 1)) = simple_vertex(root) else {
                    return Err(Error::Domain("torus letters must sit at vertices".into()));
                };
                if !t.is_positive() {
                    return Err(Error::Domain("torus parameters must be positive".into()));
                }
                tail[v - 1] *= t;
            }
        }
    }
    // Bubble negative letters left. Distinct vertices commute across signs;
    // equal vertices flip through the rank-one relation, with the created
    // torus factor conjugated into the tail.
    loop {
        pn.retain(|x| match x {
            Pn::Pos(_, a) | Pn::Neg(_, a) => !a.is_zero(),
        });
        let Some(p) = (0..pn.len().saturating_sub(1))
            .find(|&p| matches!((&pn[p], &pn[p + 1]), (Pn::Pos(_, _), Pn::Neg(_, _))))
        else {
            break;
        };
        let (Pn::Pos(vp, a), Pn::Neg(vq, c)) = (pn[p].clone(), pn[p + 1].clone()) else {
            unreachable!()
        };
        if vp != vq {
            pn.swap(p, p + 1);
            continue;
        }
        // x_v(a) y-part: Pos(a) Neg(c) = Neg(c/s) Pos(s a) h_v(s), s = ac+1
        let s = &a * &c + Rational::one();
        pn[p] = Pn::Neg(vp, &c / &s);
        pn[p + 1] = Pn::Pos(vp, &s * &a);
        for item in pn.iter_mut().skip(p + 2) {
            match item {
                Pn::Pos(u, b) => *b = &*b * rat_pow(&s, rs.cartan(vp, *u)),
                Pn::Neg(u, b) => *b = &*b * rat_pow(&s, -rs.cartan(vp, *u)),
            }
        }
        tail[vp - 1] *= &s;
    }
    // Split blocks and move the torus between them.
    let split = pn
        .iter()
        .position(|x| matches!(x, Pn::Pos(_, _)))
        .unwrap_or(pn.len());
    let mut neg_letters = Vec::new();
    let mut neg_params = Vec::new();
    let mut pos_letters = Vec::new();
    let mut pos_params = Vec::new();
    for (k, item) in pn.iter().enumerate() {
        match item {
            Pn::Neg(v, c) => {
                debug_assert!(k < split);
                neg_letters.push(*v);
                neg_params.push(c.clone());
            }
            Pn::Pos(v, a) => {
                // conjugate through the tail so that h sits in the middle
                let scaled = a * chi(&tail, *v, -1);
                pos_letters.push(*v);
                pos_params.push(scaled);
            }
        }
    }
    let (minus_word, minus_coords) = canonicalize_unipotent(rs, neg_letters, neg_params)?;
    let (plus_word, plus_coords) = canonicalize_unipotent(rs, pos_letters, pos_params)?;
    // Exact reconstruction check against the input element.
    let input = from_tokens(alg, tokens)?;
    let mut rebuilt = GroupElement::identity(alg);
    for (k, &v) in minus_word.0.iter().enumerate() {
        rebuilt = rebuilt.mul(&gen_e(
            alg,
            &rs.negate(&rs.simple(v)),
            &-minus_coords[k].clone(),
        )?);
    }
    for (v, t) in tail.iter().enumerate() {
        rebuilt = rebuilt.mul(&gen_h(alg, v + 1, t)?);
    }
    for (k, &v) in plus_word.0.iter().enumerate() {
        rebuilt = rebuilt.mul(&gen_e(alg, &rs.simple(v), &plus_coords[k])?);
    }
    if rebuilt != input {
        return Err(Error::ConventionFailure(
            "normal form does not reproduce the input element".into(),
        ));
    }
    let minus_region = sample_region(alg, &minus_word, &minus_coords)?;
    let plus_region = sample_region(alg, &plus_word, &plus_coords)?;
    Ok(Decomposition {
        minus: CellPart {
            word: minus_word,
            coords: minus_coords,
            region: minus_region,
        },
        h: TorusPart {
            positive: tail.iter().all(|t| t.is_positive()),
            coords: tail,
        },
        plus: CellPart {
            word: plus_word,
            coords: plus_coords,
            region: plus_region,
        },
    })
}

/// Word-level normalization of `x_{j_1}(c_1) ... x_{j_r}(c_r)` with
/// `c >= 0` onto a reduced word with strictly positive parameters, using
/// zero absorption, merges, commutation swaps and the braid parameter map.
pub fn canonicalize_unipotent(
    rs: &RootSystem,
    letters: Vec<usize>,
    params: Vec<Rational>,
) -> Result<(Word, Vec<Rational>)> {
    if params.iter().any(|p| p.is_negative()) {
        return Err(Error::Domain("parameters must be nonnegative".into()));
    }
    let mut letters = letters;
    let mut params = params;
    loop {
        // zero absorption
        let mut kl = Vec::with_capacity(letters.len());
        let mut kp = Vec::with_capacity(params.len());
        for (l, p) in letters.iter().zip(&params) {
            if !p.is_zero() {
                kl.push(*l);
                kp.push(p.clone());
            }
        }
        letters = kl;
        params = kp;
        // first position where the prefix stops being reduced
        let mut w = WeylElt::identity(rs);
        let mut bad = None;
        for (pos, &i) in letters.iter().enumerate() {
            if rs.height(&w.apply(&rs.simple(i))) < 0 {
                bad = Some(pos);
                break;
            }
            w = w.right_mul_simple(rs, i);
        }
        let Some(pos) = bad else {
            return Ok((Word(letters), params));
        };
        let t = letters[pos];
        bring_to_end(rs, &mut letters, &mut params, pos, t);
        params[pos - 1] = &params[pos - 1] + &params[pos];
        letters.remove(pos);
        params.remove(pos);
    }
}

/// Rewrites the reduced prefix `letters[..end]` (which has `t` as a right
/// descent) into a word ending in `t`, by commutation and braid moves
/// carried on the parameters.
fn bring_to_end(
    rs: &RootSystem,
    letters: &mut [usize],
    params: &mut [Rational],
    end: usize,
    t: usize,
) {
    debug_assert!(end >= 1);
    if letters[end - 1] == t {
        return;
    }
    let s = letters[end - 1];
    if rs.cartan(s, t) == 0 {
        debug_assert!(end >= 2);
        bring_to_end(rs, letters, params, end - 1, t);
        letters.swap(end - 2, end - 1);
        params.swap(end - 2, end - 1);
    } else {
        debug_assert!(end >= 3);
        bring_to_end(rs, letters, params, end - 1, t);
        bring_to_end(rs, letters, params, end - 2, s);
        // braid (s, t, s) -> (t, s, t) on the last three letters
        let a = params[end - 3].clone();
        let b = params[end - 2].clone();
        let c = params[end - 1].clone();
        let sum = &a + &c;
        debug_assert!(!sum.is_zero());
        params[end - 3] = &b * &c / &sum;
        params[end - 2] = sum.clone();
        params[end - 1] = &a * &b / &sum;
        letters[end - 3] = t;
        letters[end - 2] = s;
        letters[end - 1] = t;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::group::parse_genword;
    use crate::quiver::Quiver;
    use crate::rootsys::demazure_and_complete;

    fn setup(spec: &str) -> Arc<ChevalleyAlgebra> {
        Arc::new(ChevalleyAlgebra::build(&Quiver::parse(spec).unwrap()).unwrap())
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn suffix_region_basics() {
        let a = setup("A3: 1>2, 2>3");
        let w = Word(vec![1, 2, 3, 1, 2, 1]);
        // t = 0: the full region
        let full = suffix_region(&a, &w, 0, &ints(&[4, 2, 1, 1, 1, 2])).unwrap();
        assert!(matches!(full.chain.status, ChainStatus::Member));
        // t = m: empty region, vacuous member
        let empty = suffix_region(&a, &w, 6, &[]).unwrap();
        assert!(matches!(empty.chain.status, ChainStatus::Member));
        // t = 3, suffix (1,2,1): beta_4 = b4 - b5/b6
        let sr = suffix_region(&a, &w, 3, &ints(&[2, 1, 1])).unwrap();
        assert_eq!(sr.chain.betas[0], Some(rat_int(1)));
        assert_eq!(sr.chain.betas[1], Some(rat_int(1)));
        assert_eq!(sr.chain.betas[2], Some(rat_int(1)));
        // symbolically, the suffix carries the rank-two-shaped inequality
        let region = crate::positivity::region_symbolic(a.rs(), &Word(vec![1, 2, 1])).unwrap();
        let cleared: Vec<String> = region
            .cleared_inequalities()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(cleared, vec!["b1*b3 - b2".to_string()]);
        let outside = suffix_region(&a, &w, 3, &ints(&[1, 4, 1])).unwrap();
        assert!(matches!(outside.chain.status, ChainStatus::Violated(1)));
        let boundary = suffix_region(&a, &w, 3, &ints(&[1, 2, 2])).unwrap();
        assert!(matches!(boundary.chain.status, ChainStatus::Boundary(1)));
    }

    #[test]
    fn cell_element_borel_checks() {
        let a = setup("A2: 1>2");
        let w = Word(vec![1, 2, 1]);
        // t = m: empty products, b factor = identity
        let ce = cell_element(&a, &w, 3, &[]).unwrap();
        assert!(ce.element.is_identity());
        assert!(ce.b_factor.is_identity());
        // suffix (2,1) of the full word
        let ce = cell_element(&a, &w, 1, &ints(&[1, 2])).unwrap();
        assert!(in_borel(&ce.b_factor, 1));
        assert_eq!(ce.element.mul(&ce.b_factor), ce.u_minus);
        // full-word case matches the negative-side flag data
        let b = [rat_int(1), rat(1, 2), rat_int(1)];
        let ce = cell_element(&a, &w, 0, &b).unwrap();
        assert!(in_borel(&ce.b_factor, 1));
    }

    #[test]
    fn a1_flip_example() {
        let a = setup("A1:");
        let toks = parse_genword(&a, "+1:1 h1:1 -1:-1").unwrap();
        let d = decompose_nonneg(&a, &toks).unwrap();
        assert_eq!(d.minus.word, Word(vec![1]));
        assert_eq!(d.minus.coords, vec![rat(1, 2)]);
        assert_eq!(d.h.coords, vec![rat_int(2)]);
        assert!(d.h.positive);
        assert_eq!(d.plus.word, Word(vec![1]));
        assert_eq!(d.plus.coords, vec![rat(1, 2)]);
    }

    #[test]
    fn a2_braid_normalization() {
        let a = setup("A2: 1>2");
        let toks = parse_genword(&a, "+1:1 +2:1 +1:1").unwrap();
        let d = decompose_nonneg(&a, &toks).unwrap();
        assert!(d.minus.word.is_empty());
        // already reduced, so the input word survives with its parameters
        assert_eq!(d.plus.word, Word(vec![1, 2, 1]));
        assert_eq!(d.plus.coords, ints(&[1, 1, 1]));
        // the braid-moved representation (2,1,2) / (1/2, 2, 1/2) is the
        // same element
        let alt = parse_genword(&a, "+2:1/2 +1:2 +2:1/2").unwrap();
        assert_eq!(
            from_tokens(&a, &alt).unwrap(),
            from_tokens(&a, &toks).unwrap()
        );
        // a genuinely non-reduced word falls back onto the braid map
        let toks = parse_genword(&a, "+1:1 +2:1 +1:1 +2:1").unwrap();
        let d = decompose_nonneg(&a, &toks).unwrap();
        assert_eq!(d.plus.word.len(), 3);
        assert!(d.plus.coords.iter().all(|c| c.is_positive()));
    }

    #[test]
    fn already_normal_input() {
        let a = setup("A2: 1>2");
        let toks = parse_genword(&a, "-1:-2 h1:3 +2:5").unwrap();
        let d = decompose_nonneg(&a, &toks).unwrap();
        assert_eq!(d.minus.word, Word(vec![1]));
        assert_eq!(d.minus.coords, vec![rat_int(2)]);
        assert_eq!(d.h.coords, vec![rat_int(3), rat_int(1)]);
        assert_eq!(d.plus.word, Word(vec![2]));
        assert_eq!(d.plus.coords, vec![rat_int(5)]);
    }

    #[test]
    fn zero_letters_absorbed() {
        let a = setup("A2: 1>2");
        let toks = parse_genword(&a, "+1:0 +2:3 -2:0").unwrap();
        let d = decompose_nonneg(&a, &toks).unwrap();
        assert!(d.minus.word.is_empty());
        assert_eq!(d.plus.word, Word(vec![2]));
    }

    #[test]
    fn canonical_word_is_demazure_cell() {
        let rs = RootSystem::build(crate::rootsys::TypeLetter::A, 3).unwrap();
        let letters = vec![1, 2, 1, 2, 3, 2, 1, 1];
        let params: Vec<Rational> = (1..=8).map(rat_int).collect();
        let (word, coords) = canonicalize_unipotent(&rs, letters.clone(), params).unwrap();
        assert!(crate::rootsys::is_reduced(&rs, &word));
        assert!(coords.iter().all(|c| c.is_positive()));
        let dem = demazure_and_complete(&rs, &Word(letters)).demazure;
        let wa = word_analysis(&rs, &word).weyl;
        let wd = word_analysis(&rs, &dem).weyl;
        assert_eq!(wa.images(), wd.images());
    }

    #[test]
    fn rejects_wrong_sign_pattern() {
        let a = setup("A2: 1>2");
        let toks = parse_genword(&a, "+1:-1").unwrap();
        assert!(decompose_nonneg(&a, &toks).is_err());
        let toks = parse_genword(&a, "-1:1").unwrap();
        assert!(decompose_nonneg(&a, &toks).is_err());
        let toks = parse_genword(&a, "h1:-2").unwrap();
        assert!(decompose_nonneg(&a, &toks).is_err());
        // non-simple letters rejected
        let toks = parse_genword(&a, "+3:1").unwrap();
        assert!(decompose_nonneg(&a, &toks).is_err());
    }
}

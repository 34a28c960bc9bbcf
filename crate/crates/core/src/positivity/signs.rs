//! Tits signs of reduced words and their behavior under braid and
//! commutation moves.

use crate::chevalley::ChevalleyAlgebra;
use crate::error::{Error, Result};
use crate::rootsys::{word_analysis, Root, RootSystem, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TitsSigns {
    pub word: Word,
    pub eps: Vec<i8>,
    pub eps_tilde: Vec<i8>,
}

/// Extracts the Tits signs of a reduced word by chasing basis lines through
/// the cached `n_i` actions: `eps_k` is the coefficient of
/// `n_{i_{k-1}} ... n_{i_1} e_{beta_k}` on `e_{alpha_{i_k}}`, and
/// `eps~_k` the coefficient of `n_{i_1} ... n_{i_{k-1}} e_{alpha_{i_k}}` on
/// `e_{beta_k}`.
pub fn tits_signs(alg: &ChevalleyAlgebra, word: &Word) -> Result<TitsSigns> {
    let rs = alg.rs();
    let analysis = word_analysis(rs, word);
    if !analysis.is_reduced {
        return Err(Error::NotReduced);
    }
    let letters = &word.0;
    let mut eps = Vec::with_capacity(letters.len());
    let mut eps_tilde = Vec::with_capacity(letters.len());
    for (k, &ik) in letters.iter().enumerate() {
        // eps_k
        let mut root = analysis.beta_roots[k].clone();
        let mut sign = 1i8;
        for &ij in &letters[..k] {
            let (s, image) = alg.eta(ij, &root);
            sign *= s;
            root = image;
        }
        if root != rs.simple(ik) {
            return Err(Error::ConventionFailure(
                "eta chain did not land on the expected simple line".into(),
            ));
        }
        eps.push(sign);
        // eps~_k
        let mut root = rs.simple(ik);
        let mut sign = 1i8;
        for &ij in letters[..k].iter().rev() {
            let (s, image) = alg.eta(ij, &root);
            sign *= s;
            root = image;
        }
        if root != analysis.beta_roots[k] {
            return Err(Error::ConventionFailure(
                "reverse eta chain did not land on the beta root".into(),
            ));
        }
        eps_tilde.push(sign);
    }
    // Closed-form relation between the two sign families.
    for (k, &ik) in letters.iter().enumerate() {
        let mut v = rs.simple(ik);
        let mut exponent = 0i64;
        for j in (0..k).rev() {
            exponent += rs.pairing(&rs.simple(letters[j]), &v);
            v = rs.reflect(letters[j], &v);
        }
        let predicted = if exponent.rem_euclid(2) == 0 {
            eps[k]
        } else {
            -eps[k]
        };
        if predicted != eps_tilde[k] {
            return Err(Error::ConventionFailure(
                "eps-tilde closed form violated".into(),
            ));
        }
    }
    Ok(TitsSigns {
        word: word.clone(),
        eps,
        eps_tilde,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignMove {
    /// Swap commuting letters at 1-based positions `k, k+1`.
    Commutation(usize),
    /// Replace `(i, j, i)` at positions `k, k+1, k+2` by `(j, i, j)`.
    Braid(usize),
}

pub fn apply_move(rs: &RootSystem, word: &Word, mv: SignMove) -> Result<Word> {
    let mut letters = word.0.clone();
    match mv {
        SignMove::Commutation(k) => {
            if k == 0 || k + 1 > letters.len() {
                return Err(Error::MoveNotApplicable(k));
            }
            let (i, j) = (letters[k - 1], letters[k]);
            if i == j || rs.cartan(i, j) != 0 {
                return Err(Error::MoveNotApplicable(k));
            }
            letters.swap(k - 1, k);
        }
        SignMove::Braid(k) => {
            if k == 0 || k + 2 > letters.len() {
                return Err(Error::MoveNotApplicable(k));
            }
            let (i, j, i2) = (letters[k - 1], letters[k], letters[k + 1]);
            if i != i2 || i == j || rs.cartan(i, j) != -1 {
                return Err(Error::MoveNotApplicable(k));
            }
            letters[k - 1] = j;
            letters[k] = i;
            letters[k + 1] = j;
        }
    }
    Ok(Word(letters))
}

/// Applies a move and asserts the sign swap/flip laws; returns the moved
/// word and its recomputed signs.
pub fn sign_move(alg: &ChevalleyAlgebra, word: &Word, mv: SignMove) -> Result<(Word, TitsSigns)> {
    let before = tits_signs(alg, word)?;
    let moved = apply_move(alg.rs(), word, mv)?;
    let after = tits_signs(alg, &moved)?;
    let check = |ok: bool| {
        if ok {
            Ok(())
        } else {
            Err(Error::ConventionFailure("sign move law violated".into()))
        }
    };
    match mv {
        SignMove::Commutation(k) => {
            check(after.eps[k - 1] == before.eps[k])?;
            check(after.eps[k] == before.eps[k - 1])?;
            for l in 0..word.len() {
                if l != k - 1 && l != k {
                    check(after.eps[l] == before.eps[l])?;
                }
            }
        }
        SignMove::Braid(k) => {
            check(after.eps[k - 1] == before.eps[k + 1])?;
            check(after.eps[k] == -before.eps[k])?;
            check(after.eps[k + 1] == before.eps[k - 1])?;
            for l in 0..word.len() {
                if l < k - 1 || l > k + 1 {
                    check(after.eps[l] == before.eps[l])?;
                }
            }
        }
    }
    Ok((moved, after))
}

/// All applicable moves on a word.
pub fn applicable_moves(rs: &RootSystem, word: &Word) -> Vec<SignMove> {
    let mut out = Vec::new();
    for k in 1..word.len() {
        if apply_move(rs, word, SignMove::Commutation(k)).is_ok() {
            out.push(SignMove::Commutation(k));
        }
    }
    for k in 1..word.len().saturating_sub(1) {
        if apply_move(rs, word, SignMove::Braid(k)).is_ok() {
            out.push(SignMove::Braid(k));
        }
    }
    out
}

/// Sign data of a suffix within a reduced word for the longest element:
/// `eps_k = delta_k * eps^suffix_k` for slots `t+1..m`.
#[derive(Debug, Clone)]
pub struct SuffixSigns {
    pub eps_suffix: Vec<i8>,
    pub delta: Vec<i8>,
}

pub fn suffix_signs(alg: &ChevalleyAlgebra, word: &Word, t: usize) -> Result<SuffixSigns> {
    let rs = alg.rs();
    let full = tits_signs(alg, word)?;
    let suffix = Word(word.0[t..].to_vec());
    let eps_suffix = tits_signs(alg, &suffix)?.eps;
    let analysis = word_analysis(rs, word);
    let mut delta = Vec::with_capacity(word.len() - t);
    for k in t..word.len() {
        let mut root = analysis.beta_roots[k].clone();
        let mut sign = 1i8;
        for &ij in &word.0[..t] {
            let (s, image) = alg.eta(ij, &root);
            sign *= s;
            root = image;
        }
        delta.push(sign);
    }
    for k in 0..word.len() - t {
        if full.eps[t + k] != delta[k] * eps_suffix[k] {
            return Err(Error::ConventionFailure(
                "suffix sign factorization violated".into(),
            ));
        }
    }
    Ok(SuffixSigns { eps_suffix, delta })
}

/// Predicted ratio `eps'_k / eps_k` after twisting the basis by `zeta`
/// (indexed by canonical positive root): the twist pushes one torus sign
/// through each `n` in the defining chain.
pub fn predicted_twist_ratio(rs: &RootSystem, word: &Word, zeta: &[i8], k: usize) -> i8 {
    let letters = &word.0;
    let analysis = word_analysis(rs, word);
    let z = |root: &Root| -> i8 {
        let key = if rs.height(root) > 0 {
            root.clone()
        } else {
            rs.negate(root)
        };
        zeta[rs.pos_root_index(&key).expect("root")]
    };
    let mut ratio = z(&analysis.beta_roots[k]) * z(&rs.simple(letters[k]));
    let mut v = rs.simple(letters[k]);
    for j in (0..k).rev() {
        let pair = rs.pairing(&rs.simple(letters[j]), &v);
        if zeta[rs.pos_root_index(&rs.simple(letters[j])).unwrap()] == -1 && pair.rem_euclid(2) == 1
        {
            ratio = -ratio;
        }
        v = rs.reflect(letters[j], &v);
    }
    ratio
}

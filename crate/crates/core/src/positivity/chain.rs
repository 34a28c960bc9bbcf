//! The coordinate chain: the birational maps `phi_k`, their inverses, and
//! the downward beta chain defining region membership.
//!
//! The chain itself is sign-free: running it on unsigned positive values
//! gives the same table entries `a_t^{(k)}` for `t > k`, with the diagonal
//! slots carrying `eps_t b_t` in signed form. Membership therefore depends
//! only on the word and the Cartan data, never on the structure-constant
//! convention.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::rootsys::{is_reduced, RootSystem, Word};

/// One inverse step on unsigned values: maps stage `k` to stage `k-1`
/// in place (1-based `k`), using slot `k` as the pivot. Partial sums must
/// stay strictly positive.
fn descend_step(rs: &RootSystem, letters: &[usize], vals: &mut [Rational], k: usize) -> Result<()> {
    let m = letters.len();
    let ik = letters[k - 1];
    let b_k = vals[k - 1].clone();
    if !b_k.is_positive() {
        return Err(Error::DomainViolation(k));
    }
    let mut partial = b_k.clone();
    for l in k + 1..=m {
        let il = letters[l - 1];
        if il != ik {
            // exponent -A(ik, il) is 0 or 1 for distinct vertices
            if rs.cartan(ik, il) == -1 {
                vals[l - 1] = &vals[l - 1] * &partial;
            }
        } else {
            let t_le = &partial - &vals[l - 1];
            if !partial.is_positive() || !t_le.is_positive() {
                return Err(Error::DomainViolation(l));
            }
            vals[l - 1] = &vals[l - 1] / (&partial * &t_le);
            partial = t_le;
        }
    }
    vals[k - 1] = b_k.recip();
    Ok(())
}

/// One forward step on unsigned values: maps stage `k-1` to stage `k`
/// in place, inverting slot `k` and rescaling the later slots by the
/// partial sums.
fn ascend_step(rs: &RootSystem, letters: &[usize], vals: &mut [Rational], k: usize) -> Result<()> {
    let m = letters.len();
    let ik = letters[k - 1];
    let a_k = vals[k - 1].clone();
    if a_k.is_zero() {
        return Err(Error::DomainViolation(k));
    }
    let mut partial = a_k.clone();
    for l in k + 1..=m {
        let il = letters[l - 1];
        if il != ik {
            // exponent -A(ik, il) is 0 or 1 for distinct vertices
            if rs.cartan(ik, il) == -1 {
                vals[l - 1] = &vals[l - 1] * &partial;
            }
        } else {
            let with_l = &partial + &vals[l - 1];
            if partial.is_zero() || with_l.is_zero() {
                return Err(Error::DomainViolation(l));
            }
            vals[l - 1] = &vals[l - 1] / (&partial * &with_l);
            partial = with_l;
        }
    }
    vals[k - 1] = a_k.recip();
    Ok(())
}

fn check_signed_domain(eps: &[i8], upto: usize, vals: &[Rational]) -> Result<()> {
    for (l, v) in vals.iter().enumerate() {
        let want_positive = if l < upto { eps[l] > 0 } else { true };
        if want_positive != v.is_positive() || v.is_zero() {
            return Err(Error::SignPatternViolation(l + 1));
        }
    }
    Ok(())
}

/// `phi_k` on signed vectors (0-based `k` as in the chain definition):
/// slots `1..k` carry signs `eps`, the rest are positive.
pub fn phi_forward(
    rs: &RootSystem,
    word: &Word,
    eps: &[i8],
    k: usize,
    vals: &[Rational],
) -> Result<Vec<Rational>> {
    check_signed_domain(eps, k, vals)?;
    let mut unsigned: Vec<Rational> = vals.iter().map(|v| v.abs()).collect();
    ascend_step(rs, &word.0, &mut unsigned, k + 1)?;
    Ok(resign(eps, k + 1, &unsigned))
}

/// Inverse of `phi_k`: requires the partial-sum positivity of the image
/// region and reports the first violated slot.
pub fn phi_inverse(
    rs: &RootSystem,
    word: &Word,
    eps: &[i8],
    k: usize,
    vals: &[Rational],
) -> Result<Vec<Rational>> {
    check_signed_domain(eps, k + 1, vals)?;
    let mut unsigned: Vec<Rational> = vals.iter().map(|v| v.abs()).collect();
    descend_step(rs, &word.0, &mut unsigned, k + 1)?;
    Ok(resign(eps, k, &unsigned))
}

fn resign(eps: &[i8], upto: usize, unsigned: &[Rational]) -> Vec<Rational> {
    unsigned
        .iter()
        .enumerate()
        .map(|(l, v)| {
            if l < upto && eps[l] < 0 {
                -v.clone()
            } else {
                v.clone()
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainStatus {
    Member,
    /// First k with `beta_k = 0`.
    Boundary(usize),
    /// First k with `beta_k < 0`.
    Violated(usize),
}

/// The full downward chain on unsigned values. `stages[k]` holds the stage
/// `k` vector when it was reached; `betas[k-1]` holds `beta_k` when
/// defined. The chain aborts at the first nonpositive beta.
#[derive(Debug, Clone)]
pub struct RegionChain {
    pub word: Word,
    pub b: Vec<Rational>,
    pub stages: Vec<Option<Vec<Rational>>>,
    pub betas: Vec<Option<Rational>>,
    pub status: ChainStatus,
}

impl RegionChain {
    pub fn is_member(&self) -> bool {
        self.status == ChainStatus::Member
    }

    /// Unsigned table entry `a_t^{(k)}` (1-based `t`, stage `0..=m`);
    /// meaningful for `t > k`, equals `b_t` on and below the diagonal.
    pub fn a_unsigned(&self, t: usize, k: usize) -> Option<&Rational> {
        self.stages[k].as_ref().map(|row| &row[t - 1])
    }

    /// The stage-0 vector, defined exactly for members.
    pub fn stage0(&self) -> Option<&[Rational]> {
        self.stages[0].as_deref()
    }
}

pub fn beta_chain(rs: &RootSystem, word: &Word, b: &[Rational]) -> Result<RegionChain> {
    let m = word.len();
    if b.len() != m {
        return Err(Error::Domain(format!(
            "point has {} coordinates, word has {m}",
            b.len()
        )));
    }
    if b.iter().any(|v| !v.is_positive()) {
        return Err(Error::Domain("point must be strictly positive".into()));
    }
    if !is_reduced(rs, word) {
        return Err(Error::NotReduced);
    }
    let letters = &word.0;
    let mut stages: Vec<Option<Vec<Rational>>> = vec![None; m + 1];
    let mut betas: Vec<Option<Rational>> = vec![None; m];
    let mut vals: Vec<Rational> = b.to_vec();
    stages[m] = Some(vals.clone());
    let mut status = ChainStatus::Member;
    for k in (1..=m).rev() {
        let mut beta = vals[k - 1].clone();
        for s in k + 1..=m {
            if letters[s - 1] == letters[k - 1] {
                beta -= &vals[s - 1];
            }
        }
        betas[k - 1] = Some(beta.clone());
        if !beta.is_positive() {
            status = if beta.is_zero() {
                ChainStatus::Boundary(k)
            } else {
                ChainStatus::Violated(k)
            };
            break;
        }
        descend_step(rs, letters, &mut vals, k).expect("positive beta keeps partial sums positive");
        stages[k - 1] = Some(vals.clone());
    }
    Ok(RegionChain {
        word: word.clone(),
        b: b.to_vec(),
        stages,
        betas,
        status,
    })
}

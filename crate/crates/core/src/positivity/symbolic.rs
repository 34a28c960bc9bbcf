//! The region as symbolic data: beta functions in the variables `b1..bm`
//! as atom-factored fractions, plus the cleared inequality polynomials.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::poly::b_vars;
use crate::exact::{AtomFraction, AtomRegistry, Poly, Rational};
use crate::positivity::chain::{beta_chain, ChainStatus};
use crate::rootsys::{is_reduced, RootSystem, Word};

#[derive(Debug, Clone)]
pub struct Region {
    pub word: Word,
    pub vars: Arc<Vec<String>>,
    /// `beta_k` at index `k-1`, fully cancelled against the atom registry.
    pub betas: Vec<AtomFraction>,
    /// `beta_k == b_k`.
    pub trivial: Vec<bool>,
    /// The stage-0 vector of the chain as rational expressions; these are
    /// the word coordinates of the opposite-side parametrization.
    pub stage0: Vec<AtomFraction>,
    pub registry: AtomRegistry,
}

impl Region {
    /// The primitive, region-positive numerator of `beta_{k+1}` (the
    /// leading-coefficient primitive re-signed so that its value is
    /// positive on the region).
    pub fn positive_numerator(&self, k: usize) -> Poly {
        use num_traits::Signed;
        let (scale, prim) = self.betas[k].num.primitive();
        if scale.is_negative() {
            prim.neg()
        } else {
            prim
        }
    }

    /// Primitive numerators of the nontrivial betas, in ascending `k`
    /// order, deduplicated. Together with `b_k > 0` these cut out the
    /// region.
    pub fn cleared_inequalities(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for k in 0..self.betas.len() {
            if self.trivial[k] {
                continue;
            }
            let prim = self.positive_numerator(k);
            if !out.contains(&prim) {
                out.push(prim);
            }
        }
        out
    }

    /// Membership verdict of a positive point, evaluated on the cleared
    /// polynomial system rather than the chain. Denominator atoms are
    /// partial sums whose positivity follows inductively from the deeper
    /// numerators, so only numerators need checking and no division can
    /// blow up on boundary points.
    pub fn eval_member(&self, point: &[Rational]) -> bool {
        use num_traits::Signed;
        self.betas
            .iter()
            .all(|beta| beta.num.eval(point).is_positive())
    }
}

/// Runs the unsigned chain symbolically. Every partial-sum difference
/// encountered is registered as a positivity atom before it is inverted, so
/// the chain never needs a general GCD.
pub fn region_symbolic(rs: &RootSystem, word: &Word) -> Result<Region> {
    if !is_reduced(rs, word) {
        return Err(Error::NotReduced);
    }
    let m = word.len();
    let letters = &word.0;
    let vars = b_vars(m);
    let mut registry = AtomRegistry::new();
    for i in 0..m {
        registry.register(&Poly::var(vars.clone(), i))?;
    }
    let bvar = |i: usize| AtomFraction::from_poly(Poly::var(vars.clone(), i - 1));
    let mut vals: Vec<AtomFraction> = (1..=m).map(bvar).collect();
    let mut betas: Vec<Option<AtomFraction>> = vec![None; m];
    let mut trivial = vec![false; m];
    for k in (1..=m).rev() {
        let mut beta = vals[k - 1].clone();
        for s in k + 1..=m {
            if letters[s - 1] == letters[k - 1] {
                beta = beta.sub(&vals[s - 1], &registry)?;
            }
        }
        registry.register(&beta.num)?;
        trivial[k - 1] = beta == bvar(k);
        betas[k - 1] = Some(beta);
        // descend to stage k-1
        let pivot = vals[k - 1].clone();
        let mut partial = pivot.clone();
        for l in k + 1..=m {
            let il = letters[l - 1];
            let ik = letters[k - 1];
            if il != ik {
                if rs.cartan(ik, il) == -1 {
                    registry.register(&partial.num)?;
                    vals[l - 1] = vals[l - 1].mul(&partial, &registry)?;
                }
            } else {
                let t_le = partial.sub(&vals[l - 1], &registry)?;
                registry.register(&partial.num)?;
                registry.register(&t_le.num)?;
                let inv = partial.mul(&t_le, &registry)?.invert(&registry)?;
                vals[l - 1] = vals[l - 1].mul(&inv, &registry)?;
                partial = t_le;
            }
        }
        vals[k - 1] = pivot.invert(&registry)?;
    }
    Ok(Region {
        word: word.clone(),
        vars,
        betas: betas
            .into_iter()
            .map(|b| b.expect("all betas set"))
            .collect(),
        trivial,
        stage0: vals,
        registry,
    })
}

/// Agreement of the symbolic region with the numeric chain at one point.
pub fn verdicts_agree(rs: &RootSystem, region: &Region, point: &[Rational]) -> Result<bool> {
    let chain = beta_chain(rs, &region.word, point)?;
    let numeric = chain.status == ChainStatus::Member;
    Ok(numeric == region.eval_member(point))
}

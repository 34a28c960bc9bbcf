//! Exact-arithmetic Chevalley groups from Dynkin quivers and their total
//! positivity regions.
//!
//! A quiver orientation of an ADE Dynkin graph determines a Chevalley basis
//! through the Euler-form sign cocycle and, through the translate-orbit
//! ordering of its indecomposables, a distinguished reduced word of the
//! longest Weyl element. The crate builds the group as exact rational
//! matrices in the adjoint representation and computes the positivity
//! region attached to such a word: Tits signs, the coordinate chain and its
//! beta inequalities (numerically or symbolically), membership tests, the
//! flag identities certifying the totally positive parametrizations, and
//! the cell decomposition of the nonnegative monoids.
//!
//! ```
//! use std::sync::Arc;
//! use chevpos::{ChevalleyAlgebra, Quiver};
//! use chevpos::exact::rat_int;
//! use chevpos::positivity::{beta_chain, verify_flag};
//!
//! let quiver = Quiver::parse("A3: 1>2, 2>3")?;
//! let word = quiver.leftmost_word()?;
//! let alg = Arc::new(ChevalleyAlgebra::build(&quiver)?);
//!
//! let b: Vec<_> = [4, 2, 1, 1, 1, 2].map(rat_int).to_vec();
//! assert!(beta_chain(quiver.system(), &word, &b)?.is_member());
//! assert!(verify_flag(&alg, &word, &b, 1)?);
//! assert!(verify_flag(&alg, &word, &b, -1)?);
//! # Ok::<(), chevpos::Error>(())
//! ```

pub mod chevalley;
pub mod error;
pub mod exact;
pub mod group;
pub mod positivity;
pub mod quiver;
pub mod rootsys;
pub mod suites;

pub use chevalley::{BasisLabel, ChevalleyAlgebra};
pub use error::{Error, Result};
pub use exact::{format_rational, parse_rational, Mat, Rational};
pub use group::{GenToken, GroupElement};
pub use quiver::Quiver;
pub use rootsys::{RootSystem, TypeLetter, Word};

#[cfg(test)]
mod tests {
    fn shareable<T: Send + Sync>() {}

    #[test]
    fn values_are_shareable_across_threads() {
        shareable::<crate::RootSystem>();
        shareable::<crate::Quiver>();
        shareable::<crate::ChevalleyAlgebra>();
        shareable::<crate::GroupElement>();
        shareable::<crate::positivity::RegionChain>();
        shareable::<crate::positivity::Region>();
    }
}

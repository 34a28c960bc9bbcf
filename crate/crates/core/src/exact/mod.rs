//! Exact arithmetic: rationals, sparse polynomials, atom-factored fractions
//! and dense rational matrices.

pub mod fraction;
pub mod matrix;
pub mod poly;
pub mod rational;

pub use fraction::{AtomFraction, AtomId, AtomRegistry};
pub use matrix::Mat;
pub use poly::{b_vars, Mono, Poly};
pub use rational::{format_rational, is_positive, parse_rational, rat, rat_int, rat_pow, Rational};

//! Exact rational scalars.
//!
//! All scalar arithmetic in the crate runs over arbitrary-precision
//! rationals kept in lowest terms with a positive denominator, which is
//! exactly what [`num_rational::BigRational`] guarantees.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer power with negative exponents allowed (base must be nonzero then).
pub fn rat_pow(base: &Rational, exp: i64) -> Rational {
    if exp == 0 {
        return Rational::one();
    }
    let mut acc = Rational::one();
    let b = if exp > 0 { base.clone() } else { base.recip() };
    for _ in 0..exp.abs() {
        acc *= &b;
    }
    acc
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let err = |col: usize, msg: &str| Error::Parse {
        line: 1,
        col,
        msg: msg.to_string(),
    };
    if s.is_empty() {
        return Err(err(1, "empty rational"));
    }
    let (num_str, den_str) = match s.find('/') {
        Some(pos) => (&s[..pos], &s[pos + 1..]),
        None => (s, "1"),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| err(1, &format!("bad integer `{num_str}`")))?;
    let den: BigInt = den_str
        .parse()
        .map_err(|_| err(num_str.len() + 2, &format!("bad integer `{den_str}`")))?;
    if den.is_zero() {
        return Err(err(num_str.len() + 2, "zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form `p/q` with `q` omitted when it equals one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3", "22/7", "-9/4", "1/2"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
        assert_eq!(format_rational(&parse_rational("-4/-6").unwrap()), "2/3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn arithmetic_is_exact() {
        // (a+b)-b = a and (a*b)/b = a with structural equality.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..1000 {
            let a = rat((next() % 2001) as i64 - 1000, (next() % 97 + 1) as i64);
            let b = rat((next() % 2001) as i64 - 1000, (next() % 97 + 1) as i64);
            assert_eq!(&(&a + &b) - &b, a);
            if !b.is_zero() {
                assert_eq!(&(&a * &b) / &b, a);
            }
        }
    }

    #[test]
    fn powers() {
        assert_eq!(rat_pow(&rat(2, 3), -2), rat(9, 4));
        assert_eq!(rat_pow(&rat(5, 1), 0), rat_int(1));
        assert_eq!(rat_pow(&rat(-2, 1), 3), rat_int(-8));
    }
}

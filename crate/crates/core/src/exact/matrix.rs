//! Dense exact matrices.
//!
//! A matrix is stored as integer numerators over a single positive
//! denominator. Keeping one denominator makes products pure integer
//! arithmetic; entries are reduced by a global gcd after each operation so
//! equality is structural.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    n: usize,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Mat {
    pub fn identity(n: usize) -> Mat {
        let mut num = vec![BigInt::zero(); n * n];
        for i in 0..n {
            num[i * n + i] = BigInt::one();
        }
        Mat {
            n,
            num,
            den: BigInt::one(),
        }
    }

    pub fn zero(n: usize) -> Mat {
        Mat {
            n,
            num: vec![BigInt::zero(); n * n],
            den: BigInt::one(),
        }
    }

    pub fn from_integers(n: usize, entries: Vec<i64>) -> Mat {
        assert_eq!(entries.len(), n * n);
        Mat {
            n,
            num: entries.into_iter().map(BigInt::from).collect(),
            den: BigInt::one(),
        }
    }

    pub fn from_rationals(n: usize, entries: &[Rational]) -> Mat {
        assert_eq!(entries.len(), n * n);
        let mut den = BigInt::one();
        for e in entries {
            den = den.lcm(e.denom());
        }
        let num = entries
            .iter()
            .map(|e| e.numer() * (&den / e.denom()))
            .collect();
        let mut m = Mat { n, num, den };
        m.normalize();
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        Rational::new(self.num[i * self.n + j].clone(), self.den.clone())
    }

    pub fn entry_is_zero(&self, i: usize, j: usize) -> bool {
        self.num[i * self.n + j].is_zero()
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: &Rational) {
        let lcm = self.den.lcm(v.denom());
        if lcm != self.den {
            let f = &lcm / &self.den;
            for x in self.num.iter_mut() {
                *x *= &f;
            }
            self.den = lcm;
        }
        self.num[i * self.n + j] = v.numer() * (&self.den / v.denom());
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for x in self.num.iter_mut() {
                *x = -x.clone();
            }
        }
        let mut g = self.den.clone();
        for x in &self.num {
            if g.is_one() {
                return;
            }
            if !x.is_zero() {
                g = g.gcd(x);
            }
        }
        if g.is_one() || g.is_zero() {
            return;
        }
        self.den /= &g;
        for x in self.num.iter_mut() {
            *x /= &g;
        }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut num = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.num[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.num[k * n + j];
                    if b.is_zero() {
                        continue;
                    }
                    num[i * n + j] += a * b;
                }
            }
        }
        let mut out = Mat {
            n,
            num,
            den: &self.den * &other.den,
        };
        out.normalize();
        out
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        let n = self.n;
        (0..n)
            .map(|i| {
                let mut acc = Rational::zero();
                for j in 0..n {
                    if !self.num[i * n + j].is_zero() {
                        acc += self.entry(i, j) * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// Column `j` as rationals (the image of the `j`-th basis vector).
    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.n).map(|i| self.entry(i, j)).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(self.n)
    }

    /// Inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Mat> {
        let n = self.n;
        let mut a: Vec<Rational> = (0..n * n).map(|p| self.entry(p / n, p % n)).collect();
        let mut inv: Vec<Rational> = vec![Rational::zero(); n * n];
        for i in 0..n {
            inv[i * n + i] = Rational::one();
        }
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !a[r * n + col].is_zero())?;
            if pivot_row != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot_row * n + j);
                    inv.swap(col * n + j, pivot_row * n + j);
                }
            }
            let p = a[col * n + col].clone();
            for j in 0..n {
                a[col * n + j] /= &p;
                inv[col * n + j] /= &p;
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let f = a[r * n + col].clone();
                for j in 0..n {
                    let av = &a[col * n + j] * &f;
                    a[r * n + j] -= av;
                    let iv = &inv[col * n + j] * &f;
                    inv[r * n + j] -= iv;
                }
            }
        }
        Some(Mat::from_rationals(n, &inv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, rat_int};

    #[test]
    fn mul_and_inverse_round_trip() {
        let m = Mat::from_rationals(
            3,
            &[
                rat_int(1),
                rat(1, 2),
                rat_int(0),
                rat_int(0),
                rat_int(1),
                rat(-3, 4),
                rat_int(2),
                rat_int(0),
                rat_int(1),
            ],
        );
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
    }

    #[test]
    fn singular_detected() {
        let m = Mat::from_integers(2, vec![1, 2, 2, 4]);
        assert!(m.inverse().is_none());
    }

    #[test]
    fn normalization_is_canonical() {
        let a = Mat::from_rationals(2, &[rat(2, 4), rat_int(0), rat_int(0), rat(1, 2)]);
        let b = Mat::from_rationals(2, &[rat(1, 2), rat_int(0), rat_int(0), rat(3, 6)]);
        assert_eq!(a, b);
    }
}

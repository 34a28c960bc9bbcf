//! Atom-factored fractions.
//!
//! A fraction keeps its denominator as a multiset of registered "atoms" —
//! polynomials previously certified positive on the current region — so that
//! positivity of the whole expression reduces to positivity of the
//! numerator. Cancellation happens only by trial exact division against the
//! registry; there is no general multivariate GCD.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::poly::Poly;
use crate::exact::rational::Rational;

pub type AtomId = usize;

/// Registry of positivity atoms, in registration order.
#[derive(Debug, Clone, Default)]
pub struct AtomRegistry {
    atoms: Vec<Poly>,
    lookup: BTreeMap<Poly, AtomId>,
}

impl AtomRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers `p` as a positivity atom and returns `(scale, id)` with
    /// `p = scale * atom` and `scale > 0`. The caller asserts that `p` is
    /// positive on the region, so the atom keeps the sign of `p` rather
    /// than a leading-coefficient normalization. Idempotent on the atom.
    pub fn register(&mut self, p: &Poly) -> Result<(Rational, AtomId)> {
        use num_traits::Signed;
        if p.is_zero() {
            return Err(Error::ZeroInversion);
        }
        let (scale, prim) = p.primitive();
        let (scale, signed) = if scale.is_negative() {
            (-scale, prim.neg())
        } else {
            (scale, prim)
        };
        let id = match self.lookup.get(&signed) {
            Some(&id) => id,
            None => {
                let id = self.atoms.len();
                self.atoms.push(signed.clone());
                self.lookup.insert(signed, id);
                id
            }
        };
        Ok((scale, id))
    }

    pub fn find(&self, prim: &Poly) -> Option<AtomId> {
        self.lookup.get(prim).copied()
    }

    pub fn atom(&self, id: AtomId) -> &Poly {
        &self.atoms[id]
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[Poly] {
        &self.atoms
    }
}

/// `num / prod(atoms^mult)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomFraction {
    pub num: Poly,
    pub den: BTreeMap<AtomId, u32>,
}

impl AtomFraction {
    pub fn from_poly(num: Poly) -> AtomFraction {
        AtomFraction {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn one(vars: Arc<Vec<String>>) -> AtomFraction {
        AtomFraction::from_poly(Poly::one(vars))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn den_poly(&self, reg: &AtomRegistry) -> Poly {
        let mut d = Poly::one(self.num.vars().clone());
        for (&id, &mult) in &self.den {
            for _ in 0..mult {
                d = d.mul(reg.atom(id)).expect("same vars");
            }
        }
        d
    }

    /// Cancels denominator atoms that exactly divide the numerator.
    fn reduce(&mut self, reg: &AtomRegistry) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let ids: Vec<AtomId> = self.den.keys().copied().collect();
        for id in ids {
            loop {
                let mult = *self.den.get(&id).unwrap_or(&0);
                if mult == 0 {
                    break;
                }
                match self.num.try_div_exact(reg.atom(id)) {
                    Some(q) => {
                        self.num = q;
                        if mult == 1 {
                            self.den.remove(&id);
                        } else {
                            self.den.insert(id, mult - 1);
                        }
                    }
                    None => break,
                }
            }
        }
    }

    fn add_signed(
        &self,
        other: &AtomFraction,
        sign: i64,
        reg: &AtomRegistry,
    ) -> Result<AtomFraction> {
        // Common denominator: per-atom maximum of multiplicities.
        let mut den: BTreeMap<AtomId, u32> = self.den.clone();
        for (&id, &m) in &other.den {
            let e = den.entry(id).or_insert(0);
            *e = (*e).max(m);
        }
        let mut lhs = self.num.clone();
        let mut rhs = other.num.clone();
        for (&id, &m) in &den {
            let ls = m - self.den.get(&id).copied().unwrap_or(0);
            let rs = m - other.den.get(&id).copied().unwrap_or(0);
            for _ in 0..ls {
                lhs = lhs.mul(reg.atom(id))?;
            }
            for _ in 0..rs {
                rhs = rhs.mul(reg.atom(id))?;
            }
        }
        let num = if sign >= 0 {
            lhs.add(&rhs)?
        } else {
            lhs.sub(&rhs)?
        };
        let mut out = AtomFraction { num, den };
        out.reduce(reg);
        Ok(out)
    }

    pub fn add(&self, other: &AtomFraction, reg: &AtomRegistry) -> Result<AtomFraction> {
        self.add_signed(other, 1, reg)
    }

    pub fn sub(&self, other: &AtomFraction, reg: &AtomRegistry) -> Result<AtomFraction> {
        self.add_signed(other, -1, reg)
    }

    pub fn mul(&self, other: &AtomFraction, reg: &AtomRegistry) -> Result<AtomFraction> {
        let num = self.num.mul(&other.num)?;
        let mut den = self.den.clone();
        for (&id, &m) in &other.den {
            *den.entry(id).or_insert(0) += m;
        }
        let mut out = AtomFraction { num, den };
        out.reduce(reg);
        Ok(out)
    }

    /// Inverts the fraction. The numerator must factor completely over the
    /// registered atoms (up to a rational scale).
    pub fn invert(&self, reg: &AtomRegistry) -> Result<AtomFraction> {
        if self.num.is_zero() {
            return Err(Error::ZeroInversion);
        }
        let (scale, mut rest) = self.num.primitive();
        let mut new_den: BTreeMap<AtomId, u32> = BTreeMap::new();
        for id in 0..reg.len() {
            loop {
                if rest.is_constant() {
                    break;
                }
                match rest.try_div_exact(reg.atom(id)) {
                    Some(q) => {
                        *new_den.entry(id).or_insert(0) += 1;
                        rest = q;
                    }
                    None => break,
                }
            }
        }
        if !rest.is_constant() {
            return Err(Error::UnregisteredAtom(rest.to_string()));
        }
        // num = scale * rest * prod(atoms); fold the leftover constant into
        // the scale.
        let total = scale * rest.constant_value().expect("rest is constant");
        let mut num = Poly::constant(self.num.vars().clone(), total.recip());
        for (&id, &m) in &self.den {
            for _ in 0..m {
                num = num.mul(reg.atom(id))?;
            }
        }
        let mut out = AtomFraction { num, den: new_den };
        out.reduce(reg);
        Ok(out)
    }

    pub fn pow(&self, k: i64, reg: &AtomRegistry) -> Result<AtomFraction> {
        let base = if k < 0 {
            self.invert(reg)?
        } else {
            self.clone()
        };
        let mut out = AtomFraction::one(self.num.vars().clone());
        for _ in 0..k.abs() {
            out = out.mul(&base, reg)?;
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Rational], reg: &AtomRegistry) -> Rational {
        let mut v = self.num.eval(point);
        for (&id, &m) in &self.den {
            let a = reg.atom(id).eval(point);
            for _ in 0..m {
                v /= &a;
            }
        }
        v
    }

    /// Value equality via cross multiplication.
    pub fn value_eq(&self, other: &AtomFraction, reg: &AtomRegistry) -> bool {
        let lhs = self.num.mul(&other.den_poly(reg)).expect("same vars");
        let rhs = other.num.mul(&self.den_poly(reg)).expect("same vars");
        lhs == rhs
    }

    pub fn display<'a>(&'a self, reg: &'a AtomRegistry) -> AtomFractionDisplay<'a> {
        AtomFractionDisplay { frac: self, reg }
    }
}

pub struct AtomFractionDisplay<'a> {
    frac: &'a AtomFraction,
    reg: &'a AtomRegistry,
}

impl fmt::Display for AtomFractionDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.frac.den.is_empty() {
            return write!(f, "{}", self.frac.num);
        }
        let dens: Vec<String> = self
            .frac
            .den
            .iter()
            .flat_map(|(&id, &m)| {
                std::iter::repeat(format!("({})", self.reg.atom(id))).take(m as usize)
            })
            .collect();
        write!(f, "({}) / {}", self.frac.num, dens.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::b_vars;
    use crate::exact::rational::{rat, rat_int};

    fn bvar(vars: &Arc<Vec<String>>, i: usize) -> AtomFraction {
        AtomFraction::from_poly(Poly::var(vars.clone(), i - 1))
    }

    #[test]
    fn invert_variable() {
        let vars = b_vars(6);
        let mut reg = AtomRegistry::new();
        let b6 = Poly::var(vars.clone(), 5);
        reg.register(&b6).unwrap();
        let inv = bvar(&vars, 6).invert(&reg).unwrap();
        assert!(inv.num.is_one());
        assert_eq!(inv.den.len(), 1);
        assert_eq!(inv.display(&reg).to_string(), "(1) / (b6)");
    }

    #[test]
    fn beta4_shape() {
        // b4 - b5/b6 = (b4*b6 - b5) / {b6}
        let vars = b_vars(6);
        let mut reg = AtomRegistry::new();
        reg.register(&Poly::var(vars.clone(), 5)).unwrap();
        let b4 = bvar(&vars, 4);
        let frac = b4
            .sub(
                &bvar(&vars, 5)
                    .mul(&bvar(&vars, 6).invert(&reg).unwrap(), &reg)
                    .unwrap(),
                &reg,
            )
            .unwrap();
        assert_eq!(frac.display(&reg).to_string(), "(b4*b6 - b5) / (b6)");
    }

    #[test]
    fn cross_denominator_add() {
        // x/{A} + y/{A,B} with x=b2, A=b1, y=b3, B=b4 -> (b2*b4 + b3)/{b1,b4}
        let vars = b_vars(4);
        let mut reg = AtomRegistry::new();
        let (_, a) = reg.register(&Poly::var(vars.clone(), 0)).unwrap();
        let (_, b) = reg.register(&Poly::var(vars.clone(), 3)).unwrap();
        let mut x = bvar(&vars, 2);
        x.den.insert(a, 1);
        let mut y = bvar(&vars, 3);
        y.den.insert(a, 1);
        y.den.insert(b, 1);
        let sum = x.add(&y, &reg).unwrap();
        assert_eq!(sum.num.to_string(), "b2*b4 + b3");
        let want: Vec<(AtomId, u32)> = vec![(a, 1), (b, 1)];
        assert_eq!(sum.den.into_iter().collect::<Vec<_>>(), want);
    }

    #[test]
    fn trial_division_soundness() {
        let vars = b_vars(3);
        let mut reg = AtomRegistry::new();
        let atom = Poly::var(vars.clone(), 0)
            .mul(&Poly::var(vars.clone(), 2))
            .unwrap()
            .sub(&Poly::var(vars.clone(), 1))
            .unwrap();
        let (_, id) = reg.register(&atom).unwrap();
        let q = Poly::var(vars.clone(), 1)
            .add(&Poly::one(vars.clone()))
            .unwrap();
        let mut f = AtomFraction::from_poly(atom.mul(&q).unwrap());
        f.den.insert(id, 1);
        let mut reduced = f.clone();
        reduced.reduce(&reg);
        assert!(reduced.den.is_empty());
        // Multiplying back reproduces the original numerator.
        assert_eq!(reduced.num.mul(&atom).unwrap(), f.num);
    }

    #[test]
    fn eval_homomorphism() {
        let vars = b_vars(3);
        let mut reg = AtomRegistry::new();
        for i in 0..3 {
            reg.register(&Poly::var(vars.clone(), i)).unwrap();
        }
        let pts = [
            vec![rat(1, 2), rat_int(3), rat(7, 5)],
            vec![rat_int(2), rat(2, 3), rat_int(1)],
        ];
        let x = bvar(&vars, 1).add(&bvar(&vars, 2), &reg).unwrap();
        let y = bvar(&vars, 3).invert(&reg).unwrap();
        for op in 0..3 {
            let z = match op {
                0 => x.add(&y, &reg).unwrap(),
                1 => x.sub(&y, &reg).unwrap(),
                _ => x.mul(&y, &reg).unwrap(),
            };
            for p in &pts {
                let direct = z.eval(p, &reg);
                let xe = x.eval(p, &reg);
                let ye = y.eval(p, &reg);
                let want = match op {
                    0 => xe + ye,
                    1 => xe - ye,
                    _ => xe * ye,
                };
                assert_eq!(direct, want);
            }
        }
    }
}

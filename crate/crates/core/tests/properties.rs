//! Randomized algebraic properties of the exact layer.

use std::sync::Arc;

use proptest::prelude::*;

use chevpos::exact::{b_vars, rat, AtomFraction, AtomRegistry, Poly, Rational};

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-200i64..=200, 1i64..=60).prop_map(|(n, d)| rat(n, d))
}

fn arb_poly(vars: Arc<Vec<String>>) -> impl Strategy<Value = Poly> {
    let n = vars.len();
    proptest::collection::vec(
        (proptest::collection::vec(0u16..3, n), arb_rational()),
        0..6,
    )
    .prop_map(move |terms| Poly::from_terms(vars.clone(), terms))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_laws(a in arb_rational(), b in arb_rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if b != rat(0, 1) {
            prop_assert_eq!(&(&a * &b) / &b, a);
        }
    }

    #[test]
    fn poly_ring_laws(
        a in arb_poly(b_vars(3)),
        b in arb_poly(b_vars(3)),
        c in arb_poly(b_vars(3)),
    ) {
        // commutativity, associativity, distributivity
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        // exact division undoes multiplication
        if !b.is_zero() {
            let p = a.mul(&b).unwrap();
            if !a.is_zero() {
                prop_assert_eq!(p.try_div_exact(&b).unwrap(), a);
            }
        }
    }

    #[test]
    fn atom_fraction_evaluation_is_a_homomorphism(
        x in arb_poly(b_vars(3)),
        y in arb_poly(b_vars(3)),
        point in proptest::collection::vec((1i64..=40, 1i64..=40), 3),
    ) {
        let vars = b_vars(3);
        let mut reg = AtomRegistry::new();
        for i in 0..3 {
            reg.register(&Poly::var(vars.clone(), i)).unwrap();
        }
        let pt: Vec<Rational> = point.into_iter().map(|(n, d)| rat(n, d)).collect();
        let fx = AtomFraction::from_poly(x);
        // divide y by b1 b2 to get a genuine denominator
        let fy = AtomFraction::from_poly(y)
            .mul(
                &AtomFraction::from_poly(
                    Poly::var(vars.clone(), 0).mul(&Poly::var(vars.clone(), 1)).unwrap(),
                )
                .invert(&reg)
                .unwrap(),
                &reg,
            )
            .unwrap();
        let xe = fx.eval(&pt, &reg);
        let ye = fy.eval(&pt, &reg);
        prop_assert_eq!(fx.add(&fy, &reg).unwrap().eval(&pt, &reg), &xe + &ye);
        prop_assert_eq!(fx.sub(&fy, &reg).unwrap().eval(&pt, &reg), &xe - &ye);
        prop_assert_eq!(fx.mul(&fy, &reg).unwrap().eval(&pt, &reg), &xe * &ye);
    }
}

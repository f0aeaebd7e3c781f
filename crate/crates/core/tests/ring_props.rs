//! Property suite for the intersection ring: bilinearity, symmetry,
//! exactness, and agreement with the brute-force expansion oracle.

mod common;

use common::triple_oracle;
use cremona_core::rat::{frac, Rat};
use cremona_core::ring::{pair, triple, wedge11, CurveCycle, DivisorClass, VarietyDescriptor};
use proptest::prelude::*;

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=12).prop_map(|(p, q)| frac(p, q))
}

fn int_rat_strategy() -> impl Strategy<Value = Rat> {
    (-9i64..=9).prop_map(|p| frac(p, 1))
}

fn divisor_strategy(n: usize) -> impl Strategy<Value = DivisorClass> {
    proptest::collection::vec(rat_strategy(), n + 1)
        .prop_map(|v| DivisorClass::from_coords(&v).unwrap())
}

fn int_divisor_strategy(n: usize) -> impl Strategy<Value = DivisorClass> {
    proptest::collection::vec(int_rat_strategy(), n + 1)
        .prop_map(|v| DivisorClass::from_coords(&v).unwrap())
}

fn curve_strategy(n: usize) -> impl Strategy<Value = CurveCycle> {
    proptest::collection::vec(rat_strategy(), n + 1)
        .prop_map(|v| CurveCycle::from_coords(&v).unwrap())
}

proptest! {
    #[test]
    fn wedge_is_bilinear(
        x in divisor_strategy(4),
        x2 in divisor_strategy(4),
        y in divisor_strategy(4),
        a in rat_strategy(),
        b in rat_strategy(),
    ) {
        let v = VarietyDescriptor::p3_blowup(4);
        let lhs = wedge11(&v, &x.scale(&a).add(&x2.scale(&b)), &y).unwrap();
        let rhs = wedge11(&v, &x, &y).unwrap().scale(&a)
            .add(&wedge11(&v, &x2, &y).unwrap().scale(&b));
        prop_assert!(lhs.same_class(&rhs));
    }

    #[test]
    fn wedge_is_symmetric(x in divisor_strategy(4), y in divisor_strategy(4)) {
        let v = VarietyDescriptor::p3_blowup(4);
        prop_assert_eq!(wedge11(&v, &x, &y).unwrap(), wedge11(&v, &y, &x).unwrap());
    }

    #[test]
    fn pair_is_bilinear(
        x in divisor_strategy(4),
        x2 in divisor_strategy(4),
        c in curve_strategy(4),
        a in rat_strategy(),
        b in rat_strategy(),
    ) {
        let v = VarietyDescriptor::p3_blowup(4);
        let lhs = pair(&v, &x.scale(&a).add(&x2.scale(&b)), &c).unwrap();
        let rhs = &a * pair(&v, &x, &c).unwrap() + &b * pair(&v, &x2, &c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn triple_is_symmetric_under_all_permutations(
        x in divisor_strategy(4),
        y in divisor_strategy(4),
        z in divisor_strategy(4),
    ) {
        let v = VarietyDescriptor::p3_blowup(4);
        let base = triple(&v, &x, &y, &z).unwrap();
        for (p, q, r) in [(&x, &z, &y), (&y, &x, &z), (&y, &z, &x), (&z, &x, &y), (&z, &y, &x)] {
            prop_assert_eq!(&triple(&v, p, q, r).unwrap(), &base);
        }
    }

    #[test]
    fn triple_matches_brute_force_expansion(
        x in divisor_strategy(4),
        y in divisor_strategy(4),
        z in divisor_strategy(4),
    ) {
        let v = VarietyDescriptor::p3_blowup(4);
        prop_assert_eq!(triple(&v, &x, &y, &z).unwrap(), triple_oracle(&v, &x, &y, &z));
    }

    #[test]
    fn integer_classes_pair_to_integers(
        x in int_divisor_strategy(4),
        y in int_divisor_strategy(4),
        z in int_divisor_strategy(4),
    ) {
        let v = VarietyDescriptor::p3_blowup(4);
        prop_assert!(triple(&v, &x, &y, &z).unwrap().is_integer());
        let w = wedge11(&v, &x, &y).unwrap();
        prop_assert!(w.is_integral());
        prop_assert!(pair(&v, &z, &w).unwrap().is_integer());
    }
}

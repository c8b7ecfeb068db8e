use proptest::prelude::*;

use valtree::algebra::{BivarPoly, ExtRat, LinearFrame, Rat};
use valtree::testkit::gen_poly;

fn poly() -> impl Strategy<Value = BivarPoly> {
    (any::<u64>(), 0u32..6, 1usize..6).prop_map(|(s, d, t)| gen_poly(s, d, t, 9))
}

fn ext() -> impl Strategy<Value = ExtRat> {
    prop_oneof![
        4 => (0i64..40, 1i64..8).prop_map(|(n, d)| ExtRat::ratio(n, d)),
        1 => Just(ExtRat::Infinity),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn display_parses_back(a in poly()) {
        let back: BivarPoly = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn weighted_order_is_a_valuation(a in poly(), b in poly(), g1 in 1i64..9, g2 in 1i64..9) {
        let (g1, g2) = (ExtRat::int(g1), ExtRat::int(g2));
        let w = |p: &BivarPoly| p.weighted_order(&g1, &g2).unwrap();
        prop_assert_eq!(w(&(&a * &b)), &w(&a) + &w(&b));
        prop_assert!(w(&(&a + &b)) >= std::cmp::min(w(&a), w(&b)));
    }

    #[test]
    fn content_split_is_exact(a in poly()) {
        prop_assume!(!a.is_zero());
        let (r, s) = a.monomial_content();
        prop_assert_eq!(a.unshift(r, s).shift(r, s), a.clone());
        let rest = a.unshift(r, s);
        prop_assert_eq!(rest.monomial_content(), (0, 0));
    }

    #[test]
    fn pullbacks_are_ring_maps(a in poly(), b in poly(), c in -3i64..4) {
        let c = Rat::from_integer(c.into());
        prop_assert_eq!((&a * &b).pullback_translated(&c), &a.pullback_translated(&c) * &b.pullback_translated(&c));
        prop_assert_eq!((&a + &b).pullback_swapped(), &a.pullback_swapped() + &b.pullback_swapped());
    }

    #[test]
    fn frames_are_ring_maps(a in poly(), b in poly(), k in -3i64..4) {
        let k = Rat::from_integer(k.into());
        let one = Rat::from_integer(1.into());
        let zero = Rat::from_integer(0.into());
        let f = LinearFrame::new([[one.clone(), zero], [k, one]]).unwrap();
        prop_assert_eq!(f.apply(&(&a * &b)), &f.apply(&a) * &f.apply(&b));
        prop_assert_eq!(f.apply(&a).total_degree(), a.total_degree());
    }

    #[test]
    fn extended_addition(a in ext(), b in ext(), c in ext()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &ExtRat::zero(), a.clone());
        prop_assert!(&a + &b >= a);
        prop_assert_eq!(a.times(0), ExtRat::zero());
    }
}

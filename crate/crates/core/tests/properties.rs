//! Property tests for the algebraic identities the whole pipeline rests on.

use proptest::prelude::*;

use cremona_core::cremona::{CoarseCurveData, CremonaMap, CremonaTag, FineCurveData};
use cremona_core::eisenstein::EisensteinInt;
use cremona_core::polynomials::HomogPoly;
use cremona_core::qtau::QTau;

fn eisenstein() -> impl Strategy<Value = EisensteinInt> {
    (-1000i64..1000, -1000i64..1000).prop_map(|(a, b)| EisensteinInt::new(a, b))
}

fn qtau() -> impl Strategy<Value = QTau> {
    (-9i64..=9, -9i64..=9).prop_map(|(a, b)| QTau::from_ints(a, b))
}

fn nonzero_qtau() -> impl Strategy<Value = QTau> {
    qtau().prop_filter("nonzero", |c| !c.is_zero())
}

/// Homogeneous polynomial of the given degree with a few small terms.
fn homog(degree: u32) -> impl Strategy<Value = HomogPoly> {
    let exps = (0..=degree).prop_flat_map(move |i| {
        (Just(i), 0..=(degree - i)).prop_map(move |(i, j)| (i, j, degree - i - j))
    });
    proptest::collection::vec((exps, qtau()), 1..6)
        .prop_map(|terms| {
            HomogPoly::from_terms(terms.into_iter().map(|((i, j, k), c)| (i, j, k, c)))
        })
        .prop_filter("nonzero", |f| !f.is_zero())
}

fn cremona_tag() -> impl Strategy<Value = CremonaTag> {
    prop_oneof![Just(CremonaTag::Q1), Just(CremonaTag::Qtau), Just(CremonaTag::Qtau2)]
}

proptest! {
    #[test]
    fn eisenstein_ring_axioms(x in eisenstein(), y in eisenstein(), z in eisenstein()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }

    #[test]
    fn eisenstein_norm_multiplicative(x in eisenstein(), y in eisenstein()) {
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
    }

    #[test]
    fn eisenstein_division_round_trip(q in eisenstein(), y in eisenstein()) {
        prop_assume!(!y.is_zero());
        let x = &q * &y;
        prop_assert_eq!(x.exact_div(&y).unwrap(), q);
    }

    #[test]
    fn eisenstein_mod3_additive(x in eisenstein(), y in eisenstein()) {
        prop_assert_eq!((&x + &y).mod3_class(), (x.mod3_class() + y.mod3_class()) % 3);
    }

    #[test]
    fn substitution_is_multiplicative(
        f in homog(2),
        g in homog(3),
        tag in cremona_tag(),
    ) {
        let map = CremonaMap::new(tag);
        prop_assert_eq!(
            f.mul(&g).substitute(&map),
            f.substitute(&map).mul(&g.substitute(&map))
        );
    }

    #[test]
    fn substitution_is_additive(f in homog(3), g in homog(3), tag in cremona_tag()) {
        let map = CremonaMap::new(tag);
        prop_assert_eq!(
            f.add(&g).substitute(&map),
            f.substitute(&map).add(&g.substitute(&map))
        );
    }

    #[test]
    fn canonical_form_kills_scalars(f in homog(3), c in nonzero_qtau()) {
        prop_assert_eq!(f.canonical(), f.scale(&c).canonical());
    }

    #[test]
    fn linear_division_round_trip(f in homog(2), a in nonzero_qtau(), b in qtau(), c in qtau()) {
        let line = cremona_core::arrangement::Line::new([a, b, c]);
        let product = f.mul(&HomogPoly::from_line(&line));
        let quotient = product.exact_divide_linear(&line, 1).unwrap();
        prop_assert_eq!(quotient.canonical(), f.canonical());
    }

    #[test]
    fn parameter_transform_is_involutive(t in eisenstein(), tag in cremona_tag()) {
        prop_assert_eq!(tag.transform_parameter(&tag.transform_parameter(&t)), t);
    }

    #[test]
    fn coarse_transform_involutive(
        d in 1i64..60,
        m1 in 0i64..20,
        mt in 0i64..20,
        mt2 in 0i64..20,
        minf in 0i64..20,
        tag in cremona_tag(),
    ) {
        let Ok(c) = CoarseCurveData::new(d, m1, mt, mt2, minf) else {
            return Ok(());
        };
        if let Ok(once) = c.transform(tag) {
            prop_assert_eq!(once.transform(tag), Ok(c));
        }
    }

    #[test]
    fn fine_transform_involutive_and_consistent(
        d in 1i64..40,
        t1 in proptest::array::uniform3(0i64..14),
        tt in proptest::array::uniform3(0i64..14),
        tt2 in proptest::array::uniform3(0i64..14),
        tag in cremona_tag(),
    ) {
        let Ok(f) = FineCurveData::new(d, t1, tt, tt2) else {
            return Ok(());
        };
        if let Ok(once) = f.transform(tag) {
            prop_assert_eq!(once.transform(tag), Ok(f));
            // degree law: d' = 2d - sum of multiplicities at the base group
            let base: i64 = f.triple(tag.base_group()).iter().sum();
            prop_assert_eq!(once.d, 2 * f.d - base);
        }
        // collapsing constant triples commutes with the transform
        let flat = FineCurveData::new(d, [t1[0]; 3], [tt[0]; 3], [tt2[0]; 3]).unwrap();
        if let Some(coarse) = flat.collapse() {
            match (flat.transform(tag), coarse.transform(tag)) {
                (Ok(ff), Ok(cc)) => prop_assert_eq!(ff.collapse(), Some(cc)),
                (Err(_), Err(_)) => {}
                (a, b) => prop_assert!(false, "collapse mismatch: {:?} vs {:?}", a, b),
            }
        }
    }

    #[test]
    fn group_image_involutive(tag in cremona_tag()) {
        for g in cremona_core::arrangement::GroupLabel::ALL {
            prop_assert_eq!(tag.group_image(tag.group_image(g)), g);
        }
    }
}

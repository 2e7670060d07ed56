//! Exact coefficients: Laurent polynomials and rational functions in `q`.

mod field;
mod laurent;
mod rational;

pub use field::Field;
pub use laurent::LaurentPolynomial;
pub use rational::RationalScalar;

#[cfg(test)]
mod proptests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn laurent() -> impl Strategy<Value = LaurentPolynomial> {
        prop::collection::vec((-3i32..4, -4i64..5), 0..4).prop_map(|terms| {
            LaurentPolynomial::from_terms(
                terms.into_iter().map(|(e, c)| (e, BigRational::from_integer(c.into()))),
            )
        })
    }

    fn scalar() -> impl Strategy<Value = RationalScalar> {
        (laurent(), laurent()).prop_filter_map("zero denominator", |(n, d)| {
            RationalScalar::normalize(n, d).ok()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn canonical_form_ignores_common_factors(n in laurent(), d in laurent(), c in laurent()) {
            prop_assume!(!d.is_zero() && !c.is_zero());
            let a = RationalScalar::normalize(n.mul(&c), d.mul(&c)).unwrap();
            let b = RationalScalar::normalize(n, d).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !a.is_zero() {
                prop_assert_eq!(a.mul(&a.inv().unwrap()), RationalScalar::one());
            }
        }

        #[test]
        fn specialization_is_a_ring_map(a in scalar(), b in scalar()) {
            prop_assume!(a.is_regular_at_one() && b.is_regular_at_one());
            let (sa, sb) = (a.specialize_at_one().unwrap(), b.specialize_at_one().unwrap());
            prop_assert_eq!((&a + &b).specialize_at_one().unwrap(), &sa + &sb);
            prop_assert_eq!((&a * &b).specialize_at_one().unwrap(), sa * sb);
        }

        #[test]
        fn text_round_trip(a in scalar()) {
            let printed = a.to_string();
            let back: RationalScalar = printed.parse().unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_string(), printed);
        }
    }
}

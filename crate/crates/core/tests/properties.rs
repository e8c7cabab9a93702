mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::{random_element, ring, roots_differ_by_integer, roots_ratio_is_power, split_poly};
use crystalline::analysis::{simple_mult, simple_shift, Simplicity};
use crystalline::poly::LaurentPoly;
use crystalline::{FieldKind, Scalar};

const RINGS: [&str; 10] = [
    "weyl",
    "qweyl",
    "qplane",
    "cyclic-inv",
    "usl2",
    "uqsl2",
    "bavula-bekkert",
    "class3",
    "general-type",
    "rollup",
];

fn ring_name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(RINGS.to_vec())
}

/// Rationals in [−5, 5] with denominator at most 4.
fn small_root() -> impl Strategy<Value = BigRational> {
    (1i64..=4, -20i64..=20)
        .prop_map(|(den, num)| BigRational::new(BigInt::from(num), BigInt::from(den)))
        .prop_filter("in [-5, 5]", |r| r.abs() <= BigRational::from_integer(5.into()))
}

fn smallest_positive_difference(roots: &[BigRational]) -> Option<i64> {
    roots
        .iter()
        .flat_map(|r| roots.iter().map(move |s| s - r))
        .filter(|d| d.is_integer() && d.is_positive())
        .map(|d| i64::try_from(d.to_integer()).unwrap())
        .min()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(name in ring_name(), seed in any::<u64>()) {
        let r = ring(name);
        let mut rng = StdRng::seed_from_u64(seed);
        let x = random_element(&r, &mut rng, 2, 2);
        let y = random_element(&r, &mut rng, 2, 2);
        let z = random_element(&r, &mut rng, 2, 2);
        let lhs = r.mul(&r.mul(&x, &y).unwrap(), &z).unwrap();
        let rhs = r.mul(&x, &r.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplication_distributes(name in ring_name(), seed in any::<u64>()) {
        let r = ring(name);
        let mut rng = StdRng::seed_from_u64(seed);
        let x = random_element(&r, &mut rng, 2, 2);
        let y = random_element(&r, &mut rng, 2, 2);
        let z = random_element(&r, &mut rng, 2, 2);
        let lhs = r.mul(&x, &y.add(&z).unwrap()).unwrap();
        let rhs = r.mul(&x, &y).unwrap().add(&r.mul(&x, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn products_respect_the_grading(name in ring_name(), seed in any::<u64>()) {
        let r = ring(name);
        let mut rng = StdRng::seed_from_u64(seed);
        let x = random_element(&r, &mut rng, 1, 3);
        let y = random_element(&r, &mut rng, 1, 3);
        prop_assume!(!x.is_zero() && !y.is_zero());
        let (g, _) = x.terms().next().unwrap();
        let (h, _) = y.terms().next().unwrap();
        let gh = r.group().op(g, h);
        let p = r.mul(&x, &y).unwrap();
        // a domain: nonzero times nonzero stays nonzero, in degree gh
        prop_assert_eq!(p.terms().map(|(k, _)| k.clone()).collect::<Vec<_>>(), vec![gh]);
    }

    #[test]
    fn printing_then_parsing_is_the_identity(name in ring_name(), seed in any::<u64>()) {
        let r = ring(name);
        let mut rng = StdRng::seed_from_u64(seed);
        let x = random_element(&r, &mut rng, 3, 3);
        let back = r.parse(&x.to_string()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn parsed_products_match_ring_products(name in ring_name(), seed in any::<u64>()) {
        let r = ring(name);
        let mut rng = StdRng::seed_from_u64(seed);
        let x = random_element(&r, &mut rng, 2, 2);
        let y = random_element(&r, &mut rng, 2, 2);
        let parsed = r.parse(&format!("({x})*({y})")).unwrap();
        prop_assert_eq!(parsed, r.mul(&x, &y).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(160))]

    #[test]
    fn shift_simplicity_matches_root_differences(roots in prop::collection::vec(small_root(), 0..5)) {
        let a = split_poly(&roots);
        let v = simple_shift(&a).unwrap();
        let expect_simple = !roots_differ_by_integer(&roots);
        prop_assert_eq!(v.verdict == Simplicity::Simple, expect_simple, "a = {}: {}", a, v);
        if let Some(w) = &v.witness {
            prop_assert_eq!(Some(w.i), smallest_positive_difference(&roots));
            prop_assert!(w.shared.degree().unwrap_or(0) > 0);
            prop_assert!(a.exact_div(&w.shared).is_some());
        }
    }

    #[test]
    fn multiplicative_simplicity_matches_root_ratios(
        roots in prop::collection::vec(small_root(), 0..5),
        lambda in prop::sample::select(vec![(2i64, 1i64), (3, 1), (1, 2)]),
    ) {
        let lam = BigRational::new(lambda.0.into(), lambda.1.into());
        let nonzero: Vec<BigRational> = roots.iter().filter(|r| !r.is_zero()).cloned().collect();
        let a = LaurentPoly::from_poly(split_poly(&roots));
        let v = simple_mult(&a, &Scalar::rational(lambda.0, lambda.1)).unwrap();
        let expect_simple = !roots_ratio_is_power(&nonzero, &lam);
        prop_assert_eq!(v.verdict == Simplicity::Simple, expect_simple, "a = {}: {}", a, v);
    }
}

#[test]
fn laurent_monomials_are_simple() {
    let f = FieldKind::Rational;
    let a = LaurentPoly::monomial(Scalar::from_i64(3, f), -2);
    assert!(simple_mult(&a, &Scalar::from_i64(2, f)).unwrap().is_simple());
}

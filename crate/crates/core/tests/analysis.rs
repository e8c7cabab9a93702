mod common;

use common::{g1, ring, sigma_pow};
use crystalline::analysis::{classify, gwa_simplicity, simple_mult, subalgebra_member, Membership, Simplicity};
use crystalline::expr::parse_coeff;
use crystalline::gwa::ExampleSpec;
use crystalline::poly::LaurentPoly;
use crystalline::{Cocycle, Coeff, CrystalRing, FieldKind, Scalar};

fn usl2(lambda: &str) -> CrystalRing {
    ExampleSpec::from_params("usl2", &[("lambda".into(), lambda.into())])
        .unwrap()
        .build_unchecked()
        .unwrap()
}

fn gwa_a(r: &CrystalRing) -> Coeff {
    match r.cocycle() {
        Cocycle::Gwa(a) => a.clone(),
        _ => panic!("not a rank-one GWA"),
    }
}

/// {α(r, −r) : 1 ≤ |r| ≤ 3}
fn diagonal_gens(r: &CrystalRing) -> Vec<Coeff> {
    [-3, -2, -1, 1, 2, 3]
        .iter()
        .map(|&n| r.alpha_value(&g1(n), &g1(-n)).unwrap())
        .collect()
}

#[test]
fn usl2_is_simple_off_the_boundary_values() {
    for lambda in ["0", "3/4", "2", "15/4", "6", "35/4"] {
        let v = gwa_simplicity(&usl2(lambda)).unwrap();
        assert_eq!(v.verdict, Simplicity::NotSimple, "λ = {lambda}: {v}");
        assert!(v.witness.is_some(), "λ = {lambda}");
    }
    for lambda in ["1", "1/2", "-1", "5"] {
        let v = gwa_simplicity(&usl2(lambda)).unwrap();
        assert_eq!(v.verdict, Simplicity::Simple, "λ = {lambda}: {v}");
    }
}

#[test]
fn usl2_witness_index_tracks_the_root_gap() {
    // λ = (n² − 1)/4 gives roots (1 ± n)/2 of λ − t(t − 1), which differ by n
    for (n, lambda) in [(1, "0"), (2, "3/4"), (3, "2"), (4, "15/4"), (5, "6"), (6, "35/4")] {
        let v = gwa_simplicity(&usl2(lambda)).unwrap();
        assert_eq!(v.witness.unwrap().i, n, "λ = {lambda}");
    }
}

#[test]
fn simplicity_dispatch_on_other_catalog_rings() {
    assert!(gwa_simplicity(&ring("weyl")).unwrap().is_simple());
    assert!(gwa_simplicity(&ring("qweyl")).unwrap().verdict == Simplicity::NotSimple);
    // a = 27 t (t − 1/3)(t − 2/3): roots differ by fractions only
    assert!(gwa_simplicity(&ring("bavula-bekkert")).unwrap().is_simple());
    // quantum plane: t is a normal non-unit
    assert_eq!(gwa_simplicity(&ring("qplane")).unwrap().verdict, Simplicity::NotSimple);
    assert!(gwa_simplicity(&ring("general-type")).is_err());
}

#[test]
fn roots_of_unity_are_rejected() {
    let f = FieldKind::Rational;
    let a = LaurentPoly::from_poly(crystalline::poly::UniPoly::from_roots(f, &[Scalar::from_i64(2, f)]));
    for lambda in [1, -1] {
        let v = simple_mult(&a, &Scalar::from_i64(lambda, f)).unwrap();
        assert_eq!(v.verdict, Simplicity::NotSimple);
        assert!(v.to_string().contains("root of unity"), "{v}");
    }
}

#[test]
fn bavula_bekkert_shifts_of_a() {
    let r = ring("bavula-bekkert");
    let a = gwa_a(&r);
    let sigma = r.sigma(&g1(1));
    for k in 1..=4 {
        let expect = parse_coeff(&format!("27*(t - {k})*(t - {k} - 1/3)*(t - {k} - 2/3)"), r.domain()).unwrap();
        assert_eq!(sigma_pow(&sigma, &a, k), expect, "r = {k}");
    }
}

#[test]
fn bavula_bekkert_membership_depends_on_the_bound() {
    let r = ring("bavula-bekkert");
    let gens = diagonal_gens(&r);
    // σ(a) = α(1,−1) is one of the generators
    let sa = r.alpha_value(&g1(1), &g1(-1)).unwrap();
    assert!(subalgebra_member(&sa, &gens, 3).unwrap().is_member());
    // σ²(a) = α(2,−1) has no certificate up to degree 3 ...
    let target = r.alpha_value(&g1(2), &g1(-1)).unwrap();
    assert_eq!(target, sigma_pow(&r.sigma(&g1(1)), &gwa_a(&r), 2));
    let low = subalgebra_member(&target, &gens, 3).unwrap();
    assert_eq!(low.verdict, Membership::NonMemberUpToBound);
    assert_eq!(low.to_string(), "NON-MEMBER up to degree 3");
    // ... but cancellation among degree-6 products reaches it, and t itself
    let high = subalgebra_member(&target, &gens, 6).unwrap();
    assert!(high.is_member(), "{high}");
    let cert = high.certificate.as_ref().unwrap();
    assert_eq!(cert.expand(r.domain(), &gens), target);
    let t = parse_coeff("t", r.domain()).unwrap();
    assert!(subalgebra_member(&t, &gens, 6).unwrap().is_member());
}

#[test]
fn class3_generates_t() {
    let r = ring("class3");
    let a = gwa_a(&r);
    let a_prime = a.scale(&-&Scalar::q());
    let gens = vec![a_prime.clone(), a_prime.apply(&r.sigma(&g1(1))).unwrap()];
    let t = parse_coeff("t", r.domain()).unwrap();
    assert_eq!(
        subalgebra_member(&t, &gens, 1).unwrap().verdict,
        Membership::NonMemberUpToBound
    );
    let v = subalgebra_member(&t, &gens, 2).unwrap();
    assert!(v.is_member(), "{v}");
    assert_eq!(v.certificate.unwrap().expand(r.domain(), &gens), t);
}

#[test]
fn class3_ring_is_class3() {
    let report = classify(&ring("class3"), 4);
    assert!(report.class2.holds);
    assert!(report.class3.holds, "{report}");
}

#[test]
fn general_type_witness_and_classes() {
    let r = ring("general-type");
    let sigma = r.sigma(&g1(1));
    let mut gens = Vec::new();
    for n in -3..=3i64 {
        let base = r.alpha_value(&g1(n), &g1(-n)).unwrap();
        for k in -3..=3 {
            gens.push(sigma_pow(&sigma, &base, k));
        }
    }
    let target = r.alpha_value(&g1(1), &g1(1)).unwrap();
    let p = parse_coeff("t^2 + 1", r.domain()).unwrap();
    assert_eq!(target, p.apply(&sigma).unwrap());
    let v = subalgebra_member(&target, &gens, 2).unwrap();
    assert_eq!(v.verdict, Membership::NonMemberUpToBound, "{v}");

    let report = classify(&r, 4);
    assert!(!report.class3.holds, "{report}");
    assert!(report.class3.witness.is_some());
    // the shifts σⁿ(p), n ≠ 0, span every polynomial of degree ≤ 2
    assert!(report.class1.holds, "{report}");
}

#[test]
fn catalog_classes_on_the_default_window() {
    for name in ["weyl", "qplane", "usl2", "cyclic-inv", "rollup"] {
        let report = classify(&ring(name), 4);
        assert!(
            report.class1.holds && report.class2.holds && report.class3.holds,
            "{name}: {report}"
        );
    }
}

#[test]
fn degree_bound_is_enforced() {
    let r = ring("weyl");
    let t2 = parse_coeff("t^2", r.domain()).unwrap();
    let t = parse_coeff("t", r.domain()).unwrap();
    assert!(subalgebra_member(&t2, &[t], 1).is_err());
}

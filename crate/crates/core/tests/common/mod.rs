//! Shared oracles and generators for the integration tests.
#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::Rng;

use crystalline::coeff::{Carrier, Coeff, CoeffDomain};
use crystalline::gwa::{example_names, ExampleSpec};
use crystalline::poly::AffineAuto;
use crystalline::{CrystalRing, GroupElt, RingElement, Scalar};

/// σ^k applied to `c` by repeated substitution (no closed-form powers).
pub fn sigma_pow(sigma: &AffineAuto, c: &Coeff, k: i64) -> Coeff {
    let step = if k >= 0 { sigma.clone() } else { sigma.inverse() };
    (0..k.unsigned_abs()).fold(c.clone(), |acc, _| acc.apply(&step).unwrap())
}

/// α(n, m) of a rank-one GWA computed from generator words alone:
/// u_n = (X⁺)^n or (X⁻)^{|n|}; adjacent X⁺X⁻ = σ(a) and X⁻X⁺ = a are
/// contracted left to right, moving each coefficient past the prefix
/// (r·prefix = prefix·σ^{−d}(r), i.e. prefix·r = σ^d(r)·prefix).
pub fn chain_alpha(sigma: &AffineAuto, a: &Coeff, n: i64, m: i64) -> Coeff {
    let letter = |k: i64| if k > 0 { 1i64 } else { -1 };
    let mut word: Vec<i64> = std::iter::repeat_n(letter(n), n.unsigned_abs() as usize)
        .chain(std::iter::repeat_n(letter(m), m.unsigned_abs() as usize))
        .collect();
    let mut coeff = a.domain().one();
    while let Some(i) = (0..word.len().saturating_sub(1)).find(|&i| word[i] != word[i + 1]) {
        let pair = if word[i] == 1 {
            a.apply(sigma).unwrap()
        } else {
            a.clone()
        };
        let d: i64 = word[..i].iter().sum();
        coeff = coeff.mul(&sigma_pow(sigma, &pair, d));
        word.drain(i..i + 2);
    }
    coeff
}

pub fn catalog() -> Vec<(&'static str, CrystalRing)> {
    example_names()
        .iter()
        .map(|n| (*n, ExampleSpec::default_for(n).unwrap().build_unchecked().unwrap()))
        .collect()
}

pub fn ring(name: &str) -> CrystalRing {
    ExampleSpec::default_for(name).unwrap().build_unchecked().unwrap()
}

pub fn g1(n: i64) -> GroupElt {
    GroupElt::Free(vec![n])
}

/// Small random coefficient: up to three terms with entries in [−3, 3]
/// (a t⁻¹ term on Laurent carriers, every variable on multivariate ones).
pub fn random_coeff(domain: CoeffDomain, rng: &mut StdRng) -> Coeff {
    let s = |rng: &mut StdRng| Scalar::from_i64(rng.gen_range(-3..=3), domain.field);
    let mut c = domain.constant(s(rng));
    for i in 0..domain.carrier.arity() {
        c = c.add(&domain.var(i).unwrap().scale(&s(rng)));
    }
    c = c.add(&domain.var(0).unwrap().pow(2).scale(&s(rng)));
    if domain.carrier == Carrier::Laurent {
        c = c.add(&domain.var_pow(0, -1).unwrap().scale(&s(rng)));
    }
    c
}

/// Random element with up to `max_terms` components in the window.
pub fn random_element(ring: &CrystalRing, rng: &mut StdRng, max_terms: usize, radius: i64) -> RingElement {
    let window = ring.group().window(radius);
    let n = rng.gen_range(1..=max_terms);
    let terms = (0..n)
        .map(|_| {
            let g = window[rng.gen_range(0..window.len())].clone();
            (g, random_coeff(ring.domain(), rng))
        })
        .collect();
    ring.element(terms).unwrap()
}

/// Shift criterion by brute force on split inputs: some pair of roots
/// differs by a nonzero integer.
pub fn roots_differ_by_integer(roots: &[BigRational]) -> bool {
    roots.iter().any(|r| {
        roots.iter().any(|s| {
            let d = r - s;
            !d.is_zero() && d.is_integer()
        })
    })
}

/// Multiplicative criterion by brute force: some ratio of nonzero roots is
/// λ^k with k ≠ 0 (|λ| ≠ 1 rational).
pub fn roots_ratio_is_power(roots: &[BigRational], lambda: &BigRational) -> bool {
    roots.iter().any(|r| {
        roots.iter().any(|s| {
            let ratio = r / s;
            let mut p = lambda.clone();
            // |λ^k| passes any ratio of small roots long before k = 40
            for _ in 0..40 {
                if p == ratio || p.recip() == ratio {
                    return true;
                }
                p *= lambda;
            }
            false
        })
    })
}

/// ∏ (t − r_j) over ℚ.
pub fn split_poly(roots: &[BigRational]) -> crystalline::poly::UniPoly {
    let f = crystalline::FieldKind::Rational;
    let rs: Vec<Scalar> = roots.iter().map(|r| Scalar::from_rational(r, f).unwrap()).collect();
    crystalline::poly::UniPoly::from_roots(f, &rs)
}

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{FieldKind, Scalar};

use super::{poly_gcd, UniPoly};

/// `f / gcd(f, f')`, made monic.
pub fn square_free_part(f: &UniPoly) -> Result<UniPoly> {
    if f.is_constant() {
        return Ok(f.monic());
    }
    let g = poly_gcd(f, &f.derivative())?;
    Ok(f.exact_div(&g).expect("gcd divides f").monic())
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return Vec::new();
    }
    let factors = num_prime::nt_funcs::factorize(n.to_biguint().expect("nonnegative"));
    let mut divs = vec![BigUint::one()];
    for (p, k) in factors {
        let mut next = Vec::with_capacity(divs.len() * (k + 1));
        for d in &divs {
            let mut pk = d.clone();
            for _ in 0..=k {
                next.push(pk.clone());
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.into_iter().map(|d| BigInt::from_biguint(Sign::Plus, d)).collect()
}

/// `Σ c_k p^k q^(n−k)`, which vanishes iff `p/q` is a root.
fn homogeneous_eval(coeffs: &[BigInt], p: &BigInt, q: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    let mut qpow = BigInt::one();
    for c in coeffs.iter().rev() {
        acc = acc * p + c * &qpow;
        qpow *= q;
    }
    acc
}

/// The distinct rational roots of a nonzero polynomial over ℚ, ascending.
///
/// Candidates come from the rational-root theorem applied to the primitive
/// integer lift of the square-free part; each is confirmed exactly.
pub fn rational_roots(f: &UniPoly) -> Result<Vec<BigRational>> {
    if f.field() != FieldKind::Rational {
        return Err(Error::FieldUnsupported(format!(
            "rational roots need field Q, got {}",
            f.field()
        )));
    }
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let sf = square_free_part(f)?;
    let mut roots = BTreeSet::new();
    let mut body = sf.clone();
    if !body.is_zero() && body.coeff(0).is_zero() {
        roots.insert(BigRational::zero());
        body = body
            .exact_div(&UniPoly::var(FieldKind::Rational))
            .expect("t divides a polynomial with zero constant term");
    }
    if body.degree().unwrap_or(0) > 0 {
        let ints = body.integer_lift().expect("rational field");
        let lead = ints.last().expect("nonzero").clone();
        let constant = ints[0].clone();
        let dens = divisors(&lead);
        for p in divisors(&constant) {
            for q in &dens {
                if p.gcd(q) != BigInt::one() {
                    continue;
                }
                for sp in [p.clone(), -p.clone()] {
                    if homogeneous_eval(&ints, &sp, q).is_zero() {
                        roots.insert(BigRational::new(sp, q.clone()));
                    }
                }
            }
        }
    }
    // exact confirmation against the original input
    let confirmed: Vec<BigRational> = roots
        .into_iter()
        .filter(|r| f.eval(&Scalar::Rational(r.clone())).is_zero())
        .collect();
    Ok(confirmed)
}

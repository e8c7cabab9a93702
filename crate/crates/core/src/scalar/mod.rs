//! Exact scalar fields: ℚ, prime fields F_p and the rational-function
//! field ℚ(q) in one transcendental parameter.

mod qpoly;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use qpoly::{QPoly, RatFunc};

use crate::error::{Error, Result};

/// Which field a scalar (or a polynomial) lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    Rational,
    Prime(u64),
    RationalFunction,
}

impl FieldKind {
    /// Prime field with a validated modulus.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldKind::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldKind::Prime(p) => *p,
            _ => 0,
        }
    }

    /// Parses the document tags "Q", "Fp:<p>" and "Qq".
    pub fn parse_tag(tag: &str) -> Result<Self> {
        match tag {
            "Q" => Ok(FieldKind::Rational),
            "Qq" => Ok(FieldKind::RationalFunction),
            _ => {
                let p = tag
                    .strip_prefix("Fp:")
                    .and_then(|s| s.parse::<u64>().ok())
                    .ok_or_else(|| Error::Document(format!("unknown field tag '{tag}'")))?;
                FieldKind::prime(p)
            }
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "Fp:{p}"),
            FieldKind::RationalFunction => write!(f, "Qq"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of one of the supported exact fields, always in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
    RationalFunction(RatFunc),
}

/// The four field operations, as accepted by [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary field arithmetic.
pub fn field_arith(a: &Scalar, b: &Scalar, op: FieldOp) -> Result<Scalar> {
    a.same_field(b)?;
    match op {
        FieldOp::Add => Ok(a + b),
        FieldOp::Sub => Ok(a - b),
        FieldOp::Mul => Ok(a * b),
        FieldOp::Div => a.checked_div(b),
    }
}

/// Integer power with negative exponents allowed for nonzero bases.
pub fn scalar_pow(a: &Scalar, n: i64) -> Result<Scalar> {
    a.pow(n)
}

impl Scalar {
    pub fn zero(field: FieldKind) -> Self {
        Self::from_i64(0, field)
    }

    pub fn one(field: FieldKind) -> Self {
        Self::from_i64(1, field)
    }

    pub fn from_i64(n: i64, field: FieldKind) -> Self {
        Self::from_bigint(BigInt::from(n), field)
    }

    pub fn from_bigint(n: BigInt, field: FieldKind) -> Self {
        match field {
            FieldKind::Rational => Scalar::Rational(BigRational::from_integer(n)),
            FieldKind::Prime(p) => Scalar::Prime {
                value: reduce_mod(&n, p),
                modulus: p,
            },
            FieldKind::RationalFunction => {
                Scalar::RationalFunction(RatFunc::from_rational(BigRational::from_integer(n)))
            }
        }
    }

    /// Image of a rational number; fails in F_p when the denominator vanishes.
    pub fn from_rational(r: &BigRational, field: FieldKind) -> Result<Self> {
        match field {
            FieldKind::Rational => Ok(Scalar::Rational(r.clone())),
            FieldKind::RationalFunction => Ok(Scalar::RationalFunction(RatFunc::from_rational(r.clone()))),
            FieldKind::Prime(_) => {
                let n = Self::from_bigint(r.numer().clone(), field);
                let d = Self::from_bigint(r.denom().clone(), field);
                n.checked_div(&d)
            }
        }
    }

    pub fn rational(n: i64, d: i64) -> Self {
        Scalar::Rational(BigRational::new(n.into(), d.into()))
    }

    /// The transcendental `q` of ℚ(q).
    pub fn q() -> Self {
        Scalar::RationalFunction(RatFunc::q())
    }

    pub fn field(&self) -> FieldKind {
        match self {
            Scalar::Rational(_) => FieldKind::Rational,
            Scalar::Prime { modulus, .. } => FieldKind::Prime(*modulus),
            Scalar::RationalFunction(_) => FieldKind::RationalFunction,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
            Scalar::RationalFunction(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
            Scalar::RationalFunction(f) => f.is_one(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// True when the canonical rendering starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Prime { .. } => false,
            Scalar::RationalFunction(f) => f.leading_is_negative(),
        }
    }

    pub fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::MixedField(self.field().to_string(), other.field().to_string()))
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Prime { value, modulus } => {
                if *value == 0 {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Prime {
                        value: pow_mod(*value, modulus - 2, *modulus),
                        modulus: *modulus,
                    })
                }
            }
            Scalar::RationalFunction(f) => f.inv().map(Scalar::RationalFunction).ok_or(Error::DivisionByZero),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, n: i64) -> Result<Scalar> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Scalar::one(self.field());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Parses the canonical text form (or any scalar expression) in `field`.
    pub fn parse(src: &str, field: FieldKind) -> Result<Scalar> {
        crate::expr::parse_scalar(src, field)
    }

    fn rendered_needs_parens(&self) -> bool {
        match self {
            Scalar::RationalFunction(f) => {
                let s = f.to_string();
                s.contains(' ') || s.contains('/') || s.contains('*') || s.contains('^')
            }
            _ => false,
        }
    }

    /// Rendering of the absolute value suitable as a product factor:
    /// parenthesised when it is a compound ℚ(q) expression.
    pub(crate) fn factor_text(&self) -> String {
        let s = self.to_string();
        if self.rendered_needs_parens() {
            format!("({s})")
        } else {
            s
        }
    }
}

fn reduce_mod(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((n % &m) + &m) % &m;
    r.to_u64().expect("residue fits in u64")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn mixed(a: &Scalar, b: &Scalar) -> ! {
    panic!("mixed-field scalar arithmetic: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { value: a, modulus }, Scalar::Prime { value: b, modulus: m2 }) if modulus == m2 => {
                Scalar::Prime {
                    value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            (Scalar::RationalFunction(a), Scalar::RationalFunction(b)) => Scalar::RationalFunction(a.add(b)),
            _ => mixed(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
            Scalar::RationalFunction(f) => Scalar::RationalFunction(f.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { value: a, modulus }, Scalar::Prime { value: b, modulus: m2 }) if modulus == m2 => {
                Scalar::Prime {
                    value: mul_mod(*a, *b, *modulus),
                    modulus: *modulus,
                }
            }
            (Scalar::RationalFunction(a), Scalar::RationalFunction(b)) => Scalar::RationalFunction(a.mul(b)),
            _ => mixed(self, rhs),
        }
    }
}

/// Panics on division by zero; use [`Scalar::checked_div`] for a `Result`.
impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("scalar division")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Prime { value, .. } => write!(f, "{value}"),
            Scalar::RationalFunction(r) => write!(f, "{r}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rational_sum() {
        let s = field_arith(&Scalar::rational(1, 2), &Scalar::rational(1, 3), FieldOp::Add).unwrap();
        assert_eq!(s, Scalar::rational(5, 6));
        assert_eq!(s.to_string(), "5/6");
        assert_eq!(Scalar::rational(4, 2).to_string(), "2");
    }

    #[test]
    fn prime_product() {
        let f7 = FieldKind::prime(7).unwrap();
        let r = field_arith(&Scalar::from_i64(3, f7), &Scalar::from_i64(5, f7), FieldOp::Mul).unwrap();
        assert_eq!(r, Scalar::one(f7));
        assert_eq!(Scalar::from_i64(-1, f7).to_string(), "6");
    }

    #[test]
    fn ratfunc_cancellation() {
        let q = Scalar::q();
        let one = Scalar::one(FieldKind::RationalFunction);
        let num = &(&q * &q) - &one;
        let den = &q - &one;
        let r = field_arith(&num, &den, FieldOp::Div).unwrap();
        assert_eq!(r, &q + &one);
        assert_eq!(r.to_string(), "q + 1");
    }

    #[test]
    fn ratfunc_denominator_is_monic() {
        let q = Scalar::q();
        let two = Scalar::from_i64(2, FieldKind::RationalFunction);
        let r = &Scalar::one(FieldKind::RationalFunction) / &(&two * &q);
        assert_eq!(r.to_string(), "(1/2)/(q)");
    }

    #[test]
    fn mixed_fields_rejected() {
        let e = field_arith(&Scalar::rational(1, 2), &Scalar::q(), FieldOp::Add).unwrap_err();
        assert!(matches!(e, Error::MixedField(..)));
    }

    #[test]
    fn division_by_zero() {
        let z = Scalar::zero(FieldKind::Rational);
        assert_eq!(
            field_arith(&Scalar::rational(1, 1), &z, FieldOp::Div),
            Err(Error::DivisionByZero)
        );
        assert_eq!(scalar_pow(&z, -1), Err(Error::DivisionByZero));
    }

    #[test]
    fn powers() {
        assert_eq!(scalar_pow(&Scalar::rational(2, 1), 3).unwrap(), Scalar::rational(8, 1));
        let q = Scalar::q();
        let r = scalar_pow(&q, -2).unwrap();
        assert_eq!(&r * &(&q * &q), Scalar::one(FieldKind::RationalFunction));
        assert_eq!(r.to_string(), "(1)/(q^2)");
        assert!(scalar_pow(&Scalar::rational(-7, 3), 0).unwrap().is_one());
    }

    #[test]
    fn prime_validation() {
        assert!(FieldKind::prime(7).is_ok());
        assert_eq!(FieldKind::prime(9), Err(Error::NotPrime(9)));
        assert_eq!(FieldKind::prime(1), Err(Error::NotPrime(1)));
    }

    fn small_rational() -> impl Strategy<Value = Scalar> {
        (-30i64..30, 1i64..12).prop_map(|(n, d)| Scalar::rational(n, d))
    }

    fn small_ratfunc() -> impl Strategy<Value = Scalar> {
        (
            prop::collection::vec(-4i64..5, 1..4),
            prop::collection::vec(-4i64..5, 1..3),
        )
            .prop_filter_map("nonzero denominator", |(n, d)| {
                let np = QPoly::from_coeffs(n.into_iter().map(|c| BigRational::from_integer(c.into())).collect());
                let dp = QPoly::from_coeffs(d.into_iter().map(|c| BigRational::from_integer(c.into())).collect());
                (!dp.is_zero()).then(|| Scalar::RationalFunction(RatFunc::new(np, dp)))
            })
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in small_rational(), b in small_rational(), c in small_rational()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn ratfunc_field_axioms(a in small_ratfunc(), b in small_ratfunc(), c in small_ratfunc()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn ratfunc_canonical_form_unique(n in prop::collection::vec(-4i64..5, 1..4), d in prop::collection::vec(-4i64..5, 1..3), k in prop::collection::vec(-3i64..4, 1..3)) {
            // (n·k)/(d·k) must reduce to the same payload as n/d
            let to_q = |v: &[i64]| QPoly::from_coeffs(v.iter().map(|c| BigRational::from_integer((*c).into())).collect());
            let (np, dp, kp) = (to_q(&n), to_q(&d), to_q(&k));
            prop_assume!(!dp.is_zero() && !kp.is_zero());
            let a = RatFunc::new(np.clone(), dp.clone());
            let b = RatFunc::new(np.mul(&kp), dp.mul(&kp));
            prop_assert_eq!(a, b);
        }

        #[test]
        fn fermat_little(a in 0u64..7, p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])) {
            let f = FieldKind::prime(p).unwrap();
            let x = Scalar::from_i64(a as i64, f);
            prop_assert_eq!(x.pow(p as i64).unwrap(), x);
        }
    }
}

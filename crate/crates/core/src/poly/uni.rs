use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{FieldKind, Scalar};

use super::write_terms;

/// Dense univariate polynomial over one scalar field, lowest degree first.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is
/// the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: FieldKind,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    /// Checked constructor: every coefficient must belong to `field`.
    pub fn new(field: FieldKind, coeffs: Vec<Scalar>) -> Result<Self> {
        for c in &coeffs {
            if c.field() != field {
                return Err(Error::MixedField(field.to_string(), c.field().to_string()));
            }
        }
        Ok(Self::from_vec(field, coeffs))
    }

    pub(crate) fn from_vec(field: FieldKind, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn from_i64s(field: FieldKind, coeffs: &[i64]) -> Self {
        Self::from_vec(field, coeffs.iter().map(|&c| Scalar::from_i64(c, field)).collect())
    }

    /// `∏ (t − r)` over the given roots.
    pub fn from_roots(field: FieldKind, roots: &[Scalar]) -> Self {
        roots.iter().fold(Self::one(field), |acc, r| {
            acc.mul(&Self::from_vec(field, vec![-r, Scalar::one(field)]))
        })
    }

    pub fn zero(field: FieldKind) -> Self {
        UniPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: FieldKind) -> Self {
        Self::constant(Scalar::one(field))
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_vec(c.field(), vec![c])
    }

    /// The variable `t`.
    pub fn var(field: FieldKind) -> Self {
        Self::monomial(Scalar::one(field), 1)
    }

    pub fn monomial(c: Scalar, k: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![Scalar::zero(field); k + 1];
        coeffs[k] = c;
        Self::from_vec(field, coeffs)
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_vec(self.field, coeffs)
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let mut coeffs = vec![Scalar::zero(self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Self::from_vec(self.field, coeffs)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_vec(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.field), |acc, _| acc.mul(self))
    }

    /// Multiply by `t^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Scalar::zero(self.field); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::from_vec(self.field, coeffs)
    }

    /// Euclidean division. Fails only on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(self.field), self.clone()));
        }
        let lead_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(self.field); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * b);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_vec(self.field, quot), Self::from_vec(self.field, rem)))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &Scalar::from_i64(k as i64, self.field))
            .collect();
        Self::from_vec(self.field, coeffs)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(self.field), |acc, c| &(&acc * x) + c)
    }

    /// Substitution `t ↦ scale·t + shift`.
    pub fn compose_affine(&self, scale: &Scalar, shift: &Scalar) -> Self {
        if shift.is_zero() {
            // pure scaling: c_k ↦ c_k·scale^k
            let mut power = Scalar::one(self.field);
            let mut coeffs = Vec::with_capacity(self.coeffs.len());
            for c in &self.coeffs {
                coeffs.push(c * &power);
                power = &power * scale;
            }
            return Self::from_vec(self.field, coeffs);
        }
        let lin = Self::from_vec(self.field, vec![shift.clone(), scale.clone()]);
        self.coeffs.iter().rev().fold(Self::zero(self.field), |acc, c| {
            acc.mul(&lin).add(&Self::constant(c.clone()))
        })
    }

    /// Substitution `t ↦ g(t)`.
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(self.field), |acc, c| {
            acc.mul(g).add(&Self::constant(c.clone()))
        })
    }

    /// Rational coefficients, when the field is ℚ.
    pub fn rational_coeffs(&self) -> Option<Vec<BigRational>> {
        self.coeffs.iter().map(|c| c.as_rational().cloned()).collect()
    }

    /// Primitive integer polynomial with the same roots (field ℚ only).
    pub fn integer_lift(&self) -> Option<Vec<BigInt>> {
        let rs = self.rational_coeffs()?;
        let lcm = rs
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let ints: Vec<BigInt> = rs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let content = ints
            .iter()
            .fold(BigInt::from(0), |acc, c| num_integer::Integer::gcd(&acc, c));
        if content > BigInt::from(1) {
            Some(ints.iter().map(|c| c / &content).collect())
        } else {
            Some(ints)
        }
    }

    pub(crate) fn write_in(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let mono = match k {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{k}"),
                };
                (c.clone(), mono)
            });
        write_terms(f, terms)
    }
}

/// Monic greatest common divisor. `gcd(0, 0)` is rejected.
pub fn poly_gcd(f: &UniPoly, g: &UniPoly) -> Result<UniPoly> {
    if f.field != g.field {
        return Err(Error::MixedField(f.field.to_string(), g.field.to_string()));
    }
    if f.is_zero() && g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b)?;
        a = b;
        b = r;
    }
    Ok(a.monic())
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_in(f, "t")
    }
}

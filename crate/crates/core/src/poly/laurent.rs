use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{FieldKind, Scalar};

use super::{write_terms, UniPoly};

/// Laurent polynomial `t^low · body(t)` with `body(0) ≠ 0`.
///
/// The zero polynomial has an empty body and `low = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    low: i64,
    body: UniPoly,
}

impl LaurentPoly {
    pub fn new(low: i64, body: UniPoly) -> Self {
        if body.is_zero() {
            return LaurentPoly { low: 0, body };
        }
        let v = body.coeffs().iter().take_while(|c| c.is_zero()).count();
        let body = if v == 0 {
            body
        } else {
            UniPoly::from_vec(body.field(), body.coeffs()[v..].to_vec())
        };
        LaurentPoly {
            low: low + v as i64,
            body,
        }
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms(field: FieldKind, terms: &[(i64, Scalar)]) -> Result<Self> {
        let Some(low) = terms.iter().map(|(e, _)| *e).min() else {
            return Ok(Self::zero(field));
        };
        let high = terms.iter().map(|(e, _)| *e).max().unwrap_or(low);
        let mut coeffs = vec![Scalar::zero(field); (high - low + 1) as usize];
        for (e, c) in terms {
            if c.field() != field {
                return Err(Error::MixedField(field.to_string(), c.field().to_string()));
            }
            let k = (e - low) as usize;
            coeffs[k] = &coeffs[k] + c;
        }
        Ok(Self::new(low, UniPoly::from_vec(field, coeffs)))
    }

    pub fn from_poly(p: UniPoly) -> Self {
        Self::new(0, p)
    }

    pub fn zero(field: FieldKind) -> Self {
        LaurentPoly {
            low: 0,
            body: UniPoly::zero(field),
        }
    }

    pub fn one(field: FieldKind) -> Self {
        Self::from_poly(UniPoly::one(field))
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    /// `c · t^k` for any integer `k`.
    pub fn monomial(c: Scalar, k: i64) -> Self {
        Self::new(k, UniPoly::constant(c))
    }

    pub fn field(&self) -> FieldKind {
        self.body.field()
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.body.is_one()
    }

    /// Lowest exponent (the t-adic valuation); 0 for zero.
    pub fn low(&self) -> i64 {
        self.low
    }

    /// The polynomial part after stripping the unit `t^low`.
    pub fn body(&self) -> &UniPoly {
        &self.body
    }

    /// Highest exponent, `None` for zero.
    pub fn high(&self) -> Option<i64> {
        self.body.degree().map(|d| self.low + d as i64)
    }

    /// Coefficient of `t^k`.
    pub fn coeff(&self, k: i64) -> Scalar {
        if k < self.low {
            return Scalar::zero(self.field());
        }
        self.body.coeff((k - self.low) as usize)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> + '_ {
        self.body
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.body.leading()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let a = self.body.shift_up((self.low - low) as usize);
        let b = other.body.shift_up((other.low - low) as usize);
        Self::new(low, a.add(&b))
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            low: self.low,
            body: self.body.neg(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.low + other.low, self.body.mul(&other.body))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.low, self.body.scale(c))
    }

    /// Exact quotient in K[t, t⁻¹], if it exists.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let q = self.body.exact_div(&other.body)?;
        Some(Self::new(self.low - other.low, q))
    }

    /// The substitution `t ↦ λt`.
    pub fn scale_var(&self, lambda: &Scalar) -> Result<Self> {
        let factor = lambda.pow(self.low)?;
        Ok(Self::new(
            self.low,
            self.body
                .compose_affine(lambda, &Scalar::zero(self.field()))
                .scale(&factor),
        ))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(i64, Scalar)> = self.terms().map(|(e, c)| (e, c.clone())).collect();
        terms.reverse();
        write_terms(
            f,
            terms.into_iter().map(|(e, c)| {
                let mono = match e {
                    0 => String::new(),
                    1 => "t".to_string(),
                    _ => format!("t^{e}"),
                };
                (c, mono)
            }),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldKind = FieldKind::Rational;

    fn one() -> Scalar {
        Scalar::one(Q)
    }

    #[test]
    fn square_of_t_plus_inverse() {
        let f = LaurentPoly::from_terms(Q, &[(1, one()), (-1, one())]).unwrap();
        let sq = f.mul(&f);
        let expect = LaurentPoly::from_terms(Q, &[(2, one()), (0, Scalar::rational(2, 1)), (-2, one())]).unwrap();
        assert_eq!(sq, expect);
        assert_eq!(sq.to_string(), "t^2 + 2 + t^-2");
    }

    #[test]
    fn scaling_inverse_power() {
        let lam = Scalar::rational(3, 1);
        let tinv = LaurentPoly::monomial(one(), -1);
        let img = tinv.scale_var(&lam).unwrap();
        assert_eq!(img, LaurentPoly::monomial(Scalar::rational(1, 3), -1));
    }

    #[test]
    fn cancellation_normalises_valuation() {
        let a = LaurentPoly::from_terms(Q, &[(-1, one()), (0, one())]).unwrap();
        let b = LaurentPoly::monomial(-one(), -1);
        let s = a.add(&b);
        assert_eq!(s, LaurentPoly::one(Q));
        assert_eq!(s.low(), 0);
        assert_eq!(
            a.exact_div(&LaurentPoly::monomial(one(), -1)).unwrap().to_string(),
            "t + 1"
        );
    }
}

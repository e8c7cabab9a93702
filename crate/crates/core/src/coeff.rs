//! The degree-zero coefficient ring A₀: one of K[t], K[t, t⁻¹] or
//! K[t₁ … tₙ], behind a single value type.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{AffineAuto, LaurentPoly, MultiPoly, UniPoly};
use crate::scalar::{FieldKind, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Carrier {
    Poly,
    Laurent,
    Multi(usize),
}

impl Carrier {
    pub fn arity(&self) -> usize {
        match self {
            Carrier::Multi(n) => *n,
            _ => 1,
        }
    }

    pub fn parse_tag(tag: &str) -> Result<Self> {
        match tag {
            "poly" => Ok(Carrier::Poly),
            "laurent" => Ok(Carrier::Laurent),
            _ => tag
                .strip_prefix("multi:")
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| n >= 1)
                .map(Carrier::Multi)
                .ok_or_else(|| Error::Document(format!("unknown carrier '{tag}'"))),
        }
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Carrier::Poly => write!(f, "poly"),
            Carrier::Laurent => write!(f, "laurent"),
            Carrier::Multi(n) => write!(f, "multi:{n}"),
        }
    }
}

/// Carrier kind plus scalar field: everything needed to build coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CoeffDomain {
    pub carrier: Carrier,
    pub field: FieldKind,
}

impl CoeffDomain {
    pub fn new(carrier: Carrier, field: FieldKind) -> Self {
        CoeffDomain { carrier, field }
    }

    pub fn poly(field: FieldKind) -> Self {
        Self::new(Carrier::Poly, field)
    }

    pub fn zero(&self) -> Coeff {
        match self.carrier {
            Carrier::Poly => Coeff::Poly(UniPoly::zero(self.field)),
            Carrier::Laurent => Coeff::Laurent(LaurentPoly::zero(self.field)),
            Carrier::Multi(n) => Coeff::Multi(MultiPoly::zero(self.field, n)),
        }
    }

    pub fn one(&self) -> Coeff {
        self.constant(Scalar::one(self.field))
    }

    pub fn constant(&self, c: Scalar) -> Coeff {
        match self.carrier {
            Carrier::Poly => Coeff::Poly(UniPoly::constant(c)),
            Carrier::Laurent => Coeff::Laurent(LaurentPoly::constant(c)),
            Carrier::Multi(n) => Coeff::Multi(MultiPoly::constant(c, n)),
        }
    }

    /// Variable `t` (index 0) or `t_{i+1}` for multivariate carriers.
    pub fn var(&self, i: usize) -> Result<Coeff> {
        match self.carrier {
            Carrier::Poly if i == 0 => Ok(Coeff::Poly(UniPoly::var(self.field))),
            Carrier::Laurent if i == 0 => Ok(Coeff::Laurent(LaurentPoly::monomial(Scalar::one(self.field), 1))),
            Carrier::Multi(n) if i < n => Ok(Coeff::Multi(MultiPoly::var(self.field, n, i))),
            _ => Err(Error::ArityMismatch(self.carrier.arity(), i + 1)),
        }
    }

    /// `t^k`, with negative `k` allowed only on Laurent carriers.
    pub fn var_pow(&self, i: usize, k: i64) -> Result<Coeff> {
        if k < 0 {
            return match self.carrier {
                Carrier::Laurent if i == 0 => Ok(Coeff::Laurent(LaurentPoly::monomial(Scalar::one(self.field), k))),
                _ => Err(Error::CarrierMismatch(format!(
                    "negative power of a variable needs a Laurent carrier, found {}",
                    self.carrier
                ))),
            };
        }
        Ok(self.var(i)?.pow(k as u32))
    }

    pub fn identity_auto(&self) -> AffineAuto {
        AffineAuto::identity(self.field, self.carrier.arity())
    }

    /// Checks that an automorphism is usable on this carrier.
    pub fn check_auto(&self, phi: &AffineAuto) -> Result<()> {
        if phi.field() != self.field {
            return Err(Error::MixedField(self.field.to_string(), phi.field().to_string()));
        }
        if phi.arity() != self.carrier.arity() {
            return Err(Error::ArityMismatch(self.carrier.arity(), phi.arity()));
        }
        if self.carrier == Carrier::Laurent && !phi.is_pure_scaling() {
            return Err(Error::InvalidAutomorphism("Laurent carriers admit only t ↦ λt".into()));
        }
        Ok(())
    }

    pub fn check(&self, c: &Coeff) -> Result<()> {
        if c.domain() == *self {
            Ok(())
        } else {
            Err(Error::CarrierMismatch(format!(
                "expected {} over {}, found {} over {}",
                self.carrier,
                self.field,
                c.domain().carrier,
                c.domain().field
            )))
        }
    }
}

/// A coefficient in A₀.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Poly(UniPoly),
    Laurent(LaurentPoly),
    Multi(MultiPoly),
}

macro_rules! binop {
    ($name:ident) => {
        pub fn $name(&self, other: &Coeff) -> Coeff {
            match (self, other) {
                (Coeff::Poly(a), Coeff::Poly(b)) => Coeff::Poly(a.$name(b)),
                (Coeff::Laurent(a), Coeff::Laurent(b)) => Coeff::Laurent(a.$name(b)),
                (Coeff::Multi(a), Coeff::Multi(b)) => Coeff::Multi(a.$name(b)),
                _ => panic!("coefficient carrier mismatch"),
            }
        }
    };
}

impl Coeff {
    pub fn domain(&self) -> CoeffDomain {
        match self {
            Coeff::Poly(p) => CoeffDomain::new(Carrier::Poly, p.field()),
            Coeff::Laurent(p) => CoeffDomain::new(Carrier::Laurent, p.field()),
            Coeff::Multi(p) => CoeffDomain::new(Carrier::Multi(p.arity()), p.field()),
        }
    }

    pub fn field(&self) -> FieldKind {
        self.domain().field
    }

    binop!(add);
    binop!(sub);
    binop!(mul);

    /// Checked product, for callers that cannot vouch for matching carriers.
    pub fn try_mul(&self, other: &Coeff) -> Result<Coeff> {
        self.domain().check(other)?;
        Ok(self.mul(other))
    }

    pub fn try_add(&self, other: &Coeff) -> Result<Coeff> {
        self.domain().check(other)?;
        Ok(self.add(other))
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Poly(p) => Coeff::Poly(p.neg()),
            Coeff::Laurent(p) => Coeff::Laurent(p.neg()),
            Coeff::Multi(p) => Coeff::Multi(p.neg()),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Coeff {
        match self {
            Coeff::Poly(p) => Coeff::Poly(p.scale(c)),
            Coeff::Laurent(p) => Coeff::Laurent(p.scale(c)),
            Coeff::Multi(p) => Coeff::Multi(p.scale(c)),
        }
    }

    pub fn pow(&self, n: u32) -> Coeff {
        (0..n).fold(self.domain().one(), |acc, _| acc.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Poly(p) => p.is_zero(),
            Coeff::Laurent(p) => p.is_zero(),
            Coeff::Multi(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Poly(p) => p.is_one(),
            Coeff::Laurent(p) => p.is_one(),
            Coeff::Multi(p) => p.is_one(),
        }
    }

    /// Constant value, if the coefficient is a scalar.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self {
            Coeff::Poly(p) if p.is_constant() => Some(p.coeff(0)),
            Coeff::Laurent(p) if p.low() == 0 && p.body().is_constant() => Some(p.coeff(0)),
            Coeff::Multi(p) if p.total_degree().unwrap_or(0) == 0 => Some(
                p.terms()
                    .next()
                    .map(|(_, c)| c.clone())
                    .unwrap_or_else(|| Scalar::zero(p.field())),
            ),
            Coeff::Poly(_) | Coeff::Laurent(_) | Coeff::Multi(_) => None,
        }
    }

    pub fn as_uni(&self) -> Option<&UniPoly> {
        match self {
            Coeff::Poly(p) => Some(p),
            _ => None,
        }
    }

    /// Leading coefficient (highest degree, lex order for several variables).
    pub fn leading_coeff(&self) -> Option<Scalar> {
        match self {
            Coeff::Poly(p) => p.leading().cloned(),
            Coeff::Laurent(p) => p.leading().cloned(),
            Coeff::Multi(p) => p.leading_term().map(|(_, c)| c.clone()),
        }
    }

    /// Scaled so the leading coefficient is 1, together with the factor removed.
    pub fn monic_parts(&self) -> (Coeff, Scalar) {
        match self.leading_coeff() {
            Some(l) => (self.scale(&l.inv().expect("nonzero leading coefficient")), l),
            None => (self.clone(), Scalar::one(self.field())),
        }
    }

    /// Total degree (for Laurent: highest exponent, clamped at 0).
    pub fn degree(&self) -> Option<usize> {
        match self {
            Coeff::Poly(p) => p.degree(),
            Coeff::Laurent(p) => p.high().map(|h| h.max(0) as usize),
            Coeff::Multi(p) => p.total_degree(),
        }
    }

    pub fn exact_div(&self, divisor: &Coeff) -> Option<Coeff> {
        match (self, divisor) {
            (Coeff::Poly(a), Coeff::Poly(b)) => a.exact_div(b).map(Coeff::Poly),
            (Coeff::Laurent(a), Coeff::Laurent(b)) => a.exact_div(b).map(Coeff::Laurent),
            (Coeff::Multi(a), Coeff::Multi(b)) => a.exact_div(b).map(Coeff::Multi),
            _ => None,
        }
    }

    /// Applies an affine automorphism by substitution.
    pub fn apply(&self, phi: &AffineAuto) -> Result<Coeff> {
        match self {
            Coeff::Poly(p) => phi.apply_uni(p).map(Coeff::Poly),
            Coeff::Laurent(p) => phi.apply_laurent(p).map(Coeff::Laurent),
            Coeff::Multi(p) => phi.apply_multi(p).map(Coeff::Multi),
        }
    }

    /// True when the rendered form is a single product (no top-level sum).
    pub(crate) fn is_single_term(&self) -> bool {
        let s = self.to_string();
        let body = s.strip_prefix('-').unwrap_or(&s);
        !body.contains(" + ") && !body.contains(" - ")
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Poly(p) => write!(f, "{p}"),
            Coeff::Laurent(p) => write!(f, "{p}"),
            Coeff::Multi(p) => write!(f, "{p}"),
        }
    }
}

/// `φ(f)` for any polynomial carrier.
pub fn apply_auto(phi: &AffineAuto, f: &Coeff) -> Result<Coeff> {
    f.domain().check_auto(phi)?;
    f.apply(phi)
}

/// Checked ring arithmetic on coefficients.
pub fn poly_arith(f: &Coeff, g: &Coeff, op: PolyOp) -> Result<Coeff> {
    if let (Coeff::Multi(a), Coeff::Multi(b)) = (f, g) {
        a.check_compatible(b)?;
    }
    if f.field() != g.field() {
        return Err(Error::MixedField(f.field().to_string(), g.field().to_string()));
    }
    f.domain().check(g)?;
    Ok(match op {
        PolyOp::Add => f.add(g),
        PolyOp::Sub => f.sub(g),
        PolyOp::Mul => f.mul(g),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{FieldKind, Scalar};

use super::{LaurentPoly, MultiPoly, UniPoly};

/// Affine coefficient automorphism, one `t_i ↦ scale_i·t_i + shift_i` per
/// variable. Univariate and Laurent carriers use a single pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineAuto {
    field: FieldKind,
    maps: Vec<(Scalar, Scalar)>,
}

impl AffineAuto {
    pub fn new(field: FieldKind, maps: Vec<(Scalar, Scalar)>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::InvalidAutomorphism("no variables".into()));
        }
        for (a, b) in &maps {
            a.same_field(b)?;
            if a.field() != field {
                return Err(Error::MixedField(field.to_string(), a.field().to_string()));
            }
            if a.is_zero() {
                return Err(Error::InvalidAutomorphism("zero scale".into()));
            }
        }
        Ok(AffineAuto { field, maps })
    }

    /// Univariate `t ↦ scale·t + shift`.
    pub fn affine(scale: Scalar, shift: Scalar) -> Result<Self> {
        let field = scale.field();
        Self::new(field, vec![(scale, shift)])
    }

    /// `t ↦ t + shift`.
    pub fn shift(shift: Scalar) -> Self {
        let field = shift.field();
        Self::affine(Scalar::one(field), shift).expect("unit scale")
    }

    /// `t ↦ scale·t`.
    pub fn scaling(scale: Scalar) -> Result<Self> {
        let field = scale.field();
        Self::affine(scale, Scalar::zero(field))
    }

    pub fn identity(field: FieldKind, arity: usize) -> Self {
        AffineAuto {
            field,
            maps: vec![(Scalar::one(field), Scalar::zero(field)); arity],
        }
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn arity(&self) -> usize {
        self.maps.len()
    }

    pub fn maps(&self) -> &[(Scalar, Scalar)] {
        &self.maps
    }

    pub fn scale(&self) -> &Scalar {
        &self.maps[0].0
    }

    pub fn shift_part(&self) -> &Scalar {
        &self.maps[0].1
    }

    pub fn is_identity(&self) -> bool {
        self.maps.iter().all(|(a, b)| a.is_one() && b.is_zero())
    }

    pub fn is_pure_scaling(&self) -> bool {
        self.maps.iter().all(|(_, b)| b.is_zero())
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch(self.arity(), other.arity()));
        }
        if self.field != other.field {
            return Err(Error::MixedField(self.field.to_string(), other.field.to_string()));
        }
        Ok(())
    }

    /// `self ∘ inner`: apply `inner` first, then `self`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_arity(inner)?;
        let maps = self
            .maps
            .iter()
            .zip(&inner.maps)
            .map(|((a, b), (c, d))| (c * a, &(c * b) + d))
            .collect();
        Ok(AffineAuto {
            field: self.field,
            maps,
        })
    }

    pub fn inverse(&self) -> Self {
        let maps = self
            .maps
            .iter()
            .map(|(a, b)| {
                let ai = a.inv().expect("nonzero scale");
                let nb = -&(b * &ai);
                (ai, nb)
            })
            .collect();
        AffineAuto {
            field: self.field,
            maps,
        }
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        Ok(self.compose(other)? == other.compose(self)?)
    }

    pub fn apply_uni(&self, f: &UniPoly) -> Result<UniPoly> {
        if self.arity() != 1 {
            return Err(Error::ArityMismatch(1, self.arity()));
        }
        let (a, b) = &self.maps[0];
        Ok(f.compose_affine(a, b))
    }

    pub fn apply_laurent(&self, f: &LaurentPoly) -> Result<LaurentPoly> {
        if self.arity() != 1 {
            return Err(Error::ArityMismatch(1, self.arity()));
        }
        let (a, b) = &self.maps[0];
        if !b.is_zero() {
            return Err(Error::InvalidAutomorphism("Laurent carriers admit only t ↦ λt".into()));
        }
        f.scale_var(a)
    }

    pub fn apply_multi(&self, f: &MultiPoly) -> Result<MultiPoly> {
        if self.arity() != f.arity() {
            return Err(Error::ArityMismatch(f.arity(), self.arity()));
        }
        Ok(f.substitute_affine(&self.maps))
    }
}

/// Closed-form `n`-fold composition, negative `n` meaning powers of the inverse.
pub fn auto_power(phi: &AffineAuto, n: i64) -> AffineAuto {
    let maps = phi
        .maps
        .iter()
        .map(|(a, b)| {
            let an = a.pow(n).expect("nonzero scale");
            let geometric = if a.is_one() {
                Scalar::from_i64(n, phi.field)
            } else {
                let one = Scalar::one(phi.field);
                &(&an - &one) / &(a - &one)
            };
            (an, b * &geometric)
        })
        .collect();
    AffineAuto { field: phi.field, maps }
}

impl fmt::Display for AffineAuto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let single = self.maps.len() == 1;
        for (i, (a, b)) in self.maps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let v = if single {
                "t".to_string()
            } else {
                format!("t_{}", i + 1)
            };
            let img = UniPoly::from_vec(self.field, vec![b.clone(), a.clone()]);
            let mut s = String::new();
            {
                use std::fmt::Write;
                let _ = write!(s, "{}", Wrap(&img, &v));
            }
            write!(f, "{v} -> {s}")?;
        }
        Ok(())
    }
}

struct Wrap<'a>(&'a UniPoly, &'a str);

impl fmt::Display for Wrap<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.write_in(f, self.1)
    }
}

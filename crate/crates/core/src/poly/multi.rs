use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{FieldKind, Scalar};

use super::{write_terms, UniPoly};

type Exponents = Vec<u32>;

/// Sparse polynomial in `t_1 … t_n`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    field: FieldKind,
    arity: usize,
    terms: BTreeMap<Exponents, Scalar>,
}

impl MultiPoly {
    pub fn zero(field: FieldKind, arity: usize) -> Self {
        MultiPoly {
            field,
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: FieldKind, arity: usize) -> Self {
        Self::constant(Scalar::one(field), arity)
    }

    pub fn constant(c: Scalar, arity: usize) -> Self {
        Self::monomial(c, vec![0; arity])
    }

    /// The variable `t_{i+1}` (zero-based index).
    pub fn var(field: FieldKind, arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Self::monomial(Scalar::one(field), e)
    }

    pub fn monomial(c: Scalar, exps: Exponents) -> Self {
        let mut p = Self::zero(c.field(), exps.len());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Checked constructor from `(exponents, coefficient)` pairs.
    pub fn from_terms(field: FieldKind, arity: usize, terms: Vec<(Exponents, Scalar)>) -> Result<Self> {
        let mut p = Self::zero(field, arity);
        for (e, c) in terms {
            if e.len() != arity {
                return Err(Error::ArityMismatch(arity, e.len()));
            }
            if c.field() != field {
                return Err(Error::MixedField(field.to_string(), c.field().to_string()));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Embeds a univariate polynomial as a polynomial in variable `i`.
    pub fn from_uni(p: &UniPoly, arity: usize, i: usize) -> Self {
        let mut out = Self::zero(p.field(), arity);
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; arity];
            e[i] = k as u32;
            out.add_term(e, c.clone());
        }
        out
    }

    fn add_term(&mut self, e: Exponents, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum()).max()
    }

    /// Leading term in lexicographic order (largest exponent vector).
    pub fn leading_term(&self) -> Option<(&Exponents, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedField(self.field.to_string(), other.field.to_string()));
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            field: self.field,
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.field, self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.field, self.arity);
        }
        MultiPoly {
            field: self.field,
            arity: self.arity,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Exact quotient by multivariate division in lex order.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (lead_e, lead_c) = divisor.leading_term()?;
        let lead_inv = lead_c.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.field, self.arity);
        while let Some((e, c)) = rem.leading_term() {
            if e.iter().zip(lead_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Exponents = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let qc = c * &lead_inv;
            let step = Self::monomial(qc.clone(), qe.clone());
            rem = rem.sub(&step.mul(divisor));
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Simultaneous substitution `t_i ↦ a_i·t_i + b_i`.
    pub fn substitute_affine(&self, maps: &[(Scalar, Scalar)]) -> Self {
        // powers of each linear form, built lazily
        let mut powers: Vec<Vec<MultiPoly>> = (0..self.arity)
            .map(|_| vec![Self::one(self.field, self.arity)])
            .collect();
        let mut out = Self::zero(self.field, self.arity);
        for (e, c) in &self.terms {
            let mut term = Self::constant(c.clone(), self.arity);
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let (a, b) = &maps[i];
                    let lin = Self::var(self.field, self.arity, i)
                        .scale(a)
                        .add(&Self::constant(b.clone(), self.arity));
                    let next = powers[i].last().expect("nonempty").mul(&lin);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][k as usize]);
            }
            out = out.add(&term);
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms.iter().rev().map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| {
                        if k == 1 {
                            format!("t_{}", i + 1)
                        } else {
                            format!("t_{}^{k}", i + 1)
                        }
                    })
                    .collect();
                (c.clone(), mono.join("*"))
            }),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldKind = FieldKind::Rational;

    #[test]
    fn arithmetic_and_division() {
        let t1 = MultiPoly::var(Q, 2, 0);
        let t2 = MultiPoly::var(Q, 2, 1);
        let one = MultiPoly::one(Q, 2);
        let a = t1.add(&one);
        let b = t2.sub(&t1);
        let p = a.mul(&b);
        assert_eq!(p.to_string(), "-t_1^2 + t_1*t_2 - t_1 + t_2");
        assert_eq!(p.exact_div(&a).unwrap(), b);
        assert!(p.exact_div(&t2).is_none());
    }

    #[test]
    fn affine_substitution() {
        let t1 = MultiPoly::var(Q, 2, 0);
        let t2 = MultiPoly::var(Q, 2, 1);
        let p = t1.mul(&t2);
        let maps = vec![
            (Scalar::rational(1, 1), Scalar::rational(-1, 1)),
            (Scalar::rational(2, 1), Scalar::rational(0, 1)),
        ];
        assert_eq!(p.substitute_affine(&maps).to_string(), "2*t_1*t_2 - 2*t_2");
    }

    #[test]
    fn arity_checks() {
        let a = MultiPoly::one(Q, 2);
        let b = MultiPoly::one(Q, 3);
        assert_eq!(a.check_compatible(&b), Err(Error::ArityMismatch(2, 3)));
        assert!(MultiPoly::from_terms(Q, 2, vec![(vec![1], Scalar::one(Q))]).is_err());
    }
}

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::expr::{eval, parse_expr, EvalContext};
use crate::group::GroupElt;
use crate::scalar::{FieldKind, Scalar};

use super::CrystalRing;

/// A finite sum Σ a_g·u_g with left coefficients; zero terms are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring_id: u64,
    terms: BTreeMap<GroupElt, Coeff>,
}

impl RingElement {
    pub(crate) fn from_terms(ring_id: u64, terms: impl IntoIterator<Item = (GroupElt, Coeff)>) -> Self {
        let mut out = RingElement {
            ring_id,
            terms: BTreeMap::new(),
        };
        for (g, c) in terms {
            out.add_term(g, c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, g: GroupElt, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&g) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&g);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(g, c);
            }
        }
    }

    pub fn ring_id(&self) -> u64 {
        self.ring_id
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Homogeneous components in canonical group order.
    pub fn terms(&self) -> impl Iterator<Item = (&GroupElt, &Coeff)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElt> {
        self.terms.keys()
    }

    /// Coefficient a_g (None when the component is zero).
    pub fn component(&self, g: &GroupElt) -> Option<&Coeff> {
        self.terms.get(g)
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring_id != other.ring_id {
            return Err(Error::GroupMismatch("elements belong to different rings".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        RingElement {
            ring_id: self.ring_id,
            terms: self.terms.iter().map(|(g, c)| (g.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// c·x for a coefficient c acting on the left.
    pub fn left_scale(&self, c: &Coeff) -> Self {
        RingElement::from_terms(self.ring_id, self.terms.iter().map(|(g, a)| (g.clone(), c.mul(a))))
    }
}

fn u_label(g: &GroupElt) -> String {
    let parts: Vec<String> = g.coords().iter().map(i64::to_string).collect();
    format!("u[{}]", parts.join(","))
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            let u = u_label(g);
            let (negative, body) = if c.is_single_term() {
                let s = c.to_string();
                match s.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, s),
                }
            } else {
                (false, format!("({c})"))
            };
            let term = if body == "1" { u } else { format!("{body}*{u}") };
            match (i, negative) {
                (0, true) => write!(f, "-{term}")?,
                (0, false) => write!(f, "{term}")?,
                (_, true) => write!(f, " - {term}")?,
                (_, false) => write!(f, " + {term}")?,
            }
        }
        Ok(())
    }
}

impl CrystalRing {
    pub fn zero(&self) -> RingElement {
        RingElement::from_terms(self.id, [])
    }

    pub fn one(&self) -> RingElement {
        self.homogeneous(self.domain.one(), self.group.identity())
    }

    /// c·u_g.
    pub fn homogeneous(&self, c: Coeff, g: GroupElt) -> RingElement {
        RingElement::from_terms(self.id, [(g, c)])
    }

    /// The basis element u_g.
    pub fn u(&self, g: &GroupElt) -> RingElement {
        self.homogeneous(self.domain.one(), g.clone())
    }

    /// A coefficient placed in degree e.
    pub fn coeff(&self, c: Coeff) -> RingElement {
        self.homogeneous(c, self.group.identity())
    }

    /// Element with the given components, checked against the ring.
    pub fn element(&self, terms: Vec<(GroupElt, Coeff)>) -> Result<RingElement> {
        for (g, c) in &terms {
            self.group.check(g)?;
            self.domain.check(c)?;
        }
        Ok(RingElement::from_terms(self.id, terms))
    }

    /// Twisted product via (a u_g)(b u_h) = a·σ_g(b)·α(g,h)·u_{gh}.
    pub fn mul(&self, x: &RingElement, y: &RingElement) -> Result<RingElement> {
        self.check_element(x)?;
        self.check_element(y)?;
        let mut out = self.zero();
        for (g, a) in &x.terms {
            for (h, b) in &y.terms {
                let c = a.mul(&self.apply_sigma(g, b)).mul(&self.alpha_value(g, h)?);
                out.add_term(self.group.op(g, h), c);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, x: &RingElement, n: u32) -> Result<RingElement> {
        (0..n).try_fold(self.one(), |acc, _| self.mul(&acc, x))
    }

    /// Parses and evaluates an expression in this ring.
    pub fn parse(&self, src: &str) -> Result<RingElement> {
        eval(&parse_expr(src)?, self)
    }
}

impl EvalContext for CrystalRing {
    type Value = RingElement;

    fn field(&self) -> FieldKind {
        self.domain.field
    }

    fn scalar(&self, s: Scalar) -> RingElement {
        self.coeff(self.domain.constant(s))
    }

    fn var_pow(&self, i: usize, k: i64) -> Result<RingElement> {
        Ok(self.coeff(self.domain.var_pow(i, k)?))
    }

    fn u(&self, g: &[i64]) -> Result<RingElement> {
        Ok(CrystalRing::u(self, &self.group.element(g)?))
    }

    fn alias(&self, name: &str) -> Result<RingElement> {
        self.aliases.get(name).cloned().ok_or_else(|| Error::Parse {
            line: 1,
            column: 1,
            message: format!("unknown generator name '{name}'"),
        })
    }

    fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        a.add(b).expect("same ring")
    }

    fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        CrystalRing::mul(self, a, b).expect("cocycle values are nonzero on a constructed ring")
    }

    fn neg(&self, a: &RingElement) -> RingElement {
        a.neg()
    }

    fn as_scalar(&self, a: &RingElement) -> Option<Scalar> {
        match a.terms.len() {
            0 => Some(Scalar::zero(self.domain.field)),
            1 => {
                let (g, c) = a.terms.iter().next().expect("one term");
                if self.group.is_identity(g) {
                    c.as_scalar()
                } else {
                    None
                }
            }
            _ => None,
        }
    }
}

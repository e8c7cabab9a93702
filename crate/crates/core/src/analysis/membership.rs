use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::{Carrier, Coeff, CoeffDomain};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Monomial key: exponent vector (one entry for K[t] and K[t, t⁻¹]).
type Mono = Vec<i64>;
/// Word in the generators: exponent of each generator.
type Word = Vec<u32>;

/// Degree used for bounding: total degree on polynomial carriers, the
/// largest absolute exponent on Laurent carriers.
fn mono_degree(m: &Mono, laurent: bool) -> u64 {
    if laurent {
        m.iter().map(|e| e.unsigned_abs()).max().unwrap_or(0)
    } else {
        m.iter().map(|e| *e as u64).sum()
    }
}

fn to_sparse(c: &Coeff) -> BTreeMap<Mono, Scalar> {
    match c {
        Coeff::Poly(p) => p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(k, s)| (vec![k as i64], s.clone()))
            .collect(),
        Coeff::Laurent(p) => p.terms().map(|(k, s)| (vec![k], s.clone())).collect(),
        Coeff::Multi(p) => p
            .terms()
            .map(|(e, s)| (e.iter().map(|&x| x as i64).collect(), s.clone()))
            .collect(),
    }
}

/// Lowest and highest total degree of the monomials present.
fn extent(c: &Coeff) -> (i64, i64) {
    if c.is_zero() {
        return (0, 0);
    }
    let degs = to_sparse(c).into_keys().map(|m| m.iter().sum::<i64>());
    degs.fold((i64::MAX, i64::MIN), |(lo, hi), d| (lo.min(d), hi.max(d)))
}

/// Degree of a coefficient in the sense of [`mono_degree`].
pub fn coeff_degree(c: &Coeff) -> u64 {
    let laurent = matches!(c, Coeff::Laurent(_));
    to_sparse(c).keys().map(|m| mono_degree(m, laurent)).max().unwrap_or(0)
}

/// Linear combination of generator words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub terms: BTreeMap<Word, Scalar>,
}

impl Certificate {
    fn axpy(&mut self, c: &Scalar, other: &Certificate) {
        for (w, s) in &other.terms {
            let v = self.terms.get(w).map_or_else(|| c * s, |old| &(c * s) + old);
            if v.is_zero() {
                self.terms.remove(w);
            } else {
                self.terms.insert(w.clone(), v);
            }
        }
    }

    /// Product in the free commutative monoid algebra on the generators.
    fn times(&self, other: &Certificate) -> Certificate {
        let mut out = Certificate::default();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let w: Word = w1.iter().zip(w2).map(|(a, b)| a + b).collect();
                let term = Certificate {
                    terms: BTreeMap::from([(w, c1 * c2)]),
                };
                out.axpy(&Scalar::one(c1.field()), &term);
            }
        }
        out
    }

    /// Σ c_w ∏ g_i^{w_i}, evaluated in the coefficient ring.
    pub fn expand(&self, domain: CoeffDomain, gens: &[Coeff]) -> Coeff {
        let mut acc = domain.zero();
        for (w, c) in &self.terms {
            let mut m = domain.one();
            for (g, &e) in gens.iter().zip(w) {
                m = m.mul(&g.pow(e));
            }
            acc = acc.add(&m.scale(c));
        }
        acc
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total word degree first, the empty word (constant) last
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let rendered = terms.into_iter().map(|(w, c)| {
            let factors: Vec<String> = w
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| {
                    if *e == 1 {
                        format!("g{}", i + 1)
                    } else {
                        format!("g{}^{e}", i + 1)
                    }
                })
                .collect();
            (c.clone(), factors.join("*"))
        });
        crate::poly::write_terms(f, rendered)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Member,
    NonMemberUpToBound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipVerdict {
    pub verdict: Membership,
    pub bound: u64,
    /// Words in the generators (g1, g2, … in input order) summing to the target.
    pub certificate: Option<Certificate>,
    /// Dimension of the bounded span that was searched.
    pub span_dimension: usize,
    /// Whether the span built with the generators in reverse order had the
    /// same dimension (always expected for polynomial carriers).
    pub orders_agree: bool,
}

impl MembershipVerdict {
    pub fn is_member(&self) -> bool {
        self.verdict == Membership::Member
    }
}

impl fmt::Display for MembershipVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.certificate {
            Some(c) => write!(f, "MEMBER (certificate: {c})"),
            None => write!(f, "NON-MEMBER up to degree {}", self.bound),
        }
    }
}

struct Row {
    vec: BTreeMap<Mono, Scalar>,
    cert: Certificate,
}

/// Echelon basis of the K-span of generator words whose degree stays within
/// a bound. Rows have pairwise distinct leading monomials under a
/// degree-first order, so no combination of rows drops below its top degree.
pub struct BoundedSpan {
    domain: CoeffDomain,
    laurent: bool,
    rows: Vec<Row>,
    pivots: BTreeMap<(u64, Mono), usize>,
}

impl BoundedSpan {
    /// Closure of {1} under multiplication by the generators, in the given
    /// generator order, discarding products above `bound`.
    pub fn build(domain: CoeffDomain, gens: &[Coeff], bound: u64) -> Result<Self> {
        for g in gens {
            domain.check(g)?;
        }
        let mut span = BoundedSpan {
            domain,
            laurent: matches!(domain.carrier, Carrier::Laurent),
            rows: Vec::new(),
            pivots: BTreeMap::new(),
        };
        let one = Certificate {
            terms: BTreeMap::from([(vec![0; gens.len()], Scalar::one(domain.field))]),
        };
        span.insert(to_sparse(&domain.one()), one);
        // The closure only needs multipliers spanning the generators linearly:
        // in-bound generators are first reduced to echelon rows, which then
        // act as the multipliers; out-of-bound ones are kept as they are.
        let mut multipliers: Vec<(Coeff, Certificate)> = Vec::new();
        for (gi, g) in gens.iter().enumerate() {
            let mut word = vec![0; gens.len()];
            word[gi] = 1;
            let cert = Certificate {
                terms: BTreeMap::from([(word, Scalar::one(domain.field))]),
            };
            if coeff_degree(g) > bound {
                multipliers.push((g.clone(), cert));
            } else if span.insert(to_sparse(g), cert) {
                let row = span.rows.last().expect("just inserted");
                multipliers.push((span.to_coeff(&row.vec), row.cert.clone()));
            }
        }
        let extents: Vec<(i64, i64)> = multipliers.iter().map(|(m, _)| extent(m)).collect();
        let mut next = 0;
        while next < span.rows.len() && !span.is_full(bound) {
            let (vec, cert) = (span.rows[next].vec.clone(), span.rows[next].cert.clone());
            next += 1;
            let value = span.to_coeff(&vec);
            let (lo, hi) = extent(&value);
            for ((m, mcert), (mlo, mhi)) in multipliers.iter().zip(&extents) {
                // degrees add over a domain, so oversized products are skipped unformed
                let predicted = if span.laurent {
                    (lo + mlo).unsigned_abs().max((hi + mhi).unsigned_abs())
                } else {
                    (hi + mhi) as u64
                };
                if predicted > bound {
                    continue;
                }
                let prod = value.mul(m);
                if coeff_degree(&prod) > bound {
                    continue;
                }
                span.insert(to_sparse(&prod), cert.times(mcert));
                if span.is_full(bound) {
                    break;
                }
            }
        }
        Ok(span)
    }

    fn key(&self, m: &Mono) -> (u64, Mono) {
        (mono_degree(m, self.laurent), m.clone())
    }

    fn to_coeff(&self, v: &BTreeMap<Mono, Scalar>) -> Coeff {
        let mut acc = self.domain.zero();
        for (m, c) in v {
            let term = match &acc {
                Coeff::Laurent(_) => self.domain.var_pow(0, m[0]),
                _ => {
                    let mut t = Ok(self.domain.one());
                    for (i, &e) in m.iter().enumerate() {
                        t = t.and_then(|t: Coeff| Ok(t.mul(&self.domain.var_pow(i, e)?)));
                    }
                    t
                }
            }
            .expect("monomial within the carrier");
            acc = acc.add(&term.scale(c));
        }
        acc
    }

    /// Eliminates every pivot monomial from `v`, recording the row
    /// combination subtracted in `cert` (so that v_final = v − Σ c_r row_r).
    fn reduce(&self, v: &mut BTreeMap<Mono, Scalar>, cert: &mut Certificate) {
        loop {
            let hit = v
                .keys()
                .map(|m| self.key(m))
                .filter(|k| self.pivots.contains_key(k))
                .max();
            let Some(k) = hit else { return };
            let row = &self.rows[self.pivots[&k]];
            let factor = &v[&k.1] / &row.vec[&k.1];
            let neg = -&factor;
            for (m, c) in &row.vec {
                let val = v.get(m).map_or_else(|| &neg * c, |old| old - &(&factor * c));
                if val.is_zero() {
                    v.remove(m);
                } else {
                    v.insert(m.clone(), val);
                }
            }
            cert.axpy(&neg, &row.cert);
        }
    }

    fn insert(&mut self, mut v: BTreeMap<Mono, Scalar>, mut cert: Certificate) -> bool {
        self.reduce(&mut v, &mut cert);
        let Some(lead) = v.keys().map(|m| self.key(m)).max() else {
            return false;
        };
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(Row { vec: v, cert });
        true
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// Number of monomials of degree at most `bound` in the carrier.
    fn ambient_dimension(&self, bound: u64) -> u128 {
        match self.domain.carrier {
            Carrier::Poly => u128::from(bound) + 1,
            Carrier::Laurent => 2 * u128::from(bound) + 1,
            Carrier::Multi(n) => {
                // C(bound + n, n)
                let mut c: u128 = 1;
                for i in 1..=n as u128 {
                    c = c * (u128::from(bound) + i) / i;
                }
                c
            }
        }
    }

    /// True when the span already contains every coefficient of degree at
    /// most `bound`, so every such target is a member.
    pub fn is_full(&self, bound: u64) -> bool {
        self.rows.len() as u128 >= self.ambient_dimension(bound)
    }

    /// A certificate expressing `target` in the span, if it lies there.
    pub fn solve(&self, target: &Coeff) -> Option<Certificate> {
        let mut v = to_sparse(target);
        let mut cert = Certificate::default();
        self.reduce(&mut v, &mut cert);
        if !v.is_empty() {
            return None;
        }
        // target − Σ c_r row_r = 0, and cert holds −Σ c_r cert_r
        let mut out = Certificate::default();
        out.axpy(&-Scalar::one(self.domain.field), &cert);
        Some(out)
    }
}

/// Decides whether `target` lies in the K-span of generator words of degree
/// at most `bound`. Member verdicts carry a certificate that re-expands to
/// the target exactly; negative verdicts are re-confirmed with the
/// generators in reverse order and only claim non-membership up to the bound.
pub fn subalgebra_member(target: &Coeff, gens: &[Coeff], bound: u64) -> Result<MembershipVerdict> {
    let domain = target.domain();
    domain.check(target)?;
    let d = coeff_degree(target);
    if d > bound {
        return Err(Error::DegreeBoundExceeded(d as usize, bound as usize));
    }
    let span = BoundedSpan::build(domain, gens, bound)?;
    if let Some(cert) = span.solve(target) {
        return member(domain, target, gens, bound, cert, span.dimension());
    }
    let reversed: Vec<Coeff> = gens.iter().rev().cloned().collect();
    let other = BoundedSpan::build(domain, &reversed, bound)?;
    if let Some(cert) = other.solve(target) {
        // found only in the other order: map the words back before checking
        let cert = Certificate {
            terms: cert
                .terms
                .into_iter()
                .map(|(mut w, c)| {
                    w.reverse();
                    (w, c)
                })
                .collect(),
        };
        return member(domain, target, gens, bound, cert, other.dimension());
    }
    Ok(MembershipVerdict {
        verdict: Membership::NonMemberUpToBound,
        bound,
        certificate: None,
        span_dimension: span.dimension(),
        orders_agree: span.dimension() == other.dimension(),
    })
}

fn member(
    domain: CoeffDomain,
    target: &Coeff,
    gens: &[Coeff],
    bound: u64,
    cert: Certificate,
    span_dimension: usize,
) -> Result<MembershipVerdict> {
    if &cert.expand(domain, gens) != target {
        return Err(Error::InvariantViolation(format!(
            "membership certificate {cert} does not re-expand to {target}"
        )));
    }
    Ok(MembershipVerdict {
        verdict: Membership::Member,
        bound,
        certificate: Some(cert),
        span_dimension,
        orders_agree: true,
    })
}

//! Localization at the σ-stable multiplicative set generated by the values
//! α(g, g⁻¹), with denominators tracked as explicit factor lists.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::group::GroupElt;

use super::{CrystalRing, RingElement};

/// A product of factors σ_h(α(g, g⁻¹)), keyed by `(h, g)` with multiplicity.
/// `value` is the exact product, not normalised.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Denominator {
    factors: BTreeMap<(GroupElt, GroupElt), u32>,
    value: Coeff,
}

impl Denominator {
    pub fn factors(&self) -> &BTreeMap<(GroupElt, GroupElt), u32> {
        &self.factors
    }

    pub fn value(&self) -> &Coeff {
        &self.value
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Renders the factor list as `h:g;h:g;…` (the CLI input syntax).
    pub fn spec(&self) -> String {
        let mut parts = Vec::new();
        for ((h, g), k) in &self.factors {
            for _ in 0..*k {
                parts.push(format!("{h}:{g}"));
            }
        }
        parts.join(";")
    }
}

/// A fraction num / den.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    pub num: Coeff,
    pub den: Denominator,
}

/// Σ (n_g / s_g)·u_g in S⁻¹A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedElement {
    ring_id: u64,
    terms: BTreeMap<GroupElt, Fraction>,
}

impl LocalizedElement {
    pub fn terms(&self) -> impl Iterator<Item = (&GroupElt, &Fraction)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Witness (s′, x′) with s′·x = x′·s.
#[derive(Clone, Debug)]
pub struct OreWitness {
    pub s_prime: Denominator,
    pub x_prime: RingElement,
}

impl CrystalRing {
    /// The factor σ_h(α(g, g⁻¹)).
    pub fn monoid_factor(&self, h: &GroupElt, g: &GroupElt) -> Result<Coeff> {
        let gi = self.group.inv(g);
        Ok(self.apply_sigma(h, &self.alpha_value(g, &gi)?))
    }

    pub fn denominator_one(&self) -> Denominator {
        Denominator {
            factors: BTreeMap::new(),
            value: self.domain.one(),
        }
    }

    /// Denominator from a factor list `[(h, g), …]`; factors equal to a
    /// scalar are units already and are dropped.
    pub fn denominator(&self, factors: &[(GroupElt, GroupElt)]) -> Result<Denominator> {
        let mut d = self.denominator_one();
        for (h, g) in factors {
            let v = self.monoid_factor(h, g)?;
            d.value = d.value.mul(&v);
            if v.as_scalar().is_none() {
                *d.factors.entry((h.clone(), g.clone())).or_insert(0) += 1;
            }
        }
        Ok(d)
    }

    /// Parses `h:g;h:g;…` (coordinates comma-separated for ℤⁿ).
    pub fn parse_denominator(&self, spec: &str) -> Result<Denominator> {
        let mut factors = Vec::new();
        for part in spec.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (h, g) = part
                .split_once(':')
                .ok_or_else(|| Error::Document(format!("factor '{part}' is not of the form h:g")))?;
            factors.push((self.parse_group_elt(h)?, self.parse_group_elt(g)?));
        }
        self.denominator(&factors)
    }

    pub fn parse_group_elt(&self, s: &str) -> Result<GroupElt> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let coords = s
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Document(format!("'{c}' is not an integer group coordinate")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.group.element(&coords)
    }

    fn mul_den(&self, a: &Denominator, b: &Denominator) -> Denominator {
        let mut factors = a.factors.clone();
        for (k, m) in &b.factors {
            *factors.entry(k.clone()).or_insert(0) += m;
        }
        Denominator {
            factors,
            value: a.value.mul(&b.value),
        }
    }

    /// σ_g(s): factor (h, k) becomes (gh, k), since σ is a homomorphism.
    fn sigma_den(&self, g: &GroupElt, s: &Denominator) -> Denominator {
        Denominator {
            factors: s
                .factors
                .iter()
                .map(|((h, k), m)| ((self.group.op(g, h), k.clone()), *m))
                .collect(),
            value: self.apply_sigma(g, &s.value),
        }
    }

    /// Cancels whole monoid factors that divide the numerator exactly.
    fn reduce(&self, mut f: Fraction) -> Fraction {
        let keys: Vec<(GroupElt, GroupElt)> = f.den.factors.keys().cloned().collect();
        for key in keys {
            let v = self.monoid_factor(&key.0, &key.1).expect("factor from a valid ring");
            while f.den.factors.get(&key).copied().unwrap_or(0) > 0 {
                let (Some(n), Some(d)) = (f.num.exact_div(&v), f.den.value.exact_div(&v)) else {
                    break;
                };
                f.num = n;
                f.den.value = d;
                let m = f.den.factors.get_mut(&key).expect("present");
                *m -= 1;
                if *m == 0 {
                    f.den.factors.remove(&key);
                }
            }
        }
        if f.den.factors.is_empty() {
            // what remains of the value is a unit scalar
            if let Some(c) = f.den.value.as_scalar() {
                f.num = f.num.scale(&c.inv().expect("nonzero unit"));
                f.den.value = self.domain.one();
            }
        }
        f
    }

    fn add_frac(&self, a: &Fraction, b: &Fraction) -> Fraction {
        let num = a.num.mul(&b.den.value).add(&b.num.mul(&a.den.value));
        self.reduce(Fraction {
            num,
            den: self.mul_den(&a.den, &b.den),
        })
    }

    fn loc_from_terms(&self, terms: Vec<(GroupElt, Fraction)>) -> LocalizedElement {
        let mut out: BTreeMap<GroupElt, Fraction> = BTreeMap::new();
        for (g, f) in terms {
            let merged = match out.remove(&g) {
                Some(prev) => self.add_frac(&prev, &f),
                None => self.reduce(f),
            };
            if !merged.num.is_zero() {
                out.insert(g, merged);
            }
        }
        LocalizedElement {
            ring_id: self.id,
            terms: out,
        }
    }

    /// x viewed in S⁻¹A.
    pub fn localize(&self, x: &RingElement) -> Result<LocalizedElement> {
        self.check_element(x)?;
        Ok(self.loc_from_terms(
            x.terms()
                .map(|(g, c)| {
                    (
                        g.clone(),
                        Fraction {
                            num: c.clone(),
                            den: self.denominator_one(),
                        },
                    )
                })
                .collect(),
        ))
    }

    /// (num / den)·u_g where `den` must be recognisable as a product of
    /// monoid factors σ_h(α(k, k⁻¹)) with h, k in the window of the given
    /// radius (up to a scalar unit).
    pub fn fraction(&self, num: Coeff, den: &Coeff, g: GroupElt, radius: i64) -> Result<LocalizedElement> {
        self.domain.check(&num)?;
        self.group.check(&g)?;
        let d = self.recognise_denominator(den, radius)?;
        Ok(self.loc_from_terms(vec![(g, Fraction { num, den: d })]))
    }

    fn recognise_denominator(&self, den: &Coeff, radius: i64) -> Result<Denominator> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let window = self.group.window(radius);
        let mut rest = den.clone();
        let mut factors = Vec::new();
        'outer: while rest.as_scalar().is_none() {
            for h in &window {
                for k in &window {
                    let v = self.monoid_factor(h, k)?;
                    if v.as_scalar().is_some() {
                        continue;
                    }
                    if let Some(q) = rest.exact_div(&v) {
                        rest = q;
                        factors.push((h.clone(), k.clone()));
                        continue 'outer;
                    }
                }
            }
            return Err(Error::NonUnitDenominator(format!(
                "{den} has the factor {rest} outside the monoid generated by σ_h(α(g,g⁻¹))"
            )));
        }
        let mut d = self.denominator(&factors)?;
        // keep the exact value: fold the leftover unit into it
        d.value = d.value.mul(&rest);
        Ok(d)
    }

    /// Product in S⁻¹A: (n/s·u_g)(m/r·u_h) = n·σ_g(m) α(g,h) / (s·σ_g(r))·u_{gh}.
    pub fn loc_mul(&self, x: &LocalizedElement, y: &LocalizedElement) -> Result<LocalizedElement> {
        if x.ring_id != self.id || y.ring_id != self.id {
            return Err(Error::GroupMismatch(
                "localized element belongs to a different ring".into(),
            ));
        }
        let mut terms = Vec::new();
        for (g, a) in &x.terms {
            for (h, b) in &y.terms {
                let num = a.num.mul(&self.apply_sigma(g, &b.num)).mul(&self.alpha_value(g, h)?);
                let den = self.mul_den(&a.den, &self.sigma_den(g, &b.den));
                terms.push((self.group.op(g, h), Fraction { num, den }));
            }
        }
        Ok(self.loc_from_terms(terms))
    }

    pub fn loc_one(&self) -> LocalizedElement {
        self.localize(&self.one()).expect("own element")
    }

    /// Equality in S⁻¹A by cross-multiplication of each component.
    pub fn loc_eq(&self, x: &LocalizedElement, y: &LocalizedElement) -> bool {
        x.terms.len() == y.terms.len()
            && x.terms.iter().all(|(g, a)| {
                y.terms
                    .get(g)
                    .is_some_and(|b| a.num.mul(&b.den.value) == b.num.mul(&a.den.value))
            })
    }

    /// α(g⁻¹, g)⁻¹·u_{g⁻¹}, a two-sided inverse of u_g.
    pub fn u_inverse(&self, g: &GroupElt) -> Result<LocalizedElement> {
        self.group.check(g)?;
        let gi = self.group.inv(g);
        // α(g⁻¹, g) = σ_{g⁻¹}(α(g, g⁻¹)) is the monoid factor (g⁻¹, g)
        let den = self.denominator(&[(gi.clone(), g.clone())])?;
        Ok(self.loc_from_terms(vec![(
            gi,
            Fraction {
                num: self.domain.one(),
                den,
            },
        )]))
    }

    /// Left Ore witness: s′ = ∏_{g ∈ supp x} σ_g(s) and x′_g = s′·a_g / σ_g(s),
    /// so that s′·x = x′·s.
    pub fn ore_left_witness(&self, x: &RingElement, s: &Denominator) -> Result<OreWitness> {
        self.check_element(x)?;
        let mut s_prime = self.denominator_one();
        for g in x.support() {
            s_prime = self.mul_den(&s_prime, &self.sigma_den(g, s));
        }
        let mut terms = Vec::new();
        for (g, a) in x.terms() {
            let sg = self.apply_sigma(g, &s.value);
            let num = s_prime.value.mul(a);
            let q = num
                .exact_div(&sg)
                .ok_or_else(|| Error::ExactDivisionFailed(format!("{num} is not divisible by σ_{g}(s) = {sg}")))?;
            terms.push((g.clone(), q));
        }
        Ok(OreWitness {
            s_prime,
            x_prime: self.element(terms)?,
        })
    }

    /// Checks s′·x = x′·s with ring multiplication.
    pub fn check_ore(&self, x: &RingElement, s: &Denominator, w: &OreWitness) -> Result<bool> {
        let lhs = self.mul(&self.coeff(w.s_prime.value.clone()), x)?;
        let rhs = self.mul(&w.x_prime, &self.coeff(s.value.clone()))?;
        Ok(lhs == rhs)
    }

    /// Renders a localized element with monic denominators.
    pub fn render_localized(&self, x: &LocalizedElement) -> String {
        if x.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (g, f)) in x.terms.iter().enumerate() {
            let (den, lc) = f.den.value.monic_parts();
            let num = f.num.scale(&lc.inv().expect("nonzero leading coefficient"));
            let single = self.homogeneous(num, g.clone()).to_string();
            let text = if den.is_one() {
                single
            } else {
                let den_text = if den.is_single_term() {
                    den.to_string()
                } else {
                    format!("({den})")
                };
                // single is "c*u[g]" or "u[g]"; splice the denominator before u
                let (coef, u) = match single.rfind("u[") {
                    Some(pos) => single.split_at(pos),
                    None => ("", single.as_str()),
                };
                let coef = coef.trim_end_matches('*');
                let coef = match coef {
                    "" => "1".to_string(),
                    "-" => "-1".to_string(),
                    c => c.to_string(),
                };
                format!("{coef}/{den_text}*{u}")
            };
            if i == 0 {
                out.push_str(&text);
            } else if let Some(rest) = text.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&text);
            }
        }
        out
    }
}

impl fmt::Display for Denominator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

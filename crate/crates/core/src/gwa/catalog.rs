use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::{Carrier, Coeff, CoeffDomain};
use crate::crystal::{Cocycle, CrystalRing, SigmaMap};
use crate::error::{Error, Result};
use crate::expr::{parse_coeff, parse_scalar};
use crate::group::{GradingGroup, GroupElt};
use crate::poly::{auto_power, AffineAuto};
use crate::scalar::{FieldKind, Scalar};

use super::{gwa_ring, GWAData};

/// Verification radius applied by [`example`] before returning a ring.
pub const DEFAULT_RADIUS: i64 = 4;

const NAMES: [&str; 10] = [
    "weyl",
    "qweyl",
    "qplane",
    "cyclic-inv",
    "usl2",
    "uqsl2",
    "bavula-bekkert",
    "class3",
    "general-type",
    "rollup",
];

/// Stable catalog identifiers.
pub fn example_names() -> &'static [&'static str] {
    &NAMES
}

/// A named catalog ring with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExampleSpec {
    /// First Weyl algebra: σ: t ↦ t − 1, a = t + 1.
    Weyl,
    /// Quantum Weyl algebra yx = q·xy + 1: σ: t ↦ q⁻¹(t − 1), a = qt + 1.
    QWeyl { q: Scalar },
    /// Quantum plane xy = λ·yx: σ: t ↦ λt, a = λ⁻¹t.
    QPlane { lambda: Scalar },
    /// Invariants of the Weyl algebra under ℤ/m: a = m^m·t(t + 1/m)…(t + (m−1)/m).
    CyclicInv { m: u32 },
    /// Primitive quotient U(sl₂)/(c − λ): a = λ − t(t − 1).
    Usl2 { lambda: Scalar },
    /// Quantum analogue over K[t, t⁻¹]: σ: t ↦ qt, a = λ + c with the image c
    /// of the Casimir element.
    Uqsl2 { lambda: Scalar, h: Scalar },
    /// a = 27·t(t − 1/3)(t − 2/3), σ: t ↦ t − 1.
    BavulaBekkert,
    /// σ: t ↦ λt with λ = μ², a = −μ⁻¹(c − t)(d + t).
    Class3 { mu: Scalar, c: Scalar, d: Scalar },
    /// General-type cocycle over ℤ with element p and automorphism σ.
    GeneralType { p: Coeff, sigma: AffineAuto },
    /// ℤ/nℤ-graded ring over F_p[t] with σ_{gⁱ} = σⁱ and the general-type
    /// pattern read modulo n.
    Rollup { n: u64, p: Coeff, sigma: AffineAuto },
}

/// Chooses ℚ(q) when any parameter mentions q, ℚ otherwise.
fn field_for(texts: &[&str]) -> FieldKind {
    if texts.iter().any(|t| t.chars().any(|c| c == 'q')) {
        FieldKind::RationalFunction
    } else {
        FieldKind::Rational
    }
}

/// Reads an affine image of t, such as "2*t" or "t - 1", as an automorphism.
pub(crate) fn parse_affine(src: &str, field: FieldKind) -> Result<AffineAuto> {
    let c = parse_coeff(src, CoeffDomain::poly(field))?;
    let p = c.as_uni().expect("polynomial carrier");
    if p.degree() != Some(1) {
        return Err(Error::ParameterDomain(format!(
            "'{src}' is not an affine image a*t + b with a ≠ 0"
        )));
    }
    AffineAuto::affine(p.coeff(1), p.coeff(0))
}

impl ExampleSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ExampleSpec::Weyl => "weyl",
            ExampleSpec::QWeyl { .. } => "qweyl",
            ExampleSpec::QPlane { .. } => "qplane",
            ExampleSpec::CyclicInv { .. } => "cyclic-inv",
            ExampleSpec::Usl2 { .. } => "usl2",
            ExampleSpec::Uqsl2 { .. } => "uqsl2",
            ExampleSpec::BavulaBekkert => "bavula-bekkert",
            ExampleSpec::Class3 { .. } => "class3",
            ExampleSpec::GeneralType { .. } => "general-type",
            ExampleSpec::Rollup { .. } => "rollup",
        }
    }

    /// The catalog entry with default parameters.
    pub fn default_for(name: &str) -> Result<Self> {
        Self::from_params(name, &[])
    }

    /// Builds a spec from `key=value` parameters; unspecified keys take
    /// their defaults (see the README for the table).
    pub fn from_params(name: &str, params: &[(String, String)]) -> Result<Self> {
        let mut given: BTreeMap<&str, &str> = BTreeMap::new();
        for (k, v) in params {
            given.insert(k.as_str(), v.as_str());
        }
        let allowed: &[&str] = match name {
            "weyl" | "bavula-bekkert" => &[],
            "qweyl" => &["q"],
            "qplane" | "usl2" => &["lambda"],
            "cyclic-inv" => &["m"],
            "uqsl2" => &["lambda", "h"],
            "class3" => &["mu", "c", "d"],
            "general-type" => &["p", "sigma"],
            "rollup" => &["n", "prime", "p", "sigma"],
            _ => {
                return Err(Error::ParameterDomain(format!(
                    "unknown example '{name}' (known: {})",
                    NAMES.join(", ")
                )))
            }
        };
        if let Some(k) = given.keys().find(|k| !allowed.contains(k)) {
            return Err(Error::ParameterDomain(format!(
                "example '{name}' has no parameter '{k}'"
            )));
        }
        let get = |k: &str, default: &'static str| -> String { given.get(k).map_or(default, |v| *v).to_string() };
        Ok(match name {
            "weyl" => ExampleSpec::Weyl,
            "bavula-bekkert" => ExampleSpec::BavulaBekkert,
            "qweyl" => {
                let q = get("q", "q");
                ExampleSpec::QWeyl {
                    q: parse_scalar(&q, field_for(&[&q]))?,
                }
            }
            "qplane" => {
                let l = get("lambda", "2");
                ExampleSpec::QPlane {
                    lambda: parse_scalar(&l, field_for(&[&l]))?,
                }
            }
            "usl2" => {
                let l = get("lambda", "0");
                ExampleSpec::Usl2 {
                    lambda: parse_scalar(&l, field_for(&[&l]))?,
                }
            }
            "cyclic-inv" => {
                let m = get("m", "2");
                ExampleSpec::CyclicInv {
                    m: m.trim()
                        .parse()
                        .map_err(|_| Error::ParameterDomain(format!("m = '{m}' is not a positive integer")))?,
                }
            }
            "uqsl2" => {
                let f = FieldKind::RationalFunction;
                ExampleSpec::Uqsl2 {
                    lambda: parse_scalar(&get("lambda", "0"), f)?,
                    h: parse_scalar(&get("h", "1"), f)?,
                }
            }
            "class3" => {
                let (mu, c, d) = (get("mu", "q"), get("c", "1"), get("d", "0"));
                let f = field_for(&[&mu, &c, &d]);
                ExampleSpec::Class3 {
                    mu: parse_scalar(&mu, f)?,
                    c: parse_scalar(&c, f)?,
                    d: parse_scalar(&d, f)?,
                }
            }
            "general-type" => {
                let (p, s) = (get("p", "t^2 + 1"), get("sigma", "t - 1"));
                let f = field_for(&[&p, &s]);
                ExampleSpec::GeneralType {
                    p: parse_coeff(&p, CoeffDomain::poly(f))?,
                    sigma: parse_affine(&s, f)?,
                }
            }
            "rollup" => {
                let n = get("n", "3");
                let n: u64 = n
                    .trim()
                    .parse()
                    .map_err(|_| Error::ParameterDomain(format!("n = '{n}' is not a positive integer")))?;
                let prime = get("prime", "7");
                let prime: u64 = prime
                    .trim()
                    .parse()
                    .map_err(|_| Error::ParameterDomain(format!("prime = '{prime}' is not an integer")))?;
                let f = FieldKind::prime(prime)?;
                ExampleSpec::Rollup {
                    n,
                    p: parse_coeff(&get("p", "t^2 + 1"), CoeffDomain::poly(f))?,
                    sigma: parse_affine(&get("sigma", "2*t"), f)?,
                }
            }
            _ => unreachable!("name checked above"),
        })
    }

    /// GWA data for the examples that are generalized Weyl algebras.
    pub fn gwa_data(&self) -> Option<Result<GWAData>> {
        let q_field = FieldKind::Rational;
        let poly = |f: FieldKind| CoeffDomain::poly(f);
        let shift = |f: FieldKind| AffineAuto::shift(Scalar::from_i64(-1, f));
        let build = |d: CoeffDomain, s: AffineAuto, a: Coeff| GWAData::degree_one(d, s, a);
        Some(match self {
            ExampleSpec::Weyl => {
                let d = poly(q_field);
                parse_coeff("t + 1", d).and_then(|a| build(d, shift(q_field), a))
            }
            ExampleSpec::QWeyl { q } => (|| {
                if q.is_zero() {
                    return Err(Error::ParameterDomain("q must be nonzero".into()));
                }
                let f = q.field();
                let d = poly(f);
                let qi = q.inv()?;
                let sigma = AffineAuto::affine(qi.clone(), -&qi)?;
                let a = d.var(0)?.scale(q).add(&d.one());
                build(d, sigma, a)
            })(),
            ExampleSpec::QPlane { lambda } => (|| {
                if lambda.is_zero() {
                    return Err(Error::ParameterDomain("λ must be nonzero".into()));
                }
                let d = poly(lambda.field());
                let a = d.var(0)?.scale(&lambda.inv()?);
                build(d, AffineAuto::scaling(lambda.clone())?, a)
            })(),
            ExampleSpec::CyclicInv { m } => (|| {
                if *m == 0 {
                    return Err(Error::ParameterDomain("m must be at least 1".into()));
                }
                let d = poly(q_field);
                let mm = Scalar::from_i64(*m as i64, q_field);
                let t = d.var(0)?;
                let mut a = d.constant(mm.pow(*m as i64)?);
                for j in 0..*m {
                    a = a.mul(&t.add(&d.constant(Scalar::rational(j as i64, *m as i64))));
                }
                build(d, shift(q_field), a)
            })(),
            ExampleSpec::Usl2 { lambda } => (|| {
                let f = lambda.field();
                let d = poly(f);
                let t = d.var(0)?;
                let a = d.constant(lambda.clone()).sub(&t.mul(&t.sub(&d.one())));
                build(d, shift(f), a)
            })(),
            ExampleSpec::Uqsl2 { lambda, h } => (|| {
                let f = FieldKind::RationalFunction;
                if h.is_zero() {
                    return Err(Error::ParameterDomain("h must be nonzero".into()));
                }
                let q = Scalar::q();
                let one = Scalar::one(f);
                let q2 = q.pow(2)?;
                if (&q2 - &one).is_zero() {
                    return Err(Error::ParameterDomain("q² must differ from 1".into()));
                }
                let d = CoeffDomain::new(Carrier::Laurent, f);
                let two_h_inv = (&Scalar::from_i64(2, f) * h).inv()?;
                let c = d
                    .var_pow(0, 2)?
                    .scale(&(&q2 - &one).inv()?)
                    .sub(&d.var_pow(0, -2)?.scale(&(&q.pow(-2)? - &one).inv()?))
                    .scale(&two_h_inv);
                let a = d.constant(lambda.clone()).add(&c);
                build(d, AffineAuto::scaling(q)?, a)
            })(),
            ExampleSpec::BavulaBekkert => {
                let d = poly(q_field);
                parse_coeff("27*t*(t - 1/3)*(t - 2/3)", d).and_then(|a| build(d, shift(q_field), a))
            }
            ExampleSpec::Class3 { mu, c, d: dd } => (|| {
                let f = mu.field();
                c.same_field(mu)?;
                dd.same_field(mu)?;
                if mu.is_zero() {
                    return Err(Error::ParameterDomain("μ must be nonzero".into()));
                }
                let lambda = mu * mu;
                if lambda.is_one() {
                    return Err(Error::ParameterDomain("λ = μ² must differ from 1".into()));
                }
                if c == dd {
                    return Err(Error::ParameterDomain("c and d must differ".into()));
                }
                let d = poly(f);
                let t = d.var(0)?;
                let a = d
                    .constant(c.clone())
                    .sub(&t)
                    .mul(&d.constant(dd.clone()).add(&t))
                    .scale(&-&mu.inv()?);
                build(d, AffineAuto::scaling(lambda)?, a)
            })(),
            ExampleSpec::GeneralType { .. } | ExampleSpec::Rollup { .. } => return None,
        })
    }

    /// Builds the ring without running the identity checks.
    pub fn build_unchecked(&self) -> Result<CrystalRing> {
        if let Some(data) = self.gwa_data() {
            return gwa_ring(&data?)?.with_aliases(BTreeMap::new()).and_then(with_xy);
        }
        match self {
            ExampleSpec::GeneralType { p, sigma } => {
                if p.is_zero() {
                    return Err(Error::ParameterDomain("p must be nonzero".into()));
                }
                let ring = CrystalRing::new(
                    p.domain(),
                    GradingGroup::free(1)?,
                    SigmaMap::Generators(vec![sigma.clone()]),
                    Cocycle::GeneralType(p.clone()),
                )?;
                with_xy(ring)
            }
            ExampleSpec::Rollup { n, p, sigma } => {
                if *n == 0 {
                    return Err(Error::ParameterDomain("n must be at least 1".into()));
                }
                if p.is_zero() {
                    return Err(Error::ParameterDomain("p must be nonzero".into()));
                }
                if !auto_power(sigma, *n as i64).is_identity() {
                    return Err(Error::ParameterDomain(format!("σ^{n} must be the identity")));
                }
                let group = GradingGroup::cyclic(*n)?;
                let autos: Vec<AffineAuto> = (0..*n).map(|i| auto_power(sigma, i as i64)).collect();
                let mut table = BTreeMap::new();
                for i in 1..*n {
                    let sp = p.apply(&autos[i as usize])?;
                    for j in 1..*n {
                        let v = if (i + j) % n == 0 { p.mul(&sp) } else { sp.clone() };
                        table.insert((GroupElt::Cyclic(i), GroupElt::Cyclic(j)), v);
                    }
                }
                let ring = CrystalRing::new(p.domain(), group, SigmaMap::Elements(autos), Cocycle::Table(table))?;
                let g = ring.u(&GroupElt::Cyclic(1 % n));
                ring.with_aliases(BTreeMap::from([("g".to_string(), g)]))
            }
            _ => unreachable!("GWA examples handled above"),
        }
    }
}

fn with_xy(ring: CrystalRing) -> Result<CrystalRing> {
    let x = ring.u(&GroupElt::Free(vec![1]));
    let y = ring.u(&GroupElt::Free(vec![-1]));
    ring.with_aliases(BTreeMap::from([("x".to_string(), x), ("y".to_string(), y)]))
}

impl fmt::Display for ExampleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExampleSpec::Weyl | ExampleSpec::BavulaBekkert => write!(f, "{}", self.name()),
            ExampleSpec::QWeyl { q } => write!(f, "qweyl q={q}"),
            ExampleSpec::QPlane { lambda } => write!(f, "qplane lambda={lambda}"),
            ExampleSpec::CyclicInv { m } => write!(f, "cyclic-inv m={m}"),
            ExampleSpec::Usl2 { lambda } => write!(f, "usl2 lambda={lambda}"),
            ExampleSpec::Uqsl2 { lambda, h } => write!(f, "uqsl2 lambda={lambda} h={h}"),
            ExampleSpec::Class3 { mu, c, d } => write!(f, "class3 mu={mu} c={c} d={d}"),
            ExampleSpec::GeneralType { p, sigma } => write!(f, "general-type p={p} sigma=({sigma})"),
            ExampleSpec::Rollup { n, p, sigma } => {
                write!(
                    f,
                    "rollup n={n} prime={} p={p} sigma=({sigma})",
                    p.field().characteristic()
                )
            }
        }
    }
}

/// The named ring, verified on the default window (exhaustively for finite
/// gradings) before it is returned.
pub fn example(spec: &ExampleSpec) -> Result<CrystalRing> {
    let ring = spec.build_unchecked()?;
    let report = ring.verify(DEFAULT_RADIUS);
    if let Some(v) = report.first() {
        return Err(Error::InvariantViolation(format!("{spec}: {v}")));
    }
    Ok(ring)
}

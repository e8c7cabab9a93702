//! Ring description documents (schema "cgr-1"): a JSON file holding the
//! field, carrier, grading group, σ, α and optional generator aliases, with
//! every polynomial in canonical text form.
//!
//! ```json
//! {
//!   "schema": "cgr-1",
//!   "source": "weyl",
//!   "field": "Q",
//!   "carrier": "poly",
//!   "group": "Z",
//!   "sigma": [[["1", "-1"]]],
//!   "alpha": { "kind": "gwa", "payload": "t + 1" },
//!   "aliases": { "x": "u[1]", "y": "u[-1]" }
//! }
//! ```
//!
//! `group` is "Z", "Z^n", "Cn" or `{"table": [[…]]}` (a multiplication table
//! of element indices). `sigma` lists automorphisms as one `[scale, shift]`
//! pair per variable: the generator automorphisms for ℤⁿ and for a cyclic
//! group given by one generator, otherwise one automorphism per element.
//! `alpha.kind` is "trivial" (no payload), "gwa" or "general" (payload: the
//! defining polynomial), "table" (payload: `[g, h, value]` entries with
//! group elements as coordinate lists; omitted pairs are 1) or "tensor"
//! (payload: one rank-one alpha object per coordinate of ℤⁿ).

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::coeff::{Carrier, CoeffDomain};
use crate::crystal::{Cocycle, CrystalRing, SigmaMap};
use crate::error::{Error, Result};
use crate::expr::parse_coeff;
use crate::group::{GradingGroup, GroupElt};
use crate::poly::AffineAuto;
use crate::scalar::{FieldKind, Scalar};

pub const SCHEMA: &str = "cgr-1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Named(String),
    Table { table: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub payload: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDoc {
    pub schema: String,
    /// Free-text provenance, e.g. the catalog name and parameters.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    pub field: String,
    pub carrier: String,
    pub group: GroupSpec,
    pub sigma: Vec<Vec<[String; 2]>>,
    pub alpha: AlphaSpec,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub aliases: BTreeMap<String, String>,
}

fn doc_err(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

fn field_tag(field: FieldKind) -> String {
    match field {
        FieldKind::Rational => "Q".into(),
        FieldKind::Prime(p) => format!("Fp:{p}"),
        FieldKind::RationalFunction => "Qq".into(),
    }
}

fn auto_spec(phi: &AffineAuto) -> Vec<[String; 2]> {
    phi.maps().iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect()
}

fn alpha_spec(alpha: &Cocycle) -> AlphaSpec {
    match alpha {
        Cocycle::Trivial => AlphaSpec {
            kind: "trivial".into(),
            payload: Value::Null,
        },
        Cocycle::Gwa(a) => AlphaSpec {
            kind: "gwa".into(),
            payload: Value::String(a.to_string()),
        },
        Cocycle::GeneralType(p) => AlphaSpec {
            kind: "general".into(),
            payload: Value::String(p.to_string()),
        },
        Cocycle::Table(t) => AlphaSpec {
            kind: "table".into(),
            payload: Value::Array(
                t.iter()
                    .filter(|(_, v)| !v.is_one())
                    .map(|((g, h), v)| json!([g.coords(), h.coords(), v.to_string()]))
                    .collect(),
            ),
        },
        Cocycle::Tensor(parts) => AlphaSpec {
            kind: "tensor".into(),
            payload: Value::Array(
                parts
                    .iter()
                    .map(|p| serde_json::to_value(alpha_spec(p)).expect("serialisable"))
                    .collect(),
            ),
        },
    }
}

fn parse_group(spec: &GroupSpec) -> Result<GradingGroup> {
    match spec {
        GroupSpec::Table { table } => GradingGroup::table(table.clone()),
        GroupSpec::Named(s) => {
            let bad = || doc_err(format!("unknown group '{s}' (expected Z, Z^n, Cn or a table)"));
            if s == "Z" {
                GradingGroup::free(1)
            } else if let Some(n) = s.strip_prefix("Z^") {
                GradingGroup::free(n.parse().map_err(|_| bad())?)
            } else if let Some(n) = s.strip_prefix('C') {
                GradingGroup::cyclic(n.parse().map_err(|_| bad())?)
            } else {
                Err(bad())
            }
        }
    }
}

fn parse_auto(pairs: &[[String; 2]], field: FieldKind) -> Result<AffineAuto> {
    let maps = pairs
        .iter()
        .map(|[a, b]| Ok((Scalar::parse(a, field)?, Scalar::parse(b, field)?)))
        .collect::<Result<Vec<_>>>()?;
    AffineAuto::new(field, maps)
}

fn payload_text(spec: &AlphaSpec) -> Result<&str> {
    spec.payload
        .as_str()
        .ok_or_else(|| doc_err(format!("alpha kind '{}' needs a polynomial string payload", spec.kind)))
}

fn parse_elt(group: &GradingGroup, v: &Value) -> Result<GroupElt> {
    let coords = v
        .as_array()
        .ok_or_else(|| doc_err("group element must be a list of integers"))?
        .iter()
        .map(|x| {
            x.as_i64()
                .ok_or_else(|| doc_err("group element must be a list of integers"))
        })
        .collect::<Result<Vec<_>>>()?;
    group.element(&coords)
}

fn parse_alpha(spec: &AlphaSpec, domain: CoeffDomain, group: &GradingGroup) -> Result<Cocycle> {
    match spec.kind.as_str() {
        "trivial" => Ok(Cocycle::Trivial),
        "gwa" => Ok(Cocycle::Gwa(parse_coeff(payload_text(spec)?, domain)?)),
        "general" => Ok(Cocycle::GeneralType(parse_coeff(payload_text(spec)?, domain)?)),
        "table" => {
            let entries = spec
                .payload
                .as_array()
                .ok_or_else(|| doc_err("table payload must be a list"))?;
            let mut table = BTreeMap::new();
            for e in entries {
                let triple = e
                    .as_array()
                    .filter(|t| t.len() == 3)
                    .ok_or_else(|| doc_err("table entries are [g, h, value]"))?;
                let g = parse_elt(group, &triple[0])?;
                let h = parse_elt(group, &triple[1])?;
                let text = triple[2]
                    .as_str()
                    .ok_or_else(|| doc_err("table values are polynomial strings"))?;
                if table
                    .insert((g.clone(), h.clone()), parse_coeff(text, domain)?)
                    .is_some()
                {
                    return Err(doc_err(format!("duplicate table entry for ({g}, {h})")));
                }
            }
            Ok(Cocycle::Table(table))
        }
        "tensor" => {
            let parts = spec
                .payload
                .as_array()
                .ok_or_else(|| doc_err("tensor payload must be a list"))?;
            parts
                .iter()
                .map(|p| {
                    let part: AlphaSpec =
                        serde_json::from_value(p.clone()).map_err(|e| doc_err(format!("tensor component: {e}")))?;
                    parse_alpha(&part, domain, group)
                })
                .collect::<Result<Vec<_>>>()
                .map(Cocycle::Tensor)
        }
        other => Err(doc_err(format!(
            "unknown alpha kind '{other}' (expected trivial, gwa, general, table or tensor)"
        ))),
    }
}

impl RingDoc {
    /// The document describing `ring`, in canonical form.
    pub fn from_ring(ring: &CrystalRing, source: Option<String>) -> RingDoc {
        let domain = ring.domain();
        RingDoc {
            schema: SCHEMA.into(),
            source,
            field: field_tag(domain.field),
            carrier: domain.carrier.to_string(),
            group: match ring.group() {
                GradingGroup::Table(t) => GroupSpec::Table {
                    table: t.table().to_vec(),
                },
                g => GroupSpec::Named(g.tag()),
            },
            sigma: ring.sigma_map().autos().iter().map(auto_spec).collect(),
            alpha: alpha_spec(ring.cocycle()),
            aliases: ring.aliases().iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
        }
    }

    /// Builds the ring (structural checks only; identities are verified
    /// separately).
    pub fn to_ring(&self) -> Result<CrystalRing> {
        if self.schema != SCHEMA {
            return Err(doc_err(format!(
                "schema '{}' is not supported (expected {SCHEMA})",
                self.schema
            )));
        }
        let field = FieldKind::parse_tag(&self.field)?;
        let domain = CoeffDomain::new(Carrier::parse_tag(&self.carrier)?, field);
        let group = parse_group(&self.group)?;
        let autos = self
            .sigma
            .iter()
            .map(|a| parse_auto(a, field))
            .collect::<Result<Vec<_>>>()?;
        let sigma = match &group {
            GradingGroup::FreeAbelian(_) => SigmaMap::Generators(autos),
            GradingGroup::Cyclic(n) if autos.len() == 1 && *n != 1 => SigmaMap::Generators(autos),
            _ => SigmaMap::Elements(autos),
        };
        let alpha = parse_alpha(&self.alpha, domain, &group)?;
        let ring = CrystalRing::new(domain, group, sigma, alpha)?;
        let mut aliases = BTreeMap::new();
        for (name, src) in &self.aliases {
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(doc_err(format!("alias name '{name}' is not an identifier")));
            }
            aliases.insert(name.clone(), ring.parse(src)?);
        }
        ring.with_aliases(aliases)
    }

    pub fn from_text(text: &str) -> Result<RingDoc> {
        serde_json::from_str(text).map_err(|e| doc_err(format!("invalid ring document: {e}")))
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialise");
        s.push('\n');
        s
    }

    pub fn load(path: &Path) -> Result<RingDoc> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
        Self::from_text(&text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text()).map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display())))
    }
}

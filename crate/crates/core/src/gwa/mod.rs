//! Generalized Weyl algebras D(σ, a) as crystalline graded rings, their
//! tensor products and associated graded rings, and the example catalog.

mod catalog;

use crate::coeff::{Carrier, Coeff, CoeffDomain};
use crate::crystal::{Cocycle, CrystalRing, SigmaMap};
use crate::error::{Error, Result};
use crate::group::GradingGroup;
use crate::poly::{AffineAuto, MultiPoly};
use crate::scalar::Scalar;

pub use catalog::{example, example_names, ExampleSpec, DEFAULT_RADIUS};

/// Data (σ₁…σₙ, a₁…aₙ) of a degree-n generalized Weyl algebra over A₀.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GWAData {
    domain: CoeffDomain,
    sigma: Vec<AffineAuto>,
    a: Vec<Coeff>,
}

impl GWAData {
    /// Checks: a_i ≠ 0, σ_i pairwise commuting, σ_i(a_j) = a_j for i ≠ j.
    pub fn new(domain: CoeffDomain, sigma: Vec<AffineAuto>, a: Vec<Coeff>) -> Result<Self> {
        if sigma.is_empty() || sigma.len() != a.len() {
            return Err(Error::InvariantViolation(format!(
                "{} automorphism(s) for {} defining element(s)",
                sigma.len(),
                a.len()
            )));
        }
        for phi in &sigma {
            domain.check_auto(phi)?;
        }
        for (i, ai) in a.iter().enumerate() {
            if ai.field() != domain.field {
                return Err(Error::MixedField(domain.field.to_string(), ai.field().to_string()));
            }
            domain.check(ai)?;
            if ai.is_zero() {
                return Err(Error::ZeroCocycleValue(format!("{}", i + 1), "a".into()));
            }
        }
        for i in 0..sigma.len() {
            for j in 0..sigma.len() {
                if i == j {
                    continue;
                }
                if !sigma[i].commutes_with(&sigma[j])? {
                    return Err(Error::InvariantViolation(format!(
                        "σ_{} and σ_{} do not commute",
                        i + 1,
                        j + 1
                    )));
                }
                if a[j].apply(&sigma[i])? != a[j] {
                    return Err(Error::InvariantViolation(format!(
                        "σ_{}(a_{}) ≠ a_{}",
                        i + 1,
                        j + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(GWAData { domain, sigma, a })
    }

    /// Degree-one data (σ, a).
    pub fn degree_one(domain: CoeffDomain, sigma: AffineAuto, a: Coeff) -> Result<Self> {
        Self::new(domain, vec![sigma], vec![a])
    }

    pub fn domain(&self) -> CoeffDomain {
        self.domain
    }

    pub fn sigma(&self) -> &[AffineAuto] {
        &self.sigma
    }

    pub fn a(&self) -> &[Coeff] {
        &self.a
    }

    pub fn degree(&self) -> usize {
        self.a.len()
    }
}

/// The ℤⁿ-graded crystalline ring of a GWA: u_{e_i} = X_i⁺, u_{−e_i} = X_i⁻,
/// coordinate-wise rule cocycle, untwisted across coordinates.
pub fn gwa_ring(data: &GWAData) -> Result<CrystalRing> {
    let n = data.degree();
    let alpha = if n == 1 {
        Cocycle::Gwa(data.a[0].clone())
    } else {
        Cocycle::Tensor(data.a.iter().cloned().map(Cocycle::Gwa).collect())
    };
    CrystalRing::new(
        data.domain,
        GradingGroup::free(n)?,
        SigmaMap::Generators(data.sigma.clone()),
        alpha,
    )
}

fn embed(c: &Coeff, arity: usize, offset: usize) -> Result<MultiPoly> {
    match c {
        Coeff::Poly(p) => Ok(MultiPoly::from_uni(p, arity, offset)),
        Coeff::Multi(m) => {
            let terms = m
                .terms()
                .map(|(e, s)| {
                    let mut v = vec![0; arity];
                    v[offset..offset + e.len()].copy_from_slice(e);
                    (v, s.clone())
                })
                .collect();
            MultiPoly::from_terms(m.field(), arity, terms)
        }
        Coeff::Laurent(_) => Err(Error::CarrierMismatch(
            "Laurent coefficients have no multivariate polynomial embedding".into(),
        )),
    }
}

fn embed_auto(phi: &AffineAuto, arity: usize, offset: usize) -> Result<AffineAuto> {
    let field = phi.field();
    let mut maps = vec![(Scalar::one(field), Scalar::zero(field)); arity];
    maps[offset..offset + phi.arity()].clone_from_slice(phi.maps());
    AffineAuto::new(field, maps)
}

/// A ⊗ B over the multivariate carrier of summed arity.
pub fn gwa_tensor(a: &GWAData, b: &GWAData) -> Result<GWAData> {
    if a.domain.field != b.domain.field {
        return Err(Error::MixedField(
            a.domain.field.to_string(),
            b.domain.field.to_string(),
        ));
    }
    let (ka, kb) = (a.domain.carrier.arity(), b.domain.carrier.arity());
    let arity = ka + kb;
    let domain = CoeffDomain::new(Carrier::Multi(arity), a.domain.field);
    let mut sigma = Vec::new();
    let mut defining = Vec::new();
    for (data, offset) in [(a, 0), (b, ka)] {
        for (phi, ai) in data.sigma.iter().zip(&data.a) {
            sigma.push(embed_auto(phi, arity, offset)?);
            defining.push(Coeff::Multi(embed(ai, arity, offset)?));
        }
    }
    GWAData::new(domain, sigma, defining)
}

/// Associated graded GWA for a = α·t^k + lower terms: (id, α·t^k).
pub fn assoc_graded(data: &GWAData) -> Result<GWAData> {
    if data.degree() != 1 || data.domain.carrier != Carrier::Poly {
        return Err(Error::CarrierMismatch(
            "associated graded needs degree-one data over K[t]".into(),
        ));
    }
    let a = &data.a[0];
    let k = a.degree().unwrap_or(0);
    let lead = a.leading_coeff().expect("a is nonzero");
    let top = data.domain.var(0)?.pow(k as u32).scale(&lead);
    GWAData::degree_one(data.domain, data.domain.identity_auto(), top)
}

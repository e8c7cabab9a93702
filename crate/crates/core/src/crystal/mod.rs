//! The core engine: σ-maps, cocycles, crystalline graded rings and their
//! elements, identity verification, and Ore localization.

mod element;
mod local;
mod verify;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use crate::coeff::{Coeff, CoeffDomain};
use crate::error::{Error, Result};
use crate::group::{GradingGroup, GroupElt};
use crate::poly::{auto_power, AffineAuto};

pub use element::RingElement;
pub use local::{Denominator, Fraction, LocalizedElement, OreWitness};
pub use verify::{VerificationReport, Violation};

/// The automorphisms σ_g, given either by generators (ℤⁿ, or a single
/// generator of a cyclic group) or by one automorphism per element of a
/// finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SigmaMap {
    Generators(Vec<AffineAuto>),
    Elements(Vec<AffineAuto>),
}

impl SigmaMap {
    pub fn autos(&self) -> &[AffineAuto] {
        match self {
            SigmaMap::Generators(v) | SigmaMap::Elements(v) => v,
        }
    }
}

/// The cocycle α : G × G → A₀.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cocycle {
    /// α ≡ 1.
    Trivial,
    /// Degree-one generalized Weyl algebra rules for the defining element `a`
    /// (rank-one gradings).
    Gwa(Coeff),
    /// α(n,m) = σⁿ(p) for n, m ≠ 0, m ≠ −n; α(n,−n) = p·σⁿ(p) (rank one).
    GeneralType(Coeff),
    /// Explicit values; pairs not listed are 1.
    Table(BTreeMap<(GroupElt, GroupElt), Coeff>),
    /// Coordinate-wise product of rank-one cocycles on ℤⁿ; component `i`
    /// twists by the `i`-th generator automorphism.
    Tensor(Vec<Cocycle>),
}

impl Cocycle {
    fn is_rank_one(&self) -> bool {
        matches!(self, Cocycle::Trivial | Cocycle::Gwa(_) | Cocycle::GeneralType(_))
    }

    fn coefficients(&self) -> Vec<&Coeff> {
        match self {
            Cocycle::Trivial => Vec::new(),
            Cocycle::Gwa(a) | Cocycle::GeneralType(a) => vec![a],
            Cocycle::Table(t) => t.values().collect(),
            Cocycle::Tensor(parts) => parts.iter().flat_map(Cocycle::coefficients).collect(),
        }
    }
}

/// Where a ring stands with respect to the identity checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validation {
    Unchecked,
    Verified { radius: i64 },
    Failed(String),
}

static NEXT_RING_ID: AtomicU64 = AtomicU64::new(1);

/// A crystalline graded ring A = ⊕ A₀·u_g with commutative A₀.
pub struct CrystalRing {
    id: u64,
    domain: CoeffDomain,
    group: GradingGroup,
    sigma: SigmaMap,
    alpha: Cocycle,
    aliases: BTreeMap<String, RingElement>,
    status: RwLock<Validation>,
    alpha_cache: RwLock<HashMap<(GroupElt, GroupElt), Coeff>>,
    sigma_cache: RwLock<HashMap<GroupElt, AffineAuto>>,
}

impl Clone for CrystalRing {
    fn clone(&self) -> Self {
        CrystalRing {
            id: self.id,
            domain: self.domain,
            group: self.group.clone(),
            sigma: self.sigma.clone(),
            alpha: self.alpha.clone(),
            aliases: self.aliases.clone(),
            status: RwLock::new(self.status()),
            alpha_cache: RwLock::new(self.alpha_cache.read().expect("cache lock").clone()),
            sigma_cache: RwLock::new(self.sigma_cache.read().expect("cache lock").clone()),
        }
    }
}

impl fmt::Debug for CrystalRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CrystalRing")
            .field("domain", &self.domain)
            .field("group", &self.group)
            .field("sigma", &self.sigma)
            .field("alpha", &self.alpha)
            .finish()
    }
}

fn check_coeff_domain(domain: &CoeffDomain, c: &Coeff) -> Result<()> {
    if c.field() != domain.field {
        return Err(Error::MixedField(domain.field.to_string(), c.field().to_string()));
    }
    domain.check(c)
}

impl CrystalRing {
    /// Assembles a ring after structural checks: shapes and fields agree, σ is
    /// a homomorphism on the group (on generators for ℤⁿ, exhaustively for
    /// finite groups), α is normalised and nonzero on a small sample.
    pub fn new(domain: CoeffDomain, group: GradingGroup, sigma: SigmaMap, alpha: Cocycle) -> Result<Self> {
        for phi in sigma.autos() {
            domain.check_auto(phi)?;
        }
        match (&group, &sigma) {
            (GradingGroup::FreeAbelian(n), SigmaMap::Generators(gens)) => {
                if gens.len() != *n {
                    return Err(Error::GroupMismatch(format!(
                        "{n} generator automorphism(s) needed, {} given",
                        gens.len()
                    )));
                }
                for (i, a) in gens.iter().enumerate() {
                    for b in &gens[i + 1..] {
                        if !a.commutes_with(b)? {
                            return Err(Error::InvalidAutomorphism(format!(
                                "generator automorphisms {a} and {b} do not commute"
                            )));
                        }
                    }
                }
            }
            (GradingGroup::Cyclic(n), SigmaMap::Generators(gens)) => {
                if gens.len() != 1 {
                    return Err(Error::GroupMismatch(
                        "a cyclic group takes one generator automorphism".into(),
                    ));
                }
                if !auto_power(&gens[0], *n as i64).is_identity() {
                    return Err(Error::InvalidAutomorphism(format!(
                        "σ^{n} must be the identity for a cyclic group of order {n}"
                    )));
                }
            }
            (GradingGroup::FreeAbelian(_), SigmaMap::Elements(_)) => {
                return Err(Error::GroupMismatch("ℤⁿ gradings take generator automorphisms".into()));
            }
            (_, SigmaMap::Elements(autos)) => {
                let elems = group.window(0);
                if autos.len() != elems.len() {
                    return Err(Error::GroupMismatch(format!(
                        "{} automorphisms needed, {} given",
                        elems.len(),
                        autos.len()
                    )));
                }
                let idx = |g: &GroupElt| g.coords()[0] as usize;
                if !autos[idx(&group.identity())].is_identity() {
                    return Err(Error::InvalidAutomorphism("σ_e must be the identity".into()));
                }
                for g in &elems {
                    for h in &elems {
                        let gh = group.op(g, h);
                        if autos[idx(g)].compose(&autos[idx(h)])? != autos[idx(&gh)] {
                            return Err(Error::InvalidAutomorphism(format!(
                                "σ is not a homomorphism: σ_{g}σ_{h} ≠ σ_{gh}"
                            )));
                        }
                    }
                }
            }
            (GradingGroup::Table(_), SigmaMap::Generators(_)) => {
                return Err(Error::GroupMismatch(
                    "table groups take one automorphism per element".into(),
                ));
            }
        }
        match (&alpha, &group) {
            (Cocycle::Trivial | Cocycle::Table(_), _) => {}
            (Cocycle::Gwa(_) | Cocycle::GeneralType(_), GradingGroup::FreeAbelian(1)) => {}
            (Cocycle::Tensor(parts), GradingGroup::FreeAbelian(n)) if parts.len() == *n => {
                if !parts.iter().all(Cocycle::is_rank_one) {
                    return Err(Error::GroupMismatch(
                        "tensor components must be rank-one cocycles".into(),
                    ));
                }
            }
            _ => {
                return Err(Error::GroupMismatch(format!(
                    "cocycle shape does not fit the group {group}"
                )));
            }
        }
        if let Cocycle::Table(t) = &alpha {
            for (g, h) in t.keys() {
                group.check(g)?;
                group.check(h)?;
            }
        }
        for c in alpha.coefficients() {
            check_coeff_domain(&domain, c)?;
        }
        let ring = CrystalRing {
            id: NEXT_RING_ID.fetch_add(1, Ordering::Relaxed),
            domain,
            group,
            sigma,
            alpha,
            aliases: BTreeMap::new(),
            status: RwLock::new(Validation::Unchecked),
            alpha_cache: RwLock::new(HashMap::new()),
            sigma_cache: RwLock::new(HashMap::new()),
        };
        let sample = ring.group.window(2);
        let e = ring.group.identity();
        for g in &sample {
            for h in &sample {
                let a = ring.alpha_value(g, h)?;
                if (*g == e || *h == e) && !a.is_one() {
                    return Err(Error::InvariantViolation(format!("α({g}, {h}) = {a}, expected 1")));
                }
            }
        }
        Ok(ring)
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn domain(&self) -> CoeffDomain {
        self.domain
    }

    pub fn group(&self) -> &GradingGroup {
        &self.group
    }

    pub fn sigma_map(&self) -> &SigmaMap {
        &self.sigma
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.alpha
    }

    pub fn status(&self) -> Validation {
        self.status.read().expect("status lock").clone()
    }

    pub(crate) fn set_status(&self, v: Validation) {
        *self.status.write().expect("status lock") = v;
    }

    pub fn aliases(&self) -> &BTreeMap<String, RingElement> {
        &self.aliases
    }

    /// Registers generator names (e.g. x ↦ u[1]); each must be homogeneous.
    pub fn with_aliases(mut self, aliases: BTreeMap<String, RingElement>) -> Result<Self> {
        for (name, el) in &aliases {
            self.check_element(el)?;
            if el.support().count() != 1 {
                return Err(Error::Document(format!("alias '{name}' must be a homogeneous element")));
            }
            if matches!(name.as_str(), "t" | "u" | "q") {
                return Err(Error::Document(format!("alias name '{name}' is reserved")));
            }
        }
        self.aliases = aliases;
        Ok(self)
    }

    /// σ_g as an affine automorphism (cached).
    pub fn sigma(&self, g: &GroupElt) -> AffineAuto {
        if let Some(phi) = self.sigma_cache.read().expect("cache lock").get(g) {
            return phi.clone();
        }
        let phi = self.compute_sigma(g);
        self.sigma_cache
            .write()
            .expect("cache lock")
            .insert(g.clone(), phi.clone());
        phi
    }

    fn compute_sigma(&self, g: &GroupElt) -> AffineAuto {
        match (&self.sigma, g) {
            (SigmaMap::Generators(gens), GroupElt::Free(v)) => {
                gens.iter().zip(v).fold(self.domain.identity_auto(), |acc, (phi, &k)| {
                    acc.compose(&auto_power(phi, k)).expect("same arity")
                })
            }
            (SigmaMap::Generators(gens), GroupElt::Cyclic(r)) => auto_power(&gens[0], *r as i64),
            (SigmaMap::Elements(autos), _) => autos[g.coords()[0] as usize].clone(),
            _ => panic!("group element does not match the σ-map"),
        }
    }

    /// σ_g(c).
    pub fn apply_sigma(&self, g: &GroupElt, c: &Coeff) -> Coeff {
        if self.group.is_identity(g) {
            return c.clone();
        }
        c.apply(&self.sigma(g)).expect("σ validated for this carrier")
    }

    /// α(g, h), cached.
    pub fn alpha_value(&self, g: &GroupElt, h: &GroupElt) -> Result<Coeff> {
        self.group.check(g)?;
        self.group.check(h)?;
        let key = (g.clone(), h.clone());
        if let Some(v) = self.alpha_cache.read().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let v = self.compute_alpha(g, h)?;
        if v.is_zero() {
            return Err(Error::ZeroCocycleValue(g.to_string(), h.to_string()));
        }
        self.alpha_cache.write().expect("cache lock").insert(key, v.clone());
        Ok(v)
    }

    fn compute_alpha(&self, g: &GroupElt, h: &GroupElt) -> Result<Coeff> {
        let one = self.domain.one();
        Ok(match &self.alpha {
            Cocycle::Trivial => one,
            Cocycle::Table(t) => t.get(&(g.clone(), h.clone())).cloned().unwrap_or(one),
            Cocycle::Gwa(_) | Cocycle::GeneralType(_) => {
                let (GroupElt::Free(a), GroupElt::Free(b)) = (g, h) else {
                    unreachable!("rank-one cocycles live on ℤ")
                };
                let SigmaMap::Generators(gens) = &self.sigma else {
                    unreachable!("ℤ gradings carry generator automorphisms")
                };
                rank_one_alpha(&self.alpha, &gens[0], a[0], b[0], &self.domain)
            }
            Cocycle::Tensor(parts) => {
                let (GroupElt::Free(a), GroupElt::Free(b)) = (g, h) else {
                    unreachable!("tensor cocycles live on ℤⁿ")
                };
                let SigmaMap::Generators(gens) = &self.sigma else {
                    unreachable!("ℤⁿ gradings carry generator automorphisms")
                };
                parts.iter().enumerate().fold(one, |acc, (i, c)| {
                    acc.mul(&rank_one_alpha(c, &gens[i], a[i], b[i], &self.domain))
                })
            }
        })
    }

    pub(crate) fn check_element(&self, x: &RingElement) -> Result<()> {
        if x.ring_id() != self.id {
            return Err(Error::GroupMismatch("element belongs to a different ring".into()));
        }
        Ok(())
    }
}

/// Rank-one cocycle value α(n, m) twisted by `sigma`.
fn rank_one_alpha(c: &Cocycle, sigma: &AffineAuto, n: i64, m: i64, domain: &CoeffDomain) -> Coeff {
    let one = domain.one();
    let sig = |k: i64, a: &Coeff| -> Coeff {
        if k == 0 {
            a.clone()
        } else {
            a.apply(&auto_power(sigma, k)).expect("σ validated for this carrier")
        }
    };
    // ∏_{k=lo}^{hi} σ^k(a)
    let run = |a: &Coeff, lo: i64, hi: i64| (lo..=hi).fold(one.clone(), |acc, k| acc.mul(&sig(k, a)));
    match c {
        Cocycle::Trivial => one,
        Cocycle::Gwa(a) => {
            if n == 0 || m == 0 || (n > 0) == (m > 0) {
                one
            } else if n > 0 {
                let mm = -m;
                if n >= mm {
                    run(a, n - mm + 1, n)
                } else {
                    run(a, 1, n)
                }
            } else {
                let nn = -n;
                if nn >= m {
                    run(a, -nn + 1, -nn + m)
                } else {
                    run(a, -nn + 1, 0)
                }
            }
        }
        Cocycle::GeneralType(p) => {
            if n == 0 || m == 0 {
                one
            } else if m == -n {
                p.mul(&sig(n, p))
            } else {
                sig(n, p)
            }
        }
        Cocycle::Table(_) | Cocycle::Tensor(_) => unreachable!("not a rank-one cocycle"),
    }
}

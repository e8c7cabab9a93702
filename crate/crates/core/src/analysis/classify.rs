use std::fmt;

use crate::coeff::Coeff;
use crate::crystal::CrystalRing;
use crate::group::GroupElt;

use super::membership::{coeff_degree, subalgebra_member, BoundedSpan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVerdict {
    pub holds: bool,
    pub reason: String,
    /// First failing instance, rendered.
    pub witness: Option<String>,
}

/// Which of the three distinguished classes a ring satisfies on a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub radius: i64,
    pub class1: ClassVerdict,
    pub class2: ClassVerdict,
    pub class3: ClassVerdict,
}

impl fmt::Display for ClassReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, v) in [(1, &self.class1), (2, &self.class2), (3, &self.class3)] {
            let status = if v.holds { "holds" } else { "fails" };
            write!(f, "Class {n}: {status} on window radius {} ({})", self.radius, v.reason)?;
            if let Some(w) = &v.witness {
                write!(f, "; witness {w}")?;
            }
            if n < 3 {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

fn pair(g: &GroupElt, h: &GroupElt) -> String {
    format!("α({g},{h})")
}

fn distinct(values: impl IntoIterator<Item = Coeff>) -> Vec<Coeff> {
    let mut out: Vec<Coeff> = Vec::new();
    for v in values {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Evaluates the classes on the window of the given radius:
/// Class 2 (centrally crystalline) holds because A₀ is commutative;
/// Class 3 asks α(g,h) ∈ K[α(g,g⁻¹)]; Class 1 asks σ_t(α(g,h)) ∈ K[α(g,h)],
/// all indices in the window. Membership is bounded by the largest degree
/// among the window values, so a failure means "not found up to that degree".
pub fn classify(ring: &CrystalRing, radius: i64) -> ClassReport {
    let grp = ring.group();
    let window = grp.window(radius);
    let alpha = |g: &GroupElt, h: &GroupElt| ring.alpha_value(g, h).unwrap_or_else(|_| ring.domain().zero());
    let mut pairs = Vec::new();
    for g in &window {
        for h in &window {
            pairs.push((g.clone(), h.clone(), alpha(g, h)));
        }
    }
    let bound = pairs.iter().map(|(_, _, a)| coeff_degree(a)).max().unwrap_or(0);
    let domain = ring.domain();

    let class2 = ClassVerdict {
        holds: true,
        reason: "A₀ is commutative, so every α(g,h) is central in A₀".into(),
        witness: None,
    };

    let inverse_gens = distinct(window.iter().map(|g| alpha(g, &grp.inv(g))));
    let span3 = BoundedSpan::build(domain, &inverse_gens, bound).expect("window values lie in A₀");
    let miss3 = if span3.is_full(bound) {
        None
    } else {
        pairs.iter().find(|(_, _, a)| span3.solve(a).is_none())
    };
    let class3 = match miss3 {
        None => ClassVerdict {
            holds: true,
            reason: format!("every α(g,h) lies in K[α(g,g⁻¹)] up to degree {bound}"),
            witness: None,
        },
        Some((g, h, a)) => {
            let confirmed = subalgebra_member(a, &inverse_gens, bound)
                .map(|v| !v.is_member())
                .unwrap_or(false);
            ClassVerdict {
                holds: !confirmed,
                reason: format!("{} ∉ K[α(g,g⁻¹)] up to degree {bound}", pair(g, h)),
                witness: Some(format!("{} = {a}", pair(g, h))),
            }
        }
    };

    let all_gens = distinct(pairs.iter().map(|(_, _, a)| a.clone()));
    let span1 = BoundedSpan::build(domain, &all_gens, bound).expect("window values lie in A₀");
    let full = span1.is_full(bound);
    let mut seen: Vec<Coeff> = Vec::new();
    let mut miss1 = None;
    'search: for s in &window {
        for (g, h, a) in &pairs {
            let image = ring.apply_sigma(s, a);
            if seen.contains(&image) {
                continue;
            }
            if coeff_degree(&image) > bound || (!full && span1.solve(&image).is_none()) {
                miss1 = Some((s.clone(), g.clone(), h.clone(), image));
                break 'search;
            }
            seen.push(image);
        }
    }
    let class1 = match miss1 {
        None => ClassVerdict {
            holds: true,
            reason: format!("every σ_s(α(g,h)) lies in K[α(g,h)] up to degree {bound}"),
            witness: None,
        },
        Some((s, g, h, image)) => ClassVerdict {
            holds: false,
            reason: format!("σ_{s}({}) ∉ K[α(g,h)] up to degree {bound}", pair(&g, &h)),
            witness: Some(format!("σ_{s}({}) = {image}", pair(&g, &h))),
        },
    };

    ClassReport {
        radius,
        class1,
        class2,
        class3,
    }
}

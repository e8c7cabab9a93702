use std::fmt;

use crate::coeff::{Carrier, Coeff};
use crate::group::GroupElt;
use crate::scalar::Scalar;

use super::{CrystalRing, Validation};

/// One failed identity instance, with both sides rendered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: &'static str,
    pub elements: Vec<GroupElt>,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at: Vec<String> = self.elements.iter().map(GroupElt::to_string).collect();
        write!(
            f,
            "{} fails at ({}): lhs = {}, rhs = {}",
            self.identity,
            at.join(", "),
            self.lhs,
            self.rhs
        )
    }
}

/// Outcome of checking the ring identities on a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub radius: i64,
    pub window_size: usize,
    pub checks: usize,
    /// Violations in canonical order of their group elements (capped).
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.first() {
            None => write!(
                f,
                "PASS ({} checks on {} group elements)",
                self.checks, self.window_size
            ),
            Some(v) => write!(f, "FAIL: {v}"),
        }
    }
}

const MAX_VIOLATIONS: usize = 64;

struct Tally {
    checks: usize,
    violations: Vec<Violation>,
}

impl Tally {
    fn check(&mut self, identity: &'static str, elements: &[&GroupElt], lhs: &Coeff, rhs: &Coeff) {
        self.checks += 1;
        if lhs != rhs && self.violations.len() < MAX_VIOLATIONS {
            self.violations.push(Violation {
                identity,
                elements: elements.iter().map(|g| (*g).clone()).collect(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }
}

impl CrystalRing {
    /// Coefficients on which σ-compatibility is evaluated pointwise: 1, each
    /// variable and its square, t⁻¹ on Laurent carriers, and a fixed
    /// dense polynomial with unrelated coefficients.
    fn sample_coefficients(&self) -> Vec<Coeff> {
        let d = self.domain;
        let mut out = vec![d.one()];
        for i in 0..d.carrier.arity() {
            let t = d.var(i).expect("index within arity");
            out.push(t.pow(2));
            out.push(t);
        }
        if d.carrier == Carrier::Laurent {
            out.push(d.var_pow(0, -1).expect("Laurent carrier"));
        }
        let mut generic = d.constant(Scalar::from_i64(7, d.field));
        for (i, c) in [3i64, -5, 2].iter().enumerate() {
            let t = d.var(i % d.carrier.arity()).expect("index within arity");
            generic = generic.add(&t.pow(i as u32 + 1).scale(&Scalar::from_i64(*c, d.field)));
        }
        out.push(generic);
        out
    }

    /// Checks, for all g, h, k in the window: the cocycle identity
    /// α(g,h)α(gh,k) = σ_g(α(h,k))α(g,hk); σ_gσ_h = σ_{gh} as automorphisms
    /// and σ_g(σ_h(a))α(g,h) = α(g,h)σ_{gh}(a) on sample coefficients; the
    /// normalisations α(g,e) = α(e,g) = 1 and α(g,g⁻¹) = σ_g(α(g⁻¹,g)); and
    /// α(g,g⁻¹) = σ_g(α(g⁻¹,gh))α(g,h). Records the outcome in the ring status.
    pub fn verify(&self, radius: i64) -> VerificationReport {
        let window = self.group.window(radius);
        let samples = self.sample_coefficients();
        // warm the cocycle cache so worker threads mostly read
        for g in &window {
            for h in &window {
                let _ = self.alpha_value(g, h);
            }
        }
        let workers = std::thread::available_parallelism()
            .map_or(1, |n| n.get())
            .min(window.len().max(1));
        let chunk = window.len().div_ceil(workers.max(1)).max(1);
        let tallies: Vec<Tally> = std::thread::scope(|s| {
            let handles: Vec<_> = window
                .chunks(chunk)
                .map(|gs| s.spawn(|| self.verify_rows(gs, &window, &samples)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("verification worker"))
                .collect()
        });
        let mut report = VerificationReport {
            radius,
            window_size: window.len(),
            checks: 0,
            violations: Vec::new(),
        };
        for t in tallies {
            report.checks += t.checks;
            report.violations.extend(t.violations);
        }
        report.violations.truncate(MAX_VIOLATIONS);
        self.set_status(match report.first() {
            None => Validation::Verified { radius },
            Some(v) => Validation::Failed(v.to_string()),
        });
        report
    }

    fn verify_rows(&self, rows: &[GroupElt], window: &[GroupElt], samples: &[Coeff]) -> Tally {
        let grp = &self.group;
        let e = grp.identity();
        let one = self.domain.one();
        let alpha = |g: &GroupElt, h: &GroupElt| self.alpha_value(g, h).unwrap_or_else(|_| self.domain.zero());
        let mut tally = Tally {
            checks: 0,
            violations: Vec::new(),
        };
        for g in rows {
            let gi = grp.inv(g);
            let sg = self.sigma(g);
            tally.check("normalisation α(g,e) = 1", &[g, &e], &alpha(g, &e), &one);
            tally.check("normalisation α(e,g) = 1", &[&e, g], &alpha(&e, g), &one);
            let a_ggi = alpha(g, &gi);
            tally.check(
                "α(g,g⁻¹) = σ_g(α(g⁻¹,g))",
                &[g],
                &a_ggi,
                &self.apply_sigma(g, &alpha(&gi, g)),
            );
            for h in window {
                let gh = grp.op(g, h);
                let a_gh = alpha(g, h);
                tally.check("α(g,h) ≠ 0", &[g, h], &a_gh, if a_gh.is_zero() { &one } else { &a_gh });
                // automorphism equality σ_g ∘ σ_h = σ_{gh}
                let composed = sg.compose(&self.sigma(h)).expect("same arity");
                let direct = self.sigma(&gh);
                self.check_autos(&mut tally, g, h, &composed, &direct);
                for a0 in samples {
                    let lhs = self.apply_sigma(g, &self.apply_sigma(h, a0)).mul(&a_gh);
                    let rhs = a_gh.mul(&self.apply_sigma(&gh, a0));
                    tally.check("σ_g(σ_h(a))α(g,h) = α(g,h)σ_{gh}(a)", &[g, h], &lhs, &rhs);
                }
                let cor = self.apply_sigma(g, &alpha(&gi, &gh)).mul(&a_gh);
                tally.check("α(g,g⁻¹) = σ_g(α(g⁻¹,gh))α(g,h)", &[g, h], &a_ggi, &cor);
                for k in window {
                    let lhs = a_gh.mul(&alpha(&gh, k));
                    let hk = grp.op(h, k);
                    let rhs = self.apply_sigma(g, &alpha(h, k)).mul(&alpha(g, &hk));
                    tally.check("α(g,h)α(gh,k) = σ_g(α(h,k))α(g,hk)", &[g, h, k], &lhs, &rhs);
                }
            }
        }
        tally
    }

    fn check_autos(
        &self,
        tally: &mut Tally,
        g: &GroupElt,
        h: &GroupElt,
        composed: &crate::poly::AffineAuto,
        direct: &crate::poly::AffineAuto,
    ) {
        tally.checks += 1;
        if composed != direct && tally.violations.len() < MAX_VIOLATIONS {
            tally.violations.push(Violation {
                identity: "σ_gσ_h = σ_{gh}",
                elements: vec![g.clone(), h.clone()],
                lhs: composed.to_string(),
                rhs: direct.to_string(),
            });
        }
    }

    /// Confirms α(g,h) ≠ 0 on the window; over a domain A₀ this is the
    /// torsion-freeness α(g,h)·a = 0 ⇒ a = 0.
    pub fn verify_torsionfree(&self, radius: i64) -> VerificationReport {
        let window = self.group.window(radius);
        let mut tally = Tally {
            checks: 0,
            violations: Vec::new(),
        };
        let one = self.domain.one();
        for g in &window {
            for h in &window {
                let a = self.alpha_value(g, h).unwrap_or_else(|_| self.domain.zero());
                let witness = if a.is_zero() { one.clone() } else { a.clone() };
                tally.check("α(g,h) ≠ 0", &[g, h], &a, &witness);
            }
        }
        VerificationReport {
            radius,
            window_size: window.len(),
            checks: tally.checks,
            violations: tally.violations,
        }
    }
}

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coeff::Coeff;
use crate::crystal::{Cocycle, CrystalRing, SigmaMap};
use crate::error::{Error, Result};
use crate::poly::{poly_gcd, rational_roots, resultant_aux, BiPoly, LaurentPoly, UniPoly};
use crate::scalar::{FieldKind, QPoly, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Simplicity {
    Simple,
    NotSimple,
    Inconclusive,
}

/// A shift or power `i > 0` for which `a` and `σ^{−i}(a)` share the
/// nonconstant factor `shared` (their monic gcd).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityWitness {
    pub i: i64,
    pub shared: UniPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityVerdict {
    pub verdict: Simplicity,
    pub witness: Option<SimplicityWitness>,
    pub notes: Vec<String>,
}

impl SimplicityVerdict {
    fn simple(notes: Vec<String>) -> Self {
        SimplicityVerdict {
            verdict: Simplicity::Simple,
            witness: None,
            notes,
        }
    }

    fn obstruction(note: String) -> Self {
        SimplicityVerdict {
            verdict: Simplicity::NotSimple,
            witness: None,
            notes: vec![note],
        }
    }

    fn witnessed(i: i64, shared: UniPoly) -> Self {
        SimplicityVerdict {
            verdict: Simplicity::NotSimple,
            witness: Some(SimplicityWitness { i, shared }),
            notes: Vec::new(),
        }
    }

    pub fn is_simple(&self) -> bool {
        self.verdict == Simplicity::Simple
    }
}

impl fmt::Display for SimplicityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.verdict, &self.witness) {
            (Simplicity::Simple, _) => write!(f, "SIMPLE"),
            (Simplicity::NotSimple, Some(w)) => {
                write!(f, "NOT SIMPLE (witness i={}, shared factor {})", w.i, w.shared)
            }
            (Simplicity::NotSimple, None) => write!(f, "NOT SIMPLE ({})", self.notes.join("; ")),
            (Simplicity::Inconclusive, _) => write!(f, "INCONCLUSIVE ({})", self.notes.join("; ")),
        }
    }
}

fn char_p_note(field: FieldKind) -> Option<String> {
    match field.characteristic() {
        0 => None,
        p => Some(format!("characteristic {p} > 0")),
    }
}

fn is_nonconstant_gcd(f: &UniPoly, g: &UniPoly) -> Result<Option<UniPoly>> {
    let d = poly_gcd(f, g)?;
    Ok((!d.is_constant()).then_some(d))
}

/// Rational value of a scalar that does not depend on `q`.
fn rational_value(s: &Scalar) -> Option<BigRational> {
    match s {
        Scalar::Rational(r) => Some(r.clone()),
        Scalar::RationalFunction(f) => f.as_rational(),
        Scalar::Prime { .. } => None,
    }
}

fn qpoly_lcm(a: &QPoly, b: &QPoly) -> QPoly {
    let g = a.gcd(b);
    a.mul(&b.div_rem(&g).0)
}

/// Coefficients of `r` (over ℚ(q)) multiplied by a common denominator so
/// they lie in ℚ[q]; entry k belongs to the k-th power of the variable.
fn cleared_coeffs(r: &UniPoly) -> Vec<QPoly> {
    let funcs: Vec<_> = r
        .coeffs()
        .iter()
        .map(|c| match c {
            Scalar::RationalFunction(f) => f.clone(),
            other => panic!("expected a ℚ(q) coefficient, got {other}"),
        })
        .collect();
    let common = funcs.iter().fold(QPoly::one(), |acc, f| qpoly_lcm(&acc, f.denom()));
    funcs
        .iter()
        .map(|f| f.numer().mul(&common.div_rem(f.denom()).0))
        .collect()
}

/// The rational roots of a nonzero polynomial over ℚ or ℚ(q). Over ℚ(q) a
/// rational root is a common root of every q-coefficient slice, so the
/// candidates of one nonzero slice are confirmed against the full polynomial.
fn rational_roots_any(r: &UniPoly) -> Result<Vec<BigRational>> {
    match r.field() {
        FieldKind::Rational => rational_roots(r),
        FieldKind::RationalFunction => {
            let cleared = cleared_coeffs(r);
            let top = cleared.iter().filter_map(QPoly::degree).max().unwrap_or(0);
            for j in 0..=top {
                let slice: Vec<Scalar> = cleared
                    .iter()
                    .map(|c| Scalar::Rational(c.coeffs().get(j).cloned().unwrap_or_else(BigRational::zero)))
                    .collect();
                let slice = UniPoly::new(FieldKind::Rational, slice)?;
                if slice.is_zero() {
                    continue;
                }
                let mut out = Vec::new();
                for root in rational_roots(&slice)? {
                    let x = Scalar::from_rational(&root, FieldKind::RationalFunction)?;
                    if r.eval(&x).is_zero() {
                        out.push(root);
                    }
                }
                return Ok(out);
            }
            Err(Error::DivisionByZero)
        }
        FieldKind::Prime(p) => Err(Error::FieldUnsupported(format!("rational roots over F_{p}"))),
    }
}

/// Simplicity of the GWA K[t](σ, a) with σ(t) = t − 1.
pub fn simple_shift(a: &UniPoly) -> Result<SimplicityVerdict> {
    simple_shift_by(a, &Scalar::from_i64(-1, a.field()))
}

/// Simplicity of K[t](σ, a) for the shift σ(t) = t + b, b ≠ 0.
///
/// With ã(s) = a(b·s), a and σ^i(a) share a factor iff ã(s) and ã(s + i)
/// do, iff i is a root of Res_s(ã(s), ã(s + x)). The integer roots are the
/// only candidates; each is confirmed by an explicit gcd.
pub fn simple_shift_by(a: &UniPoly, b: &Scalar) -> Result<SimplicityVerdict> {
    if a.is_zero() {
        return Err(Error::ParameterDomain("a must be nonzero".into()));
    }
    if b.is_zero() {
        return Err(Error::ParameterDomain("the shift must be nonzero".into()));
    }
    if let Some(note) = char_p_note(a.field()) {
        return Ok(SimplicityVerdict::obstruction(note));
    }
    if a.is_constant() {
        return Ok(SimplicityVerdict::simple(vec!["a is a unit".into()]));
    }
    let field = a.field();
    let rescaled = a.compose_affine(b, &Scalar::zero(field));
    let res = resultant_aux(&BiPoly::from_uni(&rescaled), &BiPoly::shifted(&rescaled))?;
    if res.is_zero() {
        return Ok(SimplicityVerdict {
            verdict: Simplicity::Inconclusive,
            witness: None,
            notes: vec!["shift resultant vanished identically".into()],
        });
    }
    let mut candidates: Vec<i64> = rational_roots_any(&res)?
        .into_iter()
        .filter(|r| r.is_integer() && !r.is_zero())
        .filter_map(|r| i64::try_from(r.to_integer().abs()).ok())
        .collect();
    candidates.sort_unstable();
    candidates.dedup();
    for i in candidates {
        // σ^{−i}(a)(t) = a(t − i·b)
        let back = a.compose_affine(&Scalar::one(field), &(-&(b * &Scalar::from_i64(i, field))));
        if let Some(shared) = is_nonconstant_gcd(a, &back)? {
            return Ok(SimplicityVerdict::witnessed(i, shared));
        }
    }
    Ok(SimplicityVerdict::simple(Vec::new()))
}

fn rational_height(r: &BigRational) -> num_bigint::BigInt {
    r.numer().abs().max(r.denom().abs())
}

/// `i ≠ 0` with λ^i = s, for rational λ ≠ 0, ±1. Heights of λ^i grow
/// strictly, so the search stops once they pass the height of s.
fn power_index(lambda: &BigRational, s: &BigRational) -> Option<i64> {
    if s.is_zero() {
        return None;
    }
    let limit = rational_height(s);
    let mut p = lambda.clone();
    let mut i = 1i64;
    while rational_height(&p) <= limit {
        if &p == s {
            return Some(i);
        }
        if &p.recip() == s {
            return Some(-i);
        }
        p *= lambda;
        i += 1;
    }
    None
}

/// Largest |i| for which λ^i (λ ∈ ℚ(q) nonconstant) can be a root of the
/// scaling resultant: a root u/v in lowest terms has u | c₀ and v | c_top
/// in ℚ[q] after clearing denominators, while height(λ^i) = |i|·height(λ).
fn q_power_bound(res: &UniPoly, lambda: &Scalar) -> usize {
    let cleared = cleared_coeffs(res);
    let c0 = cleared.first().and_then(QPoly::degree).unwrap_or(0);
    let ctop = cleared.last().and_then(QPoly::degree).unwrap_or(0);
    let h = match lambda {
        Scalar::RationalFunction(f) => f.height().max(1),
        _ => 1,
    };
    c0.max(ctop) / h
}

/// Simplicity of the Laurent GWA K[t, t⁻¹](σ, a) with σ(t) = λt.
///
/// Units t^k are stripped first, so the body b has b(0) ≠ 0. λ must not be a
/// root of unity; the remaining obstruction is a power i ≠ 0 with b and
/// σ^i(b) sharing a factor, i.e. λ^i a root of Res_t(b(t), b(s·t)).
pub fn simple_mult(a: &LaurentPoly, lambda: &Scalar) -> Result<SimplicityVerdict> {
    if a.is_zero() {
        return Err(Error::ParameterDomain("a must be nonzero".into()));
    }
    if lambda.is_zero() {
        return Err(Error::ParameterDomain("λ must be nonzero".into()));
    }
    lambda.same_field(&Scalar::zero(a.field()))?;
    let field = a.field();
    if field.characteristic() != 0 {
        return Ok(SimplicityVerdict::obstruction(format!(
            "characteristic {}: λ = {lambda} is a root of unity",
            field.characteristic()
        )));
    }
    let rational = rational_value(lambda);
    if let Some(r) = &rational {
        if r.abs().is_one() {
            return Ok(SimplicityVerdict::obstruction(format!(
                "λ = {lambda} is a root of unity"
            )));
        }
    }
    let body = a.body();
    if body.is_constant() {
        return Ok(SimplicityVerdict::simple(vec!["a is a unit".into()]));
    }
    let res = resultant_aux(&BiPoly::from_uni(body), &BiPoly::scaled(body))?;
    if res.is_zero() {
        return Ok(SimplicityVerdict {
            verdict: Simplicity::Inconclusive,
            witness: None,
            notes: vec!["scaling resultant vanished identically".into()],
        });
    }
    let mut candidates: Vec<i64> = match &rational {
        Some(l) => rational_roots_any(&res)?
            .iter()
            .filter_map(|s| power_index(l, s))
            .map(i64::abs)
            .collect(),
        None => (1..=q_power_bound(&res, lambda) as i64).collect(),
    };
    candidates.sort_unstable();
    candidates.dedup();
    for i in candidates {
        // σ^{−i}(b)(t) = b(λ^{−i} t)
        let back = body.compose_affine(&lambda.pow(-i)?, &Scalar::zero(field));
        if let Some(shared) = is_nonconstant_gcd(body, &back)? {
            return Ok(SimplicityVerdict::witnessed(i, shared));
        }
    }
    Ok(SimplicityVerdict::simple(Vec::new()))
}

/// Dispatches on a rank-one GWA ring: a shift σ goes to [`simple_shift_by`],
/// a scaling σ on K[t, t⁻¹] to [`simple_mult`]. Over K[t] a non-translation
/// σ(t) = λt + b fixes c = b/(1 − λ), so t − c is a normal non-unit and the
/// ring is not simple; σ = id makes t central, with the same conclusion.
pub fn gwa_simplicity(ring: &CrystalRing) -> Result<SimplicityVerdict> {
    let (Cocycle::Gwa(a), SigmaMap::Generators(gens)) = (ring.cocycle(), ring.sigma_map()) else {
        return Err(Error::ParameterDomain(
            "simplicity is decided for degree-one generalized Weyl algebras only".into(),
        ));
    };
    let phi = &gens[0];
    let (scale, shift) = (phi.scale(), phi.shift_part());
    match a {
        Coeff::Laurent(l) => simple_mult(l, scale),
        Coeff::Poly(p) if scale.is_one() && !shift.is_zero() => simple_shift_by(p, shift),
        Coeff::Poly(_) if phi.is_identity() => Ok(SimplicityVerdict::obstruction(
            "σ = id, so t is central and not a unit".into(),
        )),
        Coeff::Poly(_) => {
            let one = Scalar::one(scale.field());
            let c = shift.checked_div(&(&one - scale))?;
            let normal = UniPoly::new(scale.field(), vec![-c, one])?;
            Ok(SimplicityVerdict::obstruction(format!("{normal} is a normal non-unit")))
        }
        Coeff::Multi(_) => Err(Error::CarrierMismatch("simplicity needs a one-variable carrier".into())),
    }
}

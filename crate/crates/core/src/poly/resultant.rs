//! Resultants by two independent routes: the subresultant pseudo-remainder
//! sequence and the fraction-free (Bareiss) Sylvester determinant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{FieldKind, Scalar};

use super::UniPoly;

/// Integral domain with exact division, enough to run both resultant
/// algorithms over ℤ, over a field, or over K[aux].
pub trait Domain: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Quotient when `other` divides `self`.
    fn exact_div(&self, other: &Self) -> Option<Self>;
}

impl Domain for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            return None;
        }
        let (q, r) = self.div_rem(other);
        Zero::is_zero(&r).then_some(q)
    }
}

impl Domain for Scalar {
    fn zero_like(&self) -> Self {
        Scalar::zero(self.field())
    }
    fn one_like(&self) -> Self {
        Scalar::one(self.field())
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        self.checked_div(other).ok()
    }
}

impl Domain for UniPoly {
    fn zero_like(&self) -> Self {
        UniPoly::zero(self.field())
    }
    fn one_like(&self) -> Self {
        UniPoly::one(self.field())
    }
    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        UniPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        UniPoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        UniPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        UniPoly::neg(self)
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        UniPoly::exact_div(self, other)
    }
}

fn trim<D: Domain>(mut v: Vec<D>) -> Vec<D> {
    while v.last().is_some_and(Domain::is_zero) {
        v.pop();
    }
    v
}

fn pow<D: Domain>(x: &D, n: usize) -> D {
    (0..n).fold(x.one_like(), |acc, _| acc.mul(x))
}

/// Pseudo-remainder: `lc(b)^(deg a − deg b + 1) · a mod b`.
fn prem<D: Domain>(a: &[D], b: &[D]) -> Vec<D> {
    let db = b.len() - 1;
    let lead = &b[db];
    let mut r: Vec<D> = a.to_vec();
    if r.len() < b.len() {
        return r;
    }
    let mut e = r.len() - b.len() + 1;
    while !r.is_empty() && r.len() >= b.len() {
        let k = r.len() - 1 - db;
        let c = r[r.len() - 1].clone();
        let mut next: Vec<D> = r.iter().map(|x| x.mul(lead)).collect();
        for (j, bj) in b.iter().enumerate() {
            next[k + j] = next[k + j].sub(&c.mul(bj));
        }
        r = trim(next);
        e -= 1;
    }
    let scale = pow(lead, e);
    r.iter().map(|x| x.mul(&scale)).collect()
}

/// Resultant of two dense coefficient vectors (lowest degree first) by the
/// subresultant PRS. Zero inputs give zero.
pub fn subresultant_prs<D: Domain>(f: &[D], g: &[D]) -> Option<D> {
    let mut a = trim(f.to_vec());
    let mut b = trim(g.to_vec());
    if a.is_empty() || b.is_empty() {
        let sample = f.first().or(g.first())?;
        return Some(sample.zero_like());
    }
    let one = a[0].one_like();
    let mut sign = one.clone();
    if a.len() < b.len() {
        let (da, db) = (a.len() - 1, b.len() - 1);
        std::mem::swap(&mut a, &mut b);
        if (da * db) % 2 == 1 {
            sign = sign.neg();
        }
    }
    if b.len() == 1 {
        return Some(sign.mul(&pow(&b[0], a.len() - 1)));
    }
    let mut g_acc = one.clone();
    let mut h = one.clone();
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = sign.neg();
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            return Some(one.zero_like());
        }
        let divisor = g_acc.mul(&pow(&h, delta));
        let r: Vec<D> = r.iter().map(|c| c.exact_div(&divisor)).collect::<Option<_>>()?;
        a = b;
        b = r;
        g_acc = a[a.len() - 1].clone();
        // h ← g^δ / h^(δ−1)
        if delta > 0 {
            h = pow(&g_acc, delta).exact_div(&pow(&h, delta - 1))?;
        }
        if b.len() == 1 {
            let da = a.len() - 1;
            let res = pow(&b[0], da).exact_div(&pow(&h, da - 1))?;
            return Some(sign.mul(&res));
        }
    }
}

/// Resultant as the determinant of the Sylvester matrix, computed with
/// fraction-free Bareiss elimination.
pub fn sylvester_determinant<D: Domain>(f: &[D], g: &[D]) -> Option<D> {
    let a = trim(f.to_vec());
    let b = trim(g.to_vec());
    if a.is_empty() || b.is_empty() {
        let sample = f.first().or(g.first())?;
        return Some(sample.zero_like());
    }
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let one = a[0].one_like();
    if size == 0 {
        return Some(one);
    }
    let zero = one.zero_like();
    let mut mat = vec![vec![zero.clone(); size]; size];
    for i in 0..n {
        for (j, c) in a.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    let mut sign = false;
    let mut prev = one.clone();
    for k in 0..size {
        if mat[k][k].is_zero() {
            let Some(p) = (k + 1..size).find(|&i| !mat[i][k].is_zero()) else {
                return Some(zero);
            };
            mat.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = mat[i][j].mul(&mat[k][k]).sub(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = v.exact_div(&prev)?;
            }
            mat[i][k] = zero.clone();
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    Some(if sign { det.neg() } else { det })
}

/// `Res_t(f, g)` for univariate polynomials over a field.
///
/// Over ℚ both inputs are lifted to primitive integer polynomials and the
/// subresultant PRS runs over ℤ; other fields use the Sylvester determinant.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Result<Scalar> {
    if f.field() != g.field() {
        return Err(Error::MixedField(f.field().to_string(), g.field().to_string()));
    }
    let field = f.field();
    if f.is_zero() || g.is_zero() {
        return Ok(Scalar::zero(field));
    }
    if field == FieldKind::Rational {
        let (fi, cf) = integer_with_scale(f);
        let (gi, cg) = integer_with_scale(g);
        let r = subresultant_prs(&fi, &gi).ok_or_else(|| Error::ExactDivisionFailed("subresultant".into()))?;
        // Res(cf·f, cg·g) = cf^deg g · cg^deg f · Res(f, g)
        let (df, dg) = (f.degree().unwrap_or(0), g.degree().unwrap_or(0));
        let scale = pow_rat(&cf, dg) * pow_rat(&cg, df);
        return Ok(Scalar::Rational(BigRational::from_integer(r) / scale));
    }
    sylvester_determinant(f.coeffs(), g.coeffs()).ok_or_else(|| Error::ExactDivisionFailed("Bareiss".into()))
}

fn pow_rat(x: &BigRational, n: usize) -> BigRational {
    (0..n).fold(BigRational::one(), |acc, _| acc * x)
}

/// Integer polynomial `c·f` together with the scale `c`.
fn integer_with_scale(f: &UniPoly) -> (Vec<BigInt>, BigRational) {
    let rs = f.rational_coeffs().expect("rational field");
    let lcm = rs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = rs
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let content = if Zero::is_zero(&content) {
        BigInt::one()
    } else {
        content.abs()
    };
    let ints = ints.iter().map(|c| c / &content).collect();
    (ints, BigRational::new(lcm, content))
}

/// Polynomial in `t` whose coefficients are polynomials in an auxiliary
/// variable (lowest t-degree first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    pub coeffs: Vec<UniPoly>,
}

impl BiPoly {
    /// Embeds `f(t)` with constant coefficients in the auxiliary variable.
    pub fn from_uni(f: &UniPoly) -> Self {
        BiPoly {
            coeffs: f.coeffs().iter().map(|c| UniPoly::constant(c.clone())).collect(),
        }
    }

    /// `f(t + aux)`.
    pub fn shifted(f: &UniPoly) -> Self {
        let field = f.field();
        let deg = f.degree().unwrap_or(0);
        let mut coeffs = vec![UniPoly::zero(field); deg + 1];
        // (t + i)^k = Σ_j C(k, j) t^j i^(k−j)
        for (k, a) in f.coeffs().iter().enumerate() {
            let mut binom = BigInt::one();
            for (j, slot) in coeffs.iter_mut().enumerate().take(k + 1) {
                let c = a * &Scalar::from_bigint(binom.clone(), field);
                *slot = slot.add(&UniPoly::monomial(c, k - j));
                binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
            }
        }
        BiPoly { coeffs }
    }

    /// `f(aux · t)`.
    pub fn scaled(f: &UniPoly) -> Self {
        BiPoly {
            coeffs: f
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| UniPoly::monomial(c.clone(), k))
                .collect(),
        }
    }
}

/// `Res_t(f, g)` as a polynomial in the auxiliary variable.
pub fn resultant_aux(f: &BiPoly, g: &BiPoly) -> Result<UniPoly> {
    let field = f
        .coeffs
        .first()
        .or(g.coeffs.first())
        .map(UniPoly::field)
        .ok_or(Error::DivisionByZero)?;
    let fs = trim(f.coeffs.clone());
    let gs = trim(g.coeffs.clone());
    if fs.is_empty() || gs.is_empty() {
        return Ok(UniPoly::zero(field));
    }
    sylvester_determinant(&fs, &gs).ok_or_else(|| Error::ExactDivisionFailed("Bareiss over K[aux]".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldKind = FieldKind::Rational;

    fn r(n: i64, d: i64) -> Scalar {
        Scalar::rational(n, d)
    }

    #[test]
    fn linear_case() {
        // Res_t(t − u, t − v) = g(u) = u − v, since f is monic
        for (u, v) in [(3, 5), (-2, 7), (4, 4)] {
            let f = UniPoly::from_i64s(Q, &[-u, 1]);
            let g = UniPoly::from_i64s(Q, &[-v, 1]);
            let res = resultant(&f, &g).unwrap();
            assert_eq!(res, r(u - v, 1));
        }
    }

    #[test]
    fn shift_resultant_roots() {
        // a = t(t − 1): roots differ by 0 or ±1
        let a = UniPoly::from_i64s(Q, &[0, -1, 1]);
        let rpoly = resultant_aux(&BiPoly::from_uni(&a), &BiPoly::shifted(&a)).unwrap();
        assert_eq!(rpoly.degree(), Some(4));
        for i in -2..=2 {
            let v = rpoly.eval(&r(i, 1));
            assert_eq!(v.is_zero(), (-1..=1).contains(&i), "i = {i}");
        }
    }

    #[test]
    fn scale_resultant_roots() {
        // a = (t − 1)(t − 2): root ratios 1, 2, 1/2
        let a = UniPoly::from_i64s(Q, &[2, -3, 1]);
        let rpoly = resultant_aux(&BiPoly::from_uni(&a), &BiPoly::scaled(&a)).unwrap();
        for (n, d) in [(1, 1), (2, 1), (1, 2)] {
            assert!(rpoly.eval(&r(n, d)).is_zero());
        }
        for (n, d) in [(3, 1), (-1, 1), (1, 3)] {
            assert!(!rpoly.eval(&r(n, d)).is_zero());
        }
    }

    #[test]
    fn constant_and_zero_inputs() {
        let c = UniPoly::constant(r(3, 1));
        let f = UniPoly::from_i64s(Q, &[1, 0, 1]);
        assert_eq!(resultant(&c, &f).unwrap(), r(9, 1));
        assert_eq!(resultant(&f, &c).unwrap(), r(9, 1));
        assert!(resultant(&UniPoly::zero(Q), &f).unwrap().is_zero());
    }

    fn small_poly() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-4i64..5, 1..5)
    }

    proptest! {
        #[test]
        fn prs_agrees_with_sylvester_over_integers(f in small_poly(), g in small_poly()) {
            let fi: Vec<BigInt> = f.iter().map(|&c| BigInt::from(c)).collect();
            let gi: Vec<BigInt> = g.iter().map(|&c| BigInt::from(c)).collect();
            prop_assert_eq!(subresultant_prs(&fi, &gi), sylvester_determinant(&fi, &gi));
        }

        #[test]
        fn prs_agrees_with_sylvester_over_polynomials(f in prop::collection::vec(small_poly(), 1..4), g in prop::collection::vec(small_poly(), 1..4)) {
            let fb: Vec<UniPoly> = f.iter().map(|c| UniPoly::from_i64s(Q, c)).collect();
            let gb: Vec<UniPoly> = g.iter().map(|c| UniPoly::from_i64s(Q, c)).collect();
            prop_assert_eq!(subresultant_prs(&fb, &gb), sylvester_determinant(&fb, &gb));
        }

        #[test]
        fn resultant_vanishes_iff_common_factor(f in small_poly(), g in small_poly(), shared in prop::collection::vec(-3i64..4, 0..3)) {
            let common = UniPoly::from_i64s(Q, &shared);
            prop_assume!(!common.is_zero());
            let f = UniPoly::from_i64s(Q, &f).mul(&common);
            let g = UniPoly::from_i64s(Q, &g);
            prop_assume!(!f.is_zero() && !g.is_zero());
            let res = resultant(&f, &g).unwrap();
            let gcd = super::super::poly_gcd(&f, &g).unwrap();
            prop_assert_eq!(res.is_zero(), !gcd.is_constant());
        }
    }
}

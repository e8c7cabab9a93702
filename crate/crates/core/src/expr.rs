//! Recursive-descent parser for the noncommutative expression language.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := ['-'] factor (('*' | '/') factor)*
//! factor := atom ['^' ['-'] int]
//! atom   := int | 't' ['_' int] | 'q' | 'u' '[' int (',' int)* ']' | ident | '(' expr ')'
//! ```
//!
//! Products keep their written order. Division is only by factors that
//! evaluate to nonzero scalars, which is what lets rational and ℚ(q)
//! coefficients be written in their canonical text form. Negative exponents
//! are rejected on anything containing `u[...]` or an alias.

use std::fmt;

use num_bigint::BigInt;

use crate::coeff::{Coeff, CoeffDomain};
use crate::error::{Error, Result};
use crate::scalar::{FieldKind, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "integer {n}"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column };
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push((Tok::Int(text.parse().expect("digits")), pos));
        } else if c.is_alphabetic() {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '\'') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        } else if "+-*/^()[],_".contains(c) {
            i += 1;
            out.push((Tok::Sym(c), pos));
        } else {
            return Err(parse_error(pos, format!("unexpected character '{c}'")));
        }
        column += i - start;
    }
    out.push((Tok::End, Pos { line, column }));
    Ok(out)
}

fn parse_error(pos: Pos, message: String) -> Error {
    Error::Parse {
        line: pos.line,
        column: pos.column,
        message,
    }
}

/// Expression tree. Products are ordered; nothing is assumed commutative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    /// `t` (index 0) or `t_i` (index i − 1).
    Var(usize),
    Q,
    U(Vec<i64>),
    Alias(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    fn has_ring_atoms(&self) -> bool {
        match self {
            Expr::U(_) | Expr::Alias(_) => true,
            Expr::Int(_) | Expr::Var(_) | Expr::Q => false,
            Expr::Neg(a) | Expr::Pow(a, _) => a.has_ring_atoms(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.has_ring_atoms() || b.has_ring_atoms()
            }
        }
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn is_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn unexpected(&self, expected: &[&str]) -> Error {
        parse_error(
            self.pos(),
            format!("expected one of {{{}}}, found {}", expected.join(", "), self.peek()),
        )
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.is_sym(c) {
            self.bump();
            Ok(())
        } else {
            let want = format!("'{c}'");
            Err(self.unexpected(&[want.as_str()]))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.is_sym('+') {
                self.bump();
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.is_sym('-') {
                self.bump();
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let negate = self.is_sym('-');
        if negate {
            self.bump();
        }
        let mut acc = self.factor()?;
        loop {
            if self.is_sym('*') {
                self.bump();
                acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
            } else if self.is_sym('/') {
                self.bump();
                acc = Expr::Div(Box::new(acc), Box::new(self.factor()?));
            } else {
                break;
            }
        }
        Ok(if negate { Expr::Neg(Box::new(acc)) } else { acc })
    }

    fn small_int(&mut self, what: &str) -> Result<i64> {
        let pos = self.pos();
        let negative = self.is_sym('-');
        if negative {
            self.bump();
        }
        match self.bump() {
            Tok::Int(n) => {
                let n = if negative { -n } else { n };
                i64::try_from(&n).map_err(|_| parse_error(pos, format!("{what} {n} out of range")))
            }
            _ => {
                self.at -= 1;
                Err(self.unexpected(&["integer"]))
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.is_sym('^') {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let k = self.small_int("exponent")?;
        if k < 0 && base.has_ring_atoms() {
            return Err(parse_error(
                pos,
                "negative exponent on a ring generator; use the `inv` command for inverses".into(),
            ));
        }
        Ok(Expr::Pow(Box::new(base), k))
    }

    fn atom(&mut self) -> Result<Expr> {
        const ATOM: &[&str] = &["integer", "'t'", "'u'", "identifier", "'('"];
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "t" if self.is_sym('_') => {
                        self.bump();
                        let pos = self.pos();
                        let i = self.small_int("variable index")?;
                        if i < 1 {
                            return Err(parse_error(pos, "variable indices start at 1".into()));
                        }
                        Ok(Expr::Var(i as usize - 1))
                    }
                    "t" => Ok(Expr::Var(0)),
                    "q" => Ok(Expr::Q),
                    "u" if self.is_sym('[') => {
                        self.bump();
                        let mut g = vec![self.small_int("degree")?];
                        while self.is_sym(',') {
                            self.bump();
                            g.push(self.small_int("degree")?);
                        }
                        if !self.is_sym(']') {
                            return Err(self.unexpected(&["','", "']'"]));
                        }
                        self.bump();
                        Ok(Expr::U(g))
                    }
                    _ => Ok(Expr::Alias(name)),
                }
            }
            _ => Err(self.unexpected(ATOM)),
        }
    }
}

/// Parses an expression into its syntax tree.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected(&["'+'", "'-'", "'*'", "'/'", "'^'", "end of input"]));
    }
    Ok(e)
}

/// Target algebra for [`eval`]. Atoms that the target cannot represent
/// return errors; everything else is ring arithmetic.
pub trait EvalContext {
    type Value: Clone;

    fn field(&self) -> FieldKind;
    fn scalar(&self, s: Scalar) -> Self::Value;
    /// `t_i^k`; negative `k` only on Laurent carriers.
    fn var_pow(&self, i: usize, k: i64) -> Result<Self::Value>;
    fn u(&self, g: &[i64]) -> Result<Self::Value>;
    fn alias(&self, name: &str) -> Result<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn as_scalar(&self, a: &Self::Value) -> Option<Scalar>;
}

pub fn eval<C: EvalContext>(e: &Expr, ctx: &C) -> Result<C::Value> {
    let field = ctx.field();
    Ok(match e {
        Expr::Int(n) => ctx.scalar(Scalar::from_bigint(n.clone(), field)),
        Expr::Var(i) => ctx.var_pow(*i, 1)?,
        Expr::Q => {
            if field != FieldKind::RationalFunction {
                return Err(Error::MixedField(
                    field.to_string(),
                    FieldKind::RationalFunction.to_string(),
                ));
            }
            ctx.scalar(Scalar::q())
        }
        Expr::U(g) => ctx.u(g)?,
        Expr::Alias(name) => ctx.alias(name)?,
        Expr::Neg(a) => ctx.neg(&eval(a, ctx)?),
        Expr::Add(a, b) => ctx.add(&eval(a, ctx)?, &eval(b, ctx)?),
        Expr::Sub(a, b) => ctx.add(&eval(a, ctx)?, &ctx.neg(&eval(b, ctx)?)),
        Expr::Mul(a, b) => ctx.mul(&eval(a, ctx)?, &eval(b, ctx)?),
        Expr::Div(a, b) => {
            let den = eval(b, ctx)?;
            let s = ctx
                .as_scalar(&den)
                .ok_or_else(|| Error::ParameterDomain("division is only by nonzero scalars".into()))?;
            ctx.mul(&eval(a, ctx)?, &ctx.scalar(s.inv()?))
        }
        Expr::Pow(base, k) => {
            if let (Expr::Var(i), true) = (base.as_ref(), *k < 0) {
                return ctx.var_pow(*i, *k);
            }
            let b = eval(base, ctx)?;
            if *k < 0 {
                let s = ctx
                    .as_scalar(&b)
                    .ok_or_else(|| Error::ParameterDomain("negative powers apply only to scalars and t".into()))?;
                return Ok(ctx.scalar(s.pow(*k)?));
            }
            let mut acc = ctx.scalar(Scalar::one(field));
            for _ in 0..*k {
                acc = ctx.mul(&acc, &b);
            }
            acc
        }
    })
}

struct ScalarCtx(FieldKind);

impl EvalContext for ScalarCtx {
    type Value = Scalar;

    fn field(&self) -> FieldKind {
        self.0
    }
    fn scalar(&self, s: Scalar) -> Scalar {
        s
    }
    fn var_pow(&self, _: usize, _: i64) -> Result<Scalar> {
        Err(Error::ParameterDomain("a scalar cannot contain t".into()))
    }
    fn u(&self, _: &[i64]) -> Result<Scalar> {
        Err(Error::ParameterDomain("a scalar cannot contain u[...]".into()))
    }
    fn alias(&self, name: &str) -> Result<Scalar> {
        Err(Error::ParameterDomain(format!("unknown name '{name}' in a scalar")))
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a + b
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        -a
    }
    fn as_scalar(&self, a: &Scalar) -> Option<Scalar> {
        Some(a.clone())
    }
}

pub fn parse_scalar(src: &str, field: FieldKind) -> Result<Scalar> {
    eval(&parse_expr(src)?, &ScalarCtx(field))
}

struct CoeffCtx(CoeffDomain);

impl EvalContext for CoeffCtx {
    type Value = Coeff;

    fn field(&self) -> FieldKind {
        self.0.field
    }
    fn scalar(&self, s: Scalar) -> Coeff {
        self.0.constant(s)
    }
    fn var_pow(&self, i: usize, k: i64) -> Result<Coeff> {
        self.0.var_pow(i, k)
    }
    fn u(&self, _: &[i64]) -> Result<Coeff> {
        Err(Error::ParameterDomain("a coefficient cannot contain u[...]".into()))
    }
    fn alias(&self, name: &str) -> Result<Coeff> {
        Err(Error::ParameterDomain(format!(
            "unknown name '{name}' in a coefficient"
        )))
    }
    fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        a.add(b)
    }
    fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        a.mul(b)
    }
    fn neg(&self, a: &Coeff) -> Coeff {
        a.neg()
    }
    fn as_scalar(&self, a: &Coeff) -> Option<Scalar> {
        a.as_scalar()
    }
}

/// Parses a coefficient polynomial, e.g. `27*t^3 - 108*t^2 + 141*t - 60`.
pub fn parse_coeff(src: &str, domain: CoeffDomain) -> Result<Coeff> {
    eval(&parse_expr(src)?, &CoeffCtx(domain))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Carrier;

    #[test]
    fn parses_products_in_order() {
        let e = parse_expr("u[1]*u[-1]").unwrap();
        assert_eq!(e, Expr::Mul(Box::new(Expr::U(vec![1])), Box::new(Expr::U(vec![-1]))));
        let e = parse_expr("x^2*y").unwrap();
        assert_eq!(
            e,
            Expr::Mul(
                Box::new(Expr::Pow(Box::new(Expr::Alias("x".into())), 2)),
                Box::new(Expr::Alias("y".into()))
            )
        );
    }

    #[test]
    fn negative_exponent_on_generator_is_a_parse_error() {
        match parse_expr("u[1]^-1") {
            Err(Error::Parse { line, column, message }) => {
                assert_eq!((line, column), (1, 6));
                assert!(message.contains("inv"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_expr("(x*t)^-2"), Err(Error::Parse { .. })));
        assert!(parse_expr("t^-2").is_ok());
    }

    #[test]
    fn reports_position_and_expected_tokens() {
        match parse_expr("(t +\n  * 2)") {
            Err(Error::Parse { line, column, message }) => {
                assert_eq!((line, column), (2, 3));
                assert!(message.contains("expected one of"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_expr("u[1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("2 $ 3"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("t t"), Err(Error::Parse { .. })));
    }

    #[test]
    fn scalars_in_canonical_form() {
        let qq = FieldKind::RationalFunction;
        let s = parse_scalar("(q^2 - 1)/(q - 1)", qq).unwrap();
        assert_eq!(s.to_string(), "q + 1");
        assert_eq!(
            parse_scalar("-5/6", FieldKind::Rational).unwrap(),
            Scalar::rational(-5, 6)
        );
        let f7 = FieldKind::prime(7).unwrap();
        assert_eq!(parse_scalar("3*5", f7).unwrap(), Scalar::one(f7));
        assert_eq!(parse_scalar("q^-2", qq).unwrap().to_string(), "(1)/(q^2)");
        assert!(matches!(
            parse_scalar("1/0", FieldKind::Rational),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn coefficients_round_trip() {
        let dom = CoeffDomain::poly(FieldKind::Rational);
        for src in ["27*t^3 - 108*t^2 + 141*t - 60", "-1/2*t^2 + 3/4", "t", "0"] {
            assert_eq!(parse_coeff(src, dom).unwrap().to_string(), src);
        }
        let lau = CoeffDomain::new(Carrier::Laurent, FieldKind::Rational);
        assert_eq!(
            parse_coeff("t^2 + 2 + t^-2", lau).unwrap().to_string(),
            "t^2 + 2 + t^-2"
        );
        let m2 = CoeffDomain::new(Carrier::Multi(2), FieldKind::Rational);
        let p = parse_coeff("t_1*t_2 - t_2", m2).unwrap();
        assert_eq!(p.to_string(), "t_1*t_2 - t_2");
        assert!(parse_coeff("t_3", m2).is_err());
        assert!(parse_coeff("t^-1", dom).is_err());
    }
}

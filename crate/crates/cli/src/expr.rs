//! Expression grammar for ring and matrix elements.
//!
//! ```text
//! elem   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := "-" factor | atom
//! atom   := rational | "z" pow? | "u" pow? | "v" pow? | "w" pow? | "x" pow?
//!         | "omega" pow? | "e" "[" int "]" | "E" "[" int "," int "]" | "(" elem ")"
//! pow    := "^" "-"? int
//! ```
//!
//! `x` is the group generator and `z` the root of unity. Division is only by
//! nonzero scalars.

use std::sync::Arc;

use cdala::cherednik::{omega, trig_v};
use cdala::{CherElem, CherParams, CommElem, CycScalar, MatElem, Ring, RingVariant, SmashElem, TrigElem, Q};
use num_traits::{One, Signed, Zero};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingKind {
    Smash(RingVariant),
    Cher,
    Trig,
}

impl RingKind {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "A" | "a" => RingKind::Smash(RingVariant::A),
            "B" | "b" => RingKind::Smash(RingVariant::B),
            "C" | "c" => RingKind::Smash(RingVariant::C),
            "loopA" | "loop" => RingKind::Smash(RingVariant::LoopA),
            "polyB" | "poly" => RingKind::Smash(RingVariant::PolyB),
            "group" => RingKind::Smash(RingVariant::GroupRing),
            "cher" => RingKind::Cher,
            "trig" => RingKind::Trig,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            RingKind::Smash(RingVariant::A) => "A",
            RingKind::Smash(RingVariant::B) => "B",
            RingKind::Smash(RingVariant::C) => "C",
            RingKind::Smash(RingVariant::LoopA) => "loopA",
            RingKind::Smash(RingVariant::PolyB) => "polyB",
            RingKind::Smash(RingVariant::GroupRing) => "group",
            RingKind::Cher => "cher",
            RingKind::Trig => "trig",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Ctx {
    pub n: usize,
    pub d: u32,
    pub ring: RingKind,
    /// Cherednik parameters for the cher and trig rings.
    pub params: Option<Arc<CherParams>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    U,
    V,
    W,
    X,
    Omega,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Q),
    Zeta(i64),
    Var(Var, i64),
    Idem(i64),
    /// 1-based indices
    Unit(usize, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(num_bigint::BigInt),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, CliError> {
    let mut out = Vec::new();
    let cs: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = cs[st..i].iter().collect();
            out.push((st, Tok::Int(s.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_alphabetic() {
                i += 1;
            }
            out.push((st, Tok::Ident(cs[st..i].iter().collect())));
        } else if "+-*/^()[],".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(CliError::Syntax { pos: i, msg: format!("unexpected character '{}'", c) });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, CliError> {
        Err(CliError::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), CliError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c))
        }
    }

    fn int(&mut self) -> Result<i64, CliError> {
        let neg = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Int(k)) => {
                self.at += 1;
                let k: i64 = k.try_into().or_else(|_| self.err("integer too large"))?;
                Ok(if neg { -k } else { k })
            }
            _ => self.err("expected an integer"),
        }
    }

    fn pow(&mut self) -> Result<i64, CliError> {
        if self.eat('^') {
            self.int()
        } else {
            Ok(1)
        }
    }

    fn elem(&mut self) -> Result<Expr, CliError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, CliError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
            } else if self.eat('/') {
                acc = Expr::Div(Box::new(acc), Box::new(self.factor()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, CliError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr, CliError> {
        match self.peek().cloned() {
            Some(Tok::Int(k)) => {
                self.at += 1;
                Ok(Expr::Num(Q::from_integer(k)))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.elem()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(s)) => {
                self.at += 1;
                match s.as_str() {
                    "z" => Ok(Expr::Zeta(self.pow()?)),
                    "u" => Ok(Expr::Var(Var::U, self.pow()?)),
                    "v" => Ok(Expr::Var(Var::V, self.pow()?)),
                    "w" => Ok(Expr::Var(Var::W, self.pow()?)),
                    "x" => Ok(Expr::Var(Var::X, self.pow()?)),
                    "omega" => Ok(Expr::Var(Var::Omega, self.pow()?)),
                    "e" => {
                        self.expect('[')?;
                        let l = self.int()?;
                        self.expect(']')?;
                        Ok(Expr::Idem(l))
                    }
                    "E" => {
                        self.expect('[')?;
                        let i = self.int()?;
                        self.expect(',')?;
                        let j = self.int()?;
                        self.expect(']')?;
                        if i < 1 || j < 1 {
                            return self.err("matrix indices start at 1");
                        }
                        Ok(Expr::Unit(i as usize, j as usize))
                    }
                    other => {
                        self.at -= 1;
                        self.err(format!("unknown symbol '{}'", other))
                    }
                }
            }
            Some(Tok::Sym(c)) => self.err(format!("unexpected '{}'", c)),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, CliError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: src.chars().count(),
    };
    let e = p.elem()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Ring element or matrix over it.
#[derive(Clone, Debug, PartialEq)]
pub enum Value<R: Ring> {
    Elem(R),
    Mat(MatElem<R>),
}

/// Rings the grammar can build and print.
pub trait Syntax: Ring {
    fn from_scalar(ctx: &Ctx, c: CycScalar) -> Self;
    fn var(ctx: &Ctx, v: Var, k: i64) -> Result<Self, CliError>;
    fn idem(ctx: &Ctx, l: i64) -> Self;
    /// Terms as (coefficient, monomial text); the empty monomial is 1.
    fn terms_for_print(&self) -> Vec<(CycScalar, String)>;
}

fn mono(parts: &[(&str, i64)]) -> String {
    parts
        .iter()
        .filter(|(_, k)| *k != 0)
        .map(|(s, k)| if *k == 1 { s.to_string() } else { format!("{}^{}", s, k) })
        .collect::<Vec<_>>()
        .join("*")
}

fn pow_ring<R: Ring>(base: &R, k: i64) -> R {
    let mut acc = base.one_like();
    for _ in 0..k {
        acc = acc.mul(base);
    }
    acc
}

fn need_params(ctx: &Ctx) -> Result<&Arc<CherParams>, CliError> {
    ctx.params.as_ref().ok_or_else(|| CliError::Usage("this ring needs Cherednik parameters".into()))
}

fn nonneg(v: Var, k: i64) -> Result<(), CliError> {
    if k < 0 {
        return Err(CliError::Algebra(cdala::Error::VariantViolation(format!("negative power of {:?}", v))));
    }
    Ok(())
}

impl Syntax for SmashElem {
    fn from_scalar(ctx: &Ctx, c: CycScalar) -> Self {
        let RingKind::Smash(v) = ctx.ring else { unreachable!("smash context") };
        SmashElem::scalar(v, c)
    }

    fn var(ctx: &Ctx, var: Var, k: i64) -> Result<Self, CliError> {
        let RingKind::Smash(v) = ctx.ring else { unreachable!("smash context") };
        let one = CycScalar::one(ctx.d);
        Ok(match var {
            Var::U => SmashElem::monomial(v, ctx.d, k, 0, 0, one)?,
            Var::V => SmashElem::monomial(v, ctx.d, 0, k, 0, one)?,
            Var::W => SmashElem::monomial(v, ctx.d, k, k, 0, one)?,
            Var::X => SmashElem::xi_pow(v, ctx.d, k),
            Var::Omega => {
                return Err(CliError::Algebra(cdala::Error::NotInAlgebra("omega lives in the Cherednik ring".into())))
            }
        })
    }

    fn idem(ctx: &Ctx, l: i64) -> Self {
        let RingKind::Smash(v) = ctx.ring else { unreachable!("smash context") };
        cdala::idempotent(v, ctx.d, l)
    }

    fn terms_for_print(&self) -> Vec<(CycScalar, String)> {
        self.terms()
            .iter()
            .map(|(m, c)| (c.clone(), mono(&[("u", m.a), ("v", m.b), ("x", m.i as i64)])))
            .collect()
    }
}

impl Syntax for CherElem {
    fn from_scalar(ctx: &Ctx, c: CycScalar) -> Self {
        CherElem::scalar(ctx.params.as_ref().expect("cher context"), c)
    }

    fn var(ctx: &Ctx, var: Var, k: i64) -> Result<Self, CliError> {
        let p = need_params(ctx)?;
        let one = CycScalar::one(ctx.d);
        Ok(match var {
            Var::U => {
                nonneg(var, k)?;
                CherElem::monomial(p, k as u32, 0, 0, one)
            }
            Var::V => {
                nonneg(var, k)?;
                CherElem::monomial(p, 0, k as u32, 0, one)
            }
            Var::X => CherElem::monomial(p, 0, 0, k, one),
            Var::W | Var::Omega => {
                nonneg(var, k)?;
                pow_ring(&omega(p), k)
            }
        })
    }

    fn idem(ctx: &Ctx, l: i64) -> Self {
        CherElem::e(ctx.params.as_ref().expect("cher context"), l)
    }

    fn terms_for_print(&self) -> Vec<(CycScalar, String)> {
        self.terms()
            .iter()
            .map(|((a, b, i), c)| (c.clone(), mono(&[("u", *a as i64), ("v", *b as i64), ("x", *i as i64)])))
            .collect()
    }
}

impl Syntax for TrigElem {
    fn from_scalar(ctx: &Ctx, c: CycScalar) -> Self {
        TrigElem::scalar(ctx.params.as_ref().expect("trig context"), c)
    }

    fn var(ctx: &Ctx, var: Var, k: i64) -> Result<Self, CliError> {
        let p = need_params(ctx)?;
        let one = CycScalar::one(ctx.d);
        Ok(match var {
            Var::U => TrigElem::u_pow(p, k),
            Var::V => {
                nonneg(var, k)?;
                pow_ring(&trig_v(p), k)
            }
            Var::X => TrigElem::monomial(p, 0, 0, k, one),
            Var::W | Var::Omega => {
                nonneg(var, k)?;
                TrigElem::monomial(p, 0, k as u32, 0, one)
            }
        })
    }

    fn idem(ctx: &Ctx, l: i64) -> Self {
        TrigElem::e(ctx.params.as_ref().expect("trig context"), l)
    }

    fn terms_for_print(&self) -> Vec<(CycScalar, String)> {
        self.terms()
            .iter()
            .map(|((s, r, i), c)| (c.clone(), mono(&[("u", *s), ("w", *r as i64), ("x", *i as i64)])))
            .collect()
    }
}

fn add_values<R: Ring>(a: Value<R>, b: Value<R>) -> Result<Value<R>, CliError> {
    match (a, b) {
        (Value::Elem(x), Value::Elem(y)) => Ok(Value::Elem(x.add(&y))),
        (Value::Mat(x), Value::Mat(y)) => Ok(Value::Mat(x.try_add(&y)?)),
        _ => Err(CliError::Algebra(cdala::Error::ShapeMismatch("ring element plus matrix".into()))),
    }
}

fn mul_values<R: Ring>(a: Value<R>, b: Value<R>) -> Result<Value<R>, CliError> {
    Ok(match (a, b) {
        (Value::Elem(x), Value::Elem(y)) => Value::Elem(x.mul(&y)),
        (Value::Mat(x), Value::Mat(y)) => Value::Mat(x.try_mul(&y)?),
        (Value::Elem(x), Value::Mat(m)) => Value::Mat(m.map(&x.zero_like(), |e| x.mul(e))),
        (Value::Mat(m), Value::Elem(x)) => Value::Mat(m.map(&x.zero_like(), |e| e.mul(&x))),
    })
}

fn neg_value<R: Ring>(a: Value<R>) -> Value<R> {
    match a {
        Value::Elem(x) => Value::Elem(x.neg()),
        Value::Mat(m) => Value::Mat(m.neg()),
    }
}

/// A scalar-only subexpression, if it is one.
fn as_scalar(e: &Expr, d: u32) -> Result<Option<CycScalar>, CliError> {
    Ok(match e {
        Expr::Num(q) => Some(CycScalar::from_q(d, q.clone())),
        Expr::Zeta(k) => Some(CycScalar::zeta_pow(d, *k)),
        Expr::Neg(a) => as_scalar(a, d)?.map(|x| -&x),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
            let (Some(x), Some(y)) = (as_scalar(a, d)?, as_scalar(b, d)?) else {
                return Ok(None);
            };
            Some(match e {
                Expr::Add(..) => &x + &y,
                Expr::Sub(..) => &x - &y,
                Expr::Mul(..) => &x * &y,
                _ => &x * &y.inv()?,
            })
        }
        _ => None,
    })
}

/// Parses a scalar such as `(1+z)/3`.
pub fn parse_scalar(src: &str, d: u32) -> Result<CycScalar, CliError> {
    let e = parse_expr(src)?;
    as_scalar(&e, d)?.ok_or_else(|| CliError::Syntax { pos: 0, msg: format!("'{}' is not a scalar", src) })
}

pub fn eval<R: Syntax>(e: &Expr, ctx: &Ctx) -> Result<Value<R>, CliError> {
    if let Some(c) = as_scalar(e, ctx.d)? {
        return Ok(Value::Elem(R::from_scalar(ctx, c)));
    }
    match e {
        Expr::Num(_) | Expr::Zeta(_) => unreachable!("handled as scalars"),
        Expr::Var(v, k) => Ok(Value::Elem(R::var(ctx, *v, *k)?)),
        Expr::Idem(l) => Ok(Value::Elem(R::idem(ctx, *l))),
        Expr::Unit(i, j) => {
            if *i > ctx.n || *j > ctx.n {
                return Err(CliError::Algebra(cdala::Error::ShapeMismatch(format!(
                    "E[{},{}] outside {}x{}",
                    i, j, ctx.n, ctx.n
                ))));
            }
            let one = R::from_scalar(ctx, CycScalar::one(ctx.d));
            Ok(Value::Mat(MatElem::unit(ctx.n, i - 1, j - 1, one)))
        }
        Expr::Neg(a) => Ok(neg_value(eval(a, ctx)?)),
        Expr::Add(a, b) => add_values(eval(a, ctx)?, eval(b, ctx)?),
        Expr::Sub(a, b) => add_values(eval(a, ctx)?, neg_value(eval(b, ctx)?)),
        Expr::Mul(a, b) => mul_values(eval(a, ctx)?, eval(b, ctx)?),
        Expr::Div(a, b) => {
            let c = as_scalar(b, ctx.d)?.ok_or_else(|| CliError::Syntax { pos: 0, msg: "division by a non-scalar".into() })?;
            let inv = c.inv()?;
            Ok(match eval::<R>(a, ctx)? {
                Value::Elem(x) => Value::Elem(x.scale(&inv)),
                Value::Mat(m) => Value::Mat(m.map(&m.proto().clone(), |x| x.scale(&inv))),
            })
        }
    }
}

pub fn parse<R: Syntax>(src: &str, ctx: &Ctx) -> Result<Value<R>, CliError> {
    eval(&parse_expr(src)?, ctx)
}

pub fn parse_matrix<R: Syntax>(src: &str, ctx: &Ctx) -> Result<MatElem<R>, CliError> {
    match parse::<R>(src, ctx)? {
        Value::Mat(m) => Ok(m),
        Value::Elem(x) if x.is_zero() => Ok(MatElem::zero(ctx.n, &x)),
        Value::Elem(_) => Err(CliError::Algebra(cdala::Error::ShapeMismatch("expected a matrix (use E[i,j])".into()))),
    }
}

fn term_text(c: &CycScalar, m: &str) -> String {
    let s = c.to_exact_string();
    if c.is_compound() {
        if m.is_empty() {
            format!("({})", s)
        } else {
            format!("({})*{}", s, m)
        }
    } else if m.is_empty() {
        s
    } else if s == "1" {
        m.to_string()
    } else if s == "-1" {
        format!("-{}", m)
    } else {
        format!("{}*{}", s, m)
    }
}

fn join_terms(ts: Vec<String>) -> String {
    if ts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, t) in ts.into_iter().enumerate() {
        if k == 0 {
            out.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    out
}

pub fn print_elem<R: Syntax>(x: &R) -> String {
    join_terms(x.terms_for_print().iter().map(|(c, m)| term_text(c, m)).collect())
}

pub fn print_matrix<R: Syntax>(m: &MatElem<R>) -> String {
    let mut ts = Vec::new();
    for (i, j, r) in m.iter() {
        let unit = format!("E[{},{}]", i + 1, j + 1);
        let terms = r.terms_for_print();
        if terms.len() == 1 {
            let t = term_text(&terms[0].0, &terms[0].1);
            ts.push(match t.as_str() {
                "1" => unit,
                "-1" => format!("-{}", unit),
                _ => match t.strip_prefix('-') {
                    Some(rest) => format!("-{}*{}", unit, rest),
                    None => format!("{}*{}", unit, t),
                },
            });
        } else {
            ts.push(format!("{}*({})", unit, print_elem(r)));
        }
    }
    join_terms(ts)
}

pub fn print_value<R: Syntax>(v: &Value<R>) -> String {
    match v {
        Value::Elem(x) => print_elem(x),
        Value::Mat(m) => print_matrix(m),
    }
}

/// Commutative Laurent polynomials in s, t (the toroidal picture).
pub fn print_comm(x: &CommElem) -> String {
    join_terms(
        x.terms()
            .iter()
            .map(|((a, b), c)| term_text(c, &mono(&[("s", *a), ("t", *b)])))
            .collect(),
    )
}

pub fn print_comm_matrix(m: &MatElem<CommElem>) -> String {
    join_terms(
        m.iter()
            .map(|(i, j, r)| format!("E[{},{}]*({})", i + 1, j + 1, print_comm(r)))
            .collect(),
    )
}

/// Central values s^a t^b (alpha ds/s + beta dt/t).
pub fn print_kahler(k: &cdala::KahlerClass) -> String {
    let mut ts = Vec::new();
    for ((a, b), (al, be)) in k.terms() {
        let m = mono(&[("s", *a), ("t", *b)]);
        for (c, form) in [(al, "ds/s"), (be, "dt/t")] {
            if c.is_zero() {
                continue;
            }
            let body = if m.is_empty() { form.to_string() } else { format!("{}*{}", m, form) };
            ts.push(term_text(c, &body));
        }
    }
    join_terms(ts)
}

/// Rational with sign, for tests and the report.
pub fn q_string(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else if x.is_negative() {
        format!("-{}/{}", x.numer().abs(), x.denom())
    } else if x.is_zero() {
        "0".into()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

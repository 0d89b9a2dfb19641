//! Commutative Laurent rings in s, t and Kahler 1-forms modulo exact forms.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::scalar::{q, CycScalar};

/// Which exponents are allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CommVariant {
    /// C[s^{+-1}, t^{+-1}]
    Laurent,
    /// C[s^{+-1}, t]
    LaurentS,
    /// C[s, t]
    Poly,
    /// C[t^{+-1}] (s-exponent always 0)
    LoopT,
}

impl CommVariant {
    pub fn allows(self, a: i64, b: i64) -> bool {
        match self {
            CommVariant::Laurent => true,
            CommVariant::LaurentS => b >= 0,
            CommVariant::Poly => a >= 0 && b >= 0,
            CommVariant::LoopT => a == 0,
        }
    }
}

/// Element of C[s^{+-1}, t^{+-1}]; keys are (s-exponent, t-exponent).
#[derive(Clone, PartialEq)]
pub struct CommElem {
    d: u32,
    terms: BTreeMap<(i64, i64), CycScalar>,
}

impl CommElem {
    pub fn zero(d: u32) -> Self {
        CommElem {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(d: u32, a: i64, b: i64, c: CycScalar) -> Self {
        let mut x = Self::zero(d);
        x.add_term(a, b, &c);
        x
    }

    pub fn constant(c: CycScalar) -> Self {
        let d = c.d();
        Self::monomial(d, 0, 0, c)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn terms(&self) -> &BTreeMap<(i64, i64), CycScalar> {
        &self.terms
    }

    pub fn add_term(&mut self, a: i64, b: i64, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&(a, b)) {
            Some(x) => &x + c,
            None => c.clone(),
        };
        if !v.is_zero() {
            self.terms.insert((a, b), v);
        }
    }

    pub fn in_variant(&self, v: CommVariant) -> bool {
        self.terms.keys().all(|&(a, b)| v.allows(a, b))
    }

    pub fn check_variant(&self, v: CommVariant) -> Result<()> {
        if self.in_variant(v) {
            Ok(())
        } else {
            Err(Error::VariantViolation(format!("{:?} not in {:?}", self, v)))
        }
    }
}

impl Ring for CommElem {
    fn zero_like(&self) -> Self {
        Self::zero(self.d)
    }
    fn one_like(&self) -> Self {
        Self::constant(CycScalar::one(self.d))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(*a, *b, c);
        }
        out
    }
    fn neg(&self) -> Self {
        CommElem {
            d: self.d,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.d);
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                out.add_term(a1 + a2, b1 + b2, &(c1 * c2));
            }
        }
        out
    }
    fn scale(&self, c: &CycScalar) -> Self {
        let mut out = Self::zero(self.d);
        for ((a, b), x) in &self.terms {
            out.add_term(*a, *b, &(x * c));
        }
        out
    }
}

impl fmt::Debug for CommElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((a, b), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})*s^{}*t^{}", c, a, b)?;
        }
        Ok(())
    }
}

/// Class in Omega^1(C[s^{+-1},t^{+-1}]) / d(C[s^{+-1},t^{+-1}]).
///
/// At bidegree (a,b) the pair (alpha, beta) stands for
/// alpha [s^a t^b ds/s] + beta [s^a t^b dt/t]. The relation
/// a [s^a t^b ds/s] + b [s^a t^b dt/t] = 0 is used to keep only beta when
/// a != 0, only alpha when a = 0 and b != 0, and both at (0,0).
#[derive(Clone, PartialEq)]
pub struct KahlerClass {
    d: u32,
    terms: BTreeMap<(i64, i64), (CycScalar, CycScalar)>,
}

impl KahlerClass {
    pub fn zero(d: u32) -> Self {
        KahlerClass {
            d,
            terms: BTreeMap::new(),
        }
    }

    /// alpha [s^a t^b ds/s] + beta [s^a t^b dt/t], normalized.
    pub fn basis(d: u32, a: i64, b: i64, alpha: CycScalar, beta: CycScalar) -> Self {
        let mut k = Self::zero(d);
        k.add_raw(a, b, alpha, beta);
        k
    }

    /// [ds/s]
    pub fn ds_over_s(d: u32) -> Self {
        Self::basis(d, 0, 0, CycScalar::one(d), CycScalar::zero(d))
    }

    /// [dt/t]
    pub fn dt_over_t(d: u32) -> Self {
        Self::basis(d, 0, 0, CycScalar::zero(d), CycScalar::one(d))
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn terms(&self) -> &BTreeMap<(i64, i64), (CycScalar, CycScalar)> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_raw(&mut self, a: i64, b: i64, alpha: CycScalar, beta: CycScalar) {
        let (alpha, beta) = if a != 0 {
            // ds/s = -(b/a) dt/t
            let f = CycScalar::from_q(self.d, num_rational::BigRational::new(b.into(), a.into()));
            (CycScalar::zero(self.d), &beta - &(&alpha * &f))
        } else if b != 0 {
            (alpha, CycScalar::zero(self.d))
        } else {
            (alpha, beta)
        };
        let (x, y) = match self.terms.remove(&(a, b)) {
            Some((x, y)) => (&x + &alpha, &y + &beta),
            None => (alpha, beta),
        };
        if !(x.is_zero() && y.is_zero()) {
            self.terms.insert((a, b), (x, y));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), (x, y)) in &other.terms {
            out.add_raw(*a, *b, x.clone(), y.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        KahlerClass {
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|(k, (x, y))| (*k, (-x, -y)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        let mut out = Self::zero(self.d);
        for ((a, b), (x, y)) in &self.terms {
            out.add_raw(*a, *b, x * c, y * c);
        }
        out
    }
}

impl fmt::Debug for KahlerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((a, b), (x, y))) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "s^{}t^{}[({})ds/s + ({})dt/t]", a, b, x, y)?;
        }
        Ok(())
    }
}

/// The class of f dg, bilinear in f and g.
pub fn kahler_reduce(f: &CommElem, g: &CommElem) -> KahlerClass {
    let d = f.d;
    let mut out = KahlerClass::zero(d);
    for ((a1, b1), c1) in &f.terms {
        for ((a2, b2), c2) in &g.terms {
            let c = c1 * c2;
            // s^a1 t^b1 d(s^a2 t^b2) = s^{a1+a2} t^{b1+b2} (a2 ds/s + b2 dt/t)
            out.add_raw(
                a1 + a2,
                b1 + b2,
                c.scale(&q(*a2)),
                c.scale(&q(*b2)),
            );
        }
    }
    out
}

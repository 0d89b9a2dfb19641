//! Smash-product rings C[u^{+-1}, v^{+-1}] x| Gamma with Gamma = Z/d generated by x.
//!
//! Monomials are u^a v^b x^i with x u = z u x and x v = z^{-1} v x.

use std::collections::BTreeMap;
use std::fmt;

use crate::comm::{CommElem, CommVariant};
use crate::error::{Error, Result};
use crate::mat::MatElem;
use crate::ring::Ring;
use crate::scalar::{qf, CycScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingVariant {
    /// C[u^{+-1}, v^{+-1}] x| Gamma
    A,
    /// C[u^{+-1}, v] x| Gamma
    B,
    /// C[u, v] x| Gamma
    C,
    /// C[u^{+-1}] x| Gamma
    LoopA,
    /// C[u] x| Gamma
    PolyB,
    /// C[Gamma]
    GroupRing,
}

impl RingVariant {
    pub fn allows(self, a: i64, b: i64) -> bool {
        match self {
            RingVariant::A => true,
            RingVariant::B => b >= 0,
            RingVariant::C => a >= 0 && b >= 0,
            RingVariant::LoopA => b == 0,
            RingVariant::PolyB => b == 0 && a >= 0,
            RingVariant::GroupRing => a == 0 && b == 0,
        }
    }

    pub fn is_one_var(self) -> bool {
        matches!(self, RingVariant::LoopA | RingVariant::PolyB | RingVariant::GroupRing)
    }

    pub fn name(self) -> &'static str {
        match self {
            RingVariant::A => "A",
            RingVariant::B => "B",
            RingVariant::C => "C",
            RingVariant::LoopA => "LoopA",
            RingVariant::PolyB => "PolyB",
            RingVariant::GroupRing => "GroupRing",
        }
    }
}

/// u^a v^b x^i
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmashMonomial {
    pub a: i64,
    pub b: i64,
    pub i: u32,
}

#[derive(Clone, PartialEq)]
pub struct SmashElem {
    variant: RingVariant,
    d: u32,
    terms: BTreeMap<SmashMonomial, CycScalar>,
}

impl SmashElem {
    pub fn zero(variant: RingVariant, d: u32) -> Self {
        SmashElem {
            variant,
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(variant: RingVariant, d: u32) -> Self {
        Self::scalar(variant, CycScalar::one(d))
    }

    pub fn scalar(variant: RingVariant, c: CycScalar) -> Self {
        let d = c.d();
        let mut x = Self::zero(variant, d);
        x.add_term(SmashMonomial { a: 0, b: 0, i: 0 }, &c);
        x
    }

    /// c u^a v^b x^i
    pub fn monomial(variant: RingVariant, d: u32, a: i64, b: i64, i: i64, c: CycScalar) -> Result<Self> {
        if !variant.allows(a, b) {
            return Err(Error::VariantViolation(format!(
                "u^{} v^{} not in {}",
                a,
                b,
                variant.name()
            )));
        }
        let mut x = Self::zero(variant, d);
        let i = i.rem_euclid(d as i64) as u32;
        x.add_term(SmashMonomial { a, b, i }, &c);
        Ok(x)
    }

    pub fn u_pow(variant: RingVariant, d: u32, a: i64) -> Result<Self> {
        Self::monomial(variant, d, a, 0, 0, CycScalar::one(d))
    }

    pub fn v_pow(variant: RingVariant, d: u32, b: i64) -> Result<Self> {
        Self::monomial(variant, d, 0, b, 0, CycScalar::one(d))
    }

    pub fn xi_pow(variant: RingVariant, d: u32, i: i64) -> Self {
        Self::monomial(variant, d, 0, 0, i, CycScalar::one(d)).expect("group elements lie in every variant")
    }

    pub fn variant(&self) -> RingVariant {
        self.variant
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn terms(&self) -> &BTreeMap<SmashMonomial, CycScalar> {
        &self.terms
    }

    pub fn coeff(&self, m: &SmashMonomial) -> CycScalar {
        self.terms.get(m).cloned().unwrap_or_else(|| CycScalar::zero(self.d))
    }

    /// Adds c * m without a variant check; callers validate.
    pub(crate) fn add_term(&mut self, m: SmashMonomial, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&m) {
            Some(x) => &x + c,
            None => c.clone(),
        };
        if !v.is_zero() {
            self.terms.insert(m, v);
        }
    }

    /// Same element regarded in another variant.
    pub fn to_variant(&self, variant: RingVariant) -> Result<Self> {
        for m in self.terms.keys() {
            if !variant.allows(m.a, m.b) {
                return Err(Error::VariantViolation(format!(
                    "u^{} v^{} not in {}",
                    m.a,
                    m.b,
                    variant.name()
                )));
            }
        }
        Ok(SmashElem {
            variant,
            d: self.d,
            terms: self.terms.clone(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::MixedRootOrder {
                left: self.d,
                right: other.d,
            });
        }
        if self.variant != other.variant {
            return Err(Error::VariantViolation(format!(
                "{} times {}",
                self.variant.name(),
                other.variant.name()
            )));
        }
        let mut out = Self::zero(self.variant, self.d);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let (a, b) = (m1.a + m2.a, m1.b + m2.b);
                if !self.variant.allows(a, b) {
                    return Err(Error::VariantViolation(format!(
                        "product u^{} v^{} leaves {}",
                        a,
                        b,
                        self.variant.name()
                    )));
                }
                let tw = CycScalar::zeta_pow(self.d, m1.i as i64 * (m2.a - m2.b));
                let i = (m1.i + m2.i) % self.d;
                out.add_term(SmashMonomial { a, b, i }, &(&(c1 * c2) * &tw));
            }
        }
        Ok(out)
    }

    /// Rewrites u^a v^b x^i as a sum of u^a v^b e_l: returns (a, b, l, coefficient).
    pub fn idempotent_terms(&self) -> Vec<(i64, i64, u32, CycScalar)> {
        let mut acc: BTreeMap<(i64, i64, u32), CycScalar> = BTreeMap::new();
        for (m, c) in &self.terms {
            for l in 0..self.d {
                // x^i = sum_l z^{il} e_l
                let k = c * &CycScalar::zeta_pow(self.d, m.i as i64 * l as i64);
                let e = acc.entry((m.a, m.b, l)).or_insert_with(|| CycScalar::zero(self.d));
                *e += &k;
            }
        }
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((a, b, l), c)| (a, b, l, c))
            .collect()
    }
}

impl SmashElem {
    /// Builds sum c u^a v^b e_l from (a, b, l, c) tuples.
    pub fn from_idempotent_terms(
        variant: RingVariant,
        d: u32,
        terms: impl IntoIterator<Item = (i64, i64, i64, CycScalar)>,
    ) -> Result<Self> {
        let mut out = Self::zero(variant, d);
        let inv_d = CycScalar::from_q(d, qf(1, d as i64));
        for (a, b, l, c) in terms {
            if c.is_zero() {
                continue;
            }
            if !variant.allows(a, b) {
                return Err(Error::VariantViolation(format!(
                    "u^{} v^{} not in {}",
                    a,
                    b,
                    variant.name()
                )));
            }
            let cd = &c * &inv_d;
            for i in 0..d {
                let coef = &cd * &CycScalar::zeta_pow(d, -(i as i64) * l);
                out.add_term(SmashMonomial { a, b, i }, &coef);
            }
        }
        Ok(out)
    }
}

impl Ring for SmashElem {
    fn zero_like(&self) -> Self {
        Self::zero(self.variant, self.d)
    }
    fn one_like(&self) -> Self {
        Self::one(self.variant, self.d)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d, "mixed root orders");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        out
    }
    fn neg(&self) -> Self {
        SmashElem {
            variant: self.variant,
            d: self.d,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("smash product")
    }
    fn scale(&self, c: &CycScalar) -> Self {
        let mut out = Self::zero(self.variant, self.d);
        for (m, x) in &self.terms {
            out.add_term(*m, &(x * c));
        }
        out
    }
}

impl fmt::Debug for SmashElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})u^{}v^{}x^{}", c, m.a, m.b, m.i)?;
        }
        Ok(())
    }
}

/// e_l = (1/d) sum_i z^{-il} x^i
pub fn idempotent(variant: RingVariant, d: u32, l: i64) -> SmashElem {
    let mut x = SmashElem::zero(variant, d);
    let inv_d = CycScalar::from_q(d, qf(1, d as i64));
    for i in 0..d {
        let c = &CycScalar::zeta_pow(d, -(i as i64) * l) * &inv_d;
        x.add_term(SmashMonomial { a: 0, b: 0, i }, &c);
    }
    x
}

/// Whether a one-variable element lies in the commutator subspace [A, A].
///
/// LoopA: spanned by u^a x^i with i != 0, and u^a with a not divisible by d.
/// PolyB: as LoopA but group terms need a >= 1. GroupRing is commutative.
pub fn in_commutator_subspace(x: &SmashElem) -> Result<bool> {
    let d = x.d as i64;
    match x.variant {
        RingVariant::LoopA => Ok(x
            .terms
            .keys()
            .all(|m| m.i != 0 || m.a.rem_euclid(d) != 0)),
        RingVariant::PolyB => Ok(x
            .terms
            .keys()
            .all(|m| (m.i != 0 && m.a >= 1) || m.a.rem_euclid(d) != 0)),
        RingVariant::GroupRing => Ok(x.is_zero()),
        v => Err(Error::VariantViolation(format!(
            "commutator subspace test needs a one-variable ring, got {}",
            v.name()
        ))),
    }
}

/// Whether u^a v^b x^i lies in the span of commutators [R, R] for the variant.
///
/// A commutator has vanishing Morita trace, which kills exactly the
/// group-invariant monomials with a = b mod d; in C and PolyB the bare group
/// elements are not reached either.
pub fn monomial_in_commutators(variant: RingVariant, d: u32, m: &SmashMonomial) -> bool {
    let d = d as i64;
    let off = (m.a - m.b).rem_euclid(d) != 0;
    match variant {
        RingVariant::A | RingVariant::B | RingVariant::LoopA => m.i != 0 || off,
        RingVariant::C | RingVariant::PolyB => (m.i != 0 && (m.a, m.b) != (0, 0)) || off,
        RingVariant::GroupRing => false,
    }
}

/// Total version of [`in_commutator_subspace`] covering every variant.
pub fn in_commutators(x: &SmashElem) -> bool {
    x.terms.keys().all(|m| monomial_in_commutators(x.variant, x.d, m))
}

/// Window decomposition of an exponent: e = k d + r with 0 <= l + r <= d - 1.
pub fn split_exponent(e: i64, l: u32, d: u32) -> (i64, i64) {
    let (l, d) = (l as i64, d as i64);
    let r = (l + e).rem_euclid(d) - l;
    ((e - r) / d, r)
}

/// The algebra isomorphism onto d x d matrices over a commutative ring.
///
/// One variable: u^{kd+r} e_l -> E_{l+r,l} t^k over C[t^{+-1}].
/// Two variables: u^a v^b e_l = u^{a-b} w^b e_l -> E_{l+r,l} s^k t^b with a-b = kd+r.
pub fn morita_to_matrix(x: &SmashElem) -> Result<MatElem<CommElem>> {
    let d = x.d;
    let one_var = match x.variant {
        RingVariant::LoopA | RingVariant::PolyB | RingVariant::GroupRing => true,
        RingVariant::A | RingVariant::B | RingVariant::C => false,
    };
    let mut out = MatElem::zero(d as usize, &CommElem::zero(d));
    for (a, b, l, c) in x.idempotent_terms() {
        let (k, r) = split_exponent(a - b, l, d);
        let row = (l as i64 + r) as usize;
        let entry = if one_var {
            CommElem::monomial(d, 0, k, c)
        } else {
            CommElem::monomial(d, k, b, c)
        };
        out.add_entry(row, l as usize, &entry);
    }
    Ok(out)
}

/// Inverse of [`morita_to_matrix`]; `variant` selects the target ring.
pub fn matrix_to_smash(m: &MatElem<CommElem>, variant: RingVariant, d: u32) -> Result<SmashElem> {
    if m.n() != d as usize {
        return Err(Error::ShapeMismatch(format!("{}x{} matrix for d={}", m.n(), m.n(), d)));
    }
    let one_var = variant.is_one_var();
    let mut out = SmashElem::zero(variant, d);
    let inv_d = CycScalar::from_q(d, qf(1, d as i64));
    for (p, qi, entry) in m.iter() {
        for ((ks, kt), c) in entry.terms() {
            let (k, b) = if one_var {
                if *ks != 0 {
                    return Err(Error::VariantViolation("s-exponent in one-variable image".into()));
                }
                (*kt, 0)
            } else {
                (*ks, *kt)
            };
            let uexp = k * d as i64 + p as i64 - qi as i64 + b;
            if !variant.allows(uexp, b) {
                return Err(Error::VariantViolation(format!(
                    "u^{} v^{} not in {}",
                    uexp,
                    b,
                    variant.name()
                )));
            }
            for i in 0..d {
                let coef = &(c * &CycScalar::zeta_pow(d, -(i as i64) * qi as i64)) * &inv_d;
                out.add_term(SmashMonomial { a: uexp, b, i }, &coef);
            }
        }
    }
    Ok(out)
}

/// Target ring variant of the Morita image.
pub fn morita_target(variant: RingVariant) -> CommVariant {
    match variant {
        RingVariant::A => CommVariant::Laurent,
        RingVariant::B => CommVariant::LaurentS,
        RingVariant::C => CommVariant::Laurent,
        _ => CommVariant::LoopT,
    }
}

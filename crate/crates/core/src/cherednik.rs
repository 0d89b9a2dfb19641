//! Rank-one rational Cherednik algebra H_{t,c}(Gamma) and its trigonometric version.
//!
//! Relations: x u = z u x, x v = z^{-1} v x, vu - uv = t + sum_{i>=1} c_i x^i.
//! PBW order is u^a v^b x^i. The trigonometric algebra inverts u and uses the
//! basis u^s w^r x^i, where w is the Euler element omega.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::scalar::{q, qf, CycScalar};
use crate::smash::{idempotent, RingVariant};

/// Parameters t and c, with the derived c-tilde (gauge: sum of c-tilde is 0).
#[derive(Clone, PartialEq, Debug)]
pub struct CherParams {
    pub d: u32,
    pub t: CycScalar,
    pub c: Vec<CycScalar>,
    pub ctilde: Vec<CycScalar>,
}

impl CherParams {
    /// `c` has length d - 1 (c_1 .. c_{d-1}).
    pub fn new(d: u32, t: CycScalar, c: Vec<CycScalar>) -> Result<Self> {
        if c.len() != d as usize - 1 {
            return Err(Error::ShapeMismatch(format!("c needs {} entries, got {}", d - 1, c.len())));
        }
        let ctilde = ctilde_from_c(d, &c);
        Ok(CherParams { d, t, c, ctilde })
    }

    pub fn from_ctilde(d: u32, t: CycScalar, ctilde: Vec<CycScalar>) -> Result<Self> {
        let c = c_from_ctilde(d, &ctilde)?;
        Ok(CherParams { d, t, c, ctilde })
    }

    /// t = 1, c = 0: the Weyl algebra smashed with Gamma.
    pub fn weyl(d: u32) -> Self {
        Self::new(d, CycScalar::one(d), vec![CycScalar::zero(d); d as usize - 1]).unwrap()
    }

    /// c-tilde with index taken mod d.
    pub fn ct(&self, k: i64) -> &CycScalar {
        &self.ctilde[k.rem_euclid(self.d as i64) as usize]
    }

    /// c_i for i mod d, with c_0 = 0.
    fn c_at(&self, i: u32) -> CycScalar {
        if i == 0 {
            CycScalar::zero(self.d)
        } else {
            self.c[i as usize - 1].clone()
        }
    }
}

/// Solves sum_i ct_i (e_i - e_{i+1}) = sum_j c_j x^j with sum_i ct_i = 0.
pub fn ctilde_from_c(d: u32, c: &[CycScalar]) -> Vec<CycScalar> {
    // x^j coefficient of the left side is (1/d)(1 - z^{-j}) g(j), g(j) = sum_i ct_i z^{-ij}
    let mut g = vec![CycScalar::zero(d); d as usize];
    for j in 1..d as usize {
        let denom = &CycScalar::one(d) - &CycScalar::zeta_pow(d, -(j as i64));
        g[j] = &c[j - 1].scale(&q(d as i64)) / &denom;
    }
    (0..d as i64)
        .map(|i| {
            let mut acc = CycScalar::zero(d);
            for (j, gj) in g.iter().enumerate() {
                acc += &(gj * &CycScalar::zeta_pow(d, i * j as i64));
            }
            acc.scale(&qf(1, d as i64))
        })
        .collect()
}

pub fn c_from_ctilde(d: u32, ct: &[CycScalar]) -> Result<Vec<CycScalar>> {
    if ct.len() != d as usize {
        return Err(Error::ShapeMismatch(format!("c-tilde needs {} entries", d)));
    }
    let mut sum = CycScalar::zero(d);
    for x in ct {
        sum += x;
    }
    if !sum.is_zero() {
        return Err(Error::NormalizationViolation(sum.to_string()));
    }
    Ok((1..d as i64)
        .map(|j| {
            let mut acc = CycScalar::zero(d);
            for (i, x) in ct.iter().enumerate() {
                let f = &CycScalar::zeta_pow(d, -(i as i64) * j) - &CycScalar::zeta_pow(d, -(i as i64 + 1) * j);
                acc += &(x * &f);
            }
            acc.scale(&qf(1, d as i64))
        })
        .collect())
}

/// Element of H_{t,c}(Gamma) in the PBW basis u^a v^b x^i.
#[derive(Clone, PartialEq)]
pub struct CherElem {
    p: std::sync::Arc<CherParams>,
    terms: BTreeMap<(u32, u32, u32), CycScalar>,
}

impl CherElem {
    pub fn zero(p: &std::sync::Arc<CherParams>) -> Self {
        CherElem {
            p: p.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(p: &std::sync::Arc<CherParams>, c: CycScalar) -> Self {
        let mut x = Self::zero(p);
        x.add_term(0, 0, 0, &c);
        x
    }

    pub fn monomial(p: &std::sync::Arc<CherParams>, a: u32, b: u32, i: i64, c: CycScalar) -> Self {
        let mut x = Self::zero(p);
        let i = i.rem_euclid(p.d as i64) as u32;
        x.add_term(a, b, i, &c);
        x
    }

    pub fn u(p: &std::sync::Arc<CherParams>) -> Self {
        Self::monomial(p, 1, 0, 0, CycScalar::one(p.d))
    }

    pub fn v(p: &std::sync::Arc<CherParams>) -> Self {
        Self::monomial(p, 0, 1, 0, CycScalar::one(p.d))
    }

    pub fn xi(p: &std::sync::Arc<CherParams>) -> Self {
        Self::monomial(p, 0, 0, 1, CycScalar::one(p.d))
    }

    /// Group-algebra idempotent e_l.
    pub fn e(p: &std::sync::Arc<CherParams>, l: i64) -> Self {
        let g = idempotent(RingVariant::GroupRing, p.d, l);
        let mut x = Self::zero(p);
        for (m, c) in g.terms() {
            x.add_term(0, 0, m.i, c);
        }
        x
    }

    pub fn params(&self) -> &std::sync::Arc<CherParams> {
        &self.p
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32, u32), CycScalar> {
        &self.terms
    }

    pub(crate) fn add_term(&mut self, a: u32, b: u32, i: u32, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&(a, b, i)) {
            Some(x) => &x + c,
            None => c.clone(),
        };
        if !v.is_zero() {
            self.terms.insert((a, b, i), v);
        }
    }

    fn left_u(&self) -> Self {
        let mut out = Self::zero(&self.p);
        for ((a, b, i), c) in &self.terms {
            out.add_term(a + 1, *b, *i, c);
        }
        out
    }

    fn left_xi(&self) -> Self {
        let d = self.p.d;
        let mut out = Self::zero(&self.p);
        for ((a, b, i), c) in &self.terms {
            let tw = CycScalar::zeta_pow(d, *a as i64 - *b as i64);
            out.add_term(*a, *b, (i + 1) % d, &(c * &tw));
        }
        out
    }

    fn left_v(&self) -> Self {
        let p = &self.p;
        let d = p.d;
        let mut out = Self::zero(p);
        for ((a, b, i), c) in &self.terms {
            out.add_term(*a, b + 1, *i, c);
            if *a == 0 {
                continue;
            }
            // v u^a = u^a v + sum_{m<a} u^m (t + sum_k c_k x^k) u^{a-1-m}
            out.add_term(a - 1, *b, *i, &(c * &p.t.scale(&q(*a as i64))));
            for k in 1..d {
                let ck = p.c_at(k);
                if ck.is_zero() {
                    continue;
                }
                let mut geo = CycScalar::zero(d);
                for m in 0..*a as i64 {
                    geo += &CycScalar::zeta_pow(d, k as i64 * m);
                }
                let tw = CycScalar::zeta_pow(d, -(k as i64) * *b as i64);
                let coef = &(&(c * &ck) * &geo) * &tw;
                out.add_term(a - 1, *b, (k + i) % d, &coef);
            }
        }
        out
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if !std::sync::Arc::ptr_eq(&self.p, &other.p) && self.p != other.p {
            return Err(Error::ShapeMismatch("different Cherednik parameters".into()));
        }
        let mut out = Self::zero(&self.p);
        for ((a, b, i), c) in &self.terms {
            let mut y = other.clone();
            for _ in 0..*i {
                y = y.left_xi();
            }
            for _ in 0..*b {
                y = y.left_v();
            }
            for _ in 0..*a {
                y = y.left_u();
            }
            out = out.add(&y.scale(c));
        }
        Ok(out)
    }

    /// Common degree with deg u = -1, deg v = 1, deg x = 0.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|(a, b, _)| *b as i64 - *a as i64);
        let first = it.next()?;
        if it.all(|g| g == first) {
            Some(first)
        } else {
            None
        }
    }
}

impl Ring for CherElem {
    fn zero_like(&self) -> Self {
        Self::zero(&self.p)
    }
    fn one_like(&self) -> Self {
        Self::scalar(&self.p, CycScalar::one(self.p.d))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b, i), c) in &other.terms {
            out.add_term(*a, *b, *i, c);
        }
        out
    }
    fn neg(&self) -> Self {
        CherElem {
            p: self.p.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("Cherednik product")
    }
    fn scale(&self, c: &CycScalar) -> Self {
        let mut out = Self::zero(&self.p);
        for ((a, b, i), x) in &self.terms {
            out.add_term(*a, *b, *i, &(x * c));
        }
        out
    }
}

impl fmt::Debug for CherElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((a, b, i), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})u^{}v^{}x^{}", c, a, b, i)?;
        }
        Ok(())
    }
}

/// omega = -uv + sum_i ct_i e_{i+1}
pub fn omega(p: &std::sync::Arc<CherParams>) -> CherElem {
    let mut w = CherElem::monomial(p, 1, 1, 0, CycScalar::from_int(p.d, -1));
    for i in 0..p.d as i64 {
        w = w.add(&CherElem::e(p, i + 1).scale(p.ct(i)));
    }
    w
}

/// The other two expressions of omega: -vu + t + sum ct_i e_i and the symmetric form.
pub fn omega_alternatives(p: &std::sync::Arc<CherParams>) -> [CherElem; 2] {
    let d = p.d;
    let u = CherElem::u(p);
    let v = CherElem::v(p);
    let vu = v.mul(&u);
    let uv = u.mul(&v);
    let mut second = vu.neg().add(&CherElem::scalar(p, p.t.clone()));
    let half = CycScalar::from_q(d, qf(1, 2));
    let mut third = uv.add(&vu).scale(&-&half).add(&CherElem::scalar(p, p.t.scale(&qf(1, 2))));
    for i in 0..d as i64 {
        second = second.add(&CherElem::e(p, i).scale(p.ct(i)));
        let pair = CherElem::e(p, i).add(&CherElem::e(p, i + 1));
        third = third.add(&pair.scale(&(p.ct(i) * &half)));
    }
    [second, third]
}

/// Element of the trigonometric algebra in the basis u^s w^r x^i (w = omega).
#[derive(Clone, PartialEq)]
pub struct TrigElem {
    p: std::sync::Arc<CherParams>,
    terms: BTreeMap<(i64, u32, u32), CycScalar>,
}

impl TrigElem {
    pub fn zero(p: &std::sync::Arc<CherParams>) -> Self {
        TrigElem {
            p: p.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(p: &std::sync::Arc<CherParams>, s: i64, r: u32, i: i64, c: CycScalar) -> Self {
        let mut x = Self::zero(p);
        x.add_term(s, r, i.rem_euclid(p.d as i64) as u32, &c);
        x
    }

    pub fn scalar(p: &std::sync::Arc<CherParams>, c: CycScalar) -> Self {
        Self::monomial(p, 0, 0, 0, c)
    }

    pub fn u_pow(p: &std::sync::Arc<CherParams>, s: i64) -> Self {
        Self::monomial(p, s, 0, 0, CycScalar::one(p.d))
    }

    pub fn omega(p: &std::sync::Arc<CherParams>) -> Self {
        Self::monomial(p, 0, 1, 0, CycScalar::one(p.d))
    }

    pub fn e(p: &std::sync::Arc<CherParams>, l: i64) -> Self {
        let g = idempotent(RingVariant::GroupRing, p.d, l);
        let mut x = Self::zero(p);
        for (m, c) in g.terms() {
            x.add_term(0, 0, m.i, c);
        }
        x
    }

    pub fn params(&self) -> &std::sync::Arc<CherParams> {
        &self.p
    }

    pub fn terms(&self) -> &BTreeMap<(i64, u32, u32), CycScalar> {
        &self.terms
    }

    pub(crate) fn add_term(&mut self, s: i64, r: u32, i: u32, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&(s, r, i)) {
            Some(x) => &x + c,
            None => c.clone(),
        };
        if !v.is_zero() {
            self.terms.insert((s, r, i), v);
        }
    }

    /// Rewrites into the basis u^s w^r e_k: returns (s, r, k, coefficient).
    pub fn idempotent_terms(&self) -> Vec<(i64, u32, u32, CycScalar)> {
        let d = self.p.d;
        let mut acc: BTreeMap<(i64, u32, u32), CycScalar> = BTreeMap::new();
        for ((s, r, i), c) in &self.terms {
            for k in 0..d {
                let x = c * &CycScalar::zeta_pow(d, *i as i64 * k as i64);
                *acc.entry((*s, *r, k)).or_insert_with(|| CycScalar::zero(d)) += &x;
            }
        }
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((s, r, k), c)| (s, r, k, c))
            .collect()
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if !std::sync::Arc::ptr_eq(&self.p, &other.p) && self.p != other.p {
            return Err(Error::ShapeMismatch("different Cherednik parameters".into()));
        }
        let d = self.p.d;
        let t = &self.p.t;
        let mut out = Self::zero(&self.p);
        for ((s1, r1, i1), c1) in &self.terms {
            for ((s2, r2, i2), c2) in &other.terms {
                // x^{i1} u^{s2} = z^{i1 s2} u^{s2} x^{i1}; w^{r1} u^{s2} = u^{s2} (w - s2 t)^{r1}
                let tw = CycScalar::zeta_pow(d, *i1 as i64 * s2);
                let base = &(c1 * c2) * &tw;
                let shift = -&t.scale(&q(*s2));
                let mut binom = num_bigint::BigInt::from(1);
                let mut shift_pow = CycScalar::one(d);
                // (w + shift)^{r1} = sum_j C(r1, j) shift^{r1-j} w^j; iterate from j = r1 down
                for j in (0..=*r1).rev() {
                    let coef = &(&base * &shift_pow).scale(&num_rational::BigRational::from_integer(binom.clone()));
                    if !coef.is_zero() {
                        out.add_term(s1 + s2, j + r2, (i1 + i2) % d, coef);
                    }
                    // next: C(r1, j-1) = C(r1, j) * j / (r1 - j + 1)
                    if j > 0 {
                        binom = binom * j / (r1 - j + 1);
                        shift_pow = &shift_pow * &shift;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Common degree with deg u = -1, deg w = 0, deg x = 0.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|(s, _, _)| -*s);
        let first = it.next()?;
        if it.all(|g| g == first) {
            Some(first)
        } else {
            None
        }
    }
}

impl Ring for TrigElem {
    fn zero_like(&self) -> Self {
        Self::zero(&self.p)
    }
    fn one_like(&self) -> Self {
        Self::scalar(&self.p, CycScalar::one(self.p.d))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((s, r, i), c) in &other.terms {
            out.add_term(*s, *r, *i, c);
        }
        out
    }
    fn neg(&self) -> Self {
        TrigElem {
            p: self.p.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("trigonometric product")
    }
    fn scale(&self, c: &CycScalar) -> Self {
        let mut out = Self::zero(&self.p);
        for ((s, r, i), x) in &self.terms {
            out.add_term(*s, *r, *i, &(x * c));
        }
        out
    }
}

impl fmt::Debug for TrigElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((s, r, i), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})u^{}w^{}x^{}", c, s, r, i)?;
        }
        Ok(())
    }
}

/// v = -u^{-1} (w - sum_l ct_{l-1} e_l) in the trigonometric algebra.
pub fn trig_v(p: &std::sync::Arc<CherParams>) -> TrigElem {
    let mut inner = TrigElem::omega(p);
    for l in 0..p.d as i64 {
        inner = inner.sub(&TrigElem::e(p, l).scale(p.ct(l - 1)));
    }
    TrigElem::u_pow(p, -1).mul(&inner).neg()
}

/// Image of the inclusion H -> trigonometric algebra.
pub fn poly_to_trig(x: &CherElem) -> TrigElem {
    let p = x.params();
    let v = trig_v(p);
    let mut vpows = vec![TrigElem::scalar(p, CycScalar::one(p.d))];
    let mut out = TrigElem::zero(p);
    for ((a, b, i), c) in x.terms() {
        while vpows.len() <= *b as usize {
            let next = vpows.last().unwrap().mul(&v);
            vpows.push(next);
        }
        let term = TrigElem::u_pow(p, *a as i64)
            .mul(&vpows[*b as usize])
            .mul(&TrigElem::monomial(p, 0, 0, *i as i64, c.clone()));
        out = out.add(&term);
    }
    out
}

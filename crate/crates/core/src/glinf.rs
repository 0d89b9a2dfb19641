//! Z-indexed banded matrices on a finite window, and the embeddings of the
//! trigonometric Cherednik algebra into them.
//!
//! Block arithmetic: index p = b n + i with block b = l d + k and 0 <= i < n.
//! E_ij u^s w^r e_k sends column b n + j to row (b + s) n + i and scales by
//! (-b - a - t)^r, where a + t is the formal parameter (a = 0, t = 0 for iota).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::cherednik::{poly_to_trig, CherElem, CherParams, TrigElem};
use crate::error::{Error, Result};
use crate::mat::MatElem;
use crate::scalar::CycScalar;
use crate::upoly::UPoly;

/// Class of a polynomial in t modulo t^{m+1}.
#[derive(Clone, PartialEq)]
pub struct TruncScalar {
    m: usize,
    c: Vec<CycScalar>,
}

impl TruncScalar {
    pub fn zero(d: u32, m: usize) -> Self {
        TruncScalar {
            m,
            c: vec![CycScalar::zero(d); m + 1],
        }
    }

    pub fn constant(c: CycScalar, m: usize) -> Self {
        let mut x = Self::zero(c.d(), m);
        x.c[0] = c;
        x
    }

    /// a + t
    pub fn param(a: &CycScalar, m: usize) -> Self {
        let mut x = Self::constant(a.clone(), m);
        if m >= 1 {
            x.c[1] = CycScalar::one(a.d());
        }
        x
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &[CycScalar] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        TruncScalar {
            m: self.m,
            c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TruncScalar {
            m: self.m,
            c: self.c.iter().map(|a| -a).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.c[0].d();
        let mut c = vec![CycScalar::zero(d); self.m + 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(self.m + 1 - i) {
                c[i + j] += &(a * b);
            }
        }
        TruncScalar { m: self.m, c }
    }

    pub fn scale(&self, k: &CycScalar) -> Self {
        TruncScalar {
            m: self.m,
            c: self.c.iter().map(|a| a * k).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(CycScalar::one(self.c[0].d()), self.m);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl fmt::Debug for TruncScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| if k == 0 { format!("{}", x) } else { format!("({})t^{}", x, k) })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Half-open index interval [lo, hi).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Self {
        Window { lo, hi }
    }

    pub fn contains(&self, p: i64) -> bool {
        self.lo <= p && p < self.hi
    }

    pub fn width(&self) -> i64 {
        self.hi - self.lo
    }

    pub fn shrink(&self, by: i64) -> Window {
        Window::new(self.lo + by, self.hi - by)
    }
}

/// Finite window of a Z x Z matrix with finitely many nonzero diagonals.
/// Entries with row or column outside `valid` may be missing contributions
/// from indices beyond the window.
#[derive(Clone, Debug, PartialEq)]
pub struct BandedMat {
    pub window: Window,
    pub valid: Window,
    d: u32,
    m: usize,
    entries: BTreeMap<(i64, i64), TruncScalar>,
}

impl BandedMat {
    pub fn zero(window: Window, d: u32, m: usize) -> Self {
        BandedMat {
            window,
            valid: window,
            d,
            m,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(window: Window, d: u32, m: usize) -> Self {
        let mut x = Self::zero(window, d, m);
        for p in window.lo..window.hi {
            x.add_entry(p, p, &TruncScalar::constant(CycScalar::one(d), m));
        }
        x
    }

    pub fn entries(&self) -> &BTreeMap<(i64, i64), TruncScalar> {
        &self.entries
    }

    pub fn entry(&self, p: i64, q: i64) -> TruncScalar {
        self.entries.get(&(p, q)).cloned().unwrap_or_else(|| TruncScalar::zero(self.d, self.m))
    }

    /// Largest |p - q| over nonzero entries.
    pub fn band(&self) -> i64 {
        self.entries.keys().map(|(p, q)| (p - q).abs()).max().unwrap_or(0)
    }

    /// Set of q - p over nonzero entries.
    pub fn diagonals(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.entries.keys().map(|(p, q)| q - p).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn add_entry(&mut self, p: i64, q: i64, x: &TruncScalar) {
        if !self.window.contains(p) || !self.window.contains(q) || x.is_zero() {
            return;
        }
        let v = match self.entries.remove(&(p, q)) {
            Some(y) => y.add(x),
            None => x.clone(),
        };
        if !v.is_zero() {
            self.entries.insert((p, q), v);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for ((p, q), x) in &o.entries {
            out.add_entry(*p, *q, x);
        }
        out.valid = meet(self.valid, o.valid);
        out
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let mut rows: BTreeMap<i64, Vec<(i64, &TruncScalar)>> = BTreeMap::new();
        for ((p, q), x) in &o.entries {
            rows.entry(*p).or_default().push((*q, x));
        }
        let mut out = Self::zero(self.window, self.d, self.m);
        for ((p, j), x) in &self.entries {
            if let Some(r) = rows.get(j) {
                for (q, y) in r {
                    out.add_entry(*p, *q, &x.mul(y));
                }
            }
        }
        out.valid = meet(self.valid, o.valid).shrink(self.band() + o.band());
        if out.valid.width() <= 0 {
            return Err(Error::WindowTooSmall(format!(
                "bands {} and {} leave no valid indices in {:?}",
                self.band(),
                o.band(),
                self.window
            )));
        }
        Ok(out)
    }

    /// Equality of the entries with row and column in `w`.
    pub fn eq_on(&self, o: &Self, w: Window) -> bool {
        let pick = |b: &Self| -> BTreeMap<(i64, i64), TruncScalar> {
            b.entries
                .iter()
                .filter(|((p, q), _)| w.contains(*p) && w.contains(*q))
                .map(|(k, v)| (*k, v.clone()))
                .collect()
        };
        pick(self) == pick(o)
    }
}

fn meet(a: Window, b: Window) -> Window {
    Window::new(a.lo.max(b.lo), a.hi.min(b.hi))
}

/// Which embedding into the banded matrices.
#[derive(Clone, Debug, PartialEq)]
pub enum Embedding {
    Iota,
    /// phi_a^[m]
    Phi { a: CycScalar, m: usize },
}

impl Embedding {
    fn order(&self) -> usize {
        match self {
            Embedding::Iota => 0,
            Embedding::Phi { m, .. } => *m,
        }
    }

    fn shift(&self, d: u32) -> TruncScalar {
        match self {
            Embedding::Iota => TruncScalar::zero(d, 0),
            Embedding::Phi { a, m } => TruncScalar::param(a, *m),
        }
    }
}

fn needs_t1(p: &CherParams) -> Result<()> {
    if !p.t.is_one() {
        return Err(Error::VariantViolation("the embeddings need t = 1".into()));
    }
    Ok(())
}

fn blocks(n: usize, d: u32, w: Window, s: i64, k: u32) -> impl Iterator<Item = i64> {
    // column blocks b = l d + k meeting the window, with row block b + s
    let n = n as i64;
    let dd = d as i64;
    let lo = (w.lo - s * n).min(w.lo).div_euclid(n) - 1;
    let hi = (w.hi - s * n).max(w.hi).div_euclid(n) + 1;
    (lo..=hi).filter(move |b| b.rem_euclid(dd) == k as i64)
}

/// Image of a matrix over the trigonometric algebra (t = 1).
pub fn embed(x: &MatElem<TrigElem>, e: &Embedding, window: Window) -> Result<BandedMat> {
    let p = x.proto().params().clone();
    needs_t1(&p)?;
    let (n, d) = (x.n(), p.d);
    let m = e.order();
    let sigma = e.shift(d);
    let mut out = BandedMat::zero(window, d, m);
    for (i, j, r) in x.iter() {
        for (s, pw, k, c) in r.idempotent_terms() {
            let band = (s.abs() + 1) * n as i64;
            if band >= window.width() {
                return Err(Error::WindowTooSmall(format!("band {} vs width {}", band, window.width())));
            }
            for b in blocks(n, d, window, s, k) {
                let w = TruncScalar::constant(CycScalar::from_int(d, -b), m).sub(&sigma);
                let val = w.pow(pw).scale(&c);
                out.add_entry((b + s) * n as i64 + i as i64, b * n as i64 + j as i64, &val);
            }
        }
    }
    Ok(out)
}

pub fn iota(x: &MatElem<TrigElem>, window: Window) -> Result<BandedMat> {
    embed(x, &Embedding::Iota, window)
}

/// iota on the rational algebra, through the inclusion into the trigonometric one.
pub fn iota_cher(x: &MatElem<CherElem>, window: Window) -> Result<BandedMat> {
    iota(&to_trig(x), window)
}

pub fn phi_am(x: &MatElem<TrigElem>, a: &CycScalar, m: usize, window: Window) -> Result<BandedMat> {
    embed(x, &Embedding::Phi { a: a.clone(), m }, window)
}

pub fn to_trig(x: &MatElem<CherElem>) -> MatElem<TrigElem> {
    let p = x.proto().params().clone();
    x.map(&TrigElem::zero(&p), poly_to_trig)
}

/// Direct formula for E_ij v^s w^r e_k: column b n + j goes to row
/// (b - s) n + i with factor prod_{p<s} (b - p + a + t + ct_{k-p-1}) (-b - a - t)^r.
pub fn iota_v(
    p: &Arc<CherParams>,
    n: usize,
    (i, j): (usize, usize),
    s: u32,
    r: u32,
    k: i64,
    e: &Embedding,
    window: Window,
) -> Result<BandedMat> {
    needs_t1(p)?;
    let d = p.d;
    let m = e.order();
    let sigma = e.shift(d);
    let band = (s as i64 + 1) * n as i64;
    if band >= window.width() {
        return Err(Error::WindowTooSmall(format!("band {} vs width {}", band, window.width())));
    }
    let k = k.rem_euclid(d as i64) as u32;
    let mut out = BandedMat::zero(window, d, m);
    for b in blocks(n, d, window, -(s as i64), k) {
        let mut f = TruncScalar::constant(CycScalar::one(d), m);
        for q in 0..s as i64 {
            let c = &CycScalar::from_int(d, b - q) + p.ct(k as i64 - q - 1);
            f = f.mul(&TruncScalar::constant(c, m).add(&sigma));
        }
        let w = TruncScalar::constant(CycScalar::from_int(d, -b), m).sub(&sigma);
        let val = f.mul(&w.pow(r));
        out.add_entry((b - s as i64) * n as i64 + i as i64, b * n as i64 + j as i64, &val);
    }
    Ok(out)
}

/// embed(xy) = embed(x) embed(y) on the valid sub-window.
pub fn check_hom_windowed(x: &MatElem<TrigElem>, y: &MatElem<TrigElem>, e: &Embedding, window: Window) -> Result<bool> {
    let xy = x.try_mul(y)?;
    let lhs = embed(&xy, e, window)?;
    let rhs = embed(x, e, window)?.mul(&embed(y, e, window)?)?;
    Ok(lhs.eq_on(&rhs, rhs.valid))
}

/// The loop w -> phi_w^[0](E), split by column class: component k holds the
/// columns in blocks congruent to k mod d. Entries are polynomials in w.
#[derive(Clone, Debug)]
pub struct MonodromicLoop {
    pub n: usize,
    pub d: u32,
    pub window: Window,
    pub components: Vec<BTreeMap<(i64, i64), UPoly>>,
}

impl MonodromicLoop {
    pub fn of(x: &MatElem<TrigElem>, window: Window) -> Result<Self> {
        let p = x.proto().params().clone();
        needs_t1(&p)?;
        let (n, d) = (x.n(), p.d);
        let mut components = vec![BTreeMap::new(); d as usize];
        for (i, j, r) in x.iter() {
            for (s, pw, k, c) in r.idempotent_terms() {
                if (s.abs() + 1) * n as i64 >= window.width() {
                    return Err(Error::WindowTooSmall(format!("u^{} on width {}", s, window.width())));
                }
                for b in blocks(n, d, window, s, k) {
                    let (row, col) = ((b + s) * n as i64 + i as i64, b * n as i64 + j as i64);
                    if !window.contains(row) || !window.contains(col) {
                        continue;
                    }
                    // (-b - w)^pw
                    let val = UPoly::from_ints(d, &[-b, -1]).pow(pw as usize).scale(&c);
                    let comp: &mut BTreeMap<(i64, i64), UPoly> = &mut components[k as usize];
                    let old = comp.remove(&(row, col)).unwrap_or_else(|| UPoly::zero(d));
                    let new = old.add(&val);
                    if !new.is_zero() {
                        comp.insert((row, col), new);
                    }
                }
            }
        }
        Ok(MonodromicLoop {
            n,
            d,
            window,
            components,
        })
    }

    /// l_k(w - d) = theta^d l_k(w), where theta^d moves entry (p, q) to (p + nd, q + nd).
    pub fn shift_law_holds(&self) -> bool {
        let sh = (self.n * self.d as usize) as i64;
        let minus_d = CycScalar::from_int(self.d, -(self.d as i64));
        self.components.iter().all(|comp| {
            let inner = |p: i64| self.window.contains(p) && self.window.contains(p - sh);
            let keys: std::collections::BTreeSet<(i64, i64)> = comp
                .keys()
                .flat_map(|&(p, q)| [(p, q), (p + sh, q + sh)])
                .filter(|&(p, q)| inner(p) && inner(q))
                .collect();
            keys.into_iter().all(|(p, q)| {
                let zero = UPoly::zero(self.d);
                let shifted = comp.get(&(p, q)).unwrap_or(&zero).shift(&minus_d);
                let moved = comp.get(&(p - sh, q - sh)).unwrap_or(&zero);
                &shifted == moved
            })
        })
    }

    /// Component k has columns only in blocks congruent to k.
    pub fn column_classes_hold(&self) -> bool {
        let n = self.n as i64;
        self.components.iter().enumerate().all(|(k, comp)| {
            comp.keys()
                .all(|(_, q)| q.div_euclid(n).rem_euclid(self.d as i64) == k as i64)
        })
    }
}

/// Builds the loop of E, checks the shift law and that E e_k lands in component k.
pub fn monodromy_check(x: &MatElem<TrigElem>, window: Window) -> Result<bool> {
    let lp = MonodromicLoop::of(x, window)?;
    if !lp.shift_law_holds() || !lp.column_classes_hold() {
        return Ok(false);
    }
    let p = x.proto().params().clone();
    for k in 0..lp.d {
        let ek = MatElem::identity(x.n(), TrigElem::e(&p, k as i64));
        let part = MonodromicLoop::of(&x.try_mul(&ek)?, window)?;
        for (kk, comp) in part.components.iter().enumerate() {
            let expect = if kk == k as usize { &lp.components[kk] } else { &BTreeMap::new() };
            if comp != expect {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use crate::sample;
    use rand::Rng;

    fn weyl(d: u32) -> Arc<CherParams> {
        Arc::new(CherParams::weyl(d))
    }

    fn tm(p: &Arc<CherParams>, n: usize, i: usize, j: usize, s: i64, r: u32, k: i64) -> MatElem<TrigElem> {
        let x = TrigElem::monomial(p, s, r, 0, CycScalar::one(p.d)).mul(&TrigElem::e(p, k));
        MatElem::unit(n, i, j, x)
    }

    fn one(d: u32) -> TruncScalar {
        TruncScalar::constant(CycScalar::one(d), 0)
    }

    #[test]
    fn iota_examples() {
        let p = weyl(2);
        let w = Window::new(-6, 6);
        let x = iota(&tm(&p, 1, 0, 0, 1, 0, 0), w).unwrap();
        for ((r, c), v) in x.entries() {
            assert_eq!(c.rem_euclid(2), 0);
            assert_eq!(*r, c + 1);
            assert_eq!(*v, one(2));
        }
        assert_eq!(x.entries().len(), 6);
        let x = iota(&tm(&p, 1, 0, 0, 0, 1, 1), w).unwrap();
        for l in -3..3i64 {
            let b = 2 * l + 1;
            assert_eq!(x.entry(b, b), TruncScalar::constant(CycScalar::from_int(2, -b), 0));
        }
        let id = iota(&MatElem::identity(2, TrigElem::scalar(&p, CycScalar::one(2))), w).unwrap();
        assert_eq!(id, BandedMat::identity(w, 2, 0));
    }

    #[test]
    fn iota_v_matches_substitution() {
        let c = vec![CycScalar::from_frac(3, 1, 2), CycScalar::from_frac(3, -2, 3)];
        let p = Arc::new(CherParams::new(3, CycScalar::one(3), c).unwrap());
        let w = Window::new(-20, 20);
        for e in [Embedding::Iota, Embedding::Phi { a: CycScalar::from_frac(3, 1, 3), m: 2 }] {
            for s in 0..=2u32 {
                for r in 0..=2u32 {
                    for k in 0..3 {
                        let direct = iota_v(&p, 2, (0, 1), s, r, k, &e, w).unwrap();
                        let ch = CherElem::monomial(&p, 0, s, 0, CycScalar::one(3));
                        let t = poly_to_trig(&ch)
                            .mul(&TrigElem::monomial(&p, 0, r, 0, CycScalar::one(3)))
                            .mul(&TrigElem::e(&p, k));
                        let via = embed(&MatElem::unit(2, 0, 1, t), &e, w).unwrap();
                        assert!(direct.eq_on(&via, w.shrink(2 * s as i64 + 2)), "s={} r={} k={}", s, r, k);
                    }
                }
            }
        }
        // c = 0, d = 1, n = 1: v has entry b on (b - 1, b)
        let p1 = weyl(1);
        let v = iota_v(&p1, 1, (0, 0), 1, 0, 0, &Embedding::Iota, Window::new(-3, 3)).unwrap();
        assert_eq!(v.entry(1, 2), TruncScalar::constant(CycScalar::from_int(1, 2), 0));
    }

    #[test]
    fn phi_reductions() {
        let p = weyl(2);
        let w = Window::new(-8, 8);
        let x = tm(&p, 1, 0, 0, 1, 2, 1);
        let zero = CycScalar::zero(2);
        assert_eq!(phi_am(&x, &zero, 0, w).unwrap(), iota(&x, w).unwrap());
        let a = CycScalar::from_frac(2, 1, 2);
        let y = phi_am(&tm(&p, 1, 0, 0, 0, 1, 0), &a, 1, w).unwrap();
        let e = y.entry(2, 2);
        assert_eq!(e.coeffs()[0], &CycScalar::from_int(2, -2) - &a);
        assert_eq!(e.coeffs()[1], CycScalar::from_int(2, -1));
    }

    #[test]
    fn hom_random() {
        let mut rng = sample::rng(5);
        for d in 1..=3u32 {
            let p = weyl(d);
            for _ in 0..6 {
                let n = rng.gen_range(1..=2usize);
                let gen = |rng: &mut sample::SampleRng| {
                    let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
                    tm(&p, n, i, j, rng.gen_range(-2..=2), rng.gen_range(0..=2), rng.gen_range(0..d as i64))
                };
                let (x, y) = (gen(&mut rng), gen(&mut rng));
                let w = Window::new(-40, 40);
                assert!(check_hom_windowed(&x, &y, &Embedding::Iota, w).unwrap());
                let e = Embedding::Phi { a: CycScalar::from_frac(d, 2, 7), m: 2 };
                assert!(check_hom_windowed(&x, &y, &e, w).unwrap());
            }
        }
    }

    #[test]
    fn monodromy() {
        let p = weyl(2);
        let w = Window::new(-10, 10);
        assert!(monodromy_check(&tm(&p, 1, 0, 0, 0, 1, 0), w).unwrap());
        assert!(monodromy_check(&MatElem::identity(2, TrigElem::scalar(&p, CycScalar::one(2))), w).unwrap());
        assert!(monodromy_check(&tm(&p, 2, 0, 1, -1, 2, 1), w).unwrap());
    }

    #[test]
    fn small_window() {
        let p = weyl(2);
        assert!(matches!(iota(&tm(&p, 2, 0, 0, 3, 0, 0), Window::new(0, 4)), Err(Error::WindowTooSmall(_))));
    }

    #[test]
    fn phi_respects_grading() {
        use crate::matlie::{grade, Grade};
        let p = weyl(3);
        let x = tm(&p, 2, 0, 1, 1, 2, 2);
        let Grade::Homogeneous(g) = grade(&x) else { panic!() };
        let y = phi_am(&x, &CycScalar::from_int(3, 1), 1, Window::new(-12, 12)).unwrap();
        assert_eq!(y.diagonals(), vec![g]);
    }
}

//! Highest weights for gl_n of the rank-one Cherednik algebra at t = 1:
//! characteristic polynomials, the highly degenerate condition, quasi-finiteness
//! through exponential generating series, and the integrability criteria for
//! pseudo-highest weights.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cherednik::{omega, poly_to_trig, CherElem, CherParams};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, solve};
use crate::mat::MatElem;
use crate::ring::Ring;
use crate::scalar::{q, CycScalar, Q};
use crate::upoly::UPoly;

/// lambda(E_ii w^r e_l) = d_{i,l,r}, known for r <= rmax. Missing entries in
/// range are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightData {
    pub n: usize,
    pub d: u32,
    pub rmax: usize,
    values: BTreeMap<(usize, u32, usize), CycScalar>,
}

impl WeightData {
    pub fn zero(n: usize, d: u32, rmax: usize) -> Self {
        WeightData {
            n,
            d,
            rmax,
            values: BTreeMap::new(),
        }
    }

    /// i is 1-based.
    pub fn set(&mut self, i: usize, l: u32, r: usize, v: CycScalar) -> Result<()> {
        if i == 0 || i > self.n || l >= self.d || r > self.rmax {
            return Err(Error::RangeError(format!("d[{},{},{}] outside n={} d={} rmax={}", i, l, r, self.n, self.d, self.rmax)));
        }
        if v.is_zero() {
            self.values.remove(&(i, l, r));
        } else {
            self.values.insert((i, l, r), v);
        }
        Ok(())
    }

    /// i is 1-based; l is taken mod d.
    pub fn get(&self, i: usize, l: i64, r: usize) -> Result<CycScalar> {
        if r > self.rmax {
            return Err(Error::InsufficientOrder { need: r, have: self.rmax });
        }
        let l = l.rem_euclid(self.d as i64) as u32;
        Ok(self.values.get(&(i, l, r)).cloned().unwrap_or_else(|| CycScalar::zero(self.d)))
    }

    pub fn values(&self) -> &BTreeMap<(usize, u32, usize), CycScalar> {
        &self.values
    }

    /// D_{i,l} as an exponential generating series up to rmax.
    pub fn series(&self, i: usize, l: i64) -> FormalSeries {
        FormalSeries::new((0..=self.rmax).map(|r| self.get(i, l, r).expect("in range")).collect())
    }

    fn eval_diag(&self, i: usize, x: &CherElem) -> Result<CycScalar> {
        let mut acc = CycScalar::zero(self.d);
        for (s, r, k, c) in poly_to_trig(x).idempotent_terms() {
            if s != 0 {
                return Err(Error::NotInAlgebra(format!("u^{} term in a degree zero entry", s)));
            }
            acc += &(&c * &self.get(i + 1, k as i64, r as usize)?);
        }
        Ok(acc)
    }

    /// lambda on a diagonal degree zero matrix (0-based matrix indices).
    pub fn eval(&self, m: &MatElem<CherElem>) -> Result<CycScalar> {
        let mut acc = CycScalar::zero(self.d);
        for (i, j, x) in m.iter() {
            if i != j {
                return Err(Error::NotInAlgebra(format!("off-diagonal entry ({}, {})", i + 1, j + 1)));
            }
            acc += &self.eval_diag(i, x)?;
        }
        Ok(acc)
    }
}

/// b^{i,l}(w) for 1 <= i <= n, 0 <= l < d; the zero polynomial marks a zero ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPolySet {
    pub n: usize,
    pub d: u32,
    polys: BTreeMap<(usize, u32), UPoly>,
}

impl CharPolySet {
    /// All b = 1.
    pub fn ones(n: usize, d: u32) -> Self {
        let mut polys = BTreeMap::new();
        for i in 1..=n {
            for l in 0..d {
                polys.insert((i, l), UPoly::one(d));
            }
        }
        CharPolySet { n, d, polys }
    }

    pub fn set(&mut self, i: usize, l: u32, b: UPoly) -> Result<()> {
        if i == 0 || i > self.n || l >= self.d {
            return Err(Error::RangeError(format!("b[{},{}] outside n={} d={}", i, l, self.n, self.d)));
        }
        let b = if b.is_zero() { b } else { b.monic()? };
        self.polys.insert((i, l), b);
        Ok(())
    }

    /// i is 1-based and taken cyclically (b^{0,l} = b^{n,l}); l mod d.
    pub fn get(&self, i: usize, l: i64) -> &UPoly {
        let i = if i == 0 { self.n } else { i };
        &self.polys[&(i, l.rem_euclid(self.d as i64) as u32)]
    }

    pub fn max_degree(&self) -> usize {
        self.polys.values().filter_map(|p| p.degree()).max().unwrap_or(0)
    }
}

/// One step of the divisibility recursion: b_{k-1}^{i,l} from
/// b_k^{i-1,l}(w) b_{-1}^{i,l+r}(w - r).
#[derive(Clone, Debug)]
pub struct DivisionStep {
    pub k: i64,
    pub i: usize,
    pub l: u32,
    pub r: i64,
    pub product: UPoly,
    pub b: UPoly,
    pub divides: bool,
}

#[derive(Clone, Debug)]
pub struct NondegReport {
    pub nondegenerate: bool,
    pub steps: Vec<DivisionStep>,
}

/// Nonzero check on the nd polynomials b_{-1}^{i,l}, plus the recursion down
/// to level -depth. Each b_{k-1} is taken to be the monic generator of the
/// ideal spanned by the displayed product (the parabolic generated by the
/// degree -1 part).
pub fn nondegenerate_check(b: &CharPolySet, depth: i64) -> Result<NondegReport> {
    let (n, d) = (b.n, b.d);
    let nondegenerate = b.polys.values().all(|p| !p.is_zero());
    let mut level: BTreeMap<(usize, u32), UPoly> = b.polys.clone();
    let mut steps = Vec::new();
    let ni = n as i64;
    for k in (2..=depth).map(|x| -x + 1) {
        let mut next = BTreeMap::new();
        for i in 1..=n {
            for l in 0..d {
                // row i-1 (cyclic) at level k: j - (i-1) - r n = k
                let prev = if i == 1 { n } else { i - 1 };
                let r = if i == 1 {
                    // k = -(r+1) n + j
                    (-k + ni - 1).div_euclid(ni) - 1
                } else {
                    let t = prev as i64 + k;
                    // j = t + r n in 1..=n
                    -((t - 1).div_euclid(ni))
                };
                let bk = &level[&(prev, l)];
                let b1 = b.get(i, l as i64 + r).shift_int(-r);
                let product = bk.mul(&b1);
                let bn = if product.is_zero() { product.clone() } else { product.monic()? };
                let divides = bn.divides(&product);
                steps.push(DivisionStep {
                    k: k - 1,
                    i,
                    l,
                    r,
                    product,
                    b: bn.clone(),
                    divides,
                });
                next.insert((i, l), bn);
            }
        }
        level = next;
    }
    Ok(NondegReport { nondegenerate, steps })
}

/// p(w + shift) as an element of the Cherednik algebra.
fn poly_in_omega(p: &Arc<CherParams>, f: &UPoly, shift: i64) -> CherElem {
    let w = omega(p).add(&CherElem::scalar(p, CycScalar::from_int(p.d, shift)));
    let mut acc = CherElem::zero(p);
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(&w).add(&CherElem::scalar(p, c.clone()));
    }
    acc
}

fn monomial_poly(d: u32, r: usize) -> UPoly {
    let mut c = vec![CycScalar::zero(d); r + 1];
    c[r] = CycScalar::one(d);
    UPoly::from_coeffs(d, c)
}

/// Spanning vectors of gl_n(H)[0, b] with w-power up to rmax: first the
/// H_i w^r b^{i+1,l}(w) e_l, then the E_11 uv (...) e_{l+1} - E_nn vu (...) e_l.
pub fn derived_mid_basis(p: &Arc<CherParams>, b: &CharPolySet, n: usize, rmax: usize) -> Result<Vec<MatElem<CherElem>>> {
    if !p.t.is_one() {
        return Err(Error::VariantViolation("needs t = 1".into()));
    }
    let d = p.d;
    let u = CherElem::u(p);
    let v = CherElem::v(p);
    let mut out = Vec::new();
    for l in 0..d as i64 {
        for i in 1..n {
            for r in 0..=rmax {
                let f = monomial_poly(d, r).mul(b.get(i + 1, l));
                let x = poly_in_omega(p, &f, 0).mul(&CherElem::e(p, l));
                let h = MatElem::unit(n, i - 1, i - 1, x.clone()).sub(&MatElem::unit(n, i, i, x));
                out.push(h);
            }
        }
    }
    for l in 0..d as i64 {
        for r in 0..=rmax {
            let f = monomial_poly(d, r).mul(b.get(1, l));
            let top = u.mul(&v).mul(&poly_in_omega(p, &f, 1)).mul(&CherElem::e(p, l + 1));
            let bottom = v.mul(&u).mul(&poly_in_omega(p, &f, 0)).mul(&CherElem::e(p, l));
            out.push(MatElem::unit(n, 0, 0, top).sub(&MatElem::unit(n, n - 1, n - 1, bottom)));
        }
    }
    Ok(out)
}

/// The bracket displays behind the spanning set, evaluated exactly; returns
/// (description, holds) per instance.
pub fn derived_mid_identities(p: &Arc<CherParams>, b: &CharPolySet, n: usize, rmax: usize) -> Vec<(String, bool)> {
    let d = p.d as i64;
    let u = CherElem::u(p);
    let v = CherElem::v(p);
    let e = |l: i64| CherElem::e(p, l);
    let zero = MatElem::zero(n, &CherElem::zero(p));
    let mut out = Vec::new();
    for r in 0..=rmax {
        let wr = monomial_poly(p.d, r);
        for l1 in 0..d {
            for l2 in 0..d {
                for i in 1..n {
                    let bi = b.get(i + 1, l2);
                    let x = MatElem::unit(n, i - 1, i, poly_in_omega(p, &wr, 0).mul(&e(l1)));
                    let y = MatElem::unit(n, i, i - 1, poly_in_omega(p, bi, 0).mul(&e(l2)));
                    let lhs = x.bracket(&y).expect("same shape");
                    let rhs = if l1 == l2 {
                        let z = poly_in_omega(p, &wr.mul(bi), 0).mul(&e(l1));
                        MatElem::unit(n, i - 1, i - 1, z.clone()).sub(&MatElem::unit(n, i, i, z))
                    } else {
                        zero.clone()
                    };
                    out.push((format!("[E_{{{},{}}} w^{} e_{}, E_{{{},{}}} b e_{}]", i, i + 1, r, l1, i + 1, i, l2), lhs == rhs));
                    let z1 = MatElem::unit(n, 0, n - 1, u.mul(&poly_in_omega(p, b.get(1, l2), 0)).mul(&e(l2)));
                    let c1 = x.bracket(&z1).expect("same shape").is_zero();
                    let c2 = MatElem::unit(n, i, i - 1, poly_in_omega(p, bi, 0).mul(&e(l1)))
                        .bracket(&MatElem::unit(n, n - 1, 0, v.mul(&poly_in_omega(p, &wr, 0)).mul(&e(l2))))
                        .expect("same shape")
                        .is_zero();
                    out.push((format!("zero brackets i={} r={} l={},{}", i, r, l1, l2), c1 && c2));
                }
                let b1 = b.get(1, l1);
                let x = MatElem::unit(n, 0, n - 1, u.mul(&poly_in_omega(p, b1, 0)).mul(&e(l1)));
                let y = MatElem::unit(n, n - 1, 0, v.mul(&poly_in_omega(p, &wr, 1)).mul(&e(l2)));
                let lhs = x.bracket(&y).expect("same shape");
                let rhs = if (l1 + 1 - l2).rem_euclid(d) == 0 {
                    let f = wr.mul(b1);
                    let top = u.mul(&v).mul(&poly_in_omega(p, &f, 1)).mul(&e(l2));
                    let bottom = v.mul(&u).mul(&poly_in_omega(p, &f, 0)).mul(&e(l1));
                    MatElem::unit(n, 0, 0, top).sub(&MatElem::unit(n, n - 1, n - 1, bottom))
                } else {
                    zero.clone()
                };
                out.push((format!("[E_{{1,{}}} u b e_{}, E_{{{},1}} v (w+1)^{} e_{}]", n, l1, n, r, l2), lhs == rhs));
            }
        }
    }
    out
}

/// lambda vanishes on every spanning vector of gl_n(H)[0, b] with w-power <= rmax.
pub fn highly_degenerate_check(p: &Arc<CherParams>, lam: &WeightData, b: &CharPolySet, rmax: usize) -> Result<bool> {
    let need = rmax + b.max_degree() + 1;
    if lam.rmax < need {
        return Err(Error::InsufficientOrder { need, have: lam.rmax });
    }
    for m in derived_mid_basis(p, b, lam.n, rmax)? {
        if !lam.eval(&m)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Basis of the weights with order `order` that vanish on gl_n(H)[0, b] up to
/// w-power order - max deg b - 1.
pub fn degenerate_weights(p: &Arc<CherParams>, n: usize, b: &CharPolySet, order: usize) -> Result<Vec<WeightData>> {
    let d = p.d;
    let rmax = order
        .checked_sub(b.max_degree() + 1)
        .ok_or(Error::InsufficientOrder { need: b.max_degree() + 1, have: order })?;
    let mut vars = Vec::new();
    for i in 1..=n {
        for l in 0..d {
            for r in 0..=order {
                vars.push((i, l, r));
            }
        }
    }
    let basis = derived_mid_basis(p, b, n, rmax)?;
    let mut rows = Vec::new();
    for m in &basis {
        let row: Result<Vec<CycScalar>> = vars
            .iter()
            .map(|&(i, l, r)| {
                let mut w = WeightData::zero(n, d, order);
                w.set(i, l, r, CycScalar::one(d))?;
                w.eval(m)
            })
            .collect();
        rows.push(row?);
    }
    let ker = nullspace(&rows, vars.len(), &CycScalar::zero(d), &CycScalar::one(d));
    ker.into_iter()
        .map(|v| {
            let mut w = WeightData::zero(n, d, order);
            for (&(i, l, r), c) in vars.iter().zip(v) {
                w.set(i, l, r, c)?;
            }
            Ok(w)
        })
        .collect()
}

/// Truncated exponential generating series: coefficient r stands for c_r z^r / r!.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalSeries {
    c: Vec<CycScalar>,
}

fn binom(n: usize, k: usize) -> Q {
    let mut x = q(1);
    for i in 0..k {
        x = x * q((n - i) as i64) / q(i as i64 + 1);
    }
    x
}

fn factorial(n: usize) -> Q {
    (1..=n).fold(q(1), |a, k| a * q(k as i64))
}

impl FormalSeries {
    pub fn new(c: Vec<CycScalar>) -> Self {
        assert!(!c.is_empty(), "a series keeps at least one coefficient");
        FormalSeries { c }
    }

    pub fn zero(d: u32, order: usize) -> Self {
        Self::new(vec![CycScalar::zero(d); order + 1])
    }

    /// e^{a z}
    pub fn exp(a: &CycScalar, order: usize) -> Self {
        let mut c = vec![CycScalar::one(a.d())];
        for _ in 0..order {
            let next = c.last().unwrap() * a;
            c.push(next);
        }
        Self::new(c)
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[CycScalar] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    fn d(&self) -> u32 {
        self.c[0].d()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.c[..=order.min(self.order())].to_vec())
    }

    pub fn add(&self, o: &Self) -> Self {
        let k = self.order().min(o.order());
        Self::new((0..=k).map(|r| &self.c[r] + &o.c[r]).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.c.iter().map(|x| -x).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &CycScalar) -> Self {
        Self::new(self.c.iter().map(|x| x * k).collect())
    }

    /// Product of the functions: binomial convolution of coefficients.
    pub fn mul(&self, o: &Self) -> Self {
        let k = self.order().min(o.order());
        Self::new(
            (0..=k)
                .map(|r| {
                    let mut acc = CycScalar::zero(self.d());
                    for j in 0..=r {
                        acc += &(&self.c[j] * &o.c[r - j]).scale(&binom(r, j));
                    }
                    acc
                })
                .collect(),
        )
    }

    /// Derivative; the order drops by one.
    pub fn derivative(&self) -> Self {
        if self.c.len() == 1 {
            return Self::zero(self.d(), 0);
        }
        Self::new(self.c[1..].to_vec())
    }

    /// Ordinary power series coefficients c_r / r!.
    pub fn to_ordinary(&self) -> Vec<CycScalar> {
        self.c.iter().enumerate().map(|(r, x)| x.scale(&(q(1) / factorial(r)))).collect()
    }

    pub fn from_ordinary(a: &[CycScalar]) -> Self {
        Self::new(a.iter().enumerate().map(|(r, x)| x.scale(&factorial(r))).collect())
    }
}

/// Minimal recurrence c_{r+K} = sum_{j<K} a_j c_{r+j}.
#[derive(Clone, Debug, PartialEq)]
pub struct Recurrence {
    pub order: usize,
    pub coeffs: Vec<CycScalar>,
}

impl Recurrence {
    /// x^K - sum a_j x^j
    pub fn char_poly(&self, d: u32) -> UPoly {
        let mut c: Vec<CycScalar> = self.coeffs.iter().map(|a| -a).collect();
        c.push(CycScalar::one(d));
        UPoly::from_coeffs(d, c)
    }

    pub fn annihilates(&self, seq: &[CycScalar]) -> bool {
        let k = self.order;
        (0..seq.len().saturating_sub(k)).all(|r| {
            let mut acc = seq[r + k].clone();
            for j in 0..k {
                acc -= &(&self.coeffs[j] * &seq[r + j]);
            }
            acc.is_zero()
        })
    }
}

/// Finds the smallest K <= max_order with a recurrence fitting all of seq.
/// Ok(None) is a rejection.
pub fn quasipoly_detect(seq: &[CycScalar], max_order: usize) -> Result<Option<Recurrence>> {
    let need = 2 * max_order + 4;
    if seq.len() < need {
        return Err(Error::InsufficientData(format!("{} coefficients, need {}", seq.len(), need)));
    }
    let d = seq[0].d();
    let zero = CycScalar::zero(d);
    for k in 0..=max_order {
        let rows: Vec<Vec<CycScalar>> = (0..seq.len() - k).map(|r| seq[r..r + k].to_vec()).collect();
        let rhs: Vec<CycScalar> = (0..seq.len() - k).map(|r| seq[r + k].clone()).collect();
        if k == 0 {
            if rhs.iter().all(|x| x.is_zero()) {
                return Ok(Some(Recurrence { order: 0, coeffs: vec![] }));
            }
            continue;
        }
        if let Some(a) = solve(&rows, &rhs, &zero) {
            return Ok(Some(Recurrence { order: k, coeffs: a }));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub struct QfinReport {
    pub quasi_finite: bool,
    /// ((i, l), certificate) where i = 1 is (1 - e^{dz}) D_{1,l} and
    /// i >= 2 is D_{i,l} - D_{1,l}.
    pub certificates: Vec<((usize, u32), Option<Recurrence>)>,
}

/// Checks that (1 - e^{dz}) D_{1,l} and D_{i,l} - D_{1,l} are quasipolynomials
/// up to recurrence order max_order, from the first `order + 1` coefficients.
pub fn qfin_check(lam: &WeightData, order: usize, max_order: usize) -> Result<QfinReport> {
    if lam.rmax < order {
        return Err(Error::InsufficientData(format!("weight known to order {}, need {}", lam.rmax, order)));
    }
    let d = lam.d;
    let one_minus = FormalSeries::exp(&CycScalar::zero(d), order).sub(&FormalSeries::exp(&CycScalar::from_int(d, d as i64), order));
    let mut certificates = Vec::new();
    for l in 0..d {
        let d1 = lam.series(1, l as i64).truncate(order);
        for i in 1..=lam.n {
            let phi = if i == 1 {
                one_minus.mul(&d1)
            } else {
                lam.series(i, l as i64).truncate(order).sub(&d1)
            };
            certificates.push(((i, l), quasipoly_detect(phi.coeffs(), max_order)?));
        }
    }
    Ok(QfinReport {
        quasi_finite: certificates.iter().all(|(_, c)| c.is_some()),
        certificates,
    })
}

/// F_{i,l} from the coefficient formula, checked against the differential
/// identity; needs lam to order N + 1.
pub fn f_series(p: &CherParams, lam: &WeightData, i: usize, l: i64, order: usize) -> Result<FormalSeries> {
    let d = lam.d;
    if lam.rmax < order + 1 {
        return Err(Error::InsufficientData(format!("weight known to order {}, need {}", lam.rmax, order + 1)));
    }
    if i >= 2 {
        let c = (0..=order)
            .map(|r| Ok(&lam.get(i, l, r)? - &lam.get(i - 1, l, r)?))
            .collect::<Result<Vec<_>>>()?;
        return Ok(FormalSeries::new(c));
    }
    let n = lam.n;
    let ct1 = p.ct(l) + &CycScalar::one(d);
    let mut c = Vec::new();
    for r in 0..=order {
        let mut x = &lam.get(n, l, r + 1)? - &(&ct1 * &lam.get(n, l, r)?);
        for j in 0..=r + 1 {
            x -= &lam.get(1, l + 1, j)?.scale(&binom(r + 1, j));
        }
        for j in 0..=r {
            x += &(&ct1 * &lam.get(1, l + 1, j)?).scale(&binom(r, j));
        }
        c.push(x);
    }
    let coef = FormalSeries::new(c);
    // D'_n - (ct+1) D_n - (e^z D_1)' + (ct+1) e^z D_1
    let dn = lam.series(n, l);
    let ez_d1 = FormalSeries::exp(&CycScalar::one(d), lam.rmax).mul(&lam.series(1, l + 1));
    let diff = dn
        .derivative()
        .sub(&dn.scale(&ct1))
        .sub(&ez_d1.derivative())
        .add(&ez_d1.scale(&ct1))
        .truncate(order);
    if diff != coef {
        return Err(Error::SeriesMismatch { i, j: l.rem_euclid(d as i64) as usize, r: order as i64 });
    }
    Ok(coef)
}

/// One factor of a tensor product: truncation m, evaluation point a, and
/// labels lambda_k^{(p)} = lam(E_kk t^p), finitely supported.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorFactor {
    pub m: usize,
    pub a: CycScalar,
    pub labels: BTreeMap<(i64, usize), CycScalar>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TensorLabels {
    pub factors: Vec<TensorFactor>,
}

impl TensorFactor {
    fn label(&self, k: i64, p: usize) -> Option<&CycScalar> {
        self.labels.get(&(k, p))
    }

    /// h_k^{(p)} = lambda_k^{(p)} - lambda_{k+1}^{(p)}
    fn h(&self, k: i64, p: usize, d: u32) -> CycScalar {
        let z = CycScalar::zero(d);
        self.label(k, p).unwrap_or(&z) - self.label(k + 1, p).unwrap_or(&z)
    }

    fn support(&self) -> (i64, i64) {
        let lo = self.labels.keys().map(|k| k.0).min().unwrap_or(0);
        let hi = self.labels.keys().map(|k| k.0).max().unwrap_or(0);
        (lo, hi)
    }
}

/// Ordinary power series of e^{c z} (-z)^p / p! up to `order`.
fn exp_poly(c: &CycScalar, p: usize, order: usize) -> Vec<CycScalar> {
    let d = c.d();
    let e = FormalSeries::exp(c, order).to_ordinary();
    let mut out = vec![CycScalar::zero(d); order + 1];
    let f = if p % 2 == 0 { q(1) } else { q(-1) } / factorial(p);
    for r in 0..=order {
        if r >= p {
            out[r] = e[r - p].scale(&f);
        }
    }
    out
}

fn ord_add(a: &mut [CycScalar], b: &[CycScalar], k: &CycScalar) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += &(y * k);
    }
}

/// D_{i,j,k} of one factor: both closed forms (sum over labels of
/// (-z)^p/p! e^{-(a+ld+k)z}, and (1 - e^{dz})^{-1} times the sum over h), compared
/// to `order`; returns the exponential generating series.
pub fn tensor_factor_series(f: &TensorFactor, n: usize, d: u32, i: usize, k: u32, order: usize) -> Result<FormalSeries> {
    let (lo, hi) = f.support();
    let nn = n as i64;
    let dd = d as i64;
    let zero = CycScalar::zero(d);
    // blocks l with (ld+k)n + i - 1 in a range that covers the support
    let lmin = (lo - (i as i64 - 1) - dd * nn).div_euclid(dd * nn) - 1;
    let lmax = (hi - (i as i64 - 1)).div_euclid(dd * nn) + 1;
    let expo = |l: i64| -(&f.a + &CycScalar::from_int(d, l * dd + k as i64));
    let mut first = vec![zero.clone(); order + 2];
    let mut second = vec![zero.clone(); order + 2];
    for l in lmin..=lmax {
        let base = (l * dd + k as i64) * nn + i as i64 - 1;
        for p in 0..=f.m {
            if let Some(lam) = f.label(base, p) {
                ord_add(&mut first, &exp_poly(&expo(l), p, order + 1), lam);
            }
            let mut g = zero.clone();
            for qd in 0..dd * nn {
                g += &f.h(base + qd, p, d);
            }
            if !g.is_zero() {
                ord_add(&mut second, &exp_poly(&expo(l), p, order + 1), &g);
            }
        }
    }
    // second = (1 - e^{dz}) D: divide by (1 - e^{dz}) = -dz (1 + dz/2 + ...)
    if !second[0].is_zero() {
        return Err(Error::SeriesMismatch { i, j: k as usize, r: 0 });
    }
    let den: Vec<CycScalar> = FormalSeries::exp(&CycScalar::from_int(d, dd), order + 1)
        .to_ordinary()
        .iter()
        .skip(1)
        .map(|x| -x)
        .collect();
    let num: Vec<CycScalar> = second[1..].to_vec();
    let inv0 = den[0].inv()?;
    let mut quo: Vec<CycScalar> = Vec::new();
    for r in 0..=order {
        let mut x = num[r].clone();
        for j in 0..r {
            x -= &(&quo[j] * &den[r - j]);
        }
        quo.push(&x * &inv0);
    }
    let first = &first[..=order];
    if let Some(r) = (0..=order).find(|&r| first[r] != quo[r]) {
        return Err(Error::SeriesMismatch { i, j: k as usize, r: r as i64 });
    }
    Ok(FormalSeries::from_ordinary(first))
}

/// D_{i,k} of the tensor product: the sum over factors.
pub fn tensor_d_series(t: &TensorLabels, n: usize, d: u32, i: usize, k: u32, order: usize) -> Result<FormalSeries> {
    let mut acc = FormalSeries::zero(d, order);
    for f in &t.factors {
        acc = acc.add(&tensor_factor_series(f, n, d, i, k, order)?);
    }
    Ok(acc)
}

/// The weight d_{i,l,r} of the tensor product up to `order`.
pub fn tensor_weight(t: &TensorLabels, n: usize, d: u32, order: usize) -> Result<WeightData> {
    let mut w = WeightData::zero(n, d, order);
    for i in 1..=n {
        for l in 0..d {
            let s = tensor_d_series(t, n, d, i, l, order)?;
            for (r, c) in s.coeffs().iter().enumerate() {
                w.set(i, l, r, c.clone())?;
            }
        }
    }
    Ok(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntegrableCase {
    /// Pseudo-weights over A or B: r in Z.
    AB,
    /// Over C: r >= 1 when i = 0.
    C,
}

/// lambda_{i,j,r} for 0 <= i < n, 0 <= j < d; absent entries are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoWeight {
    pub n: usize,
    pub d: u32,
    pub values: BTreeMap<(usize, u32, i64), CycScalar>,
}

impl PseudoWeight {
    pub fn zero(n: usize, d: u32) -> Self {
        PseudoWeight {
            n,
            d,
            values: BTreeMap::new(),
        }
    }

    pub fn get(&self, i: usize, j: u32, r: i64) -> CycScalar {
        self.values.get(&(i, j, r)).cloned().unwrap_or_else(|| CycScalar::zero(self.d))
    }
}

/// Power series coefficients of f/g up to `order` (g(0) != 0).
fn series_div(f: &[CycScalar], g: &[CycScalar], order: usize, d: u32) -> Result<Vec<CycScalar>> {
    let z = CycScalar::zero(d);
    let at = |v: &[CycScalar], k: usize| v.get(k).cloned().unwrap_or_else(|| z.clone());
    let inv0 = at(g, 0).inv()?;
    let mut out: Vec<CycScalar> = Vec::new();
    for r in 0..=order {
        let mut x = at(f, r);
        for j in 0..r {
            x -= &(&out[j] * &at(g, r - j));
        }
        out.push(&x * &inv0);
    }
    Ok(out)
}

/// z^m P(1/z) for P of degree m.
fn reversed(p: &UPoly) -> Vec<CycScalar> {
    p.coeffs().iter().rev().cloned().collect()
}

/// Monic polynomial of degree m whose roots have the given power sums
/// s_1..s_m (Newton's identities).
fn from_power_sums(s: &[CycScalar], m: usize, d: u32) -> UPoly {
    let mut e = vec![CycScalar::one(d)];
    for k in 1..=m {
        let mut acc = CycScalar::zero(d);
        for i in 1..=k {
            let t = &e[k - i] * &s[i - 1];
            if i % 2 == 1 {
                acc += &t;
            } else {
                acc -= &t;
            }
        }
        e.push(acc.scale(&(q(1) / q(k as i64))));
    }
    // x^m - e1 x^{m-1} + e2 x^{m-2} - ...
    let mut c = vec![CycScalar::zero(d); m + 1];
    for (k, ek) in e.iter().enumerate() {
        c[m - k] = if k % 2 == 0 { ek.clone() } else { -ek };
    }
    UPoly::from_coeffs(d, c)
}

fn nonneg_int(x: &CycScalar) -> Option<usize> {
    let v = x.as_q()?;
    if v.is_integer() && *v >= q(0) {
        v.to_integer().try_into().ok()
    } else {
        None
    }
}

/// Series in z^{-1}: sum_{r>=1} s_r z^{-r-1} where P'/P = deg/z + sum s_r z^{-r-1}
/// (power sums of the roots).
fn power_sums(p: &UPoly, order: usize) -> Result<Vec<CycScalar>> {
    let d = p.d();
    let m = p.degree().unwrap_or(0);
    // P'/P = w Q(w)/Prev(w) with w = 1/z, Q(w) = w^{m-1} P'(1/w)
    let qrev: Vec<CycScalar> = if m == 0 { vec![] } else { reversed(&p.derivative()) };
    let mut qpad = qrev;
    qpad.resize(m, CycScalar::zero(d));
    let ser = series_div(&qpad, &reversed(p), order, d)?;
    Ok(ser)
}

/// Checks the integrability conditions to `order` and returns the polynomials
/// used (given, or recovered from the weight by Newton's identities).
pub fn integrability_check(
    which: IntegrableCase,
    lam: &PseudoWeight,
    polys: Option<&BTreeMap<(usize, u32), UPoly>>,
    order: usize,
) -> Result<BTreeMap<(usize, u32), UPoly>> {
    let d = lam.d;
    let mut used = BTreeMap::new();
    for i in 0..lam.n {
        for j in 0..lam.d {
            let degree_fixed = which == IntegrableCase::AB || i != 0;
            let lam0 = lam.get(i, j, 0);
            let m0 = if degree_fixed { nonneg_int(&lam0) } else { None };
            let p = match polys.and_then(|ps| ps.get(&(i, j))) {
                Some(p) => p.monic()?,
                None => recover(which, lam, i, j, m0, order)?,
            };
            let deg = p.degree().unwrap_or(0);
            if degree_fixed && m0 != Some(deg) {
                return Err(Error::DegreeMismatch {
                    i,
                    j: j as usize,
                    expected: lam0.to_exact_string(),
                    got: deg,
                });
            }
            match which {
                IntegrableCase::AB => {
                    if p.coeff(0).is_zero() {
                        return Err(Error::SeriesMismatch { i, j: j as usize, r: 0 });
                    }
                    // sum_{r>=1} lam_r z^{r-1} = -P'/P
                    let s = series_div(p.derivative().coeffs(), p.coeffs(), order, d)?;
                    for r in 1..=order as i64 {
                        if lam.get(i, j, r) != -&s[r as usize - 1] {
                            return Err(Error::SeriesMismatch { i, j: j as usize, r });
                        }
                    }
                    // sum_{r>=1} lam_{-r} z^{r-1} = -deg z^{-1} + z^{-1} Q(z)/Prev(z)
                    let ps = power_sums(&p, order)?;
                    for r in 1..=order as i64 {
                        if lam.get(i, j, -r) != ps[r as usize] {
                            return Err(Error::SeriesMismatch { i, j: j as usize, r: -r });
                        }
                    }
                }
                IntegrableCase::C => {
                    let ps = power_sums(&p, order)?;
                    for r in 1..=order as i64 {
                        if lam.get(i, j, r) != ps[r as usize] {
                            return Err(Error::SeriesMismatch { i, j: j as usize, r });
                        }
                    }
                }
            }
            used.insert((i, j), p);
        }
    }
    Ok(used)
}

fn recover(which: IntegrableCase, lam: &PseudoWeight, i: usize, j: u32, m: Option<usize>, order: usize) -> Result<UPoly> {
    let d = lam.d;
    match (which, m) {
        (IntegrableCase::AB, Some(m)) => {
            // lam_r = sum of beta^{-r}: the roots of the reversed polynomial
            let s: Vec<CycScalar> = (1..=m as i64).map(|r| lam.get(i, j, r)).collect();
            let inv = from_power_sums(&s, m, d);
            let c0 = inv.coeff(0);
            if c0.is_zero() {
                return Err(Error::SeriesMismatch { i, j: j as usize, r: 0 });
            }
            let rev = UPoly::from_coeffs(d, reversed(&inv));
            rev.monic()
        }
        (IntegrableCase::C, Some(m)) => {
            let s: Vec<CycScalar> = (1..=m as i64).map(|r| lam.get(i, j, r)).collect();
            Ok(from_power_sums(&s, m, d))
        }
        (IntegrableCase::C, None) => {
            // smallest degree reproducing all power sums up to order
            for m in 0..=order {
                let s: Vec<CycScalar> = (1..=m as i64).map(|r| lam.get(i, j, r)).collect();
                let p = from_power_sums(&s, m, d);
                let ps = power_sums(&p, order)?;
                if (1..=order).all(|r| lam.get(i, j, r as i64) == ps[r]) {
                    return Ok(p);
                }
            }
            Err(Error::SeriesMismatch { i, j: j as usize, r: order as i64 })
        }
        (IntegrableCase::AB, None) => Err(Error::DegreeMismatch {
            i,
            j: j as usize,
            expected: lam.get(i, j, 0).to_exact_string(),
            got: 0,
        }),
    }
}

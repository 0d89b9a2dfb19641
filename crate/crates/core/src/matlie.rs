//! Matrix Lie algebras over the smash-product rings and their universal
//! central extensions.
//!
//! Central values live in [`KahlerClass`], i.e. in (s, t)-coordinates with
//! s = u^d and t = w = uv.

use std::fmt;

use crate::cherednik::{CherElem, TrigElem};
use crate::comm::{kahler_reduce, CommElem, KahlerClass};
use crate::error::{Error, Result};
use crate::mat::MatElem;
use crate::ring::Ring;
use crate::scalar::{qf, CycScalar};
use crate::smash::{
    in_commutators, matrix_to_smash, morita_to_matrix, split_exponent, RingVariant, SmashElem,
};

/// Matrix part plus a central term.
#[derive(Clone, PartialEq)]
pub struct ExtElem {
    pub mat: MatElem<SmashElem>,
    pub central: KahlerClass,
}

impl ExtElem {
    pub fn new(mat: MatElem<SmashElem>, central: KahlerClass) -> Self {
        ExtElem { mat, central }
    }

    pub fn from_mat(mat: MatElem<SmashElem>) -> Self {
        let d = mat.proto().d();
        ExtElem {
            mat,
            central: KahlerClass::zero(d),
        }
    }

    pub fn central_only(n: usize, variant: RingVariant, central: KahlerClass) -> Self {
        let d = central.d();
        ExtElem {
            mat: MatElem::zero(n, &SmashElem::zero(variant, d)),
            central,
        }
    }

    pub fn zero(n: usize, variant: RingVariant, d: u32) -> Self {
        Self::central_only(n, variant, KahlerClass::zero(d))
    }

    pub fn n(&self) -> usize {
        self.mat.n()
    }

    pub fn d(&self) -> u32 {
        self.central.d()
    }

    pub fn variant(&self) -> RingVariant {
        self.mat.proto().variant()
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero() && self.central.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        ExtElem {
            mat: self.mat.add(&o.mat),
            central: self.central.add(&o.central),
        }
    }

    pub fn neg(&self) -> Self {
        ExtElem {
            mat: self.mat.neg(),
            central: self.central.neg(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        ExtElem {
            mat: self.mat.scale(c),
            central: self.central.scale(c),
        }
    }
}

impl fmt::Debug for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + central {:?}", self.mat, self.central)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// The closed u,v formula with mod-d deltas.
    Direct,
    /// Through the toroidal matrix picture and the Kassel cocycle.
    Morita,
}

/// Blows an n x n matrix over a smash ring up to an nd x nd matrix over the
/// commutative ring: E_ab u^i v^j e_k -> E_{a+(m+k)n, b+kn} s^l t^j with
/// i - j = m + dl and -k <= m <= d-1-k (0-based indices).
///
/// One-variable rings land in the t-slot, which is the loop picture.
pub fn toroidal_image(x: &MatElem<SmashElem>) -> Result<MatElem<CommElem>> {
    let n = x.n();
    let d = x.proto().d();
    let mut out = MatElem::zero(n * d as usize, &CommElem::zero(d));
    for (a, b, r) in x.iter() {
        let m = morita_to_matrix(r)?;
        for (p, q, c) in m.iter() {
            out.add_entry(p * n + a, q * n + b, c);
        }
    }
    Ok(out)
}

/// Inverse of [`toroidal_image`].
pub fn toroidal_preimage(
    y: &MatElem<CommElem>,
    n: usize,
    variant: RingVariant,
    d: u32,
) -> Result<MatElem<SmashElem>> {
    if y.n() != n * d as usize {
        return Err(Error::ShapeMismatch(format!(
            "{} is not {}*{}",
            y.n(),
            n,
            d
        )));
    }
    let mut blocks: Vec<MatElem<CommElem>> =
        vec![MatElem::zero(d as usize, &CommElem::zero(d)); n * n];
    for (pp, qq, c) in y.iter() {
        let (p, a) = (pp / n, pp % n);
        let (q, b) = (qq / n, qq % n);
        blocks[a * n + b].add_entry(p, q, c);
    }
    let mut out = MatElem::zero(n, &SmashElem::zero(variant, d));
    for a in 0..n {
        for b in 0..n {
            let blk = &blocks[a * n + b];
            if !blk.is_zero() {
                out.add_entry(a, b, &matrix_to_smash(blk, variant, d)?);
            }
        }
    }
    Ok(out)
}

/// sum_{P,Q} class(X_PQ d Y_QP)
pub fn kassel_central(x: &MatElem<CommElem>, y: &MatElem<CommElem>) -> KahlerClass {
    let d = x.proto().d();
    let mut acc = KahlerClass::zero(d);
    for (p, q, a) in x.iter() {
        let b = y.entry(q, p);
        if !b.is_zero() {
            acc = acc.add(&kahler_reduce(a, &b));
        }
    }
    acc
}

fn check_two_var(v: RingVariant) -> Result<()> {
    match v {
        RingVariant::A | RingVariant::B | RingVariant::C => Ok(()),
        other => Err(Error::VariantViolation(format!(
            "central extension needs A, B or C, got {}",
            other.name()
        ))),
    }
}

/// The bracket in the universal central extension.
pub fn uce_bracket(x: &ExtElem, y: &ExtElem, route: Route) -> Result<ExtElem> {
    check_two_var(x.variant())?;
    if x.variant() != y.variant() {
        return Err(Error::VariantViolation(format!(
            "{} against {}",
            x.variant().name(),
            y.variant().name()
        )));
    }
    if x.d() != y.d() {
        return Err(Error::MixedRootOrder {
            left: x.d(),
            right: y.d(),
        });
    }
    match route {
        Route::Direct => direct_bracket(&x.mat, &y.mat),
        Route::Morita => {
            let tx = toroidal_image(&x.mat)?;
            let ty = toroidal_image(&y.mat)?;
            let m = tx.bracket(&ty)?;
            let mat = toroidal_preimage(&m, x.n(), x.variant(), x.d())?;
            Ok(ExtElem::new(mat, kassel_central(&tx, &ty)))
        }
    }
}

/// Cocycle alone, through the toroidal picture.
pub fn cocycle(x: &MatElem<SmashElem>, y: &MatElem<SmashElem>) -> Result<KahlerClass> {
    Ok(kassel_central(&toroidal_image(x)?, &toroidal_image(y)?))
}

struct IdemTerm {
    row: usize,
    col: usize,
    i: i64,
    j: i64,
    k: i64,
    m: i64,
    l: i64,
    c: CycScalar,
}

fn idem_terms(x: &MatElem<SmashElem>) -> Vec<IdemTerm> {
    let d = x.proto().d();
    let mut out = Vec::new();
    for (row, col, r) in x.iter() {
        for (i, j, k, c) in r.idempotent_terms() {
            let (l, m) = split_exponent(i - j, k, d);
            out.push(IdemTerm {
                row,
                col,
                i,
                j,
                k: k as i64,
                m,
                l,
                c,
            });
        }
    }
    out
}

fn direct_bracket(x: &MatElem<SmashElem>, y: &MatElem<SmashElem>) -> Result<ExtElem> {
    if x.n() != y.n() {
        return Err(Error::ShapeMismatch(format!("{} vs {}", x.n(), y.n())));
    }
    let n = x.n();
    let variant = x.proto().variant();
    let d = x.proto().d();
    let dd = d as i64;
    let eq = |p: i64, q: i64| (p - q).rem_euclid(dd) == 0;
    let mut cells: Vec<Vec<(i64, i64, i64, CycScalar)>> = vec![Vec::new(); n * n];
    let mut central = KahlerClass::zero(d);
    let xs = idem_terms(x);
    let ys = idem_terms(y);
    for p in &xs {
        for q in &ys {
            let c = &p.c * &q.c;
            let (ui, vj) = (p.i + q.i, p.j + q.j);
            if p.col == q.row && eq(p.k, q.m + q.k) {
                cells[p.row * n + q.col].push((ui, vj, q.k, c.clone()));
            }
            if q.col == p.row && eq(p.m + p.k, q.k) {
                cells[q.row * n + p.col].push((ui, vj, p.k, -&c));
            }
            if p.row == q.col && p.col == q.row && eq(p.m + p.k, q.k) && eq(p.k, q.m + q.k) {
                // u^{i-m} v^j = s^l t^j
                let f = CommElem::monomial(d, p.l, p.j, c);
                let g = CommElem::monomial(d, q.l, q.j, CycScalar::one(d));
                central = central.add(&kahler_reduce(&f, &g));
            }
        }
    }
    let mut mat = MatElem::zero(n, &SmashElem::zero(variant, d));
    for (idx, terms) in cells.into_iter().enumerate() {
        if terms.is_empty() {
            continue;
        }
        let e = SmashElem::from_idempotent_terms(variant, d, terms)?;
        mat.add_entry(idx / n, idx % n, &e);
    }
    Ok(ExtElem::new(mat, central))
}

/// Membership in sl_n(R) = sl_n (x) R + I [R, R].
pub fn sl_membership(x: &MatElem<SmashElem>) -> bool {
    in_commutators(&x.trace())
}

/// Tr(m1 m2) delta_{g1 g2 = 1}, extended bilinearly.
pub fn kappa(x: &MatElem<SmashElem>, y: &MatElem<SmashElem>) -> Result<CycScalar> {
    for v in [x.proto().variant(), y.proto().variant()] {
        if v != RingVariant::GroupRing {
            return Err(Error::VariantViolation(format!(
                "kappa needs group-ring entries, got {}",
                v.name()
            )));
        }
    }
    let d = x.proto().d();
    let mut acc = CycScalar::zero(d);
    for (i, j, a) in x.iter() {
        let b = y.entry(j, i);
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                if (ma.i + mb.i) % d == 0 {
                    acc += &(ca * cb);
                }
            }
        }
    }
    Ok(acc)
}

/// Result of [`grade`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grade {
    Zero,
    Homogeneous(i64),
    NonHomogeneous,
}

/// Ring elements carrying the grading deg u = -1, deg v = 1.
pub trait GradedRing: Ring {
    fn term_degrees(&self) -> Vec<i64>;
}

impl GradedRing for CherElem {
    fn term_degrees(&self) -> Vec<i64> {
        self.terms().keys().map(|(a, b, _)| *b as i64 - *a as i64).collect()
    }
}

impl GradedRing for TrigElem {
    fn term_degrees(&self) -> Vec<i64> {
        self.terms().keys().map(|(s, _, _)| -*s).collect()
    }
}

/// deg(E_ij v^r u^s g) = (r - s) n + j - i
pub fn grade<R: GradedRing>(x: &MatElem<R>) -> Grade {
    let n = x.n() as i64;
    let mut found: Option<i64> = None;
    for (i, j, r) in x.iter() {
        for g in r.term_degrees() {
            let deg = g * n + j as i64 - i as i64;
            match found {
                None => found = Some(deg),
                Some(f) if f != deg => return Grade::NonHomogeneous,
                _ => {}
            }
        }
    }
    found.map_or(Grade::Zero, Grade::Homogeneous)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    Td1,
    Td2,
    Td3,
    Td3C,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Td1 => "td1",
            Scheme::Td2 => "td2",
            Scheme::Td3 => "td3",
            Scheme::Td3C => "td3C",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Neg,
    Mid,
    Pos,
}

/// Which summand E_{row,col} u^a v^b x^g falls in.
pub fn classify(scheme: Scheme, row: usize, col: usize, a: i64, b: i64) -> Part {
    let by_position = || match row.cmp(&col) {
        std::cmp::Ordering::Greater => Part::Neg,
        std::cmp::Ordering::Equal => Part::Mid,
        std::cmp::Ordering::Less => Part::Pos,
    };
    // td2 sorts by the u-exponent in (u, v); td3 and td3C by the
    // u-exponent in (u, w), i.e. a - b
    let key = match scheme {
        Scheme::Td1 => 0,
        Scheme::Td2 => a,
        Scheme::Td3 | Scheme::Td3C => a - b,
    };
    match key.signum() {
        -1 => Part::Neg,
        1 => Part::Pos,
        _ => by_position(),
    }
}

/// Splits x into its (neg, mid, pos) parts.
pub fn triangular_project(
    x: &MatElem<SmashElem>,
    scheme: Scheme,
) -> Result<(MatElem<SmashElem>, MatElem<SmashElem>, MatElem<SmashElem>)> {
    let v = x.proto().variant();
    let ok = match scheme {
        Scheme::Td1 => true,
        Scheme::Td2 | Scheme::Td3 => matches!(v, RingVariant::A | RingVariant::B),
        Scheme::Td3C => v == RingVariant::C,
    };
    if !ok {
        return Err(Error::SchemeDomain(format!(
            "{} does not apply to {}",
            scheme.name(),
            v.name()
        )));
    }
    if !sl_membership(x) {
        return Err(Error::NotInAlgebra("trace outside [R,R]".into()));
    }
    let zero = MatElem::zero(x.n(), x.proto());
    let mut parts = [zero.clone(), zero.clone(), zero];
    let d = x.proto().d();
    for (row, col, r) in x.iter() {
        for (m, c) in r.terms() {
            let idx = match classify(scheme, row, col, m.a, m.b) {
                Part::Neg => 0,
                Part::Mid => 1,
                Part::Pos => 2,
            };
            let e = SmashElem::monomial(v, d, m.a, m.b, m.i as i64, c.clone())?;
            parts[idx].add_entry(row, col, &e);
        }
    }
    let [neg, mid, pos] = parts;
    Ok((neg, mid, pos))
}

/// Checks the matrix-part identity
/// [m1 a1, m2 a2] = (1/n) Tr(m1 m2) I [a1,a2] + 1/2 [m1,m2] {a1,a2} + 1/2 [m1,m2]_+ [a1,a2]
/// with [m1,m2]_+ = m1 m2 + m2 m1 - (2/n) Tr(m1 m2) I.
pub fn vv_matrix_identity(
    m1: &MatElem<CycScalar>,
    a1: &SmashElem,
    m2: &MatElem<CycScalar>,
    a2: &SmashElem,
) -> Result<bool> {
    let n = m1.n();
    let d = a1.d();
    let tensor = |m: &MatElem<CycScalar>, a: &SmashElem| m.map(a, |c| a.scale(c));
    let lhs = tensor(m1, a1).bracket(&tensor(m2, a2))?;
    let half = CycScalar::from_q(d, qf(1, 2));
    let form = m1.try_mul(m2)?.trace();
    let inv_n = CycScalar::from_q(d, qf(1, n as i64));
    let comm_a = a1.try_mul(a2)?.sub(&a2.try_mul(a1)?);
    let anti_a = a1.try_mul(a2)?.add(&a2.try_mul(a1)?);
    let comm_m = m1.bracket(m2)?;
    let id = MatElem::identity(n, CycScalar::one(d));
    let anti_m = m1
        .try_mul(m2)?
        .add(&m2.try_mul(m1)?)
        .sub(&id.scale(&(&form * &CycScalar::from_q(d, qf(2, n as i64)))));
    let rhs = tensor(&id, &comm_a)
        .scale(&(&form * &inv_n))
        .add(&tensor(&comm_m, &anti_a).scale(&half))
        .add(&tensor(&anti_m, &comm_a).scale(&half));
    Ok(lhs == rhs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Derivation {
    /// delta_{a = b mod d} (a - b)/d on u^a v^b
    Du,
    /// the v-exponent b on u^a v^b
    DwV,
}

/// Applies a derivation termwise; on central classes d_u reads the s-degree
/// and d_w^v the t-degree.
pub fn derivation_act(which: Derivation, x: &ExtElem) -> Result<ExtElem> {
    let v = x.variant();
    if !matches!(v, RingVariant::A | RingVariant::B) {
        return Err(Error::VariantViolation(format!(
            "derivations act on A or B, got {}",
            v.name()
        )));
    }
    let d = x.d();
    let dd = d as i64;
    let eig = |a: i64, b: i64| -> CycScalar {
        match which {
            Derivation::Du => {
                if (a - b).rem_euclid(dd) == 0 {
                    CycScalar::from_int(d, (a - b) / dd)
                } else {
                    CycScalar::zero(d)
                }
            }
            Derivation::DwV => CycScalar::from_int(d, b),
        }
    };
    let mut mat = MatElem::zero(x.n(), x.mat.proto());
    for (i, j, r) in x.mat.iter() {
        let mut e = SmashElem::zero(v, d);
        for (m, c) in r.terms() {
            let k = eig(m.a, m.b);
            e = e.add(&SmashElem::monomial(v, d, m.a, m.b, m.i as i64, c * &k)?);
        }
        mat.add_entry(i, j, &e);
    }
    let mut central = KahlerClass::zero(d);
    for ((a, b), (al, be)) in x.central.terms() {
        let k = CycScalar::from_int(
            d,
            match which {
                Derivation::Du => *a,
                Derivation::DwV => *b,
            },
        );
        central = central.add(&KahlerClass::basis(d, *a, *b, al * &k, be * &k));
    }
    Ok(ExtElem::new(mat, central))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cherednik::CherParams;
    use std::sync::Arc;

    fn sm(v: RingVariant, d: u32, a: i64, b: i64, i: i64) -> SmashElem {
        SmashElem::monomial(v, d, a, b, i, CycScalar::one(d)).unwrap()
    }

    fn unit(n: usize, i: usize, j: usize, r: SmashElem) -> MatElem<SmashElem> {
        MatElem::unit(n, i, j, r)
    }

    #[test]
    fn kassel_example() {
        let x = ExtElem::from_mat(unit(2, 0, 1, sm(RingVariant::A, 1, 1, 0, 0)));
        let y = ExtElem::from_mat(unit(2, 1, 0, sm(RingVariant::A, 1, -1, 0, 0)));
        let one = sm(RingVariant::A, 1, 0, 0, 0);
        let h = unit(2, 0, 0, one.clone()).sub(&unit(2, 1, 1, one));
        for route in [Route::Direct, Route::Morita] {
            let z = uce_bracket(&x, &y, route).unwrap();
            assert_eq!(z.mat, h);
            assert_eq!(z.central, KahlerClass::ds_over_s(1).neg());
        }
    }

    #[test]
    fn routes_agree_small() {
        for d in 1..=3u32 {
            let n = 2;
            let mut xs = Vec::new();
            for a in -2..=2 {
                for b in -1..=1 {
                    for g in 0..d as i64 {
                        for (i, j) in [(0, 1), (1, 0), (0, 0)] {
                            xs.push(unit(n, i, j, sm(RingVariant::A, d, a, b, g)));
                        }
                    }
                }
            }
            for x in xs.iter().step_by(7) {
                for y in xs.iter().step_by(5) {
                    let (x, y) = (ExtElem::from_mat(x.clone()), ExtElem::from_mat(y.clone()));
                    let p = uce_bracket(&x, &y, Route::Direct).unwrap();
                    let q = uce_bracket(&x, &y, Route::Morita).unwrap();
                    assert_eq!(p, q);
                    assert_eq!(p.mat, x.mat.bracket(&y.mat).unwrap());
                }
            }
        }
    }

    #[test]
    fn toroidal_example() {
        // E11 u v e0 with n = 1, d = 2 goes to E00 t
        let e0 = crate::smash::idempotent(RingVariant::A, 2, 0);
        let x = unit(1, 0, 0, sm(RingVariant::A, 2, 1, 1, 0).mul(&e0));
        let t = toroidal_image(&x).unwrap();
        assert_eq!(t, MatElem::unit(2, 0, 0, CommElem::monomial(2, 0, 1, CycScalar::one(2))));
        assert_eq!(toroidal_preimage(&t, 1, RingVariant::A, 2).unwrap(), x);
    }

    #[test]
    fn membership() {
        let x = MatElem::identity(2, sm(RingVariant::LoopA, 2, 1, 0, 1));
        assert!(sl_membership(&x));
        assert!(!sl_membership(&MatElem::identity(2, sm(RingVariant::LoopA, 2, 0, 0, 0))));
        let one = sm(RingVariant::A, 1, 0, 0, 0);
        assert!(sl_membership(&unit(2, 0, 0, one.clone()).sub(&unit(2, 1, 1, one))));
        // s = u^2 has nonzero Morita trace even for d > 1
        assert!(!sl_membership(&MatElem::identity(2, sm(RingVariant::A, 2, 2, 0, 0))));
    }

    #[test]
    fn kappa_examples() {
        let g = RingVariant::GroupRing;
        let x = unit(2, 0, 1, sm(g, 3, 0, 0, 1));
        assert!(kappa(&x, &unit(2, 1, 0, sm(g, 3, 0, 0, -1))).unwrap().is_one());
        assert!(kappa(&x, &unit(2, 1, 0, sm(g, 3, 0, 0, 1))).unwrap().is_zero());
    }

    #[test]
    fn grade_examples() {
        let p = Arc::new(CherParams::weyl(1));
        let v = CherElem::v(&p);
        let u = CherElem::u(&p);
        assert_eq!(grade(&MatElem::unit(2, 0, 1, v)), Grade::Homogeneous(3));
        assert_eq!(grade(&MatElem::unit(2, 1, 0, u)), Grade::Homogeneous(-3));
        let one = CherElem::scalar(&p, CycScalar::one(1));
        let x = MatElem::unit(2, 0, 0, one.clone()).add(&MatElem::unit(2, 0, 1, one));
        assert_eq!(grade(&x), Grade::NonHomogeneous);
    }

    #[test]
    fn projections() {
        let a = RingVariant::A;
        let x = unit(2, 0, 1, sm(a, 2, 3, 1, 1));
        let (n, m, p) = triangular_project(&x, Scheme::Td1).unwrap();
        assert!(n.is_zero() && m.is_zero());
        assert_eq!(p, x);
        let x = unit(2, 0, 0, sm(a, 2, 1, 0, 1));
        let (n, m, p) = triangular_project(&x, Scheme::Td1).unwrap();
        assert!(n.is_zero() && p.is_zero());
        assert_eq!(m, x);
        // I u w^{-1} = I v^{-1}
        let x = MatElem::identity(2, sm(a, 2, 0, -1, 0));
        let (_, _, p) = triangular_project(&x, Scheme::Td3).unwrap();
        assert_eq!(p, x);
        assert!(matches!(
            triangular_project(&x, Scheme::Td3C),
            Err(Error::SchemeDomain(_))
        ));
        assert!(matches!(
            triangular_project(&MatElem::identity(2, sm(a, 2, 0, 0, 0)), Scheme::Td1),
            Err(Error::NotInAlgebra(_))
        ));
    }

    #[test]
    fn derivation_examples() {
        let a = RingVariant::A;
        let x = ExtElem::from_mat(unit(2, 0, 1, sm(a, 2, 3, 1, 0)));
        let y = derivation_act(Derivation::Du, &x).unwrap();
        assert_eq!(y, x);
        let x = ExtElem::from_mat(unit(2, 0, 1, sm(a, 2, 1, 0, 0)));
        assert!(derivation_act(Derivation::Du, &x).unwrap().is_zero());
        let x = ExtElem::from_mat(unit(2, 0, 1, sm(a, 2, 5, 5, 0)));
        let y = derivation_act(Derivation::DwV, &x).unwrap();
        assert_eq!(y, x.scale(&CycScalar::from_int(2, 5)));
    }
}

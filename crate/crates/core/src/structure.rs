//! Loop and toroidal isomorphisms, Cartan and root data, and relation
//! checkers for the generator-and-relation presentations.

use std::fmt;

use rayon::prelude::*;

use crate::comm::{CommElem, CommVariant, KahlerClass};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Indexer, SparseVec};
use crate::mat::MatElem;
use crate::matlie::{toroidal_image, toroidal_preimage, uce_bracket, ExtElem, Route};
use crate::report::Check;
use crate::ring::Ring;
use crate::sample;
use crate::scalar::{q, CycScalar, Q};
use crate::smash::{RingVariant, SmashElem};

/// E_ij u^{kd+r} e_l -> E_{n(l+r)+i, nl+j} t^k (0-based), the entry in the
/// t-slot of a [`CommElem`].
pub fn loop_iso(x: &MatElem<SmashElem>) -> Result<MatElem<CommElem>> {
    match x.proto().variant() {
        RingVariant::LoopA | RingVariant::PolyB | RingVariant::GroupRing => toroidal_image(x),
        v => Err(Error::VariantViolation(format!(
            "loop isomorphism needs a one-variable ring, got {}",
            v.name()
        ))),
    }
}

pub fn loop_iso_inv(y: &MatElem<CommElem>, n: usize, d: u32) -> Result<MatElem<SmashElem>> {
    toroidal_preimage(y, n, RingVariant::LoopA, d)
}

/// E_ab u^i v^j e_k -> E_{a+(m+k)n, b+kn} s^l t^j.
pub fn toroidal_iso(x: &MatElem<SmashElem>) -> Result<MatElem<CommElem>> {
    match x.proto().variant() {
        RingVariant::A | RingVariant::B | RingVariant::C => toroidal_image(x),
        v => Err(Error::VariantViolation(format!(
            "toroidal isomorphism needs a two-variable ring, got {}",
            v.name()
        ))),
    }
}

pub fn toroidal_iso_inv(
    y: &MatElem<CommElem>,
    n: usize,
    variant: RingVariant,
    d: u32,
) -> Result<MatElem<SmashElem>> {
    toroidal_preimage(y, n, variant, d)
}

/// Whether every entry of an nd x nd loop matrix lies in C[t] and the entries
/// strictly above the n x n block diagonal lie in t C[t].
pub fn parabolic_pattern(y: &MatElem<CommElem>, n: usize) -> bool {
    y.iter().all(|(p, q, c)| {
        let min_k = if p / n < q / n { 1 } else { 0 };
        c.terms().keys().all(|&(s, k)| s == 0 && k >= min_k)
    })
}

/// Whether every entry of the image lies in the given commutative ring.
pub fn image_in(y: &MatElem<CommElem>, v: CommVariant) -> bool {
    y.iter().all(|(_, _, c)| c.in_variant(v))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedIsoReport {
    /// Source degree (j - i) + mu * (u-exponent).
    pub mu: i64,
    /// Target degree (q - p) + kappa * (t-exponent).
    pub kappa: i64,
    pub checked: usize,
    pub mismatches: Vec<String>,
    /// Whether the unscaled reading deg(E_pq t^k) = q - p + k also matches.
    pub unscaled_holds: bool,
}

impl GradedIsoReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Calibrates the grading scale on the k = 0, r != 0 family and on one k != 0
/// element, then checks every E_ij u^e e_l with |e| <= kmax * d + d.
pub fn graded_iso_check(n: usize, d: u32, kmax: i64) -> Result<GradedIsoReport> {
    let dd = d as i64;
    let one = CycScalar::one(d);
    let image = |i: usize, j: usize, e: i64, l: i64| -> Result<(usize, usize, i64)> {
        let x = MatElem::unit(n, i, j, SmashElem::from_idempotent_terms(RingVariant::LoopA, d, [(e, 0, l, one.clone())])?);
        let y = loop_iso(&x)?;
        let (p, qq, c) = y.iter().next().expect("nonzero image");
        let k = c.terms().keys().next().expect("monomial").1;
        Ok((p, qq, k))
    };
    // mu from u e_0 when d > 1, otherwise from the k family with n | shift
    let mu = if d > 1 {
        let (p, qq, _) = image(0, 0, 1, 0)?;
        qq as i64 - p as i64
    } else {
        -(n as i64)
    };
    let (p, qq, k) = image(0, 0, dd, 0)?;
    let kappa = (mu * dd - (qq as i64 - p as i64)) / k;
    let mut mismatches = Vec::new();
    let mut unscaled = true;
    let mut checked = 0;
    for i in 0..n {
        for j in 0..n {
            for l in 0..dd {
                for e in -(kmax * dd + dd)..=(kmax * dd + dd) {
                    let (p, qq, k) = image(i, j, e, l)?;
                    let src = j as i64 - i as i64 + mu * e;
                    let tgt = qq as i64 - p as i64 + kappa * k;
                    checked += 1;
                    if src != tgt {
                        mismatches.push(format!("E[{},{}] u^{} e[{}]: {} vs {}", i + 1, j + 1, e, l, src, tgt));
                    }
                    if qq as i64 - p as i64 + k != j as i64 - i as i64 + e {
                        unscaled = false;
                    }
                }
            }
        }
    }
    Ok(GradedIsoReport {
        mu,
        kappa,
        checked,
        mismatches,
        unscaled_holds: unscaled,
    })
}

fn emono(n: usize, row: usize, col: usize, v: RingVariant, d: u32, a: i64, b: i64, l: i64, c: CycScalar) -> Result<MatElem<SmashElem>> {
    let e = SmashElem::from_idempotent_terms(v, d, [(a, b, l, c)])?;
    Ok(MatElem::unit(n, row, col, e))
}

/// H_{i,j} = (E_ii - E_{i+1,i+1}) e_j for 1 <= i <= n-1 and
/// H_{0,j} = E_nn e_j - E_11 e_{j+1} for j <= d-2; returned with labels.
pub fn cartan_basis(n: usize, d: u32) -> Result<Vec<((usize, u32), MatElem<SmashElem>)>> {
    let one = CycScalar::one(d);
    let v = RingVariant::LoopA;
    let mut out = Vec::new();
    for j in 0..d {
        for i in 0..n {
            if i == 0 && j == d - 1 {
                continue;
            }
            let h = if i == 0 {
                emono(n, n - 1, n - 1, v, d, 0, 0, j as i64, one.clone())?
                    .sub(&emono(n, 0, 0, v, d, 0, 0, j as i64 + 1, one.clone())?)
            } else {
                emono(n, i - 1, i - 1, v, d, 0, 0, j as i64, one.clone())?
                    .sub(&emono(n, i, i, v, d, 0, 0, j as i64, one.clone())?)
            };
            out.push(((i, j), h));
        }
    }
    Ok(out)
}

/// Rank of a list of one-variable matrices, in coordinates E_ij u^a x^g.
pub fn matrix_rank(ms: &[MatElem<SmashElem>]) -> usize {
    let mut idx = Indexer::new();
    let mut ech = Echelon::<CycScalar>::new();
    for m in ms {
        let mut v = SparseVec::new();
        for (i, j, r) in m.iter() {
            for (mono, c) in r.terms() {
                v.insert(idx.index(&(i, j, mono.a, mono.b, mono.i)), c.clone());
            }
        }
        ech.insert(v);
    }
    ech.rank()
}

/// Eigenvalue of ad H_{a,b} on E_ij u^k e_l (1-based i, j, a; a = 0 is the
/// wrap-around label).
pub fn eigen_formula(n: usize, d: u32, a: usize, b: i64, i: usize, j: usize, k: i64, l: i64) -> i64 {
    let dd = d as i64;
    let m = |x: i64, y: i64| ((x - y).rem_euclid(dd) == 0) as i64;
    let e = |x: usize, y: usize| (x == y) as i64;
    if a != 0 {
        m(b, l) * (e(a + 1, j) - e(a, j)) + m(b - k, l) * (e(a, i) - e(a + 1, i))
    } else {
        e(n, i) * m(b - k, l) - e(n, j) * m(b, l) - e(1, i) * m(b + 1 - k, l) + e(j, 1) * m(b + 1, l)
    }
}

#[derive(Clone, Debug)]
pub struct EigenRow {
    pub h: (usize, u32),
    /// (i, j, k, l), 1-based i and j.
    pub vector: (usize, usize, i64, u32),
    pub formula: i64,
    pub ok: bool,
}

/// For every Cartan element and every listed root vector, compares the bracket
/// with formula * vector.
pub fn ad_eigen_table(n: usize, d: u32, kmax: i64) -> Result<Vec<EigenRow>> {
    let one = CycScalar::one(d);
    let hs = cartan_basis(n, d)?;
    let mut vecs = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in -kmax..=kmax {
                if i == j && k.rem_euclid(d as i64) == 0 {
                    continue;
                }
                for l in 0..d {
                    vecs.push((i, j, k, l));
                }
            }
        }
    }
    let mut rows = Vec::new();
    for ((a, b), h) in &hs {
        for &(i, j, k, l) in &vecs {
            let x = emono(n, i - 1, j - 1, RingVariant::LoopA, d, k, 0, l as i64, one.clone())?;
            let br = h.bracket(&x)?;
            let f = eigen_formula(n, d, *a, *b as i64, i, j, k, l as i64);
            let ok = br == x.scale(&CycScalar::from_int(d, f));
            rows.push(EigenRow {
                h: (*a, *b),
                vector: (i, j, k, l),
                formula: f,
                ok,
            });
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug)]
pub struct SimpleRoots {
    /// Row f holds the simple root with label f = i + jn in the basis
    /// eps_P - eps_{P+1} (flat index P = (i-1) + l n) followed by delta.
    pub matrix: Vec<Vec<i64>>,
    pub det: Q,
    pub delta_identity: bool,
}

impl SimpleRoots {
    pub fn unimodular(&self) -> bool {
        self.det == q(1) || self.det == q(-1)
    }
}

pub fn simple_root_matrix(n: usize, d: u32) -> SimpleRoots {
    let nd = n * d as usize;
    // raw coordinates: eps_{i,l} at (i-1) + l n, delta at nd
    let eps = |i: usize, l: i64| (i - 1) + (l.rem_euclid(d as i64) as usize) * n;
    let mut raw = Vec::new();
    for j in 0..d as i64 {
        for i in 0..n {
            let mut v = vec![0i64; nd + 1];
            if i != 0 {
                v[eps(i, j)] += 1;
                v[eps(i + 1, j)] -= 1;
            } else if j != 0 {
                v[eps(n, j - 1)] += 1;
                v[eps(1, j)] -= 1;
            } else {
                v[eps(n, d as i64 - 1)] += 1;
                v[eps(1, 0)] -= 1;
                v[nd] += 1;
            }
            raw.push(v);
        }
    }
    let mut total = vec![0i64; nd + 1];
    for v in &raw {
        for (t, x) in total.iter_mut().zip(v) {
            *t += x;
        }
    }
    let mut delta = vec![0i64; nd + 1];
    delta[nd] = 1;
    let delta_identity = total == delta;
    // coordinates: b_P = eps_P - eps_{P+1} in the flat order P = (i-1) + l n,
    // then delta; a root with zero eps-sum has b_P-coefficient sum_{Q<=P} eps_Q
    let matrix: Vec<Vec<i64>> = raw
        .iter()
        .map(|v| {
            let mut acc = 0;
            let mut w: Vec<i64> = v[..nd - 1]
                .iter()
                .map(|x| {
                    acc += x;
                    acc
                })
                .collect();
            w.push(v[nd]);
            w
        })
        .collect();
    let det = determinant(&matrix);
    SimpleRoots {
        matrix,
        det,
        delta_identity,
    }
}

fn determinant(m: &[Vec<i64>]) -> Q {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|x| q(*x)).collect()).collect();
    let mut det = q(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| a[r][c] != q(0)) else {
            return q(0);
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            if a[r][c] == q(0) {
                continue;
            }
            let f = &a[r][c] / &piv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det
}

// ---------------------------------------------------------------------------
// presentations

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Presentation {
    /// Kassel-Loday generators F_ij(a), n >= 3.
    KL,
    /// The n = 2 variant with H_12(a1, a2).
    KL2,
    /// X, H generators of the central extension over A.
    Dala,
    /// X, H generators over C = C[u,v] x| Gamma.
    C,
}

/// Which generator images to use for the i = j = 0 node of the A
/// presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauTable {
    /// Unadjusted images: X+ = E_n1 u^{2d-1} w^r e_{d-1},
    /// X- = E_1n u^{-(2d-1)} w^r e_0, H = E_nn w^r e_0 - E_11 w^r e_{d-1}
    /// - d w^r u^{-1}du, c -> w^{-1}dw.
    Printed,
    /// Idempotents placed so the node is the affine root E_{nd,1} t of the
    /// loop picture, and c -> -w^{-1}dw to match the f dg cocycle.
    Adjusted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    XPlus,
    XMinus,
    H,
}

impl GenKind {
    fn label(self) -> &'static str {
        match self {
            GenKind::XPlus => "X+",
            GenKind::XMinus => "X-",
            GenKind::H => "H",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PresGenerator {
    pub kind: GenKind,
    pub i: usize,
    pub j: u32,
    pub r: i64,
}

impl PresGenerator {
    pub fn new(kind: GenKind, i: usize, j: u32, r: i64) -> Self {
        PresGenerator { kind, i, j, r }
    }

    /// Generator of the C presentation: r >= 0, and r >= 1 for X-, H at i = 0.
    pub fn new_c(kind: GenKind, i: usize, j: u32, r: i64) -> Result<Self> {
        let min = if i == 0 && kind != GenKind::XPlus { 1 } else { 0 };
        if r < min {
            return Err(Error::RangeError(format!(
                "{}_{{{},{},{}}} is not a generator over C",
                kind.label(),
                i,
                j,
                r
            )));
        }
        Ok(Self::new(kind, i, j, r))
    }

    pub fn f(&self, n: usize) -> usize {
        self.i + self.j as usize * n
    }
}

impl fmt::Display for PresGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{{{},{},{}}}", self.kind.label(), self.i, self.j, self.r)
    }
}

/// Affine Cartan matrix entry of type A^(1)_{N-1}, N >= 3.
pub fn cartan_entry(nn: usize, f1: usize, f2: usize) -> i64 {
    if f1 == f2 {
        2
    } else if (f1 + 1) % nn == f2 || (f2 + 1) % nn == f1 {
        -1
    } else {
        0
    }
}

/// E_{row,col} u^p w^r e_l over the given variant.
fn uwe(n: usize, row: usize, col: usize, v: RingVariant, d: u32, p: i64, r: i64, l: i64, c: CycScalar) -> Result<MatElem<SmashElem>> {
    emono(n, row, col, v, d, p + r, r, l, c)
}

/// [d w^r u^{-1}du] = [t^r ds/s]
fn log_u_class(d: u32, r: i64) -> KahlerClass {
    KahlerClass::basis(d, 0, r, CycScalar::one(d), CycScalar::zero(d))
}

/// Image of the central generator c.
pub fn tau_central(d: u32, table: TauTable) -> KahlerClass {
    match table {
        TauTable::Printed => KahlerClass::dt_over_t(d),
        TauTable::Adjusted => KahlerClass::dt_over_t(d).neg(),
    }
}

/// Generator images for the A presentation.
pub fn tau(g: &PresGenerator, n: usize, d: u32, table: TauTable) -> Result<ExtElem> {
    let v = RingVariant::A;
    let one = CycScalar::one(d);
    let (i, j, r) = (g.i, g.j as i64, g.r);
    let dd = d as i64;
    let last = n - 1;
    let zero_k = KahlerClass::zero(d);
    let (mat, central) = match (g.kind, i, j) {
        (GenKind::XPlus, i, _) if i != 0 => (uwe(n, i - 1, i, v, d, 0, r, j, one)?, zero_k),
        (GenKind::XMinus, i, _) if i != 0 => (uwe(n, i, i - 1, v, d, 0, r, j, one)?, zero_k),
        (GenKind::H, i, _) if i != 0 => (
            uwe(n, i - 1, i - 1, v, d, 0, r, j, one.clone())?.sub(&uwe(n, i, i, v, d, 0, r, j, one)?),
            zero_k,
        ),
        (GenKind::XPlus, 0, j) if j != 0 => (uwe(n, last, 0, v, d, -1, r, j, one)?, zero_k),
        (GenKind::XMinus, 0, j) if j != 0 => (uwe(n, 0, last, v, d, 1, r, j - 1, one)?, zero_k),
        (GenKind::H, 0, j) if j != 0 => (
            uwe(n, last, last, v, d, 0, r, j - 1, one.clone())?.sub(&uwe(n, 0, 0, v, d, 0, r, j, one)?),
            zero_k,
        ),
        (kind, _, _) => {
            let p = 2 * dd - 1;
            let (lp, lm) = match table {
                TauTable::Printed => (dd - 1, 0),
                TauTable::Adjusted => (0, dd - 1),
            };
            match kind {
                GenKind::XPlus => (uwe(n, last, 0, v, d, p, r, lp, one)?, zero_k),
                GenKind::XMinus => (uwe(n, 0, last, v, d, -p, r, lm, one)?, zero_k),
                GenKind::H => {
                    // Unadjusted: E_nn e_0 - E_11 e_{d-1}; Adjusted: E_nn e_{d-1} - E_11 e_0
                    let (a, b) = match table {
                        TauTable::Printed => (0, dd - 1),
                        TauTable::Adjusted => (dd - 1, 0),
                    };
                    (
                        uwe(n, last, last, v, d, 0, r, a, one.clone())?.sub(&uwe(n, 0, 0, v, d, 0, r, b, one)?),
                        log_u_class(d, r).neg(),
                    )
                }
            }
        }
    };
    Ok(ExtElem::new(mat, central))
}

/// Generator images for the C presentation.
///
/// Built from the A images by shifting the i = 0 labels (X+_{0,j,r} takes the
/// role of u^{-1} w^{r+1} = v w^r) and then applying the automorphism
/// u <-> v, x -> x^{-1}, which sends e_j to e_{-j}; after it the X+ lie in the
/// positive part u C[u,w] + n+ C[w].
pub fn tau_c(g: &PresGenerator, n: usize, d: u32) -> Result<ExtElem> {
    let g = PresGenerator::new_c(g.kind, g.i, g.j, g.r)?;
    let v = RingVariant::C;
    let one = CycScalar::one(d);
    let (i, r) = (g.i, g.r);
    let j = -(g.j as i64);
    let last = n - 1;
    let zero_k = KahlerClass::zero(d);
    let (mat, central) = match (g.kind, i) {
        (GenKind::XPlus, i) if i != 0 => (uwe(n, i - 1, i, v, d, 0, r, j, one)?, zero_k),
        (GenKind::XMinus, i) if i != 0 => (uwe(n, i, i - 1, v, d, 0, r, j, one)?, zero_k),
        (GenKind::H, i) if i != 0 => (
            uwe(n, i - 1, i - 1, v, d, 0, r, j, one.clone())?.sub(&uwe(n, i, i, v, d, 0, r, j, one)?),
            zero_k,
        ),
        (GenKind::XPlus, _) => (uwe(n, last, 0, v, d, 1, r, j, one)?, zero_k),
        // v w^{r-1} = u^{-1} w^r
        (GenKind::XMinus, _) => (uwe(n, 0, last, v, d, -1, r, j + 1, one)?, zero_k),
        (GenKind::H, _) => {
            let central = if (g.j as i64 - 1).rem_euclid(d as i64) == 0 {
                log_u_class(d, r).neg()
            } else {
                zero_k
            };
            (
                uwe(n, last, last, v, d, 0, r, j + 1, one.clone())?.sub(&uwe(n, 0, 0, v, d, 0, r, j, one)?),
                central,
            )
        }
    };
    Ok(ExtElem::new(mat, central))
}

/// Relation ranges for [`check_presentation`].
#[derive(Clone, Copy, Debug)]
pub struct PresRanges {
    pub rmin: i64,
    pub rmax: i64,
    /// random ring elements per KL relation family
    pub samples: usize,
    pub seed: u64,
    pub table: TauTable,
}

impl PresRanges {
    pub fn dala(rmax: i64) -> Self {
        PresRanges {
            rmin: -rmax,
            rmax,
            samples: 0,
            seed: 0,
            table: TauTable::Adjusted,
        }
    }

    pub fn c(rmax: i64) -> Self {
        PresRanges {
            rmin: 0,
            rmax,
            samples: 0,
            seed: 0,
            table: TauTable::Adjusted,
        }
    }

    pub fn kl(samples: usize, seed: u64) -> Self {
        PresRanges {
            rmin: 0,
            rmax: 0,
            samples,
            seed,
            table: TauTable::Adjusted,
        }
    }
}

fn br(x: &ExtElem, y: &ExtElem) -> Result<ExtElem> {
    uce_bracket(x, y, Route::Direct)
}

/// Tally of one relation family.
struct Family {
    name: String,
    instances: usize,
    failures: usize,
    first: Option<String>,
}

impl Family {
    fn new(name: &str) -> Self {
        Family {
            name: name.to_string(),
            instances: 0,
            failures: 0,
            first: None,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn merge(mut self, o: Family) -> Family {
        self.instances += o.instances;
        self.failures += o.failures;
        if self.first.is_none() {
            self.first = o.first;
        }
        self
    }

    fn check(self) -> Check {
        let details = match &self.first {
            None => format!("{} instances", self.instances),
            Some(f) => format!("{}/{} instances fail; first: {}", self.failures, self.instances, f),
        };
        Check::new(self.name, self.failures == 0, details)
    }
}

fn truncate(s: String) -> String {
    if s.len() > 400 {
        format!("{}...", &s[..400])
    } else {
        s
    }
}

pub fn check_presentation(which: Presentation, n: usize, d: u32, ranges: &PresRanges) -> Result<Vec<Check>> {
    if ranges.rmin > ranges.rmax {
        return Err(Error::RangeError(format!("empty range {}..={}", ranges.rmin, ranges.rmax)));
    }
    match which {
        Presentation::KL => {
            if n < 3 {
                return Err(Error::RangeError("KL needs n >= 3".into()));
            }
            check_kl(n, d, ranges)
        }
        Presentation::KL2 => {
            if n != 2 {
                return Err(Error::RangeError("KL2 needs n = 2".into()));
            }
            check_kl2(d, ranges)
        }
        Presentation::Dala | Presentation::C => {
            if n < 2 || n * (d as usize) < 3 {
                return Err(Error::RangeError("needs n >= 2 and nd >= 3".into()));
            }
            if which == Presentation::C && ranges.rmin < 0 {
                return Err(Error::RangeError("C generators have r >= 0".into()));
            }
            check_xh(which, n, d, ranges)
        }
    }
}

fn f_elem(n: usize, i: usize, j: usize, a: &SmashElem) -> ExtElem {
    ExtElem::from_mat(MatElem::unit(n, i, j, a.clone()))
}

fn check_kl(n: usize, d: u32, ranges: &PresRanges) -> Result<Vec<Check>> {
    let mut rng = sample::rng(ranges.seed);
    let mut chain = Family::new("KL [F_ij(a), F_jk(b)] = F_ik(ab)");
    let mut comm = Family::new("KL [F_ij(a), F_kl(b)] = 0");
    let v = RingVariant::A;
    for _ in 0..ranges.samples {
        let a = sample::smash(&mut rng, v, d, 2, 2);
        let b = sample::smash(&mut rng, v, d, 2, 2);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i == j || j == k {
                        continue;
                    }
                    if k != i {
                        let lhs = br(&f_elem(n, i, j, &a), &f_elem(n, j, k, &b))?;
                        let rhs = f_elem(n, i, k, &a.mul(&b));
                        chain.record(lhs == rhs, || format!("i={} j={} k={}", i + 1, j + 1, k + 1));
                    }
                    for l in 0..n {
                        if k == l || l == i {
                            continue;
                        }
                        let lhs = br(&f_elem(n, i, j, &a), &f_elem(n, k, l, &b))?;
                        comm.record(lhs.is_zero(), || format!("i={} j={} k={} l={}", i + 1, j + 1, k + 1, l + 1));
                    }
                }
            }
        }
    }
    Ok(vec![chain.check(), comm.check()])
}

fn check_kl2(d: u32, ranges: &PresRanges) -> Result<Vec<Check>> {
    let mut rng = sample::rng(ranges.seed);
    let v = RingVariant::A;
    let mut plus = Family::new("KL2 [H12(a1,a2), F12(a3)] = F12(a1a2a3 + a3a2a1)");
    let mut minus = Family::new("KL2 [H12(a1,a2), F21(a3)] = -F21(a3a1a2 + a2a1a3)");
    for _ in 0..ranges.samples {
        let a1 = sample::smash(&mut rng, v, d, 2, 2);
        let a2 = sample::smash(&mut rng, v, d, 2, 2);
        let a3 = sample::smash(&mut rng, v, d, 2, 2);
        let h = br(&f_elem(2, 0, 1, &a1), &f_elem(2, 1, 0, &a2))?;
        let lhs = br(&h, &f_elem(2, 0, 1, &a3))?;
        let rhs = f_elem(2, 0, 1, &a1.mul(&a2).mul(&a3).add(&a3.mul(&a2).mul(&a1)));
        plus.record(lhs == rhs, || format!("{:?}", lhs.sub(&rhs)));
        let lhs = br(&h, &f_elem(2, 1, 0, &a3))?;
        let rhs = f_elem(2, 1, 0, &a3.mul(&a1).mul(&a2).add(&a2.mul(&a1).mul(&a3))).neg();
        minus.record(lhs == rhs, || format!("{:?}", lhs.sub(&rhs)));
    }
    Ok(vec![plus.check(), minus.check()])
}

struct Gens {
    which: Presentation,
    n: usize,
    d: u32,
    table: TauTable,
}

impl Gens {
    fn exists(&self, kind: GenKind, i: usize, r: i64) -> bool {
        match self.which {
            Presentation::C => PresGenerator::new_c(kind, i, 0, r).is_ok(),
            _ => true,
        }
    }

    fn get(&self, kind: GenKind, i: usize, j: u32, r: i64) -> Result<ExtElem> {
        let g = PresGenerator::new(kind, i, j, r);
        match self.which {
            Presentation::C => tau_c(&g, self.n, self.d),
            _ => tau(&g, self.n, self.d, self.table),
        }
    }

    fn central(&self) -> ExtElem {
        match self.which {
            Presentation::C => ExtElem::zero(self.n, RingVariant::C, self.d),
            _ => ExtElem::central_only(self.n, RingVariant::A, tau_central(self.d, self.table)),
        }
    }

    fn nodes(&self) -> Vec<(usize, u32)> {
        let mut v = Vec::new();
        for j in 0..self.d {
            for i in 0..self.n {
                v.push((i, j));
            }
        }
        v
    }
}

fn check_xh(which: Presentation, n: usize, d: u32, ranges: &PresRanges) -> Result<Vec<Check>> {
    let g = Gens {
        which,
        n,
        d,
        table: ranges.table,
    };
    let nn = n * d as usize;
    let nodes = g.nodes();
    let rs: Vec<i64> = (ranges.rmin..=ranges.rmax).collect();
    let f = |(i, j): (usize, u32)| i + j as usize * n;
    let pm = [(GenKind::XPlus, 1i64), (GenKind::XMinus, -1i64)];
    let dala = which == Presentation::Dala;
    let pairs: Vec<((usize, u32), (usize, u32))> =
        nodes.iter().flat_map(|a| nodes.iter().map(move |b| (*a, *b))).collect();

    let run = |name: &str, body: &(dyn Fn((usize, u32), (usize, u32), &mut Family) -> Result<()> + Sync)| -> Result<Check> {
        let parts: Vec<Result<Family>> = pairs
            .par_iter()
            .map(|(a, b)| {
                let mut fam = Family::new(name);
                body(*a, *b, &mut fam)?;
                Ok(fam)
            })
            .collect();
        let mut total = Family::new(name);
        for p in parts {
            total = total.merge(p?);
        }
        Ok(total.check())
    };

    let mut checks = Vec::new();

    checks.push(run("[H, H] = r1 c delta c", &|a, b, fam| {
        for &r1 in &rs {
            for &r2 in &rs {
                if !g.exists(GenKind::H, a.0, r1) || !g.exists(GenKind::H, b.0, r2) {
                    continue;
                }
                let lhs = br(&g.get(GenKind::H, a.0, a.1, r1)?, &g.get(GenKind::H, b.0, b.1, r2)?)?;
                let rhs = if dala && r1 + r2 == 0 {
                    g.central().scale(&CycScalar::from_int(d, r1 * cartan_entry(nn, f(a), f(b))))
                } else {
                    ExtElem::zero(n, lhs.variant(), d)
                };
                fam.record(lhs == rhs, || truncate(format!("H{:?},{} H{:?},{}: {:?}", a, r1, b, r2, lhs.sub(&rhs))));
            }
        }
        Ok(())
    })?);

    checks.push(run("[H_0, X] = +-c X", &|a, b, fam| {
        if !g.exists(GenKind::H, a.0, 0) {
            return Ok(());
        }
        let h = g.get(GenKind::H, a.0, a.1, 0)?;
        for (kind, sign) in pm {
            for &r in &rs {
                if !g.exists(kind, b.0, r) {
                    continue;
                }
                let x = g.get(kind, b.0, b.1, r)?;
                let lhs = br(&h, &x)?;
                let rhs = x.scale(&CycScalar::from_int(d, sign * cartan_entry(nn, f(a), f(b))));
                fam.record(lhs == rhs, || truncate(format!("H{:?} {:?}{:?},{}: {:?}", a, kind, b, r, lhs.sub(&rhs))));
            }
        }
        Ok(())
    })?);

    checks.push(run("[H_{r1+1}, X_{r2}] = [H_{r1}, X_{r2+1}]", &|a, b, fam| {
        for (kind, _) in pm {
            for &r1 in &rs {
                for &r2 in &rs {
                    if r1 + 1 > ranges.rmax || r2 + 1 > ranges.rmax {
                        continue;
                    }
                    if !g.exists(GenKind::H, a.0, r1) || !g.exists(kind, b.0, r2) {
                        continue;
                    }
                    let lhs = br(&g.get(GenKind::H, a.0, a.1, r1 + 1)?, &g.get(kind, b.0, b.1, r2)?)?;
                    let rhs = br(&g.get(GenKind::H, a.0, a.1, r1)?, &g.get(kind, b.0, b.1, r2 + 1)?)?;
                    fam.record(lhs == rhs, || truncate(format!("{:?} {:?} {:?} {} {}", a, kind, b, r1, r2)));
                }
            }
        }
        Ok(())
    })?);

    checks.push(run("[X_{r1+1}, X_{r2}] = [X_{r1}, X_{r2+1}]", &|a, b, fam| {
        for (kind, _) in pm {
            for &r1 in &rs {
                for &r2 in &rs {
                    if r1 + 1 > ranges.rmax || r2 + 1 > ranges.rmax {
                        continue;
                    }
                    if !g.exists(kind, a.0, r1) || !g.exists(kind, b.0, r2) {
                        continue;
                    }
                    let lhs = br(&g.get(kind, a.0, a.1, r1 + 1)?, &g.get(kind, b.0, b.1, r2)?)?;
                    let rhs = br(&g.get(kind, a.0, a.1, r1)?, &g.get(kind, b.0, b.1, r2 + 1)?)?;
                    fam.record(lhs == rhs, || truncate(format!("{:?} {:?} {:?} {} {}", kind, a, b, r1, r2)));
                }
            }
        }
        Ok(())
    })?);

    checks.push(run("[X+, X-] = delta (H + r1 delta c)", &|a, b, fam| {
        for &r1 in &rs {
            for &r2 in &rs {
                if !g.exists(GenKind::XPlus, a.0, r1) || !g.exists(GenKind::XMinus, b.0, r2) {
                    continue;
                }
                let lhs = br(&g.get(GenKind::XPlus, a.0, a.1, r1)?, &g.get(GenKind::XMinus, b.0, b.1, r2)?)?;
                let rhs = if a == b {
                    let mut h = g.get(GenKind::H, a.0, a.1, r1 + r2)?;
                    if dala && r1 + r2 == 0 {
                        h = h.add(&g.central().scale(&CycScalar::from_int(d, r1)));
                    }
                    h
                } else {
                    ExtElem::zero(n, lhs.variant(), d)
                };
                fam.record(lhs == rhs, || truncate(format!("X+{:?},{} X-{:?},{}: {:?}", a, r1, b, r2, lhs.sub(&rhs))));
            }
        }
        Ok(())
    })?);

    checks.push(run("Serre ad(X)^{1-c} X = 0", &|a, b, fam| {
        if a == b {
            return Ok(());
        }
        let power = 1 - cartan_entry(nn, f(a), f(b));
        for (kind, _) in pm {
            for &r1 in &rs {
                for &r2 in &rs {
                    if !g.exists(kind, a.0, r1) || !g.exists(kind, b.0, r2) {
                        continue;
                    }
                    let x = g.get(kind, a.0, a.1, r1)?;
                    let mut y = g.get(kind, b.0, b.1, r2)?;
                    for _ in 0..power {
                        y = br(&x, &y)?;
                    }
                    fam.record(y.is_zero(), || truncate(format!("{:?} {:?},{} {:?},{}: {:?}", kind, a, r1, b, r2, y)));
                }
            }
        }
        Ok(())
    })?);

    if dala {
        // brackets of r = 0 images stay in the loop part: no v, only ds/s
        checks.push(run("r = 0 images close in the loop subalgebra", &|a, b, fam| {
            for k1 in [GenKind::XPlus, GenKind::XMinus, GenKind::H] {
                for k2 in [GenKind::XPlus, GenKind::XMinus, GenKind::H] {
                    let z = br(&g.get(k1, a.0, a.1, 0)?, &g.get(k2, b.0, b.1, 0)?)?;
                    let mat_ok = z
                        .mat
                        .iter()
                        .all(|(_, _, e)| e.terms().keys().all(|m| m.b == 0));
                    let cen_ok = z
                        .central
                        .terms()
                        .iter()
                        .all(|((s, t), (_, beta))| *s == 0 && *t == 0 && beta.is_zero());
                    fam.record(mat_ok && cen_ok, || format!("{:?}{:?} {:?}{:?}", k1, a, k2, b));
                }
            }
            Ok(())
        })?);
    }
    Ok(checks)
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub saturated: bool,
    pub dimension: usize,
    pub target: usize,
    /// Closure depth at which the first off-diagonal (real root) vector showed up.
    pub first_real_depth: Option<usize>,
}

/// Iterated bracket closure of x under the Chevalley generators of
/// sl_nd(C[t^{+-1}]), kept inside t-degrees |k| <= kwin.
pub fn graded_ideal_probe(x: &MatElem<SmashElem>, depth: usize, kwin: i64) -> Result<ProbeReport> {
    let n = x.n();
    let d = x.proto().d();
    let nn = n * d as usize;
    let target = (2 * kwin as usize + 1) * (nn * nn - 1);
    if x.is_zero() {
        return Ok(ProbeReport {
            saturated: false,
            dimension: 0,
            target,
            first_real_depth: None,
        });
    }
    let one = |k: i64| CommElem::monomial(d, 0, k, CycScalar::one(d));
    let mut gens = Vec::new();
    for p in 0..nn - 1 {
        gens.push(MatElem::unit(nn, p, p + 1, one(0)));
        gens.push(MatElem::unit(nn, p + 1, p, one(0)));
    }
    gens.push(MatElem::unit(nn, nn - 1, 0, one(1)));
    gens.push(MatElem::unit(nn, 0, nn - 1, one(-1)));

    let mut idx = Indexer::new();
    let mut ech = Echelon::<CycScalar>::new();
    let in_window = |m: &MatElem<CommElem>| m.iter().all(|(_, _, c)| c.terms().keys().all(|&(_, k)| k.abs() <= kwin));
    let is_real = |m: &MatElem<CommElem>| m.iter().any(|(p, q, _)| p != q);
    let mut to_vec = |m: &MatElem<CommElem>| -> SparseVec<CycScalar> {
        let mut v = SparseVec::new();
        for (p, q, c) in m.iter() {
            for ((_, k), a) in c.terms() {
                v.insert(idx.index(&(p, q, *k)), a.clone());
            }
        }
        v
    };
    let start = loop_iso(x)?;
    let mut first_real = if is_real(&start) { Some(0) } else { None };
    ech.insert(to_vec(&start));
    let mut frontier = vec![start];
    for level in 1..=depth {
        let mut next = Vec::new();
        for y in &frontier {
            for gen in &gens {
                let z = gen.bracket(y)?;
                if z.is_zero() || !in_window(&z) {
                    continue;
                }
                if ech.insert(to_vec(&z)) {
                    if first_real.is_none() && is_real(&z) {
                        first_real = Some(level);
                    }
                    next.push(z);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(ProbeReport {
        saturated: ech.rank() == target,
        dimension: ech.rank(),
        target,
        first_real_depth: first_real,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smash::idempotent;

    fn lm(n: usize, i: usize, j: usize, d: u32, a: i64, l: i64) -> MatElem<SmashElem> {
        emono(n, i, j, RingVariant::LoopA, d, a, 0, l, CycScalar::one(d)).unwrap()
    }

    #[test]
    fn loop_examples() {
        let y = loop_iso(&lm(2, 0, 1, 2, 0, 0)).unwrap();
        assert_eq!(y, MatElem::unit(4, 0, 1, CommElem::monomial(2, 0, 0, CycScalar::one(2))));
        let y = loop_iso(&lm(2, 0, 0, 2, 1, 0)).unwrap();
        assert_eq!(y, MatElem::unit(4, 2, 0, CommElem::monomial(2, 0, 0, CycScalar::one(2))));
        assert_eq!(loop_iso_inv(&y, 2, 2).unwrap(), lm(2, 0, 0, 2, 1, 0));
    }

    #[test]
    fn graded_calibration() {
        for (n, d) in [(2, 2), (3, 1), (2, 3)] {
            let r = graded_iso_check(n, d, 2).unwrap();
            assert!(r.ok(), "{:?}", r.mismatches);
            assert_eq!(r.mu, -(n as i64));
            assert_eq!(r.kappa, -(n as i64) * d as i64);
            assert_eq!(r.unscaled_holds, d == 1);
        }
    }

    #[test]
    fn cartan_and_eigen() {
        let b = cartan_basis(2, 1).unwrap();
        assert_eq!(b.len(), 1);
        for (n, d) in [(2, 2), (3, 2), (3, 3)] {
            let b = cartan_basis(n, d).unwrap();
            let ms: Vec<_> = b.iter().map(|(_, m)| m.clone()).collect();
            assert_eq!(matrix_rank(&ms), n * d as usize - 1);
        }
        // H_{1,0} on E12 e0 at n = 3, d = 2
        assert_eq!(eigen_formula(3, 2, 1, 0, 1, 2, 0, 0), 2);
        let rows = ad_eigen_table(2, 2, 1).unwrap();
        assert!(rows.iter().all(|r| r.ok));
    }

    #[test]
    fn roots() {
        let s = simple_root_matrix(2, 1);
        assert!(s.unimodular() && s.delta_identity);
        assert_eq!(s.matrix.len(), 2);
    }

    #[test]
    fn c_generators_domain() {
        assert!(PresGenerator::new_c(GenKind::XMinus, 0, 0, 0).is_err());
        assert!(PresGenerator::new_c(GenKind::H, 0, 1, 0).is_err());
        assert!(PresGenerator::new_c(GenKind::XPlus, 0, 0, 0).is_ok());
    }

    #[test]
    fn c_h_central_matches_bracket() {
        let (n, d) = (2, 2);
        for j in 0..d {
            for r in 1..=2 {
                let xp = tau_c(&PresGenerator::new(GenKind::XPlus, 0, j, 0), n, d).unwrap();
                let xm = tau_c(&PresGenerator::new(GenKind::XMinus, 0, j, r), n, d).unwrap();
                let h = tau_c(&PresGenerator::new(GenKind::H, 0, j, r), n, d).unwrap();
                assert_eq!(uce_bracket(&xp, &xm, Route::Direct).unwrap(), h);
            }
        }
    }

    #[test]
    fn probe_small() {
        let r = graded_ideal_probe(&lm(2, 0, 1, 2, 0, 0), 8, 1).unwrap();
        assert!(r.saturated, "{:?}", r);
        let z = MatElem::zero(2, &SmashElem::zero(RingVariant::LoopA, 2));
        assert!(!graded_ideal_probe(&z, 3, 1).unwrap().saturated);
        let _ = idempotent(RingVariant::LoopA, 2, 0);
    }

    #[test]
    fn presentations_small() {
        let ok = |cs: Vec<Check>| cs.iter().all(|c| c.passed());
        assert!(ok(check_presentation(Presentation::Dala, 2, 2, &PresRanges::dala(1)).unwrap()));
        assert!(ok(check_presentation(Presentation::C, 2, 2, &PresRanges::c(1)).unwrap()));
        let mut printed = PresRanges::dala(1);
        printed.table = TauTable::Printed;
        assert!(!ok(check_presentation(Presentation::Dala, 2, 3, &printed).unwrap()));
        assert!(ok(check_presentation(Presentation::KL, 3, 2, &PresRanges::kl(1, 7)).unwrap()));
        assert!(check_presentation(Presentation::Dala, 1, 2, &PresRanges::dala(1)).is_err());
        assert!(check_presentation(Presentation::KL2, 3, 2, &PresRanges::kl(1, 7)).is_err());
    }
}

//! Weyl-module dimension counts: Schur-Weyl characters on S_l, binomial lower
//! bounds, diagonal coinvariant quotients by exact linear algebra, reduced rings
//! and the sl_2 rewriting chains behind the Weyl module relations.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;

use crate::cherednik::CherElem;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::mat::MatElem;
use crate::ring::Ring;
use crate::scalar::{q, Q};

/// A partition of l, parts in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleType {
    pub parts: Vec<usize>,
}

impl CycleType {
    pub fn l(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of cycles.
    pub fn s(&self) -> usize {
        self.parts.len()
    }

    /// Sign of a permutation of this type.
    pub fn sign(&self) -> i64 {
        if (self.l() - self.s()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Size of the conjugacy class: l! / prod k^{m_k} m_k!
    pub fn class_size(&self) -> BigInt {
        let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
        for &p in &self.parts {
            *mult.entry(p).or_default() += 1;
        }
        let mut den = BigInt::one();
        for (k, m) in mult {
            den *= BigInt::from(k).pow(m as u32) * factorial(m);
        }
        factorial(self.l()) / den
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

pub fn partitions(l: usize) -> Vec<CycleType> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<CycleType>) {
        if rest == 0 {
            out.push(CycleType { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(l, l, &mut Vec::new(), &mut out);
    out
}

/// Class functions on S_l.
#[derive(Clone, Debug, PartialEq)]
pub enum Character {
    Trivial,
    Sign,
    /// sigma -> k^{cycles}
    Cf(u64),
    Product(Vec<Character>),
    /// Values on every cycle type.
    Table(BTreeMap<CycleType, Q>),
}

impl Character {
    pub fn eval(&self, c: &CycleType) -> Q {
        match self {
            Character::Trivial => q(1),
            Character::Sign => q(c.sign()),
            Character::Cf(k) => Q::from_integer(BigInt::from(*k).pow(c.s() as u32)),
            Character::Product(fs) => fs.iter().fold(q(1), |a, f| a * f.eval(c)),
            Character::Table(t) => t[c].clone(),
        }
    }

    /// cf(l, k) times the sign character.
    pub fn cf_sign(k: u64) -> Self {
        Character::Product(vec![Character::Cf(k), Character::Sign])
    }
}

/// dim ((C^n)^{(x) l} (x) E)^{S_l} for E with character chi.
pub fn schur_weyl_dim(n: usize, l: usize, chi: &Character) -> BigInt {
    let mut acc = q(0);
    for c in partitions(l) {
        let tensor = Q::from_integer(BigInt::from(n).pow(c.s() as u32));
        acc += Q::from_integer(c.class_size()) * tensor * chi.eval(&c);
    }
    let avg = acc / Q::from_integer(factorial(l));
    assert!(avg.is_integer(), "character average is an integer");
    avg.to_integer()
}

/// schur_weyl_dim(n, l, cf(l, k) sign) == C(nk, l)
pub fn verify_swflk(n: usize, l: usize, k: usize) -> bool {
    schur_weyl_dim(n, l, &Character::cf_sign(k as u64)) == binomial(n * k, l)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Smash,
    Invariant,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeylBound {
    pub bound: BigInt,
    /// Schur-Weyl dimension of the quotient character.
    pub quotient_dim: BigInt,
}

impl WeylBound {
    pub fn consistent(&self) -> bool {
        self.bound == self.quotient_dim
    }
}

/// C(n(dl+1), l) for the smash product ring, C(n(l+1), l) for invariants.
pub fn weyl_lower_bound(n: usize, d: usize, l: usize, which: BoundKind) -> WeylBound {
    let k = match which {
        BoundKind::Smash => d * l + 1,
        BoundKind::Invariant => l + 1,
    };
    WeylBound {
        bound: binomial(n * k, l),
        quotient_dim: schur_weyl_dim(n, l, &Character::cf_sign(k as u64)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoinvGroup {
    /// S_l acting diagonally on C[u,v]^{(x) l}.
    SymmetricOnly,
    /// (Z/d)^l x| S_l with xi acting as (z, z^{-1}).
    Wreath,
    /// Wreath quotient, (Z/d)^l-invariant part.
    WreathInvariants,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolyQuotient {
    pub l: usize,
    pub d: u32,
    pub group: CoinvGroup,
    /// (a, b) of the polarized power sums sum_i u_i^a v_i^b in the ideal.
    pub generators: Vec<(u32, u32)>,
    /// Quotient dimension by total degree.
    pub hilbert: Vec<usize>,
    pub stabilized: bool,
}

impl PolyQuotient {
    pub fn nvars(&self) -> usize {
        2 * self.l
    }

    pub fn total(&self) -> usize {
        self.hilbert.iter().sum()
    }

    /// The dimension, or NotStabilized carrying the lower bound.
    pub fn dimension(&self) -> Result<usize> {
        if self.stabilized {
            Ok(self.total())
        } else {
            Err(Error::NotStabilized(self.total()))
        }
    }
}

type Mono = Vec<u8>;

/// (u-degree, v-degree, residues of a_i - b_i mod d)
type SliceKey = (usize, usize, Vec<u8>);

#[derive(Default)]
struct Slice {
    cols: Vec<Mono>,
    index: HashMap<Mono, usize>,
    ech: Echelon<Q>,
}

impl Slice {
    fn col(&mut self, m: Mono) -> usize {
        if let Some(&c) = self.index.get(&m) {
            return c;
        }
        self.cols.push(m.clone());
        self.index.insert(m, self.cols.len() - 1);
        self.cols.len() - 1
    }

    /// Coefficient of the standard monomial m in the normal form of the monomial x.
    fn nf_coeff(&self, x: &Mono, m: &Mono) -> Q {
        let Some(&cx) = self.index.get(x) else {
            return if x == m { q(1) } else { q(0) };
        };
        let Some(&cm) = self.index.get(m) else { return q(0) };
        let v: SparseVec<Q> = [(cx, q(1))].into_iter().collect();
        self.ech.reduce(v).get(&cm).cloned().unwrap_or_else(|| q(0))
    }

    fn is_standard(&self, m: &Mono) -> bool {
        match self.index.get(m) {
            None => true,
            Some(c) => !self.ech.is_pivot(*c),
        }
    }
}

/// Counts exponent vectors of length l and degree a by residue vector mod d.
fn residue_counts(l: usize, a: usize, d: u8) -> HashMap<Vec<u8>, u64> {
    fn go(i: usize, l: usize, rest: usize, d: u8, cur: &mut Vec<u8>, out: &mut HashMap<Vec<u8>, u64>) {
        if i == l - 1 {
            cur.push((rest % d as usize) as u8);
            *out.entry(cur.clone()).or_default() += 1;
            cur.pop();
            return;
        }
        for e in 0..=rest {
            cur.push((e % d as usize) as u8);
            go(i + 1, l, rest - e, d, cur, out);
            cur.pop();
        }
    }
    let mut out = HashMap::new();
    go(0, l, a, d, &mut Vec::new(), &mut out);
    out
}

/// Quotient of C[u_1..u_l, v_1..v_l] by the ideal of positive degree invariants,
/// degree by degree up to degree_cap. `budget` bounds the monomial count of a
/// single total degree.
pub fn coinvariant_dim(l: usize, d: u32, degree_cap: usize, group: CoinvGroup, budget: u64) -> Result<PolyQuotient> {
    run_coinvariants(l, d, degree_cap, group, budget, |_, _| {})
}

fn run_coinvariants(
    l: usize,
    d: u32,
    degree_cap: usize,
    group: CoinvGroup,
    budget: u64,
    mut visit: impl FnMut(usize, &HashMap<SliceKey, Slice>),
) -> Result<PolyQuotient> {
    assert!(l >= 1 && d >= 1);
    let dd = match group {
        CoinvGroup::SymmetricOnly => 1u8,
        _ => d as u8,
    };
    let generators: Vec<(u32, u32)> = (0..=degree_cap as u32)
        .flat_map(|a| (0..=degree_cap as u32 - a).map(move |b| (a, b)))
        .filter(|&(a, b)| (a, b) != (0, 0) && (a as i64 - b as i64).rem_euclid(dd as i64) == 0)
        .collect();
    let zero_chi = vec![0u8; l];
    let mut hilbert = vec![1usize];
    let mut prev: HashMap<SliceKey, Slice> = HashMap::new();
    let mut stabilized = false;
    for deg in 1..=degree_cap {
        let counts: Vec<(usize, HashMap<Vec<u8>, u64>)> = (0..=deg).map(|a| (a, residue_counts(l, a, dd))).collect();
        let mut keys: Vec<(SliceKey, u64)> = Vec::new();
        let mut total_monos = 0u64;
        for a in 0..=deg {
            let cu = &counts[a].1;
            let cv = &counts[deg - a].1;
            let mut by_chi: HashMap<Vec<u8>, u64> = HashMap::new();
            for (ru, nu) in cu {
                for (rv, nv) in cv {
                    let chi: Vec<u8> = ru.iter().zip(rv).map(|(x, y)| (x + dd - y) % dd).collect();
                    *by_chi.entry(chi).or_default() += nu * nv;
                }
            }
            for (chi, c) in by_chi {
                total_monos += c;
                keys.push(((a, deg - a, chi), c));
            }
        }
        if total_monos > budget {
            return Err(Error::BudgetExceeded(format!("{} monomials in degree {}", total_monos, deg)));
        }
        let built: Vec<(SliceKey, Slice, usize)> = keys
            .par_iter()
            .map(|((a, b, chi), count)| {
                let s = build_slice(l, dd, *a, *b, chi, &prev, &generators, &zero_chi);
                let rank = s.ech.rank();
                ((*a, *b, chi.clone()), s, *count as usize - rank)
            })
            .collect();
        let h: usize = built
            .iter()
            .filter(|(k, _, _)| group != CoinvGroup::WreathInvariants || k.2 == zero_chi)
            .map(|x| x.2)
            .sum();
        let all: usize = built.iter().map(|x| x.2).sum();
        hilbert.push(h);
        prev = built.into_iter().map(|(k, s, _)| (k, s)).collect();
        visit(deg, &prev);
        // the ideal contains every monomial of this degree, hence of all higher ones
        if all == 0 {
            stabilized = true;
            break;
        }
    }
    while hilbert.len() > 1 && *hilbert.last().unwrap() == 0 {
        hilbert.pop();
    }
    Ok(PolyQuotient {
        l,
        d,
        group,
        generators,
        hilbert,
        stabilized,
    })
}

#[allow(clippy::too_many_arguments)]
fn build_slice(
    l: usize,
    dd: u8,
    a: usize,
    b: usize,
    chi: &[u8],
    prev: &HashMap<SliceKey, Slice>,
    generators: &[(u32, u32)],
    zero_chi: &[u8],
) -> Slice {
    let mut s = Slice::default();
    let mut ech: Echelon<Q> = Echelon::new();
    let push = |s: &mut Slice, ech: &mut Echelon<Q>, terms: Vec<(Mono, Q)>| {
        let v: SparseVec<Q> = terms.into_iter().map(|(m, c)| (s.col(m), c)).collect();
        ech.insert(v);
    };
    if chi == zero_chi && generators.contains(&(a as u32, b as u32)) {
        let terms = (0..l)
            .map(|i| {
                let mut m = vec![0u8; 2 * l];
                m[i] = a as u8;
                m[l + i] = b as u8;
                (m, q(1))
            })
            .collect();
        push(&mut s, &mut ech, terms);
    }
    for j in 0..2 * l {
        let factor = j % l;
        let key = if j < l {
            if a == 0 {
                continue;
            }
            let mut c = chi.to_vec();
            c[factor] = (c[factor] + dd - 1) % dd;
            (a - 1, b, c)
        } else {
            if b == 0 {
                continue;
            }
            let mut c = chi.to_vec();
            c[factor] = (c[factor] + 1) % dd;
            (a, b - 1, c)
        };
        let Some(src) = prev.get(&key) else { continue };
        for row in src.ech.rows() {
            let terms = row
                .iter()
                .map(|(col, c)| {
                    let mut m = src.cols[*col].clone();
                    m[j] += 1;
                    (m, c.clone())
                })
                .collect();
            push(&mut s, &mut ech, terms);
        }
    }
    s.ech = ech;
    s
}

fn monos_of(k: usize, deg: usize) -> Vec<Vec<u8>> {
    monomials_of_degree(k, deg).into_iter().map(|m| m.into_iter().map(|e| e as u8).collect()).collect()
}

/// The permutation (0 1 .. p1-1)(p1 ..) .. of a cycle type.
fn representative(c: &CycleType) -> Vec<usize> {
    let mut sigma = Vec::new();
    let mut start = 0;
    for &p in &c.parts {
        for i in 0..p {
            sigma.push(start + (i + 1) % p);
        }
        start += p;
    }
    sigma
}

fn permute(sigma: &[usize], m: &[u8]) -> Vec<u8> {
    let l = sigma.len();
    let mut out = vec![0u8; m.len()];
    for i in 0..l {
        out[sigma[i]] = m[i];
        if m.len() > l {
            out[l + sigma[i]] = m[l + i];
        }
    }
    out
}

/// The coinvariant quotient together with the S_l character (trace of each
/// cycle type) on it.
pub fn coinvariant_character(
    l: usize,
    d: u32,
    degree_cap: usize,
    group: CoinvGroup,
    budget: u64,
) -> Result<(PolyQuotient, BTreeMap<CycleType, Q>)> {
    let types = partitions(l);
    let sigmas: Vec<Vec<usize>> = types.iter().map(representative).collect();
    let mut traces = vec![q(1); types.len()];
    let zero_chi = vec![0u8; l];
    let pq = run_coinvariants(l, d, degree_cap, group, budget, |_, slices| {
        for (t, sigma) in sigmas.iter().enumerate() {
            for ((a, b, chi), s) in slices {
                if group == CoinvGroup::WreathInvariants && *chi != zero_chi {
                    continue;
                }
                if permute(sigma, chi) != *chi {
                    continue;
                }
                for mu in monos_of(l, *a) {
                    for mv in monos_of(l, *b) {
                        let dd = if group == CoinvGroup::SymmetricOnly { 1 } else { d as i64 };
                        let ok = (0..l).all(|i| (mu[i] as i64 - mv[i] as i64).rem_euclid(dd) == chi[i] as i64);
                        if !ok {
                            continue;
                        }
                        let m: Mono = mu.iter().chain(&mv).copied().collect();
                        if s.is_standard(&m) {
                            traces[t] += s.nf_coeff(&permute(sigma, &m), &m);
                        }
                    }
                }
            }
        }
    })?;
    Ok((pq, types.into_iter().zip(traces).collect()))
}

/// dim SW_l^n of the coinvariant quotient, from its computed S_l character.
pub fn coinvariant_weyl_dim(n: usize, l: usize, d: u32, degree_cap: usize, group: CoinvGroup, budget: u64) -> Result<BigInt> {
    let (pq, ch) = coinvariant_character(l, d, degree_cap, group, budget)?;
    pq.dimension()?;
    Ok(schur_weyl_dim(n, l, &Character::Table(ch)))
}

/// Polynomial ring with a diagonal Z/d action: generator k is scaled by z^{weights[k]}.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedRing {
    pub d: u32,
    pub weights: Vec<i64>,
    /// Monomials (exponent vectors) spanning the quotient.
    pub basis: Vec<Vec<u32>>,
    pub stabilized: bool,
}

impl ReducedRing {
    pub fn dimension(&self) -> Result<usize> {
        if self.stabilized {
            Ok(self.basis.len())
        } else {
            Err(Error::NotStabilized(self.basis.len()))
        }
    }
}

fn monomials_of_degree(k: usize, deg: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return if deg == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for e in 0..=deg {
        for mut rest in monomials_of_degree(k - 1, deg - e) {
            rest.insert(0, e as u32);
            out.push(rest);
        }
    }
    out
}

/// A / (ideal generated by the non-invariant part A'), degree by degree. The
/// action is diagonal on monomials, so A' is spanned by the monomials of
/// nonzero weight and the ideal is a monomial ideal.
pub fn reduced_ring(weights: &[i64], d: u32, degree_cap: usize) -> ReducedRing {
    let k = weights.len();
    let invariant = |m: &[u32]| m.iter().zip(weights).map(|(e, w)| *e as i64 * w).sum::<i64>().rem_euclid(d as i64) == 0;
    let mut basis: Vec<Vec<u32>> = Vec::new();
    let mut stabilized = false;
    for deg in 0..=degree_cap {
        let mut found = false;
        for m in monomials_of_degree(k, deg) {
            // m survives iff every divisor of m is invariant
            let divisors_ok = divisors(&m).iter().all(|x| invariant(x));
            if divisors_ok {
                basis.push(m);
                found = true;
            }
        }
        if !found {
            stabilized = true;
            break;
        }
    }
    ReducedRing {
        d,
        weights: weights.to_vec(),
        basis,
        stabilized,
    }
}

fn divisors(m: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &e in m {
        out = out
            .into_iter()
            .flat_map(|pre| {
                (0..=e).map(move |x| {
                    let mut p = pre.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

/// Element of U(f (x) C[P]) v: polynomial in F_k = f (x) P^k, keyed by the
/// sorted multiset of k.
pub type FPoly = BTreeMap<Vec<u32>, Q>;

#[derive(Clone, Debug, PartialEq)]
pub struct RewriteChain {
    /// (description, relation) after each step; every relation is = 0 in the module.
    pub steps: Vec<(String, FPoly)>,
    /// The final relation is a nonzero multiple of (f (x) P^lambda) v.
    pub ok: bool,
}

fn fpoly_add(acc: &mut FPoly, key: Vec<u32>, c: Q) {
    let mut key = key;
    key.sort_unstable();
    let e = acc.entry(key.clone()).or_insert_with(|| q(0));
    *e += c;
    if e.is_zero() {
        acc.remove(&key);
    }
}

/// (h (x) P^b) applied to F_{ks} v: -2 F_{k+b} per factor, then lambda eps(P)^b.
fn apply_h(b: u32, ks: &[u32], lam: &Q, eps: &Q, c: &Q, out: &mut FPoly) {
    for i in 0..ks.len() {
        let mut m = ks.to_vec();
        m[i] += b;
        fpoly_add(out, m, c * q(-2));
    }
    let ev = if b == 0 { q(1) } else { Pow::pow(eps.clone(), b) };
    let x = c * lam * ev;
    if !x.is_zero() {
        fpoly_add(out, ks.to_vec(), x);
    }
}

/// (e (x) P^a) applied to an element: [e_a, F_k] = h_{a+k}, e_a v = 0.
fn apply_e(a: u32, x: &FPoly, lam: &Q, eps: &Q) -> FPoly {
    let mut out = FPoly::new();
    for (ks, c) in x {
        for i in 0..ks.len() {
            let rest = &ks[i + 1..];
            let mut tmp = FPoly::new();
            apply_h(a + ks[i], rest, lam, eps, c, &mut tmp);
            for (m, y) in tmp {
                let mut full = ks[..i].to_vec();
                full.extend(m);
                fpoly_add(&mut out, full, y);
            }
        }
    }
    out
}

/// Starting from f^{lambda+1} v = 0, applies (e (x) P) j times. With eps(P) = 0
/// the j-th relation involves f-degree lambda+1-j and P-weight j; at j = lambda
/// it is a multiple of (f (x) P^lambda) v.
pub fn sl2_weyl_relations(lambda: u32, eps: &Q, j: u32) -> RewriteChain {
    let lam = q(lambda as i64);
    let mut cur = FPoly::new();
    cur.insert(vec![0; lambda as usize + 1], q(1));
    let mut steps = vec![(format!("f^{} v = 0", lambda + 1), cur.clone())];
    for s in 1..=j {
        cur = apply_e(1, &cur, &lam, eps);
        steps.push((format!("(e (x) P)^{} f^{} v = 0", s, lambda + 1), cur.clone()));
    }
    let ok = cur.len() == 1 && cur.keys().next() == Some(&vec![lambda]);
    RewriteChain { steps, ok }
}

/// The bracket chain behind (f (x) (PQ + QP)) v = 0 in sl_2 over a noncommutative
/// ring: [h (x) Q, f (x) P] = -f (x) (QP + PQ).
pub fn sl2_mul_chain(p: &CherElem, qq: &CherElem) -> bool {
    let h = |x: &CherElem| MatElem::unit(2, 0, 0, x.clone()).sub(&MatElem::unit(2, 1, 1, x.clone()));
    let f = |x: &CherElem| MatElem::unit(2, 1, 0, x.clone());
    let lhs = h(qq).bracket(&f(p)).expect("2x2");
    let rhs = f(&qq.mul(p).add(&p.mul(qq))).neg();
    lhs == rhs
}

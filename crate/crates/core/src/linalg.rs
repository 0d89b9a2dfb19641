//! Sparse exact row reduction over Q and Q(z).

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::scalar::{CycScalar, Q};

pub trait Field: Clone + PartialEq + Debug {
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero; callers only invert pivots.
    fn inv(&self) -> Self;
}

impl Field for Q {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        Q::one() / self
    }
}

impl Field for CycScalar {
    fn is_zero(&self) -> bool {
        CycScalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        CycScalar::inv(self).expect("pivot is nonzero")
    }
}

pub type SparseVec<F> = BTreeMap<usize, F>;

/// Incrementally built row-echelon basis. Each stored row has pivot equal to
/// its smallest column and pivot coefficient 1.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    rows: Vec<SparseVec<F>>,
    pivots: HashMap<usize, usize>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: HashMap::new(),
        }
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces v against the stored rows.
    pub fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        let mut cur = 0usize;
        loop {
            let next = v
                .range(cur..)
                .find(|(k, _)| self.pivots.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { break };
            let row = &self.rows[self.pivots[&k]];
            for (j, x) in row {
                let y = c.mul(x);
                let nv = match v.get(j) {
                    Some(old) => old.sub(&y),
                    None => y.neg(),
                };
                if nv.is_zero() {
                    v.remove(j);
                } else {
                    v.insert(*j, nv);
                }
            }
            cur = k + 1;
        }
        v
    }

    /// Adds v to the span; returns true when it was independent.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let v = self.reduce(v);
        let Some((&p, c)) = v.iter().next() else {
            return false;
        };
        let ci = c.inv();
        let row: SparseVec<F> = v.iter().map(|(k, x)| (*k, x.mul(&ci))).collect();
        self.pivots.insert(p, self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn contains(&self, v: SparseVec<F>) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }
}

/// Rank of a list of sparse vectors.
pub fn rank<F: Field>(vs: impl IntoIterator<Item = SparseVec<F>>) -> usize {
    let mut e = Echelon::new();
    for v in vs {
        e.insert(v);
    }
    e.rank()
}

/// Assigns dense column indices to arbitrary keys.
#[derive(Clone, Debug, Default)]
pub struct Indexer<K: std::hash::Hash + Eq + Clone> {
    map: HashMap<K, usize>,
}

impl<K: std::hash::Hash + Eq + Clone> Indexer<K> {
    pub fn new() -> Self {
        Indexer {
            map: HashMap::new(),
        }
    }

    pub fn index(&mut self, k: &K) -> usize {
        let n = self.map.len();
        *self.map.entry(k.clone()).or_insert(n)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Reduced row echelon form of a dense matrix; returns the pivot columns.
pub fn rref<F: Field>(a: &mut [Vec<F>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv();
        for x in a[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for k in c..cols {
                let y = f.mul(&a[r][k]);
                a[i][k] = a[i][k].sub(&y);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Some solution of A x = b (free variables set to zero), or None.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F], zero: &F) -> Option<Vec<F>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, y)| {
            let mut r = row.clone();
            r.push(y.clone());
            r
        })
        .collect();
    let piv = rref(&mut m);
    if piv.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![zero.clone(); cols];
    for (r, &c) in piv.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    Some(x)
}

/// Basis of the right kernel of A (ncols columns).
pub fn nullspace<F: Field>(a: &[Vec<F>], ncols: usize, zero: &F, one: &F) -> Vec<Vec<F>> {
    let mut m = a.to_vec();
    let piv = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![zero.clone(); ncols];
            v[f] = one.clone();
            for (r, &c) in piv.iter().enumerate() {
                v[c] = m[r][f].neg();
            }
            v
        })
        .collect()
}

//! Sparse square matrices over a coefficient ring.
//!
//! Indices are 0-based internally; the CLI prints `E[i,j]` 1-based.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::scalar::CycScalar;

#[derive(Clone, PartialEq)]
pub struct MatElem<R: Ring> {
    n: usize,
    zero: R,
    entries: BTreeMap<(usize, usize), R>,
}

impl<R: Ring> MatElem<R> {
    /// The zero matrix; `proto` is any element of the coefficient ring.
    pub fn zero(n: usize, proto: &R) -> Self {
        MatElem {
            n,
            zero: proto.zero_like(),
            entries: BTreeMap::new(),
        }
    }

    /// E_{ij} * r (0-based).
    pub fn unit(n: usize, i: usize, j: usize, r: R) -> Self {
        let mut m = Self::zero(n, &r);
        m.add_entry(i, j, &r);
        m
    }

    pub fn identity(n: usize, r: R) -> Self {
        let mut m = Self::zero(n, &r);
        for i in 0..n {
            m.add_entry(i, i, &r);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn proto(&self) -> &R {
        &self.zero
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), R> {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> R {
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| self.zero.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_entry(&mut self, i: usize, j: usize, r: &R) {
        assert!(i < self.n && j < self.n, "index out of range");
        if r.is_zero() {
            return;
        }
        let cur = self.entries.remove(&(i, j));
        let v = match cur {
            Some(c) => c.add(r),
            None => r.clone(),
        };
        if !v.is_zero() {
            self.entries.insert((i, j), v);
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ShapeMismatch(format!("{} vs {}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for ((i, j), r) in &other.entries {
            out.add_entry(*i, *j, r);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.n, &self.zero);
        // index the right factor by row
        let mut rows: BTreeMap<usize, Vec<(usize, &R)>> = BTreeMap::new();
        for ((k, j), r) in &other.entries {
            rows.entry(*k).or_default().push((*j, r));
        }
        for ((i, k), a) in &self.entries {
            if let Some(row) = rows.get(k) {
                for (j, b) in row {
                    out.add_entry(*i, *j, &a.mul(b));
                }
            }
        }
        Ok(out)
    }

    /// [x, y] = xy - yx.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        Ok(self.try_mul(other)?.sub(&other.try_mul(self)?))
    }

    pub fn trace(&self) -> R {
        let mut t = self.zero.clone();
        for ((i, j), r) in &self.entries {
            if i == j {
                t = t.add(r);
            }
        }
        t
    }

    pub fn map<S: Ring>(&self, proto: &S, f: impl Fn(&R) -> S) -> MatElem<S> {
        let mut out = MatElem::zero(self.n, proto);
        for ((i, j), r) in &self.entries {
            out.add_entry(*i, *j, &f(r));
        }
        out
    }

    /// Iterates nonzero entries as (row, col, value).
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &R)> {
        self.entries.iter().map(|((i, j), r)| (*i, *j, r))
    }
}

impl<R: Ring> Ring for MatElem<R> {
    fn zero_like(&self) -> Self {
        Self::zero(self.n, &self.zero)
    }
    fn one_like(&self) -> Self {
        Self::identity(self.n, self.zero.one_like())
    }
    fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("shape mismatch")
    }
    fn neg(&self) -> Self {
        let mut out = self.clone();
        for v in out.entries.values_mut() {
            *v = v.neg();
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("shape mismatch")
    }
    fn scale(&self, c: &CycScalar) -> Self {
        let mut out = Self::zero(self.n, &self.zero);
        for ((i, j), r) in &self.entries {
            out.add_entry(*i, *j, &r.scale(c));
        }
        out
    }
}

impl<R: Ring> fmt::Debug for MatElem<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}{{", self.n)?;
        for (k, ((i, j), r)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({},{}): {:?}", i, j, r)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_relation() {
        let one = CycScalar::one(1);
        let e = MatElem::unit(2, 0, 1, one.clone());
        let f = MatElem::unit(2, 1, 0, one.clone());
        let h = MatElem::unit(2, 0, 0, one.clone()).sub(&MatElem::unit(2, 1, 1, one.clone()));
        assert_eq!(e.bracket(&f).unwrap(), h);
        assert!(e.bracket(&e).unwrap().is_zero());
    }

    #[test]
    fn shape_mismatch() {
        let one = CycScalar::one(1);
        let a = MatElem::unit(2, 0, 1, one.clone());
        let b = MatElem::unit(3, 0, 1, one);
        assert!(matches!(a.bracket(&b), Err(Error::ShapeMismatch(_))));
    }
}

//! Univariate polynomials over the cyclotomic field.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{q, CycScalar};

/// Dense polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq)]
pub struct UPoly {
    d: u32,
    c: Vec<CycScalar>,
}

impl UPoly {
    pub fn zero(d: u32) -> Self {
        UPoly { d, c: Vec::new() }
    }

    pub fn one(d: u32) -> Self {
        Self::constant(CycScalar::one(d))
    }

    pub fn constant(c: CycScalar) -> Self {
        let d = c.d();
        Self::from_coeffs(d, vec![c])
    }

    /// The variable itself.
    pub fn x(d: u32) -> Self {
        Self::from_coeffs(d, vec![CycScalar::zero(d), CycScalar::one(d)])
    }

    /// x - a
    pub fn linear(a: &CycScalar) -> Self {
        let d = a.d();
        Self::from_coeffs(d, vec![-a, CycScalar::one(d)])
    }

    pub fn from_coeffs(d: u32, mut c: Vec<CycScalar>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { d, c }
    }

    pub fn from_ints(d: u32, c: &[i64]) -> Self {
        Self::from_coeffs(d, c.iter().map(|&x| CycScalar::from_int(d, x)).collect())
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn coeffs(&self) -> &[CycScalar] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> CycScalar {
        self.c.get(k).cloned().unwrap_or_else(|| CycScalar::zero(self.d))
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(|x| x.is_one())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::from_coeffs(self.d, (0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        UPoly {
            d: self.d,
            c: self.c.iter().map(|x| -x).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &CycScalar) -> Self {
        Self::from_coeffs(self.d, self.c.iter().map(|x| x * k).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.d);
        }
        let mut c = vec![CycScalar::zero(self.d); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += &(a * b);
            }
        }
        Self::from_coeffs(self.d, c)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.d);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &CycScalar) -> CycScalar {
        let mut acc = CycScalar::zero(self.d);
        for c in self.c.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// p(x + a)
    pub fn shift(&self, a: &CycScalar) -> Self {
        let lin = Self::from_coeffs(self.d, vec![a.clone(), CycScalar::one(self.d)]);
        let mut acc = Self::zero(self.d);
        for c in self.c.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// p(x + k) for an integer k.
    pub fn shift_int(&self, k: i64) -> Self {
        self.shift(&CycScalar::from_int(self.d, k))
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.d,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, x)| x.scale(&q(k as i64)))
                .collect(),
        )
    }

    pub fn divrem(&self, o: &Self) -> Result<(Self, Self)> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lead_inv = o.c.last().unwrap().inv()?;
        let mut r = self.c.clone();
        let mut qv = vec![CycScalar::zero(self.d); self.c.len().saturating_sub(o.c.len()) + 1];
        while r.len() >= o.c.len() && !r.is_empty() {
            let shift = r.len() - o.c.len();
            let k = r.last().unwrap() * &lead_inv;
            for (j, y) in o.c.iter().enumerate() {
                r[shift + j] -= &(&k * y);
            }
            qv[shift] = k;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        Ok((Self::from_coeffs(self.d, qv), Self::from_coeffs(self.d, r)))
    }

    pub fn divides(&self, o: &Self) -> bool {
        if self.is_zero() {
            return o.is_zero();
        }
        self.divrem_rev(o)
    }

    fn divrem_rev(&self, o: &Self) -> bool {
        o.divrem(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    pub fn monic(&self) -> Result<Self> {
        let lead = self.c.last().ok_or(Error::DivisionByZero)?;
        Ok(self.scale(&lead.inv()?))
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| format!("({})*X^{}", x, k))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_and_divide() {
        let p = UPoly::from_ints(1, &[0, 0, 1]); // x^2
        assert_eq!(p.shift_int(1), UPoly::from_ints(1, &[1, 2, 1]));
        let (qq, r) = UPoly::from_ints(1, &[-1, 0, 1]).divrem(&UPoly::from_ints(1, &[-1, 1])).unwrap();
        assert_eq!(qq, UPoly::from_ints(1, &[1, 1]));
        assert!(r.is_zero());
        assert!(UPoly::from_ints(1, &[-1, 1]).divides(&UPoly::from_ints(1, &[-1, 0, 1])));
        assert!(!UPoly::from_ints(1, &[2, 1]).divides(&UPoly::from_ints(1, &[-1, 0, 1])));
    }
}

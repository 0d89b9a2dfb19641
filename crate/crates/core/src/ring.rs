//! A minimal interface shared by every coefficient ring used in matrices.

use std::fmt::Debug;

use crate::scalar::CycScalar;

/// Ring elements that carry their own context (root order, parameters).
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &CycScalar) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }
}

impl Ring for CycScalar {
    fn zero_like(&self) -> Self {
        CycScalar::zero(self.d())
    }
    fn one_like(&self) -> Self {
        CycScalar::one(self.d())
    }
    fn is_zero(&self) -> bool {
        CycScalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &CycScalar) -> Self {
        self * c
    }
}

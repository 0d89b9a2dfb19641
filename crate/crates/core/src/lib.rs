//! Exact symbolic computation for cyclic double affine Lie algebras.
//!
//! Coefficients live in the cyclotomic field `Q(z)`; every identity is checked
//! with exact arithmetic.

pub mod cherednik;
pub mod comm;
pub mod error;
pub mod glinf;
pub mod highestweight;
pub mod linalg;
pub mod mat;
pub mod matlie;
pub mod report;
pub mod ring;
pub mod sample;
pub mod scalar;
pub mod smash;
pub mod structure;
pub mod upoly;
pub mod weyl;

pub use error::{Error, Result};
pub use ring::Ring;
pub use scalar::{CycScalar, Q};
pub use comm::{kahler_reduce, CommElem, CommVariant, KahlerClass};
pub use mat::MatElem;
pub use smash::{idempotent, RingVariant, SmashElem, SmashMonomial};
pub use cherednik::{CherElem, CherParams, TrigElem};
pub use upoly::UPoly;
pub use matlie::{uce_bracket, ExtElem, Route};

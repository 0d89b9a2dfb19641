//! Seeded random elements for property sweeps.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::mat::MatElem;
use crate::ring::Ring;
use crate::scalar::{qf, CycScalar};
use crate::smash::{RingVariant, SmashElem};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small element of Q(z): a few z-powers with fractions of small height.
pub fn scalar(rng: &mut SampleRng, d: u32) -> CycScalar {
    let mut x = CycScalar::zero(d);
    for _ in 0..rng.gen_range(1..=2) {
        let num = rng.gen_range(-4..=4);
        let den = rng.gen_range(1..=3);
        let k = rng.gen_range(0..d as i64);
        x += &CycScalar::zeta_pow(d, k).scale(&qf(num, den));
    }
    if x.is_zero() {
        CycScalar::one(d)
    } else {
        x
    }
}

/// Exponent ranges respecting the variant.
fn exps(rng: &mut SampleRng, v: RingVariant, e: i64) -> (i64, i64) {
    let lo = |allow_neg: bool| if allow_neg { -e } else { 0 };
    let (a_neg, b_neg, b_zero) = match v {
        RingVariant::A => (true, true, false),
        RingVariant::B => (true, false, false),
        RingVariant::C => (false, false, false),
        RingVariant::LoopA => (true, false, true),
        RingVariant::PolyB => (false, false, true),
        RingVariant::GroupRing => return (0, 0),
    };
    let a = rng.gen_range(lo(a_neg)..=e);
    let b = if b_zero { 0 } else { rng.gen_range(lo(b_neg)..=e) };
    (a, b)
}

pub fn smash(rng: &mut SampleRng, v: RingVariant, d: u32, max_exp: i64, terms: usize) -> SmashElem {
    let mut x = SmashElem::zero(v, d);
    for _ in 0..terms {
        let (a, b) = exps(rng, v, max_exp);
        let i = rng.gen_range(0..d as i64);
        let c = scalar(rng, d);
        x = x.add(&SmashElem::monomial(v, d, a, b, i, c).expect("exponents drawn inside the variant"));
    }
    x
}

/// A random matrix with `entries` nonzero positions.
pub fn matrix(
    rng: &mut SampleRng,
    n: usize,
    v: RingVariant,
    d: u32,
    max_exp: i64,
    entries: usize,
) -> MatElem<SmashElem> {
    let mut m = MatElem::zero(n, &SmashElem::zero(v, d));
    for _ in 0..entries {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        m.add_entry(i, j, &smash(rng, v, d, max_exp, 1));
    }
    m
}

/// Random element of sl_n: off-diagonal entries plus traceless diagonal
/// pairs E_ii a - E_jj a.
pub fn sl_matrix(
    rng: &mut SampleRng,
    n: usize,
    v: RingVariant,
    d: u32,
    max_exp: i64,
    entries: usize,
) -> MatElem<SmashElem> {
    let mut m = MatElem::zero(n, &SmashElem::zero(v, d));
    for _ in 0..entries {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        let a = smash(rng, v, d, max_exp, 1);
        if i == j {
            let k = (i + 1) % n;
            m.add_entry(i, i, &a);
            m.add_entry(k, k, &a.neg());
        } else {
            m.add_entry(i, j, &a);
        }
    }
    m
}

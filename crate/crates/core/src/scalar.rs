//! Exact arithmetic in the cyclotomic field Q(z), z a primitive d-th root of unity.
//!
//! Elements are residues of degree < phi(d) modulo the cyclotomic polynomial.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = num_rational::BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, m: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(m))
}

// Dense polynomial helpers over Q, low degree first, no trailing zeros.

fn trim(p: &mut Vec<Q>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

fn poly_divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().expect("nonzero divisor").clone();
    let mut qv = vec![Q::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &c * y;
        }
        qv[shift] = c;
        trim(&mut r);
    }
    trim(&mut qv);
    (qv, r)
}

/// The d-th cyclotomic polynomial, by dividing x^d - 1 by Phi_e for every proper divisor e.
pub fn cyclotomic(d: u32) -> Vec<Q> {
    assert!(d >= 1, "root order must be positive");
    let mut p = vec![Q::zero(); d as usize + 1];
    p[0] = q(-1);
    p[d as usize] = q(1);
    for e in 1..d {
        if d % e == 0 {
            let (quot, rem) = poly_divrem(&p, &cyclotomic(e));
            debug_assert!(rem.is_empty());
            p = quot;
        }
    }
    p
}

struct Ctx {
    phi: usize,
    modulus: Vec<Q>,
    /// x^k mod Phi_d for k < 2*phi - 1.
    powers: Vec<Vec<Q>>,
    /// z^k for 0 <= k < d.
    zetas: Vec<Vec<Q>>,
}

fn ctx(d: u32) -> Arc<Ctx> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Ctx>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(c) = cache.read().unwrap().get(&d) {
        return c.clone();
    }
    let modulus = cyclotomic(d);
    let phi = modulus.len() - 1;
    let mut powers = Vec::with_capacity(2 * phi);
    let mut cur = vec![Q::zero(); phi];
    cur[0] = q(1);
    for _ in 0..(2 * phi).max(1) {
        powers.push(cur.clone());
        // multiply by x and reduce
        let top = cur[phi - 1].clone();
        let mut next = vec![Q::zero(); phi];
        for k in (1..phi).rev() {
            next[k] = cur[k - 1].clone();
        }
        if !top.is_zero() {
            for k in 0..phi {
                next[k] -= &top * &modulus[k];
            }
        }
        cur = next;
    }
    // z^k by repeated multiplication by x
    let mut zetas = Vec::with_capacity(d as usize);
    let mut cur = vec![Q::zero(); phi];
    cur[0] = q(1);
    for _ in 0..d {
        zetas.push(cur.clone());
        let top = cur[phi - 1].clone();
        let mut next = vec![Q::zero(); phi];
        for k in (1..phi).rev() {
            next[k] = cur[k - 1].clone();
        }
        for k in 0..phi {
            next[k] -= &top * &modulus[k];
        }
        cur = next;
    }
    let c = Arc::new(Ctx {
        phi,
        modulus,
        powers,
        zetas,
    });
    cache.write().unwrap().insert(d, c.clone());
    c
}

/// Euler's phi, the degree of the field.
pub fn euler_phi(d: u32) -> usize {
    ctx(d).phi
}

/// An element of Q(z) with z^d = 1 primitive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycScalar {
    d: u32,
    c: Vec<Q>,
}

impl CycScalar {
    pub fn zero(d: u32) -> Self {
        let phi = ctx(d).phi;
        CycScalar {
            d,
            c: vec![Q::zero(); phi],
        }
    }

    pub fn one(d: u32) -> Self {
        Self::from_q(d, q(1))
    }

    pub fn from_q(d: u32, x: Q) -> Self {
        let mut s = Self::zero(d);
        s.c[0] = x;
        s
    }

    pub fn from_int(d: u32, x: i64) -> Self {
        Self::from_q(d, q(x))
    }

    pub fn from_frac(d: u32, n: i64, m: i64) -> Self {
        Self::from_q(d, qf(n, m))
    }

    /// z^k for any integer k.
    pub fn zeta_pow(d: u32, k: i64) -> Self {
        let cx = ctx(d);
        CycScalar {
            d,
            c: cx.zetas[k.rem_euclid(d as i64) as usize].clone(),
        }
    }

    /// Builds from coefficients in the power basis 1, z, z^2, ... of arbitrary length.
    pub fn from_coeffs(d: u32, coeffs: &[Q]) -> Self {
        let cx = ctx(d);
        let mut out = Self::zero(d);
        for (k, a) in coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let zk = if k < cx.powers.len() {
                Self {
                    d,
                    c: cx.powers[k].clone(),
                }
            } else {
                Self::zeta_pow(d, k as i64)
            };
            out += &zk.scale(a);
        }
        out
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|x| x.is_zero())
    }

    /// Returns the rational value when the element lies in Q.
    pub fn as_q(&self) -> Option<&Q> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    /// Same element viewed with a different root order, when it is rational.
    pub fn with_d(&self, d: u32) -> Option<Self> {
        self.as_q().map(|x| Self::from_q(d, x.clone()))
    }

    pub fn scale(&self, a: &Q) -> Self {
        CycScalar {
            d: self.d,
            c: self.c.iter().map(|x| x * a).collect(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            Err(Error::MixedRootOrder {
                left: self.d,
                right: other.d,
            })
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(CycScalar {
            d: self.d,
            c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let cx = ctx(self.d);
        let phi = cx.phi;
        let mut raw = vec![Q::zero(); 2 * phi - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        let mut c = vec![Q::zero(); phi];
        for (k, a) in raw.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if k < phi {
                c[k] += a;
            } else {
                for (t, p) in cx.powers[k].iter().enumerate() {
                    if !p.is_zero() {
                        c[t] += a * p;
                    }
                }
            }
        }
        Ok(CycScalar { d: self.d, c })
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against Phi_d.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let cx = ctx(self.d);
        let mut a = self.c.clone();
        trim(&mut a);
        // invariant: s * self == r0 (mod Phi)
        let (mut r0, mut r1) = (a, cx.modulus.clone());
        let (mut s0, mut s1) = (vec![q(1)], Vec::<Q>::new());
        while !r1.is_empty() {
            let (quot, rem) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&quot, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since Phi_d is irreducible
        debug_assert_eq!(r0.len(), 1);
        let k = Q::one() / &r0[0];
        let s: Vec<Q> = s0.iter().map(|x| x * &k).collect();
        Ok(Self::from_coeffs(self.d, &s))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.d);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Exact string such as `(2+z)/3`, `-z^2`, `5/7`.
    pub fn to_exact_string(&self) -> String {
        let mut den = BigInt::one();
        for x in &self.c {
            den = den.lcm(x.denom());
        }
        let nums: Vec<BigInt> = self
            .c
            .iter()
            .map(|x| (x * Q::from_integer(den.clone())).to_integer())
            .collect();
        let mut body = String::new();
        let mut terms = 0;
        for (k, a) in nums.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            terms += 1;
            let neg = a.is_negative();
            let mag = a.abs();
            if neg {
                body.push('-');
            } else if !body.is_empty() {
                body.push('+');
            }
            let var = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{}", k),
            };
            if k == 0 {
                body.push_str(&mag.to_string());
            } else if mag.is_one() {
                body.push_str(&var);
            } else {
                body.push_str(&format!("{}*{}", mag, var));
            }
        }
        if terms == 0 {
            return "0".into();
        }
        if den.is_one() {
            body
        } else if terms == 1 {
            format!("{}/{}", body, den)
        } else {
            format!("({})/{}", body, den)
        }
    }

    /// True when the printed form needs parentheses as a factor.
    pub fn is_compound(&self) -> bool {
        self.c.iter().filter(|x| !x.is_zero()).count() > 1
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_exact_string())
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[d={}]", self.to_exact_string(), self.d)
    }
}

impl<'a> Add<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        self.try_add(rhs).expect("mixed root orders")
    }
}

impl<'a> Sub<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        self.check(rhs).expect("mixed root orders");
        CycScalar {
            d: self.d,
            c: self.c.iter().zip(&rhs.c).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        self.try_mul(rhs).expect("mixed root orders")
    }
}

impl<'a> Div<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn div(self, rhs: &CycScalar) -> CycScalar {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            d: self.d,
            c: self.c.iter().map(|a| -a).collect(),
        }
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: CycScalar) -> CycScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: &CycScalar) -> CycScalar {
                (&self).$m(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl AddAssign<&CycScalar> for CycScalar {
    fn add_assign(&mut self, rhs: &CycScalar) {
        self.check(rhs).expect("mixed root orders");
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            *a += b;
        }
    }
}

impl SubAssign<&CycScalar> for CycScalar {
    fn sub_assign(&mut self, rhs: &CycScalar) {
        self.check(rhs).expect("mixed root orders");
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            *a -= b;
        }
    }
}

impl MulAssign<&CycScalar> for CycScalar {
    fn mul_assign(&mut self, rhs: &CycScalar) {
        *self = &*self * rhs;
    }
}

//! JSON input files for `qfin` and `integrable`.
//!
//! Scalars are strings in the expression grammar (`"1/2"`, `"1+z"`) or plain
//! integers.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::Value as J;

use cdala::highestweight::{PseudoWeight, TensorFactor, TensorLabels, WeightData};
use cdala::{CycScalar, UPoly};

use crate::error::CliError;
use crate::expr::parse_scalar;

#[derive(Deserialize)]
struct WeightEntry {
    i: usize,
    l: u32,
    r: usize,
    value: J,
}

#[derive(Deserialize)]
struct WeightFile {
    n: usize,
    d: u32,
    rmax: usize,
    values: Vec<WeightEntry>,
}

#[derive(Deserialize)]
struct LabelEntry {
    k: i64,
    p: usize,
    value: J,
}

#[derive(Deserialize)]
struct FactorFile {
    m: usize,
    a: J,
    labels: Vec<LabelEntry>,
}

#[derive(Deserialize)]
struct TensorFile {
    d: u32,
    factors: Vec<FactorFile>,
}

#[derive(Deserialize)]
struct PseudoEntry {
    i: usize,
    j: u32,
    r: i64,
    value: J,
}

#[derive(Deserialize)]
struct PolyEntry {
    i: usize,
    j: u32,
    coeffs: Vec<J>,
}

#[derive(Deserialize)]
struct PseudoFile {
    n: usize,
    d: u32,
    values: Vec<PseudoEntry>,
    #[serde(default)]
    polys: Option<Vec<PolyEntry>>,
}

pub enum QfinInput {
    Weight(WeightData),
    Tensor(TensorLabels),
}

fn scalar(v: &J, d: u32) -> Result<CycScalar, CliError> {
    match v {
        J::String(s) => parse_scalar(s, d),
        J::Number(n) => parse_scalar(&n.to_string(), d),
        other => Err(CliError::Input(format!("expected a scalar, got {}", other))),
    }
}

fn json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))
}

/// A weight table, or tensor labels when the document has a `factors` key.
pub fn read_qfin_input(text: &str) -> Result<QfinInput, CliError> {
    let raw: J = json(text)?;
    if raw.get("factors").is_some() {
        let f: TensorFile = json(text)?;
        let mut factors = Vec::new();
        for fac in f.factors {
            let mut labels = BTreeMap::new();
            for e in fac.labels {
                labels.insert((e.k, e.p), scalar(&e.value, f.d)?);
            }
            factors.push(TensorFactor {
                m: fac.m,
                a: scalar(&fac.a, f.d)?,
                labels,
            });
        }
        return Ok(QfinInput::Tensor(TensorLabels { factors }));
    }
    let w: WeightFile = json(text)?;
    let mut out = WeightData::zero(w.n, w.d, w.rmax);
    for e in w.values {
        out.set(e.i, e.l, e.r, scalar(&e.value, w.d)?)?;
    }
    Ok(QfinInput::Weight(out))
}

pub type PolyTable = BTreeMap<(usize, u32), UPoly>;

pub fn read_pseudo_weight(text: &str) -> Result<(PseudoWeight, Option<PolyTable>), CliError> {
    let f: PseudoFile = json(text)?;
    let mut lam = PseudoWeight::zero(f.n, f.d);
    for e in f.values {
        if e.i >= f.n || e.j >= f.d {
            return Err(CliError::Input(format!("entry ({}, {}) outside n={} d={}", e.i, e.j, f.n, f.d)));
        }
        lam.values.insert((e.i, e.j, e.r), scalar(&e.value, f.d)?);
    }
    let polys = match f.polys {
        None => None,
        Some(ps) => {
            let mut t = BTreeMap::new();
            for p in ps {
                let c = p.coeffs.iter().map(|c| scalar(c, f.d)).collect::<Result<Vec<_>, _>>()?;
                t.insert((p.i, p.j), UPoly::from_coeffs(f.d, c));
            }
            Some(t)
        }
    };
    Ok((lam, polys))
}

/// Polynomial in w, highest power first.
pub fn print_upoly(p: &UPoly) -> String {
    let mut parts = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let cs = c.to_string();
        let wrapped = if cs.contains(['+', '-']) && !(cs.starts_with('-') && !cs[1..].contains(['+', '-'])) {
            format!("({})", cs)
        } else {
            cs
        };
        parts.push(match k {
            0 => wrapped,
            _ => {
                let w = if k == 1 { "w".to_string() } else { format!("w^{}", k) };
                match wrapped.as_str() {
                    "1" => w,
                    "-1" => format!("-{}", w),
                    _ => format!("{}*{}", wrapped, w),
                }
            }
        });
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut s = parts[0].clone();
    for p in &parts[1..] {
        match p.strip_prefix('-') {
            Some(rest) => s += &format!(" - {}", rest),
            None => s += &format!(" + {}", p),
        }
    }
    s
}

/// x1^a*x2^b... for an exponent vector.
pub fn print_monomial(m: &[u32]) -> String {
    let f: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
        .collect();
    if f.is_empty() {
        "1".into()
    } else {
        f.join("*")
    }
}

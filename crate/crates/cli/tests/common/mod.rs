//! Helpers shared by the CLI test targets.
#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use cdala::{CherElem, CherParams, CycScalar, RingVariant, SmashElem, TrigElem};
use cdala_cli::expr::{parse, print_value, Ctx, RingKind, Syntax};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

pub fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cdala").chain(args.iter().copied());
    let code = cdala_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

pub fn run_json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let (code, out, err) = run(&a);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{:?}: {} / {}", args, e, err));
    (code, v)
}

pub fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub const GOLDEN: &[(&str, &[&str])] = &[
    ("bracket_cher", &["bracket", "--ring", "cher", "--d", "2", "--c", "1", "v*u", "u"]),
    ("uce_bracket", &["uce-bracket", "--ring", "A", "--d", "2", "E[1,2]*u", "E[2,1]*v"]),
    ("iso_loop", &["iso", "--which", "loop", "--ring", "loopA", "--d", "2", "E[1,2]*u^3*e[1]"]),
    ("iso_graded", &["iso", "--which", "graded", "--n", "2", "--d", "2", "--rmax", "1"]),
    ("roots", &["roots", "--n", "2", "--d", "2", "--rmax", "1"]),
    ("decompose", &["decompose", "--which", "td2", "--ring", "A", "--d", "2", "E[1,2]*u^-1 + E[2,1]*v*e[1] + E[1,1]*x"]),
    ("glinf", &["glinf", "--ring", "cher", "--d", "2", "--c", "1", "--window", "-12:12", "E[1,2]*u*e[0]", "E[2,1]*v"]),
    ("weyl_coinv", &["weyl", "coinv", "--l", "2", "--d", "2", "--degree-cap", "10"]),
    ("weyl_bound", &["weyl", "bound", "--n", "2", "--d", "2", "--l", "2", "--which", "smash"]),
    ("reduce_ring", &["reduce-ring", "--weights", "1,-1", "--d", "3", "--degree-cap", "8"]),
];

/// Runs every golden command and compares with the stored report.
pub fn golden_mismatches() -> Vec<String> {
    let mut bad = Vec::new();
    for (name, args) in GOLDEN {
        let mut a = args.to_vec();
        a.push("--json");
        let (code, out, err) = run(&a);
        let want = std::fs::read_to_string(golden_dir().join(format!("{}.json", name))).unwrap_or_default();
        if code != 0 || out != want {
            bad.push(format!("{} (exit {}{})", name, code, if err.is_empty() { String::new() } else { format!(": {}", err.trim()) }));
        }
    }
    bad
}

pub struct Gen {
    vars: Vec<(&'static str, i64, i64)>,
    idem: bool,
}

pub fn gen_for(ring: RingKind) -> Gen {
    let v = |s, lo, hi| (s, lo, hi);
    let vars = match ring {
        RingKind::Smash(RingVariant::A) => vec![v("u", -3, 3), v("v", -3, 3), v("w", -2, 2), v("x", -2, 3)],
        RingKind::Smash(RingVariant::B) => vec![v("u", -3, 3), v("v", 0, 3), v("w", 0, 2), v("x", 0, 3)],
        RingKind::Smash(RingVariant::C) => vec![v("u", 0, 3), v("v", 0, 3), v("w", 0, 2), v("x", 0, 3)],
        RingKind::Smash(RingVariant::LoopA) => vec![v("u", -3, 3), v("x", -1, 3)],
        RingKind::Smash(RingVariant::PolyB) => vec![v("u", 0, 4), v("x", 0, 3)],
        RingKind::Smash(RingVariant::GroupRing) => vec![v("x", -3, 3)],
        RingKind::Cher => vec![v("u", 0, 2), v("v", 0, 2), v("omega", 0, 2), v("x", 0, 3)],
        RingKind::Trig => vec![v("u", -2, 2), v("v", 0, 1), v("w", 0, 2), v("x", 0, 3)],
    };
    Gen { vars, idem: true }
}

impl Gen {
    fn atom(&self, rng: &mut ChaCha8Rng, depth: u32) -> String {
        match rng.gen_range(0..10) {
            0 => format!("{}", rng.gen_range(1..6)),
            1 => format!("{}/{}", rng.gen_range(1..6), rng.gen_range(2..5)),
            2 => format!("z^{}", rng.gen_range(0..4)),
            3 if self.idem => format!("e[{}]", rng.gen_range(0..4)),
            4 if depth < 2 => format!("({})", self.sum(rng, depth + 1)),
            _ => {
                let (s, lo, hi) = self.vars[rng.gen_range(0..self.vars.len())];
                match rng.gen_range(lo..=hi) {
                    1 => s.to_string(),
                    k => format!("{}^{}", s, k),
                }
            }
        }
    }

    fn term(&self, rng: &mut ChaCha8Rng, depth: u32) -> String {
        let k = rng.gen_range(1..4);
        let fs: Vec<String> = (0..k).map(|_| self.atom(rng, depth)).collect();
        let t = fs.join("*");
        if rng.gen_bool(0.2) {
            format!("-{}", t)
        } else {
            t
        }
    }

    fn sum(&self, rng: &mut ChaCha8Rng, depth: u32) -> String {
        let k = rng.gen_range(1..4);
        let mut s = self.term(rng, depth);
        for _ in 1..k {
            s += if rng.gen_bool(0.5) { " + " } else { " - " };
            s += &self.term(rng, depth);
        }
        s
    }

    fn matrix(&self, rng: &mut ChaCha8Rng, n: usize) -> String {
        let k = rng.gen_range(1..4);
        (0..k)
            .map(|_| format!("E[{},{}]*({})", rng.gen_range(1..=n), rng.gen_range(1..=n), self.sum(rng, 1)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn roundtrip<R: Syntax>(ctx: &Ctx, seed: u64) -> Result<(), String> {
    let g = gen_for(ctx.ring);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let src = if rng.gen_bool(0.5) { g.sum(&mut rng, 0) } else { g.matrix(&mut rng, ctx.n) };
        let once = print_value(&parse::<R>(&src, ctx).map_err(|e| format!("{}: {}", src, e))?);
        let twice = print_value(&parse::<R>(&once, ctx).map_err(|e| format!("{} -> {}: {}", src, once, e))?);
        if once != twice {
            return Err(format!("{} printed as {} then {}", src, once, twice));
        }
    }
    Ok(())
}

/// 200 random expressions per ring: printing a parsed expression is a fixed point.
pub fn roundtrip_all() -> Result<(), String> {
    for (k, v) in [
        RingVariant::A,
        RingVariant::B,
        RingVariant::C,
        RingVariant::LoopA,
        RingVariant::PolyB,
        RingVariant::GroupRing,
    ]
    .into_iter()
    .enumerate()
    {
        for d in [1, 3] {
            let ctx = Ctx {
                n: 2,
                d,
                ring: RingKind::Smash(v),
                params: None,
            };
            roundtrip::<SmashElem>(&ctx, 10 * k as u64 + d as u64)?;
        }
    }
    let half = |d| CycScalar::from_q(d, cdala::Q::new(1.into(), 2.into()));
    for d in [1u32, 2] {
        let c = vec![half(d); d as usize - 1];
        let p = Arc::new(CherParams::new(d, CycScalar::one(d), c).unwrap());
        for (ring, seed) in [(RingKind::Cher, 100), (RingKind::Trig, 200)] {
            let ctx = Ctx {
                n: 2,
                d,
                ring,
                params: Some(p.clone()),
            };
            match ring {
                RingKind::Cher => roundtrip::<CherElem>(&ctx, seed + d as u64)?,
                _ => roundtrip::<TrigElem>(&ctx, seed + d as u64)?,
            }
        }
    }
    Ok(())
}

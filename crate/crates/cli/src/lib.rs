//! Command-line front end: parses ring and matrix expressions, runs the
//! library's checks and emits text or JSON reports.

pub mod error;
pub mod expr;
pub mod input;
pub mod report;

use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value as J};

use cdala::glinf::{check_hom_windowed, embed, monodromy_check, to_trig, Embedding, Window};
use cdala::highestweight::{integrability_check, qfin_check, tensor_weight, IntegrableCase};
use cdala::matlie::{triangular_project, Scheme};
use cdala::report::Check;
use cdala::structure::{
    ad_eigen_table, check_presentation, graded_iso_check, image_in, loop_iso, loop_iso_inv, parabolic_pattern,
    simple_root_matrix, toroidal_iso, toroidal_iso_inv, PresRanges, Presentation, TauTable,
};
use cdala::weyl::{
    binomial, coinvariant_character, reduced_ring, schur_weyl_dim, weyl_lower_bound, BoundKind, Character, CoinvGroup,
};
use cdala::smash::morita_target;
use cdala::{uce_bracket, CherElem, CherParams, CommVariant, CycScalar, ExtElem, MatElem, Ring, RingVariant, Route, SmashElem, TrigElem};

pub use error::CliError;
use expr::{parse, parse_matrix, parse_scalar, print_comm_matrix, print_kahler, print_matrix, print_value, Ctx, RingKind, Syntax};
pub use report::Report;

#[derive(Parser, Debug)]
#[command(name = "cdala", version, about = "Exact computations in cyclic double affine Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Args, Debug, Clone)]
pub struct RingArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    /// A, B, C, loopA, polyB, group, cher or trig
    #[arg(long, default_value = "A")]
    pub ring: String,
    /// Cherednik parameter t
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub t: String,
    /// c_1,...,c_{d-1}
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    /// c-tilde_0,...,c-tilde_{d-1} (summing to zero)
    #[arg(long, allow_hyphen_values = true)]
    pub td: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Commutator of two ring or matrix elements.
    Bracket {
        #[command(flatten)]
        ring: RingArgs,
        x: String,
        y: String,
    },
    /// Bracket in the universal central extension, by both routes.
    UceBracket {
        #[command(flatten)]
        ring: RingArgs,
        x: String,
        y: String,
    },
    /// loop, toroidal or graded isomorphism.
    Iso {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        which: String,
        #[arg(long, default_value_t = 2)]
        rmax: i64,
        x: Option<String>,
    },
    /// Simple roots and ad-eigenvalues.
    Roots {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value_t = 2)]
        rmax: i64,
    },
    /// Triangular decomposition (td1, td2, td3, td3C).
    Decompose {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        which: String,
        x: String,
    },
    /// Relation suites: dala, dala-printed, c, kl, kl2.
    Verify {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        which: String,
        #[arg(long, default_value_t = 2)]
        rmax: i64,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Banded-matrix images over gl_infinity.
    Glinf {
        #[command(flatten)]
        ring: RingArgs,
        /// LO:HI
        #[arg(long, default_value = "-40:40", allow_hyphen_values = true)]
        window: String,
        /// truncation order of phi_a^[m]; iota when absent
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a: String,
        x: String,
        y: Option<String>,
    },
    /// Quasi-finiteness of a weight (weight or tensor-label JSON).
    Qfin {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 16)]
        order: usize,
        /// largest recurrence order tried
        #[arg(long, default_value_t = 6)]
        max_order: usize,
    },
    /// Integrability of a pseudo-highest weight (ab or c).
    Integrable {
        #[arg(long)]
        input: String,
        #[arg(long, default_value = "ab")]
        which: String,
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
    /// Schur-Weyl dimensions and coinvariants.
    Weyl {
        #[command(subcommand)]
        cmd: WeylCmd,
    },
    /// Quotient by the ideal generated by the non-invariant part.
    ReduceRing {
        /// action weights of the generators, e.g. 1,-1 for u, v
        #[arg(long, default_value = "1,-1", allow_hyphen_values = true)]
        weights: String,
        #[arg(long, default_value_t = 2)]
        d: u32,
        #[arg(long, default_value_t = 12)]
        degree_cap: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum WeylCmd {
    /// dim SW_l^n(CF(l,k) (x) Sign) against C(nk, l).
    Dim {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        l: usize,
        #[arg(long, default_value_t = 1)]
        k: u64,
    },
    /// Binomial lower bound (smash or invariant).
    Bound {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        l: usize,
        #[arg(long, default_value = "smash")]
        which: String,
    },
    /// Diagonal coinvariants by exact linear algebra.
    Coinv {
        #[arg(long, default_value_t = 2)]
        l: usize,
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[arg(long, default_value_t = 12)]
        degree_cap: usize,
        /// symmetric, wreath or wreath-invariants
        #[arg(long)]
        group: Option<String>,
        /// monomials per degree
        #[arg(long)]
        budget: Option<u64>,
        /// also report dim SW_l^n of the quotient
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// lift the default budget for long runs
        #[arg(long)]
        long: bool,
    },
}

const DEFAULT_BUDGET: u64 = 2_000_000;
const LONG_BUDGET: u64 = 200_000_000;

fn scalars(list: &str, d: u32) -> Result<Vec<CycScalar>, CliError> {
    list.split(',').map(|s| parse_scalar(s.trim(), d)).collect()
}

impl RingArgs {
    pub fn ctx(&self) -> Result<Ctx, CliError> {
        let ring = RingKind::parse(&self.ring).ok_or_else(|| CliError::Usage(format!("unknown ring '{}'", self.ring)))?;
        if self.d == 0 || self.n == 0 {
            return Err(CliError::Usage("n and d must be positive".into()));
        }
        let params = match ring {
            RingKind::Cher | RingKind::Trig => Some(Arc::new(self.params()?)),
            RingKind::Smash(_) => None,
        };
        Ok(Ctx {
            n: self.n,
            d: self.d,
            ring,
            params,
        })
    }

    fn params(&self) -> Result<CherParams, CliError> {
        let d = self.d;
        let t = parse_scalar(&self.t, d)?;
        Ok(match (&self.c, &self.td) {
            (Some(_), Some(_)) => return Err(CliError::Usage("give --c or --td, not both".into())),
            (Some(c), None) => CherParams::new(d, t, if d == 1 { vec![] } else { scalars(c, d)? })?,
            (None, Some(td)) => CherParams::from_ctilde(d, t, scalars(td, d)?)?,
            (None, None) => CherParams::new(d, t, vec![CycScalar::zero(d); d as usize - 1])?,
        })
    }

    fn record(&self, r: &mut Report, with_params: bool) {
        r.param("n", self.n).param("d", self.d).param("ring", self.ring.clone());
        if with_params {
            r.param("t", self.t.clone());
            if let Some(c) = &self.c {
                r.param("c", c.clone());
            }
            if let Some(td) = &self.td {
                r.param("td", td.clone());
            }
        }
    }

    fn is_cherednik(&self) -> bool {
        matches!(RingKind::parse(&self.ring), Some(RingKind::Cher | RingKind::Trig))
    }
}

fn smash_variant(ctx: &Ctx) -> Result<RingVariant, CliError> {
    match ctx.ring {
        RingKind::Smash(v) => Ok(v),
        _ => Err(CliError::Usage("this command needs a smash ring (A, B, C, loopA, polyB, group)".into())),
    }
}

fn bracket_in<R: Syntax>(ctx: &Ctx, x: &str, y: &str, r: &mut Report) -> Result<(), CliError> {
    let a = parse::<R>(x, ctx)?;
    let b = parse::<R>(y, ctx)?;
    r.inputs = vec![print_value(&a), print_value(&b)];
    let br = |p: &expr::Value<R>, q: &expr::Value<R>| -> Result<expr::Value<R>, CliError> {
        Ok(match (p, q) {
            (expr::Value::Elem(p), expr::Value::Elem(q)) => expr::Value::Elem(p.commutator(q)),
            (expr::Value::Mat(p), expr::Value::Mat(q)) => expr::Value::Mat(p.bracket(q)?),
            _ => return Err(CliError::Algebra(cdala::Error::ShapeMismatch("bracket of a ring element with a matrix".into()))),
        })
    };
    let xy = br(&a, &b)?;
    let yx = br(&b, &a)?;
    r.output("bracket", print_value(&xy));
    let anti = match (&xy, &yx) {
        (expr::Value::Elem(p), expr::Value::Elem(q)) => p.add(q).is_zero(),
        (expr::Value::Mat(p), expr::Value::Mat(q)) => p.add(q).is_zero(),
        _ => false,
    };
    r.check(Check::new("antisymmetry", anti, "[x,y] + [y,x] = 0"));
    Ok(())
}

fn glinf_in(ctx: &Ctx, args: &RingArgs, window: Window, e: &Embedding, x: &str, y: Option<&str>, r: &mut Report) -> Result<(), CliError> {
    let to = |s: &str| -> Result<MatElem<TrigElem>, CliError> {
        Ok(match ctx.ring {
            RingKind::Cher => to_trig(&parse_matrix::<CherElem>(s, ctx)?),
            RingKind::Trig => parse_matrix::<TrigElem>(s, ctx)?,
            _ => return Err(CliError::Usage(format!("glinf needs --ring cher or trig, got {}", args.ring))),
        })
    };
    let a = to(x)?;
    r.inputs.push(print_matrix(&a));
    let img = embed(&a, e, window)?;
    r.output("band", img.band());
    r.output("diagonals", J::from(img.diagonals()));
    r.output("nonzero_entries", img.entries().len());
    if *e == Embedding::Iota {
        r.check(Check::new("monodromy", monodromy_check(&a, window)?, "shift law and column classes"));
    }
    if let Some(y) = y {
        let b = to(y)?;
        r.inputs.push(print_matrix(&b));
        r.check(Check::new("homomorphism", check_hom_windowed(&a, &b, e, window)?, "image of [x,y] on the valid window"));
    }
    Ok(())
}

fn parse_window(s: &str) -> Result<Window, CliError> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| CliError::Usage(format!("window '{}' is not LO:HI", s)))?;
    let p = |t: &str| t.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("bad window bound '{}'", t)));
    let (lo, hi) = (p(lo)?, p(hi)?);
    if lo >= hi {
        return Err(CliError::Usage("window needs LO < HI".into()));
    }
    Ok(Window::new(lo, hi))
}

fn coinv_group(s: Option<&str>, d: u32) -> Result<CoinvGroup, CliError> {
    Ok(match s {
        None if d == 1 => CoinvGroup::SymmetricOnly,
        None => CoinvGroup::Wreath,
        Some("symmetric") => CoinvGroup::SymmetricOnly,
        Some("wreath") => CoinvGroup::Wreath,
        Some("wreath-invariants") => CoinvGroup::WreathInvariants,
        Some(o) => return Err(CliError::Usage(format!("unknown group '{}'", o))),
    })
}

/// Runs one command and returns its report.
pub fn execute(cmd: &Cmd) -> Result<Report, CliError> {
    match cmd {
        Cmd::Bracket { ring, x, y } => {
            let ctx = ring.ctx()?;
            let mut r = Report::new("bracket");
            ring.record(&mut r, ring.is_cherednik());
            match ctx.ring {
                RingKind::Smash(_) => bracket_in::<SmashElem>(&ctx, x, y, &mut r)?,
                RingKind::Cher => bracket_in::<CherElem>(&ctx, x, y, &mut r)?,
                RingKind::Trig => bracket_in::<TrigElem>(&ctx, x, y, &mut r)?,
            }
            Ok(r)
        }
        Cmd::UceBracket { ring, x, y } => {
            let ctx = ring.ctx()?;
            smash_variant(&ctx)?;
            let mut r = Report::new("uce-bracket");
            ring.record(&mut r, false);
            let a = parse_matrix::<SmashElem>(x, &ctx)?;
            let b = parse_matrix::<SmashElem>(y, &ctx)?;
            r.inputs = vec![print_matrix(&a), print_matrix(&b)];
            let (a, b) = (ExtElem::from_mat(a), ExtElem::from_mat(b));
            let direct = uce_bracket(&a, &b, Route::Direct)?;
            let morita = uce_bracket(&a, &b, Route::Morita)?;
            r.output("matrix", print_matrix(&direct.mat));
            r.output("central", print_kahler(&direct.central));
            r.check(Check::new("routes agree", direct == morita, "direct formula against Morita + Kassel"));
            Ok(r)
        }
        Cmd::Iso { ring, which, rmax, x } => {
            let ctx = ring.ctx()?;
            let mut r = Report::new("iso");
            ring.record(&mut r, false);
            r.param("which", which.clone());
            match which.as_str() {
                "graded" => {
                    r.param("rmax", *rmax);
                    let g = graded_iso_check(ctx.n, ctx.d, *rmax)?;
                    r.output("mu", g.mu).output("kappa", g.kappa).output("checked", g.checked);
                    r.output("unscaled_holds", g.unscaled_holds);
                    r.check(Check::new("graded", g.ok(), format!("{} mismatches", g.mismatches.len())));
                }
                "loop" | "toroidal" => {
                    let v = smash_variant(&ctx)?;
                    let x = x.as_deref().ok_or_else(|| CliError::Usage("iso needs an element".into()))?;
                    let a = parse_matrix::<SmashElem>(x, &ctx)?;
                    r.inputs.push(print_matrix(&a));
                    let (img, back) = if which == "loop" {
                        let img = loop_iso(&a)?;
                        let back = loop_iso_inv(&img, ctx.n, ctx.d)?.to_variant_of(v)?;
                        (img, back)
                    } else {
                        let img = toroidal_iso(&a)?;
                        let back = toroidal_iso_inv(&img, ctx.n, v, ctx.d)?;
                        (img, back)
                    };
                    r.output("image", print_comm_matrix(&img));
                    r.check(Check::new("roundtrip", back == a, "inverse of the image"));
                    match v {
                        RingVariant::PolyB => {
                            r.check(Check::new("parabolic pattern", parabolic_pattern(&img, ctx.n), "p (x) C[t] + n (x) tC[t]"));
                        }
                        RingVariant::A | RingVariant::B => {
                            r.check(Check::new("image variant", image_in(&img, morita_target(v)), "entries in the target ring"));
                        }
                        RingVariant::C => {
                            r.output("polynomial_image", image_in(&img, CommVariant::Poly));
                        }
                        _ => {}
                    }
                }
                o => return Err(CliError::Usage(format!("unknown isomorphism '{}'", o))),
            }
            Ok(r)
        }
        Cmd::Roots { ring, rmax } => {
            let mut r = Report::new("roots");
            r.param("n", ring.n).param("d", ring.d).param("rmax", *rmax);
            let sr = simple_root_matrix(ring.n, ring.d);
            r.output("det", expr::q_string(&sr.det));
            r.output("matrix", J::from(sr.matrix.clone()));
            r.check(Check::new("unimodular", sr.unimodular(), format!("det = {}", expr::q_string(&sr.det))));
            r.check(Check::new("delta identity", sr.delta_identity, "sum of simple roots"));
            let rows = ad_eigen_table(ring.n, ring.d, *rmax)?;
            let bad = rows.iter().filter(|e| !e.ok).count();
            r.output("eigen_rows", rows.len());
            r.check(Check::new("eigenvalues", bad == 0, format!("{} of {} rows differ", bad, rows.len())));
            Ok(r)
        }
        Cmd::Decompose { ring, which, x } => {
            let ctx = ring.ctx()?;
            smash_variant(&ctx)?;
            let scheme = match which.as_str() {
                "td1" => Scheme::Td1,
                "td2" => Scheme::Td2,
                "td3" => Scheme::Td3,
                "td3C" | "td3c" => Scheme::Td3C,
                o => return Err(CliError::Usage(format!("unknown scheme '{}'", o))),
            };
            let mut r = Report::new("decompose");
            ring.record(&mut r, false);
            r.param("which", scheme.name());
            let a = parse_matrix::<SmashElem>(x, &ctx)?;
            r.inputs.push(print_matrix(&a));
            let (neg, mid, pos) = triangular_project(&a, scheme)?;
            r.output("neg", print_matrix(&neg)).output("mid", print_matrix(&mid)).output("pos", print_matrix(&pos));
            let sum = neg.try_add(&mid)?.try_add(&pos)?;
            r.check(Check::new("sum", sum == a, "neg + mid + pos = x"));
            Ok(r)
        }
        Cmd::Verify { ring, which, rmax, samples, seed } => {
            let mut r = Report::new("verify");
            r.param("which", which.clone()).param("n", ring.n).param("d", ring.d);
            let (pres, ranges) = match which.as_str() {
                "dala" => (Presentation::Dala, PresRanges::dala(*rmax)),
                "dala-printed" => (Presentation::Dala, PresRanges { table: TauTable::Printed, ..PresRanges::dala(*rmax) }),
                "c" => (Presentation::C, PresRanges::c(*rmax)),
                "kl" => (Presentation::KL, PresRanges::kl(*samples, *seed)),
                "kl2" => (Presentation::KL2, PresRanges::kl(*samples, *seed)),
                o => return Err(CliError::Usage(format!("unknown presentation '{}'", o))),
            };
            match pres {
                Presentation::KL | Presentation::KL2 => r.param("samples", *samples).param("seed", *seed),
                _ => r.param("rmax", *rmax),
            };
            let checks = check_presentation(pres, ring.n, ring.d, &ranges)?;
            r.output("families", checks.len());
            for c in checks {
                r.check(c);
            }
            Ok(r)
        }
        Cmd::Glinf { ring, window, m, a, x, y } => {
            let ctx = ring.ctx()?;
            let w = parse_window(window)?;
            let mut r = Report::new("glinf");
            ring.record(&mut r, true);
            r.param("window", window.clone());
            let e = match m {
                Some(m) => {
                    r.param("m", *m).param("a", a.clone());
                    Embedding::Phi { a: parse_scalar(a, ctx.d)?, m: *m }
                }
                None => Embedding::Iota,
            };
            glinf_in(&ctx, ring, w, &e, x, y.as_deref(), &mut r)?;
            Ok(r)
        }
        Cmd::Qfin { ring, input, order, max_order } => {
            let mut r = Report::new("qfin");
            r.param("input", input.clone()).param("order", *order).param("max_order", *max_order);
            let text = std::fs::read_to_string(input).map_err(|e| CliError::Input(format!("{}: {}", input, e)))?;
            let weight = match input::read_qfin_input(&text)? {
                input::QfinInput::Weight(w) => w,
                input::QfinInput::Tensor(t) => {
                    r.param("n", ring.n).param("d", ring.d);
                    tensor_weight(&t, ring.n, ring.d, *order)?
                }
            };
            let rep = qfin_check(&weight, *order, *max_order)?;
            let mut certs = Vec::new();
            for ((i, l), c) in &rep.certificates {
                let (status, detail) = match c {
                    Some(rec) => ("pass", format!("order {}, char poly {}", rec.order, input::print_upoly(&rec.char_poly(weight.d)))),
                    None => ("fail", format!("no recurrence of order <= {}", max_order)),
                };
                certs.push(json!({"i": i, "l": l, "status": status, "certificate": detail}));
                r.check(Check::new(format!("phi[{},{}] quasipolynomial", i, l), c.is_some(), detail));
            }
            r.output("quasi_finite", rep.quasi_finite);
            r.output("certificates", J::Array(certs));
            Ok(r)
        }
        Cmd::Integrable { input, which, order } => {
            let case = match which.as_str() {
                "ab" | "AB" => IntegrableCase::AB,
                "c" | "C" => IntegrableCase::C,
                o => return Err(CliError::Usage(format!("unknown case '{}'", o))),
            };
            let mut r = Report::new("integrable");
            r.param("input", input.clone()).param("which", which.clone()).param("order", *order);
            let text = std::fs::read_to_string(input).map_err(|e| CliError::Input(format!("{}: {}", input, e)))?;
            let (lam, polys) = input::read_pseudo_weight(&text)?;
            match integrability_check(case, &lam, polys.as_ref(), *order) {
                Ok(ps) => {
                    let mut out = serde_json::Map::new();
                    for ((i, j), p) in &ps {
                        out.insert(format!("P[{},{}]", i, j), J::from(input::print_upoly(p)));
                    }
                    r.output("polynomials", J::Object(out));
                    r.check(Check::new("integrable", true, format!("series identities to order {}", order)));
                }
                Err(e @ (cdala::Error::SeriesMismatch { .. } | cdala::Error::DegreeMismatch { .. })) => {
                    r.check(Check::new("integrable", false, e.to_string()));
                }
                Err(e) => return Err(e.into()),
            }
            Ok(r)
        }
        Cmd::Weyl { cmd } => weyl_cmd(cmd),
        Cmd::ReduceRing { weights, d, degree_cap } => {
            let mut r = Report::new("reduce-ring");
            r.param("weights", weights.clone()).param("d", *d).param("degree_cap", *degree_cap);
            let ws: Vec<i64> = weights
                .split(',')
                .map(|s| s.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("bad weight '{}'", s))))
                .collect::<Result<_, _>>()?;
            let rr = reduced_ring(&ws, *d, *degree_cap);
            let basis: Vec<String> = rr.basis.iter().map(|m| input::print_monomial(m)).collect();
            r.output("basis", J::from(basis));
            r.output("dimension", rr.basis.len());
            r.check(match rr.dimension() {
                Ok(k) => Check::new("stabilized", true, format!("dimension {}", k)),
                Err(_) => Check::skip("stabilized", format!("not stabilized below degree {}; {} is a lower bound", degree_cap, rr.basis.len())),
            });
            Ok(r)
        }
    }
}

fn weyl_cmd(cmd: &WeylCmd) -> Result<Report, CliError> {
    match cmd {
        WeylCmd::Dim { n, l, k } => {
            let mut r = Report::new("weyl dim");
            r.param("n", *n).param("l", *l).param("k", *k);
            let v = schur_weyl_dim(*n, *l, &Character::cf_sign(*k));
            let b = binomial(n * *k as usize, *l);
            r.output("dimension", v.to_string()).output("binomial", b.to_string());
            r.check(Check::new("exterior power", v == b, format!("SW = {}, C(nk,l) = {}", v, b)));
            Ok(r)
        }
        WeylCmd::Bound { n, d, l, which } => {
            let kind = match which.as_str() {
                "smash" => BoundKind::Smash,
                "invariant" => BoundKind::Invariant,
                o => return Err(CliError::Usage(format!("unknown bound '{}'", o))),
            };
            let mut r = Report::new("weyl bound");
            r.param("n", *n).param("d", *d).param("l", *l).param("which", which.clone());
            let b = weyl_lower_bound(*n, *d, *l, kind);
            r.output("bound", b.bound.to_string()).output("quotient_dim", b.quotient_dim.to_string());
            r.check(Check::new("quotient character", b.consistent(), "SW of CF(l,k) (x) Sign equals the binomial"));
            Ok(r)
        }
        WeylCmd::Coinv { l, d, degree_cap, group, budget, n, long } => {
            let g = coinv_group(group.as_deref(), *d)?;
            let budget = budget.unwrap_or(if *long { LONG_BUDGET } else { DEFAULT_BUDGET });
            let mut r = Report::new("weyl coinv");
            let gname = match g {
                CoinvGroup::SymmetricOnly => "symmetric",
                CoinvGroup::Wreath => "wreath",
                CoinvGroup::WreathInvariants => "wreath-invariants",
            };
            r.param("l", *l).param("d", *d).param("degree_cap", *degree_cap).param("group", gname).param("n", *n);
            let (pq, ch) = coinvariant_character(*l, *d, *degree_cap, g, budget)?;
            r.output("hilbert", J::from(pq.hilbert.clone()));
            r.output("dimension", pq.total());
            let chs: serde_json::Map<String, J> = ch
                .iter()
                .map(|(c, v)| (format!("{:?}", c.parts), J::from(expr::q_string(v))))
                .collect();
            r.output("character", J::Object(chs));
            match pq.dimension() {
                Ok(_) => {
                    let sw = schur_weyl_dim(*n, *l, &Character::Table(ch));
                    r.output("schur_weyl_dim", sw.to_string());
                    r.check(Check::new("stabilized", true, format!("dimension {}", pq.total())));
                }
                Err(_) => {
                    r.check(Check::skip("stabilized", format!("top degree nonzero at cap {}; {} is a lower bound", degree_cap, pq.total())));
                }
            }
            Ok(r)
        }
    }
}

trait ToVariantOf: Sized {
    fn to_variant_of(self, v: RingVariant) -> Result<Self, CliError>;
}

impl ToVariantOf for MatElem<SmashElem> {
    fn to_variant_of(self, v: RingVariant) -> Result<Self, CliError> {
        let d = self.proto().d();
        let mut out = MatElem::zero(self.n(), &SmashElem::zero(v, d));
        for (i, j, x) in self.iter() {
            out.add_entry(i, j, &x.to_variant(v)?);
        }
        Ok(out)
    }
}

/// Parses argv, runs, prints; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { error::EXIT_USAGE } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{}", e) } else { write!(out, "{}", e) };
            return code;
        }
    };
    match execute(&cli.cmd) {
        Ok(rep) => {
            let _ = if cli.json { writeln!(out, "{}", rep.to_json()) } else { write!(out, "{}", rep.to_text()) };
            if rep.ok() {
                0
            } else {
                error::EXIT_CHECK_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            e.exit_code()
        }
    }
}

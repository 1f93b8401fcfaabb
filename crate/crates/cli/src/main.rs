//! `moduli`: emit equation systems, run checks, compute Hochschild tables.
//!
//! Exit codes: 0 all checks pass, 1 some check failed, 2 usage error,
//! 3 no failures but some verdicts truncated.

mod checks;
mod emit;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use moduli_core::einf_algebra::{build_e, hochschild};
use moduli_core::exact_math::{Field, FieldKind, Fp, Rational};
use moduli_core::verify::suite::{suite_jobs, CRITERIA};
use moduli_core::verify::{Status, Verdict};

use checks::{Opts, CHECKS};
use emit::{Format, TARGETS};

#[derive(Parser)]
#[command(name = "moduli", version, about = "Equations and checks for moduli of pointed genus-one curves")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write an equation system or algebra.
    Emit {
        /// un-full, un-reduced, curve, curve-homog, plucker or e-algebra.
        target: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named check (or `all`), or the full battery with `--suite paper`.
    Verify {
        check: Option<String>,
        /// A single n or an inclusive range `a..b`.
        #[arg(long)]
        n: Option<String>,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Degree bound for Hilbert series.
        #[arg(long = "D", default_value_t = 6)]
        degree: u32,
        #[arg(long, default_value_t = 5)]
        m_max: u32,
        /// Component index for component-ideals.
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dimensions of HH^j(E_{1,n}) by weight.
    Hochschild {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        j: u32,
        #[arg(long, default_value = "1..6")]
        weights: String,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time every applicable check at one n.
    Bench {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value = "Fp:101")]
        field: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub(crate) fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn write_out(out: &Option<PathBuf>, text: &str) -> Result<(), Usage> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_range(s: &str) -> Result<(usize, usize), Usage> {
    let bad = || Usage(format!("bad range `{s}`"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            Ok((a, b))
        }
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            Ok((v, v))
        }
    }
}

fn pool() -> rayon::ThreadPool {
    let threads = std::env::var("MODULI_THREADS").ok().and_then(|s| s.parse().ok()).filter(|&t: &usize| t > 0);
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        b = b.num_threads(t);
    }
    b.build().expect("thread pool")
}

fn summary(verdicts: &[Verdict]) -> Value {
    let count = |s: Status| verdicts.iter().filter(|v| v.status == s).count();
    json!({"pass": count(Status::Pass), "fail": count(Status::Fail), "truncated": count(Status::Truncated)})
}

fn exit_code(verdicts: &[Verdict]) -> u8 {
    if verdicts.iter().any(|v| v.status == Status::Fail) {
        1
    } else if verdicts.iter().any(|v| v.status == Status::Truncated) {
        3
    } else {
        0
    }
}

fn verdict_value(v: &Verdict) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn run_verify(
    check: Option<String>,
    n: Option<String>,
    field: FieldKind,
    seed: Option<u64>,
    degree: u32,
    m_max: u32,
    i: Option<usize>,
    suite: Option<String>,
    out: &Option<PathBuf>,
) -> Result<u8, Usage> {
    if let Some(s) = suite {
        if s != "paper" {
            return Err(Usage(format!("unknown suite `{s}` (paper)")));
        }
        if check.is_some() {
            return Err(Usage("--suite replaces the check name".into()));
        }
        let seed = seed.ok_or_else(|| Usage("--suite paper needs --seed".into()))?;
        return run_suite(seed, out);
    }
    let check = check.ok_or_else(|| Usage("name a check or pass --suite paper".into()))?;
    let names: Vec<&str> = if check == "all" {
        CHECKS.to_vec()
    } else if CHECKS.contains(&check.as_str()) {
        vec![check.as_str()]
    } else {
        return Err(Usage(format!("unknown check `{check}` (all, {})", CHECKS.join(", "))));
    };
    let range = n.as_deref().map(parse_range).transpose()?;
    let opts = Opts { field, seed, degree, m_max, i };
    let mut jobs = Vec::new();
    for name in &names {
        if checks::randomized(name, field) && seed.is_none() {
            return Err(Usage(format!("`{name}` is randomized and needs --seed")));
        }
        match checks::n_range(name) {
            None => jobs.extend(checks::jobs(name, None, &opts)),
            Some((lo, hi)) => {
                let (a, b) = range.ok_or_else(|| Usage(format!("`{name}` needs --n")))?;
                for n in a..=b {
                    if (lo..=hi).contains(&n) {
                        jobs.extend(checks::jobs(name, Some(n), &opts));
                    } else if names.len() == 1 {
                        return Err(Usage(format!("`{name}` needs n >= {lo}, got {n}")));
                    }
                }
            }
        }
    }
    let verdicts: Vec<Verdict> = pool().install(|| jobs.par_iter().map(|j| (j.run)()).collect::<Vec<_>>()).into_iter().flatten().collect();
    let report = json!({
        "config": {"check": check, "n": n, "field": field.to_string(), "seed": seed, "D": degree, "m_max": m_max, "i": i},
        "summary": summary(&verdicts),
        "verdicts": verdicts.iter().map(verdict_value).collect::<Vec<_>>(),
    });
    write_out(out, &pretty(&report))?;
    Ok(exit_code(&verdicts))
}

fn run_suite(seed: u64, out: &Option<PathBuf>) -> Result<u8, Usage> {
    let jobs = suite_jobs(seed);
    let verdicts: Vec<Verdict> = pool().install(|| jobs.par_iter().map(|j| j.run()).collect());
    let criteria: Vec<Value> = CRITERIA
        .iter()
        .map(|(id, title)| {
            let vs: Vec<&Verdict> = jobs.iter().zip(&verdicts).filter(|(j, _)| j.criterion == *id).map(|(_, v)| v).collect();
            let status = if vs.iter().any(|v| v.failed()) {
                "fail"
            } else if vs.iter().all(|v| v.passed()) {
                "pass"
            } else {
                "truncated"
            };
            json!({"id": id, "title": title, "status": status, "jobs": vs.len()})
        })
        .collect();
    let report = json!({
        "config": {"suite": "paper", "seed": seed},
        "criteria": criteria,
        "summary": summary(&verdicts),
        "verdicts": jobs.iter().zip(&verdicts).map(|(j, v)| {
            let mut x = verdict_value(v);
            x["criterion"] = json!(j.criterion);
            x["label"] = json!(j.label);
            x
        }).collect::<Vec<_>>(),
    });
    write_out(out, &pretty(&report))?;
    Ok(exit_code(&verdicts))
}

fn hochschild_table<F: Field>(ctx: F::Ctx, n: usize, j: u32, lo: usize, hi: usize) -> Result<Value, Usage> {
    let alg = build_e::<F>(n, &ctx)?;
    let mut dims = serde_json::Map::new();
    for r in lo..=hi {
        dims.insert(r.to_string(), json!(hochschild(&alg, j, r as u32)?));
    }
    Ok(json!({"n": n, "j": j, "field": F::kind(&ctx).to_string(), "dims": dims}))
}

fn run(cli: Cli) -> Result<u8, Usage> {
    match cli.cmd {
        Cmd::Emit { target, n, field, format, out } => {
            let field: FieldKind = field.parse()?;
            let format: Format = format.parse().map_err(Usage)?;
            if !TARGETS.contains(&target.as_str()) {
                return Err(Usage(format!("unknown target `{target}` ({})", TARGETS.join(", "))));
            }
            let text = emit::emit(&target, n, field, format).map_err(Usage)?;
            write_out(&out, &text)?;
            Ok(0)
        }
        Cmd::Verify { check, n, field, seed, degree, m_max, i, suite, out } => {
            run_verify(check, n, field.parse()?, seed, degree, m_max, i, suite, &out)
        }
        Cmd::Hochschild { n, j, weights, field, out } => {
            let (lo, hi) = parse_range(&weights)?;
            let v = match field.parse::<FieldKind>()? {
                FieldKind::Rational => hochschild_table::<Rational>((), n, j, lo, hi)?,
                FieldKind::Prime(p) => hochschild_table::<Fp>(p, n, j, lo, hi)?,
            };
            write_out(&out, &pretty(&v))?;
            Ok(0)
        }
        Cmd::Bench { n, field, seed, out } => {
            let field: FieldKind = field.parse()?;
            let opts = Opts { field, seed: Some(seed), degree: 6, m_max: 5, i: None };
            let mut timings = serde_json::Map::new();
            let mut all = Vec::new();
            for name in CHECKS {
                let applicable = checks::n_range(name).is_none_or(|(lo, hi)| (lo..=hi).contains(&n));
                if !applicable {
                    continue;
                }
                let nn = checks::n_range(name).map(|_| n);
                for job in checks::jobs(name, nn, &opts) {
                    let t = Instant::now();
                    let vs = (job.run)();
                    let status = summary(&vs);
                    timings.insert(job.label.clone(), json!({"millis": t.elapsed().as_millis() as u64, "verdicts": status}));
                    all.extend(vs);
                }
            }
            write_out(&out, &pretty(&json!({"n": n, "field": field.to_string(), "seed": seed, "checks": timings})))?;
            Ok(exit_code(&all))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

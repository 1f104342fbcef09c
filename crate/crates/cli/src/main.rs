//! `loewy`: Loewy lengths of tensor products over dihedral 2-group algebras.
//!
//! Exit codes: 0 success, 2 bad input, 3 engine disagreement or grid mismatch.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use loewy_core::binlucas;
use loewy_core::formulas::{self, LoewyReport, ModuleSpec};
use loewy_core::gf2e::Field;
use loewy_core::verify::{self, Execution, GridReport};
use loewy_core::Error;
use serde_json::{json, Value};

const EXIT_INPUT: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(
    name = "loewy",
    version,
    about = "Loewy lengths of tensor products of kD_4q-modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Oracle,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(clap::Args)]
struct Common {
    /// Group parameter: a power of 2, at least 2.
    #[arg(long)]
    q: u64,
    /// Coefficient field GF(2^e), written gf:<e>.
    #[arg(long, default_value = "gf:1")]
    field: String,
    #[arg(long, value_enum, default_value = "json")]
    output: Output,
}

#[derive(Subcommand)]
enum Command {
    /// Loewy length of LEFT (x) RIGHT.
    ///
    /// Module specs: A:<l>, B:<l>, S:<word>, N:<l1>,<l2>,<rho>[,<n>],
    /// W:<word>,<rho>[,<n>], P (the regular module). Words use X, Y and
    /// x, y for the inverse letters.
    Loewy {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "formula")]
        method: Method,
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Compare the formulas with the matrix oracle on bounded grids.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_l: u64,
        #[arg(long)]
        max_m: u64,
        /// Run cells one at a time instead of on the thread pool.
        #[arg(long)]
        sequential: bool,
        /// Corrupt the formula engine (harness self-test).
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// The # operation and the three disjointness relations.
    Hash { l: u64, m: u64 },
    /// Number of lattice paths of length T to (L, M), and its parity.
    Paths { t: u64, l: u64, m: u64 },
}

/// An error that maps to an exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

fn parse_common(c: &Common) -> Result<Field, Failure> {
    if c.q < 2 || !c.q.is_power_of_two() {
        return Err(input_error(format!(
            "--q must be a power of 2 with q >= 2, got {}",
            c.q
        )));
    }
    Ok(c.field.parse::<Field>()?)
}

fn print(value: &Value, output: Output, text: impl FnOnce() -> String) {
    match output {
        Output::Json => println!("{value}"),
        Output::Text => println!("{}", text()),
    }
}

fn cmd_loewy(common: &Common, method: Method, left: &str, right: &str) -> Result<u8, Failure> {
    let field = parse_common(common)?;
    let q = common.q;
    let a = ModuleSpec::parse(left, q)?;
    let b = ModuleSpec::parse(right, q)?;
    a.validate(q, &field)?;
    b.validate(q, &field)?;

    let formula: Option<LoewyReport> = match method {
        Method::Formula | Method::Both => Some(formulas::loewy_general(&a, &b, q, &field)?),
        Method::Oracle => None,
    };
    let oracle = match method {
        Method::Oracle | Method::Both => {
            let dim = a.dim() * b.dim();
            let cap = verify::max_dim_from_env();
            if dim > cap {
                return Err(input_error(format!(
                    "tensor dimension {dim} exceeds the oracle cap {cap} (set LOEWY_MAX_DIM)"
                )));
            }
            Some(formulas::loewy_oracle(&a, &b, q, &field)?)
        }
        Method::Formula => None,
    };
    let projective = formulas::projective_summand(&a, &b, q, &field)?;
    let mut trace = formula
        .as_ref()
        .map(|r| r.trace.clone())
        .unwrap_or_default();
    if let Some(len) = oracle {
        trace.push(format!(
            "oracle: tensor dimension {}, length {len}",
            a.dim() * b.dim()
        ));
    }
    let formula_len = formula.as_ref().map(|r| r.length);
    let value = json!({
        "left": left,
        "right": right,
        "q": q,
        "loewy_formula": formula_len,
        "loewy_oracle": oracle,
        "projective_summand": projective,
        "trace": trace,
    });
    print(&value, common.output, || {
        let mut lines = vec![format!("{left} (x) {right} over kD_{}", 4 * q)];
        lines.extend(formula_len.map(|l| format!("formula: {l}")));
        lines.extend(oracle.map(|l| format!("oracle: {l}")));
        lines.push(format!("projective summand: {projective}"));
        lines.extend(trace.iter().map(|t| format!("  {t}")));
        lines.join("\n")
    });
    match (formula_len, oracle) {
        (Some(f), Some(o)) if f != o => {
            eprintln!("engines disagree: formula {f}, oracle {o}");
            Ok(EXIT_MISMATCH)
        }
        _ => Ok(0),
    }
}

fn faulty(a: &ModuleSpec, b: &ModuleSpec, q: u64, f: &Field) -> loewy_core::Result<LoewyReport> {
    let mut r = formulas::loewy_general(a, b, q, f)?;
    r.length += 1;
    Ok(r)
}

fn report_json(r: &GridReport, q: u64, field: &Field) -> Value {
    let first: Vec<Value> = r
        .mismatches
        .iter()
        .take(10)
        .map(|m| {
            json!({
                "left": m.cell.left.to_string(),
                "right": m.cell.right.to_string(),
                "formula": m.formula,
                "oracle": m.oracle,
            })
        })
        .collect();
    let cases: serde_json::Map<String, Value> = r
        .case_hits
        .iter()
        .map(|(c, n)| (c.label().to_string(), json!(n)))
        .collect();
    json!({
        "q": q,
        "field": field.to_string(),
        "cells_checked": r.cells_checked,
        "skipped": r.skipped,
        "mismatches": r.mismatches.len(),
        "first_mismatches": first,
        "projective_exceptions": r.projective_exceptions.len(),
        "band_cases": cases,
    })
}

fn cmd_verify(
    common: &Common,
    max_l: u64,
    max_m: u64,
    sequential: bool,
    inject_fault: bool,
) -> Result<u8, Failure> {
    let field = parse_common(common)?;
    let q = common.q;
    let exec = if sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let engine: &verify::FormulaFn = if inject_fault {
        &faulty
    } else {
        &formulas::loewy_general
    };
    let mut total = GridReport::default();
    for grid in verify::standard_grids(q, &field, max_l, max_m, verify::max_dim_from_env()) {
        total.merge(verify::run_grid(&grid, engine, exec)?);
    }
    let value = report_json(&total, q, &field);
    print(&value, common.output, || {
        total.to_string().trim_end().to_string()
    });
    Ok(if total.passed() { 0 } else { EXIT_MISMATCH })
}

fn cmd_hash(l: u64, m: u64) -> Result<u8, Failure> {
    l.checked_add(m)
        .ok_or_else(|| input_error("l + m must fit in 64 bits"))?;
    let minus = |v: u64| v.checked_sub(1);
    let value = json!({
        "hash": binlucas::hash(l, m),
        "perp": binlucas::perp(l, m),
        "perp_l_minus_1_m": minus(l).is_some_and(|l1| binlucas::perp(l1, m)),
        "perp_l_m_minus_1": minus(m).is_some_and(|m1| binlucas::perp(l, m1)),
    });
    println!("{value}");
    Ok(0)
}

fn cmd_paths(t: u64, l: u64, m: u64) -> Result<u8, Failure> {
    l.checked_add(m)
        .and_then(|s| s.checked_add(t))
        .and_then(|s| s.checked_add(t))
        .ok_or_else(|| input_error("arguments too large"))?;
    let value = json!({
        "count": binlucas::q_count(t, l, m).to_string(),
        "parity": binlucas::q_parity(t, l, m),
    });
    println!("{value}");
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Loewy {
            common,
            method,
            left,
            right,
        } => cmd_loewy(common, *method, left, right),
        Command::Verify {
            common,
            max_l,
            max_m,
            sequential,
            inject_fault,
        } => cmd_verify(common, *max_l, *max_m, *sequential, *inject_fault),
        Command::Hash { l, m } => cmd_hash(*l, *m),
        Command::Paths { t, l, m } => cmd_paths(*t, *l, *m),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

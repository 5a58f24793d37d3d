//! The `sl2char3` command line: single decompositions, verification sweeps,
//! report viewing and the table dump.
//!
//! Exit codes: 0 when everything matched, 1 on a mismatch or an unresolved
//! pair, 2 on a usage error.

pub mod report;
pub mod resolve;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::field::Field;
use crate::oracle::{self, Options};
use crate::sl2::ModuleParams;
use report::VerifyReport;
use resolve::{extension_cap, resolve_pair, Routes};
use verify::{default_scope, Scope, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "sl2char3",
    version,
    about = "Decompose tensor products of irreducible sl(2)-modules in characteristic 3",
    after_help = "Modules: One | Two | T(b,c,d) | Tt(b,c,d) | Tt(b) | Dual(expr). \
                  Field elements are 0, 1, 2 or coefficient lists like [1,2] (low degree first).\n\
                  SL2_MAX_EXT_DEGREE caps the degree of automatic field extensions (default 6)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decompose left (x) right by the engine and the tables, and compare.
    Decompose(DecomposeArgs),
    /// Run both routes over many pairs and report disagreements.
    Verify(VerifyArgs),
    /// Summarize a report written by `verify --out`.
    Report {
        /// Path to the JSON report.
        file: String,
    },
    /// List every table row.
    Tables {
        /// Output format; `json` writes one JSON object per line.
        #[arg(long, value_parser = ["json"])]
        emit: Option<String>,
    },
}

#[derive(Debug, Args)]
struct DecomposeArgs {
    left: String,
    right: String,
    /// Work over GF(3^k).
    #[arg(long = "field", default_value_t = 1)]
    field: u32,
    /// Print JSON instead of the arrow notation.
    #[arg(long)]
    json: bool,
    /// Run only the structural engine.
    #[arg(long, conflicts_with = "oracle_only")]
    engine_only: bool,
    /// Run only the table lookup.
    #[arg(long)]
    oracle_only: bool,
    /// Read the known misprints as printed.
    #[arg(long)]
    paper_literal: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Work over GF(3^k), k = 1 or 2.
    #[arg(long = "field", default_value_t = 1)]
    field: u32,
    /// all | table:N | sample:M. Defaults to all over GF(3) and sample:10000
    /// over GF(9).
    #[arg(long)]
    scope: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<String>,
    /// Read the known misprints as printed.
    #[arg(long)]
    paper_literal: bool,
    /// Record wall times (makes the report nondeterministic).
    #[arg(long)]
    timings: bool,
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let mut out = std::io::stdout().lock();
    let result = match cli.command {
        Command::Decompose(a) => cmd_decompose(&a, &mut out),
        Command::Verify(a) => cmd_verify(&a, &mut out),
        Command::Report { file } => cmd_report(&file, &mut out),
        Command::Tables { emit } => cmd_tables(emit.is_some(), &mut out),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

type CmdResult = Result<i32, String>;

fn field_of(k: u32) -> Result<Field, String> {
    Field::gf(k).map_err(|e| e.to_string())
}

/// Parses a module expression over `f`.
pub fn parse_module_expr(text: &str, f: &Field) -> Result<ModuleParams, String> {
    ModuleParams::parse(text, f).map_err(|e| format!("{text:?}: {e}"))
}

fn cmd_decompose(a: &DecomposeArgs, out: &mut impl Write) -> CmdResult {
    let f = field_of(a.field)?;
    let left = parse_module_expr(&a.left, &f)?;
    let right = parse_module_expr(&a.right, &f)?;
    let routes = Routes {
        engine: !a.oracle_only,
        oracle: !a.engine_only,
    };
    let opts = Options {
        paper_literal: a.paper_literal,
    };
    let cap = extension_cap();
    let res = resolve_pair(&f, &left, &right, routes, opts, cap).map_err(|e| e.to_string())?;
    let g = &res.field;
    let both = routes.engine && routes.oracle;
    let ok = if res.unresolved {
        false
    } else if both {
        res.matched()
    } else {
        res.engine.as_ref().is_none_or(|e| e.is_ok()) && res.oracle_descriptor().is_none_or(|o| o.is_ok())
    };
    if a.json {
        let engine = res.engine.as_ref().map(|e| match e {
            Ok(d) => d.to_json(g),
            Err(e) => json!({ "error": e.to_string() }),
        });
        let oracle = res.oracle_descriptor().map(|o| match o {
            Ok(d) => d.to_json(g),
            Err(e) => json!({ "error": e.to_string() }),
        });
        let mut v = json!({
            "left": a.left,
            "right": a.right,
            "field": a.field,
            "resolved_field": g.degree(),
            "engine": engine,
            "oracle": oracle,
        });
        if let Some(e) = &res.evaluation {
            v["case"] = json!(e.case.key());
            v["typos"] = json!(e.typos.iter().map(|t| t.id()).collect::<Vec<_>>());
        }
        if both {
            v["match"] = json!(res.matched());
        }
        if res.unresolved {
            v["unresolved"] = json!(true);
        }
        writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json")).map_err(|e| e.to_string())?;
    } else {
        let mut text = String::new();
        text += &format!("{} ⊗ {} over GF(3^{})\n", left.format(&f), right.format(&f), a.field);
        if g.degree() != a.field {
            text += &format!("extension needed: lifted to GF(3^{})\n", g.degree());
        }
        if res.unresolved {
            text += &format!(
                "extension needed beyond the cap of degree {cap} ({})\n",
                resolve::MAX_EXT_ENV
            );
        }
        if let Some(e) = &res.evaluation {
            text += &format!("row:     {}\n", e.case.key());
            if !e.typos.is_empty() {
                let ids: Vec<&str> = e.typos.iter().map(|t| t.id()).collect();
                text += &format!("reading: {}\n", ids.join(", "));
            }
        }
        if let Some(e) = &res.engine {
            match e {
                Ok(d) => text += &format!("engine:  {}\n", d.pretty(g)),
                Err(e) => text += &format!("engine:  error: {e}\n"),
            }
        }
        if let Some(o) = res.oracle_descriptor() {
            match o {
                Ok(d) => text += &format!("oracle:  {}\n", d.pretty(g)),
                Err(e) => text += &format!("oracle:  error: {e}\n"),
            }
        }
        if both {
            text += if res.matched() { "match\n" } else { "MISMATCH\n" };
        }
        write!(out, "{text}").map_err(|e| e.to_string())?;
    }
    Ok(if ok { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_verify(a: &VerifyArgs, out: &mut impl Write) -> CmdResult {
    if !(1..=2).contains(&a.field) {
        return Err(format!("verify supports --field 1 or 2, got {}", a.field));
    }
    let scope = match &a.scope {
        Some(s) => Scope::parse(s)?,
        None => default_scope(a.field),
    };
    let cfg = VerifyConfig {
        degree: a.field,
        scope,
        seed: a.seed,
        jobs: a.jobs,
        options: Options {
            paper_literal: a.paper_literal,
        },
        cap: extension_cap(),
        timings: a.timings,
    };
    let report = verify::verify(&cfg).map_err(|e| e.to_string())?;
    if let Some(path) = &a.out {
        let text = serde_json::to_string_pretty(&report).expect("json");
        std::fs::write(path, text + "\n").map_err(|e| format!("{path}: {e}"))?;
    }
    write!(out, "{}", report.render()).map_err(|e| e.to_string())?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_report(path: &str, out: &mut impl Write) -> CmdResult {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    let mut report: VerifyReport = serde_json::from_str(&text).map_err(|e| format!("{path}: {e}"))?;
    if report.coverage.is_empty() {
        report.tally();
    }
    write!(out, "{}", report.render()).map_err(|e| e.to_string())?;
    Ok(EXIT_OK)
}

fn cmd_tables(as_json: bool, out: &mut impl Write) -> CmdResult {
    let rows = oracle::table_dump();
    let mut text = String::new();
    if as_json {
        for r in &rows {
            text += &serde_json::to_string(r).expect("json");
            text.push('\n');
        }
    } else {
        let mut current = String::new();
        for r in &rows {
            if r.table != current {
                text += &format!("{}: {}\n", r.table, r.title);
                current = r.table.clone();
            }
            text += &format!("  {}\n      {}\n", r.conditions, r.printed);
            if let Some(reading) = &r.reading {
                text += &format!("      read as: {reading}\n");
            }
        }
    }
    write!(out, "{text}").map_err(|e| e.to_string())?;
    Ok(EXIT_OK)
}

//! Command-line interface: evaluate sequence polynomials, print the
//! determinant matrices, compute exact determinants, and run verification
//! sweeps with text or JSON output.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 internal
//! inconsistency (engine disagreement).

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::exit;

use clap::{Parser, Subcommand};

use fibdet::matrix::{
    build_theorem_matrix, det_bareiss, det_cofactor, det_hessenberg, PolyMatrix, TheoremMatrix,
};
use fibdet::sequences::{eval_family, SeqFamily};
use fibdet::verifier::{run_check, run_suite, CheckParams, RunRanges};
use fibdet::{Polynomial, Var};

const EXIT_OK: i32 = 0;
const EXIT_CHECK_FAILED: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_INCONSISTENT: i32 = 3;

#[derive(Parser)]
#[command(
    name = "fibdet",
    version,
    about = "Exact generalized Fibonacci/Lucas polynomials, q-analogues, and their determinant identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a sequence element (families: F, L, qF, Luc, lAdj)
    Eval {
        #[arg(long)]
        family: String,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Integer substitution VAR=INT (repeatable; VAR is x, s or q)
        #[arg(long = "set", value_name = "VAR=INT")]
        set: Vec<String>,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Print a constructed matrix (A, B, C, D, Aq, Bq, LucEven, LucOdd,
    /// Prop8, SparseF, SparseL)
    Matrix {
        #[arg(long)]
        which: String,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long, default_value_t = 0)]
        r: i64,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Compute an exact determinant (engines: bareiss, hessenberg, cofactor, all)
    Det {
        #[arg(long)]
        which: String,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long, default_value_t = 0)]
        r: i64,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value = "bareiss")]
        engine: String,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Run one registered identity or theorem check
    Verify {
        #[arg(long)]
        id: String,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long)]
        r: Option<i64>,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long)]
        i: Option<i64>,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Sweep every registered check over a parameter grid
    Suite {
        #[arg(long, default_value_t = 5)]
        kmax: usize,
        #[arg(long, default_value_t = 8)]
        nmax: u32,
        /// Comma-separated list of check ids; empty string runs nothing
        #[arg(long)]
        subset: Option<String>,
        /// Write the full JSON report here
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct UsageError(String);

impl From<fibdet::Error> for UsageError {
    fn from(e: fibdet::Error) -> UsageError {
        UsageError(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(UsageError(msg)) = configure_threads() {
        eprintln!("error: {msg}");
        exit(EXIT_USAGE);
    }
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    };
    exit(code);
}

/// FIBDET_THREADS overrides the suite worker count; 0 or unset means auto.
fn configure_threads() -> Result<(), UsageError> {
    if let Ok(raw) = std::env::var("FIBDET_THREADS") {
        let threads: usize = raw
            .parse()
            .map_err(|_| UsageError(format!("FIBDET_THREADS must be an integer, got {raw:?}")))?;
        if threads > 0 {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global()
                .map_err(|e| UsageError(e.to_string()))?;
        }
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<i32, UsageError> {
    match cli.command {
        Command::Eval {
            family,
            k,
            n,
            set,
            format,
        } => cmd_eval(&family, k, n, &set, &format),
        Command::Matrix {
            which,
            k,
            r,
            n,
            format,
        } => cmd_matrix(&which, k, r, n, &format),
        Command::Det {
            which,
            k,
            r,
            n,
            engine,
            format,
        } => cmd_det(&which, k, r, n, &engine, &format),
        Command::Verify {
            id,
            k,
            r,
            n,
            i,
            format,
        } => cmd_verify(&id, k, r, n, i, &format),
        Command::Suite {
            kmax,
            nmax,
            subset,
            out,
        } => cmd_suite(kmax, nmax, subset, out),
    }
}

fn check_format(format: &str) -> Result<bool, UsageError> {
    match format {
        "text" => Ok(false),
        "json" => Ok(true),
        other => Err(UsageError(format!(
            "unknown format {other:?} (use text or json)"
        ))),
    }
}

fn parse_set(spec: &str) -> Result<(Var, i64), UsageError> {
    let (name, value) = spec
        .split_once('=')
        .ok_or_else(|| UsageError(format!("--set expects VAR=INT, got {spec:?}")))?;
    let var = match name.trim() {
        "x" => Var::X,
        "s" => Var::S,
        "q" => Var::Q,
        other => return Err(UsageError(format!("unknown variable {other:?} in --set"))),
    };
    let value: i64 = value
        .trim()
        .parse()
        .map_err(|_| UsageError(format!("--set expects an integer value, got {spec:?}")))?;
    Ok((var, value))
}

fn cmd_eval(
    family: &str,
    k: Option<i64>,
    n: i64,
    set: &[String],
    format: &str,
) -> Result<i32, UsageError> {
    let json = check_format(format)?;
    let family = SeqFamily::parse(family)
        .ok_or_else(|| UsageError(format!("unknown family {family:?} (F, L, qF, Luc, lAdj)")))?;
    let k = match (family, k) {
        (SeqFamily::Luc, None) => 2,
        (SeqFamily::Luc, Some(2)) => 2,
        (SeqFamily::Luc, Some(other)) => {
            return Err(UsageError(format!(
                "family Luc is defined for k = 2, got {other}"
            )))
        }
        (_, Some(k)) if k >= 1 => k,
        (_, Some(k)) => return Err(UsageError(format!("k must be >= 1, got {k}"))),
        (_, None) => return Err(UsageError("this family requires --k".into())),
    };
    let mut value = eval_family(family, k as usize, n)?;
    for spec in set {
        let (var, at) = parse_set(spec)?;
        value = value.substitute(var, &Polynomial::int(at))?;
    }
    if json {
        println!("{}", serde_json::to_string(&value.to_json_terms()).unwrap());
    } else {
        println!("{}", value.to_canonical_string());
    }
    Ok(EXIT_OK)
}

fn build_from_args(
    which: &str,
    k: Option<i64>,
    r: i64,
    n: i64,
) -> Result<(TheoremMatrix, PolyMatrix), UsageError> {
    let which = TheoremMatrix::parse(which)
        .ok_or_else(|| UsageError(format!("unknown matrix family {which:?}")))?;
    let k = match (which, k) {
        (TheoremMatrix::LucEven | TheoremMatrix::LucOdd | TheoremMatrix::Prop8, None) => 2,
        (_, Some(k)) if k >= 1 => k,
        (_, Some(k)) => return Err(UsageError(format!("k must be >= 1, got {k}"))),
        (_, None) => return Err(UsageError("this matrix family requires --k".into())),
    };
    if r < 0 {
        return Err(UsageError(format!("r must be >= 0, got {r}")));
    }
    if n < 0 {
        return Err(UsageError(format!("n must be >= 0, got {n}")));
    }
    let m = build_theorem_matrix(which, k as usize, r as usize, n as usize)?;
    Ok((which, m))
}

fn matrix_rows(m: &PolyMatrix) -> Vec<Vec<String>> {
    m.rows()
        .take(m.dim())
        .map(|row| row.iter().map(|p| p.to_canonical_string()).collect())
        .collect()
}

fn cmd_matrix(
    which: &str,
    k: Option<i64>,
    r: i64,
    n: i64,
    format: &str,
) -> Result<i32, UsageError> {
    let json = check_format(format)?;
    let (_, m) = build_from_args(which, k, r, n)?;
    let rows = matrix_rows(&m);
    if json {
        println!(
            "{}",
            serde_json::to_string(&serde_json::json!(rows)).unwrap()
        );
    } else {
        for row in rows {
            println!("[{}]", row.join(", "));
        }
    }
    Ok(EXIT_OK)
}

fn cmd_det(
    which: &str,
    k: Option<i64>,
    r: i64,
    n: i64,
    engine: &str,
    format: &str,
) -> Result<i32, UsageError> {
    let json = check_format(format)?;
    let (_, m) = build_from_args(which, k, r, n)?;
    let mut results: Vec<(&str, Polynomial)> = Vec::new();
    match engine {
        "bareiss" => results.push(("bareiss", det_bareiss(&m)?)),
        "cofactor" => results.push(("cofactor", det_cofactor(&m)?)),
        "hessenberg" => results.push(("hessenberg", det_hessenberg(&m)?)),
        "all" => {
            results.push(("bareiss", det_bareiss(&m)?));
            if m.dim() <= 7 {
                results.push(("cofactor", det_cofactor(&m)?));
            }
            if m.is_lower_hessenberg() {
                results.push(("hessenberg", det_hessenberg(&m)?));
            }
        }
        other => {
            return Err(UsageError(format!(
                "unknown engine {other:?} (bareiss, hessenberg, cofactor, all)"
            )))
        }
    }
    let det = results[0].1.clone();
    let agreement = results.iter().all(|(_, d)| *d == det);
    if !agreement {
        for (name, d) in &results {
            eprintln!("engine {name}: {}", d.to_canonical_string());
        }
        eprintln!("error: determinant engines disagree");
        return Ok(EXIT_INCONSISTENT);
    }
    let engines: Vec<&str> = results.iter().map(|(name, _)| *name).collect();
    if json {
        let payload = serde_json::json!({
            "agreement": agreement,
            "det": det.to_json_terms(),
            "engines": engines,
        });
        println!("{}", serde_json::to_string(&payload).unwrap());
    } else {
        println!("{}", det.to_canonical_string());
        if engines.len() > 1 {
            println!("engines={} agreement=true", engines.join(","));
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(
    id: &str,
    k: Option<i64>,
    r: Option<i64>,
    n: Option<i64>,
    i: Option<i64>,
    format: &str,
) -> Result<i32, UsageError> {
    let json = check_format(format)?;
    let params = CheckParams { k, r, n, i };
    let check = run_check(id, &params)?;
    if json {
        println!("{}", serde_json::to_string(&check.to_json()).unwrap());
    } else {
        println!(
            "id={} {} pass={} witness={}",
            check.id,
            check.params,
            check.pass,
            check.witness.to_canonical_string()
        );
    }
    Ok(if check.pass {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn cmd_suite(
    kmax: usize,
    nmax: u32,
    subset: Option<String>,
    out: Option<PathBuf>,
) -> Result<i32, UsageError> {
    if kmax < 1 {
        return Err(UsageError("kmax must be >= 1".into()));
    }
    let subset = subset.map(|raw| {
        raw.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::to_string)
            .collect::<BTreeSet<_>>()
    });
    if let Some(ids) = &subset {
        let known = fibdet::verifier::registered_ids();
        for id in ids {
            if !known.contains(&id.as_str()) {
                return Err(UsageError(format!("unknown identity {id:?} in --subset")));
            }
        }
    }
    let ranges = RunRanges { kmax, nmax, subset };
    let report = run_suite(&ranges);
    if let Some(path) = out {
        let rendered = serde_json::to_string_pretty(&report.to_json()).unwrap();
        std::fs::write(&path, rendered + "\n")
            .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?;
    }
    println!("{}", report.summary_line());
    Ok(if report.failures == 0 {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

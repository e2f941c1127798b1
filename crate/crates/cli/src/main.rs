use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use liepcd::analysis::{
    cd_star_classify, find_2dim_subalgebra, find_p_nilpotent, torus_report, ClassifyOptions, NilpotentOptions,
    SubalgebraOptions,
};
use liepcd::catalog::{catalog_get, ENTRY_NAMES};
use liepcd::cohomology::ce_report;
use liepcd::error::Error;
use liepcd::io::{algebra_data, algebra_file, catalog_algebra, parse_algebra_file, parse_module};
use liepcd::liep::{make_algebra, LiePAlgebra};
use liepcd::rep::trivial_module;
use liepcd::suite::{criterion, run_criterion, CRITERIA};
use liepcd::uenv::{ext_dims, ExtOptions};

#[derive(Parser)]
#[command(name = "liepcd", version, about = "Restricted Lie algebras over finite fields: cohomology and structure")]
struct Cli {
    /// Seed for randomized searches.
    #[arg(long, global = true, env = "LIEPCD_SEED", default_value_t = 0)]
    seed: u64,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Largest u(L) dimension to build.
    #[arg(long, global = true, default_value_t = 512)]
    guard_dim: usize,
    /// Largest free module (rank times dim u(L)) in a resolution.
    #[arg(long, global = true, default_value_t = 5000)]
    max_free_dim: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Source {
    /// Algebra JSON file.
    #[arg(long)]
    algebra: Option<PathBuf>,
    /// Catalog entry instead of a file, e.g. `sl2`, `torus(2)` or `sl2/GF(3)`.
    #[arg(long, conflicts_with = "algebra")]
    entry: Option<String>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of an algebra file.
    Verify {
        file: Option<PathBuf>,
        #[command(flatten)]
        source: Source,
    },
    /// Chevalley-Eilenberg cohomology with coefficients in a module file.
    Cohomology {
        #[arg(long)]
        module: Option<PathBuf>,
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Restricted cohomology, Ext over u(L), with trivial or given coefficients.
    Rcohomology {
        #[arg(long)]
        module: Option<PathBuf>,
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// Decide whether the algebra is a torus.
    Torus {
        #[command(flatten)]
        source: Source,
    },
    /// Search for a nonzero p-nilpotent element.
    Nilpotent {
        #[command(flatten)]
        source: Source,
        /// Exponent n in x^[p]^n = λ(x) x; found by sampling when omitted.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        no_basis_scan: bool,
        #[arg(long, default_value_t = 20)]
        random_pairs: usize,
    },
    /// Search for a two-dimensional subalgebra.
    Subalg2 {
        #[command(flatten)]
        source: Source,
        #[arg(long, conflicts_with = "random")]
        exhaustive: bool,
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Classify cd_* as zero or infinite.
    ClassifyCdstar {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        #[arg(long)]
        no_ext: bool,
    },
    /// List or emit catalog entries.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run the reproduction suite.
    Suite {
        /// Run only these criteria.
        #[arg(long = "criterion")]
        criteria: Vec<u8>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    /// Write the algebra file of an entry.
    Emit {
        name: String,
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
}

enum Failure {
    /// Exit 1, with a report.
    Analysis(Value),
    Error(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Outcome = Result<Value, Failure>;

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load(source: &Source) -> Result<LiePAlgebra, Failure> {
    match (&source.algebra, &source.entry) {
        (Some(path), _) => Ok(make_algebra_checked(&read(path)?)?),
        (None, Some(name)) => Ok(catalog_algebra(name, source.p, source.k)?),
        (None, None) => Err(Failure::Io("give --algebra <file> or --entry <name>".into())),
    }
}

fn make_algebra_checked(json: &str) -> Result<LiePAlgebra, Failure> {
    let (field, data) = algebra_data(&parse_algebra_file(json)?)?;
    let name = data.name.clone();
    match make_algebra(&field, data) {
        Ok(l) => Ok(l),
        Err(Error::AxiomViolation(report)) => Err(Failure::Analysis(json!({
            "algebra": name,
            "ok": false,
            "axioms": to_value(&*report),
        }))),
        Err(e) => Err(e.into()),
    }
}

fn ext_options(cli: &Cli) -> ExtOptions {
    ExtOptions {
        guard_dim: cli.guard_dim,
        max_free_dim: cli.max_free_dim,
        ..ExtOptions::default()
    }
}

fn with_provenance(mut report: Value, l: &LiePAlgebra, seed: Option<u64>) -> Value {
    if let Value::Object(map) = &mut report {
        map.insert("field".into(), to_value(&l.field().spec()));
        if let Some(seed) = seed {
            map.insert("seed".into(), json!(seed));
        }
    }
    report
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Verify { file, source } => {
            let l = match file {
                Some(path) => make_algebra_checked(&read(path)?)?,
                None => load(source)?,
            };
            let report = l.verify_axioms();
            let value = json!({
                "algebra": l.name(),
                "dim": l.dim(),
                "ok": report.ok(),
                "axioms": to_value(&report),
            });
            let value = with_provenance(value, &l, None);
            if report.ok() {
                Ok(value)
            } else {
                Err(Failure::Analysis(value))
            }
        }
        Command::Cohomology { module, source, max_degree } => {
            let m = match module {
                Some(path) => parse_module(&read(path)?)?,
                None => trivial_module(&load(source)?),
            };
            Ok(with_provenance(to_value(&ce_report(&m, *max_degree)), m.algebra(), None))
        }
        Command::Rcohomology { module, source, max_degree } => {
            let m = match module {
                Some(path) => parse_module(&read(path)?)?,
                None => trivial_module(&load(source)?),
            };
            let report = ext_dims(&m, *max_degree, &ext_options(cli))?;
            Ok(with_provenance(to_value(&report), m.algebra(), None))
        }
        Command::Torus { source } => {
            let l = load(source)?;
            Ok(with_provenance(to_value(&torus_report(&l, cli.guard_dim)), &l, None))
        }
        Command::Nilpotent { source, n, no_basis_scan, random_pairs } => {
            let l = load(source)?;
            let opts = NilpotentOptions {
                basis_scan: !no_basis_scan,
                n: *n,
                random_pairs: *random_pairs,
                seed: cli.seed,
                ..NilpotentOptions::default()
            };
            let mut value = to_value(&find_p_nilpotent(&l, &opts)?);
            if let Value::Object(map) = &mut value {
                map.insert("algebra".into(), json!(l.name()));
            }
            Ok(with_provenance(value, &l, Some(cli.seed)))
        }
        Command::Subalg2 { source, exhaustive, random, samples } => {
            let l = load(source)?;
            let opts = SubalgebraOptions {
                exhaustive: *exhaustive || !*random,
                samples: *samples,
                seed: cli.seed,
            };
            let mut value = to_value(&find_2dim_subalgebra(&l, &opts));
            if let Value::Object(map) = &mut value {
                map.insert("algebra".into(), json!(l.name()));
            }
            Ok(with_provenance(value, &l, Some(cli.seed)))
        }
        Command::ClassifyCdstar { source, max_degree, no_ext } => {
            let l = load(source)?;
            let opts = ClassifyOptions {
                max_degree: *max_degree,
                check_ext: !no_ext,
                ext: ext_options(cli),
                seed: cli.seed,
                ..ClassifyOptions::default()
            };
            Ok(with_provenance(to_value(&cd_star_classify(&l, &opts)?), &l, None))
        }
        Command::Catalog { action: CatalogAction::List } => Ok(json!({ "entries": ENTRY_NAMES })),
        Command::Catalog { action: CatalogAction::Emit { name, p, k } } => {
            let entry = catalog_get(name, *p as u64, *k, None)?;
            Ok(to_value(&algebra_file(&entry.algebra)))
        }
        Command::Suite { criteria } => {
            let chosen: Vec<_> = if criteria.is_empty() {
                CRITERIA.iter().collect()
            } else {
                criteria
                    .iter()
                    .map(|&id| criterion(id).ok_or_else(|| Error::InvalidParams(format!("no criterion {id}"))))
                    .collect::<Result<_, _>>()?
            };
            let results: Vec<_> = chosen.into_iter().map(|c| run_criterion(c, cli.seed)).collect();
            let pass = results.iter().all(|r| r.pass);
            let value = json!({ "seed": cli.seed, "pass": pass, "criteria": to_value(&results) });
            if pass {
                Ok(value)
            } else {
                Err(Failure::Analysis(value))
            }
        }
    }
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Json(_)
            | Error::Parse(_)
            | Error::UnknownEntry(_)
            | Error::InvalidParams(_)
            | Error::CompositeP(_)
            | Error::DegreeTooLarge(_)
            | Error::Shape(_)
            | Error::NonSquare { .. }
            | Error::FieldMismatch
    )
}

fn error_kind(e: &Error) -> String {
    let debug = format!("{e:?}");
    debug
        .split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or("Error")
        .to_string()
}

fn render(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                if is_scalar(v) || is_flat_array(v) {
                    out.push_str(&format!("{pad}{key}: {}\n", inline(v)));
                } else {
                    out.push_str(&format!("{pad}{key}:\n"));
                    render(v, indent + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if is_scalar(item) || is_flat_array(item) {
                    out.push_str(&format!("{pad}- {}\n", inline(item)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render(item, indent + 1, out);
                }
            }
        }
        v => out.push_str(&format!("{pad}{}\n", inline(v))),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn is_flat_array(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|i| is_scalar(i) || is_flat_array(i)),
        _ => false,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn emit(value: &Value, as_json: bool) {
    let out = if as_json {
        format!("{}\n", serde_json::to_string_pretty(value).expect("serializable"))
    } else {
        let mut out = String::new();
        render(value, 0, &mut out);
        out
    };
    // a closed pipe is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let emit_json = cli.json || matches!(cli.command, Command::Catalog { action: CatalogAction::Emit { .. } });
    match run(&cli) {
        Ok(value) => {
            emit(&value, emit_json);
            ExitCode::SUCCESS
        }
        Err(Failure::Analysis(value)) => {
            emit(&value, emit_json);
            ExitCode::from(1)
        }
        Err(failure) => {
            let (kind, message, code) = match &failure {
                Failure::Error(e) => (error_kind(e), e.to_string(), if is_input_error(e) { 2 } else { 1 }),
                Failure::Io(msg) => ("Input".to_string(), msg.clone(), 2),
                Failure::Analysis(_) => unreachable!(),
            };
            if cli.json {
                emit(&json!({ "error": { "kind": kind, "message": message, "exit": code } }), true);
            } else {
                eprintln!("error: {message}");
            }
            ExitCode::from(code)
        }
    }
}

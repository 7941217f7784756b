//! Command-line front end. Every command writes one JSON document; errors
//! go to stderr as `{"error": kind, "message": ...}`.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::ambient::{poly_json, virtual_json};
use crate::arrangement::{Arrangement, ChiTarget};
use crate::corpus;
use crate::error::{Error, Result};
use crate::genera::check_hirzebruch_identities;
use crate::milnor::{assemble, calibrate, ConventionSet};
use crate::spectra::{resolve, sp_shift, UserTables};
use crate::strata::{chow_dims, compactify, homology_weight_dims};

#[derive(Parser, Debug)]
#[command(
    name = "hmclass",
    version,
    about = "Hirzebruch-Milnor classes of projective hyperplane arrangements"
)]
pub struct Cli {
    /// Print the JSON input/output schemas and exit.
    #[arg(long)]
    pub schema: bool,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Intersection lattice, edges and structure tables.
    Lattice { input: String },
    /// Resolved and validated spectra of every singular stratum.
    Spectra {
        input: String,
        #[arg(long)]
        spectra: Option<PathBuf>,
    },
    /// Virtual Hirzebruch class of a degree-d hypersurface in P^n.
    Virtual {
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        ambient: usize,
    },
    /// Hodge-Deligne polynomials of X, of its complement and of each stratum.
    ChiY { input: String },
    /// The Hirzebruch-Milnor class with its cross-checks.
    Milnor {
        input: String,
        /// e.g. `flip_odd_strata,res_in_[0,1)`
        #[arg(long)]
        conventions: Option<String>,
        #[arg(long)]
        dump_strata: bool,
        #[arg(long)]
        spectra: Option<PathBuf>,
    },
    /// Run the invariant checks over a suite.
    Check {
        #[arg(long, default_value = "builtin")]
        suite: String,
    },
    /// Evaluate all sign conventions on a suite.
    Calibrate {
        #[arg(long, default_value = "builtin")]
        suite: String,
    },
}

/// Exit code, stdout document, stderr document.
pub struct Outcome {
    pub code: i32,
    pub stdout: Option<String>,
    pub stderr: Option<String>,
}

/// Validation failures exit with 1, unreadable or malformed input with 2.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::InvalidArrangement(_) | Error::Io(_) | Error::Json(_) => 2,
        _ => 1,
    }
}

pub fn error_json(e: &Error) -> Value {
    json!({"error": e.kind(), "message": e.to_string()})
}

/// Read an arrangement from a file, falling back to a corpus entry of the
/// same name (with or without `.json`).
pub fn load_input(input: &str) -> Result<Arrangement> {
    let path = Path::new(input);
    if path.exists() {
        return Arrangement::from_json(&std::fs::read_to_string(path)?);
    }
    let stem = input.strip_suffix(".json").unwrap_or(input);
    let stem = Path::new(stem)
        .file_name()
        .and_then(|s| s.to_str())
        .unwrap_or(stem);
    if corpus::names().any(|n| n == stem) {
        return corpus::load(stem);
    }
    Err(Error::Io(std::io::Error::new(
        std::io::ErrorKind::NotFound,
        format!("{input}: no such file or corpus entry"),
    )))
}

fn load_tables(path: &Option<PathBuf>) -> Result<UserTables> {
    match path {
        Some(p) => UserTables::load(p),
        None => Ok(UserTables::default()),
    }
}

fn suite_members(name: &str) -> Result<Vec<crate::milnor::SuiteMember>> {
    match name {
        "builtin" => Ok(corpus::suite()),
        other => Err(Error::Parse(format!("unknown suite {other:?}"))),
    }
}

pub fn lattice_json(arr: &Arrangement) -> Value {
    let one_based = |s: &[usize]| s.iter().map(|j| j + 1).collect::<Vec<_>>();
    let flats: Vec<Value> = arr
        .lattice()
        .flats()
        .iter()
        .enumerate()
        .map(|(i, f)| json!({"rank": f.rank, "set": one_based(&f.set), "mobius": arr.lattice().mobius_bottom(i)}))
        .collect();
    let edges: Vec<Value> = arr
        .edges()
        .iter()
        .map(|e| {
            json!({
                "key": e.key(),
                "codim": e.codim,
                "m_S": e.m_s,
                "singular": arr.in_sigma(e),
                "dense": arr.is_dense(e),
            })
        })
        .collect();
    let chow = chow_dims(arr);
    json!({
        "name": arr.name(),
        "n": arr.n(),
        "degree": arr.m(),
        "reduced": arr.is_reduced(),
        "flats": flats,
        "edges": edges,
        "edge_counts": arr.edge_counts(),
        "chow_dims": {"X": chow.x, "Sigma": chow.sigma},
        "homology_weight_dims": homology_weight_dims(arr),
    })
}

pub fn spectra_json(arr: &Arrangement, tables: &UserTables) -> Result<Value> {
    let strata = arr.sigma_strata();
    let resolved = resolve(arr, tables)?;
    let out: Vec<Value> = strata
        .iter()
        .zip(&resolved)
        .map(|(s, sp)| {
            let shifted = sp_shift(&sp.germ, s.dim, arr.n())?;
            Ok(json!({
                "edge": arr.edge(s.edge).key(),
                "dim": s.dim,
                "source": sp.kind.to_string(),
                "germ": sp.germ.to_json(),
                "germ_display": sp.germ.to_string(),
                "stratum": shifted.to_json(),
            }))
        })
        .collect::<Result<_>>()?;
    Ok(json!({"name": arr.name(), "strata": out}))
}

pub fn chi_y_json(arr: &Arrangement) -> Result<Value> {
    let mut strata = serde_json::Map::new();
    for s in arr.x_strata() {
        strata.insert(
            arr.edge(s.edge).key(),
            poly_json(&arr.chi_y(ChiTarget::Stratum(s.edge))?),
        );
    }
    Ok(json!({
        "name": arr.name(),
        "X": poly_json(&arr.chi_y(ChiTarget::X)?),
        "complement": poly_json(&arr.chi_y(ChiTarget::Complement)?),
        "strata": strata,
    }))
}

pub fn milnor_json(
    arr: &Arrangement,
    tables: &UserTables,
    conv: &ConventionSet,
    dump_strata: bool,
) -> Result<Value> {
    let report = assemble(arr, tables, conv)?;
    let mut out = report.to_json();
    if dump_strata {
        let models: Vec<Value> = arr
            .sigma_strata()
            .iter()
            .filter(|s| s.dim <= 2)
            .map(|s| compactify(arr, s).map(|m| m.to_json(arr)))
            .collect::<Result<_>>()?;
        out["models"] = Value::Array(models);
    }
    Ok(out)
}

/// Invariant table over a suite; `passed` is the conjunction of every row.
pub fn check_json(suite: &str) -> Result<Value> {
    let mut rows = Vec::new();
    let mut row = |name: String, passed: bool, detail: String| {
        rows.push(json!({"check": name, "passed": passed, "detail": detail}));
    };
    let ids = check_hirzebruch_identities(12);
    row(
        "series identities to order 12".into(),
        ids.holds(),
        String::new(),
    );
    for member in suite_members(suite)? {
        let arr = &member.arrangement;
        match assemble(arr, &member.tables, &ConventionSet::default()) {
            Ok(r) => {
                row(
                    format!("{}: polynomial strata", member.name),
                    true,
                    String::new(),
                );
                row(
                    format!("{}: cross-path at y=-1", member.name),
                    r.cross_path_ok,
                    crate::milnor::chow_json_rational(&r.chern_milnor).to_string(),
                );
                let mut residues_ok = true;
                for s in arr.sigma_strata().iter().filter(|s| s.dim <= 2) {
                    let m = compactify(arr, s)?;
                    residues_ok &= m.power_identity_holds();
                }
                row(
                    format!("{}: divisor identity", member.name),
                    residues_ok,
                    String::new(),
                );
            }
            Err(e) => row(format!("{}: assembly", member.name), false, e.to_string()),
        }
    }
    let passed = rows.iter().all(|r| r["passed"] == Value::Bool(true));
    Ok(json!({"passed": passed, "checks": rows}))
}

pub const SCHEMAS: &str = r#"{
  "arrangement": {
    "type": "object",
    "required": ["n", "hyperplanes"],
    "properties": {
      "name": {"type": "string"},
      "n": {"type": "integer", "minimum": 1, "description": "ambient P^n"},
      "hyperplanes": {
        "type": "array",
        "items": {
          "type": "object",
          "required": ["coeffs", "mult"],
          "properties": {
            "coeffs": {"type": "array", "items": {"type": "string"}, "description": "n+1 rationals such as \"-3/2\""},
            "mult": {"type": "integer", "minimum": 1}
          }
        }
      }
    }
  },
  "spectrum_tables": {
    "type": "object",
    "description": "germ-frame spectra keyed by 1-based edge key such as \"1,2,3\"",
    "additionalProperties": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["alpha", "mult"],
        "properties": {"alpha": {"type": "string"}, "mult": {"type": "integer"}}
      }
    }
  },
  "milnor_report": {
    "type": "object",
    "properties": {
      "labels": {"type": "array", "items": {"type": "string"}},
      "M_y": {"type": "object", "additionalProperties": {"type": "array", "items": {"type": "string"}, "description": "coefficients of y^0, y^1, ..."}},
      "specializations": {"type": "object", "description": "keys -1, 0, 1; values map labels to rationals"},
      "degree0": {"type": "object", "properties": {"trace": {}, "delta": {}, "status": {"enum": ["equal", "unequal"]}}},
      "chern_milnor": {"type": "object"},
      "cross_path_ok": {"type": "boolean"},
      "strata": {"type": "array"},
      "conventions": {"type": "object"}
    }
  }
}"#;

fn dispatch(cli: &Cli) -> Result<Value> {
    if cli.schema {
        return Ok(serde_json::from_str(SCHEMAS)?);
    }
    let Some(command) = &cli.command else {
        return Err(Error::Parse("no command given; see --help".into()));
    };
    match command {
        Command::Lattice { input } => Ok(lattice_json(&load_input(input)?)),
        Command::Spectra { input, spectra } => {
            spectra_json(&load_input(input)?, &load_tables(spectra)?)
        }
        Command::Virtual { degree, ambient } => virtual_json(*degree, *ambient),
        Command::ChiY { input } => chi_y_json(&load_input(input)?),
        Command::Milnor {
            input,
            conventions,
            dump_strata,
            spectra,
        } => {
            let conv = match conventions {
                Some(c) => c.parse()?,
                None => ConventionSet::default(),
            };
            milnor_json(
                &load_input(input)?,
                &load_tables(spectra)?,
                &conv,
                *dump_strata,
            )
        }
        Command::Check { suite } => check_json(suite),
        Command::Calibrate { suite } => Ok(calibrate(&suite_members(suite)?).to_json()),
    }
}

/// Run a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    let rendered = dispatch(cli).and_then(|v| {
        let failed =
            matches!(cli.command, Some(Command::Check { .. })) && v["passed"] == Value::Bool(false);
        let text = serde_json::to_string_pretty(&v)? + "\n";
        match &cli.output {
            Some(path) => {
                std::fs::write(path, &text)?;
                Ok((failed, None))
            }
            None => Ok((failed, Some(text))),
        }
    });
    match rendered {
        Ok((failed, stdout)) => Outcome {
            code: if failed { 1 } else { 0 },
            stdout,
            stderr: None,
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: None,
            stderr: Some(error_json(&e).to_string() + "\n"),
        },
    }
}

/// Parse `args` (including the program name) and run.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome {
                    code,
                    stdout: Some(text),
                    stderr: None,
                }
            } else {
                Outcome {
                    code,
                    stdout: None,
                    stderr: Some(text),
                }
            }
        }
    }
}

//! The `sqc` command-line interface.
//!
//! Every command returns its output as a string; the binary prints it and
//! maps the outcome to an exit code: 0 success, 1 usage or parse error,
//! 2 resource cap, 3 verification failure. Errors are written to stderr as
//! `{"error": {"kind": …, "message": …}}`.

use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::builder::RangedU64ValueParser;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::algebra::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::hadamard::{complete, verify_bundle, HadamardBundle, HadamardOptions, TransversalSpec, DEFAULT_MAX_ORDER};
use crate::monomat::MonomialMatrix;
use crate::repbuild::{build_irrep, character_len, check_relations, pushforward, RepresentationRecord};
use crate::solver::{check_hr_bound, rho, solve, LambdaPattern, SearchMode, SolveConfig, DEFAULT_MAX_EXHAUSTIVE_N};
use crate::structure::{classify, render_grid, render_irrep_tables, IRREP_TABLE_SUMS};
use crate::symplectic::decompose;

/// Largest grid bound accepted by `tables`.
pub const MAX_TABLE_BOUND: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "sqc", version, about = "Real special quasi-Clifford algebras and Hadamard plug-in constructions")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Seed for sampled searches.
    #[arg(long, global = true, env = "SQC_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Largest pattern size searched exhaustively.
    #[arg(long, global = true, env = "SQC_MAX_N", default_value_t = DEFAULT_MAX_EXHAUSTIVE_N,
          value_parser = RangedU64ValueParser::<usize>::new().range(1..=63))]
    pub max_n: usize,

    /// Largest matrix order built by `represent` and `hadamard`.
    #[arg(long, global = true, env = "SQC_MAX_ORDER", default_value_t = DEFAULT_MAX_ORDER,
          value_parser = RangedU64ValueParser::<usize>::new().range(1..))]
    pub max_order: usize,

    /// Spread the sign search over all cores.
    #[arg(long, global = true)]
    pub parallel: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Generators {
    /// Images of the presentation's own generators.
    Original,
    /// Images of the central generators and hyperbolic pairs.
    Decomposed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TablePart {
    All,
    Grid,
    Irreps,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Wedderburn type of a presentation.
    Classify { file: PathBuf },
    /// Central generators and hyperbolic pairs of a presentation.
    Decompose { file: PathBuf },
    /// An irreducible monomial representation.
    Represent {
        file: PathBuf,
        /// Character bits, e.g. `010`; all zero by default.
        #[arg(long)]
        character: Option<String>,
        #[arg(long, value_enum, default_value_t = Generators::Original)]
        generators: Generators,
    },
    /// Minimal-order monomial matrices realizing an amicability pattern.
    Solve {
        file: PathBuf,
        /// Sample this many random sign vectors instead of searching all.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Build a Hadamard matrix by the plug-in construction, or re-check one.
    Hadamard {
        /// Tensor depth; the transversal has 2^m matrices.
        #[arg(long, required_unless_present = "verify_only", value_parser = RangedU64ValueParser::<usize>::new().range(1..=16))]
        m: Option<usize>,
        /// Diagonal choices, one of I/Z per factor; all I by default.
        #[arg(long)]
        diag: Option<String>,
        /// Off-diagonal choices, one of X/Y per factor; all X by default.
        #[arg(long)]
        offdiag: Option<String>,
        /// Sample this many random sign vectors when solving for the B side.
        #[arg(long)]
        samples: Option<usize>,
        /// Re-check a stored bundle instead of building one.
        #[arg(long, value_name = "BUNDLE", conflicts_with_all = ["m", "diag", "offdiag", "samples"])]
        verify_only: Option<PathBuf>,
    },
    /// Structure labels of R_{p,0} ⊗ R_{0,q} and irreducible dimensions.
    Tables {
        #[arg(long, default_value_t = 8)]
        max: usize,
        #[arg(long, value_enum, default_value_t = TablePart::All)]
        part: TablePart,
    },
    /// The Hurwitz–Radon function.
    Rho { n: u64 },
    /// Check stored artifacts.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyTarget {
    /// A Hadamard bundle.
    Bundle { file: PathBuf },
    /// A JSON list of monomial matrices against the Hurwitz–Radon bound.
    Family { file: PathBuf },
    /// Generator images against a presentation.
    Representation { presentation: PathBuf, representation: PathBuf },
}

/// What a successful command prints, and whether every check it ran passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub pass: bool,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, pass: true }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceCap { .. } => EXIT_RESOURCE,
        Error::Verification(_) => EXIT_VERIFICATION,
        _ => EXIT_USAGE,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::ResourceCap { .. } => "resource_cap",
        Error::Verification(_) => "verification",
        Error::Io(_) => "io",
        Error::Json(_) | Error::Parse(_) => "parse",
        _ => "invalid_input",
    }
}

/// The stable error object written to stderr.
pub fn error_json(e: &Error) -> String {
    json!({ "error": { "kind": error_kind(e), "message": e.to_string() } }).to_string()
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&read_input(path)?)?)
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            c => Err(Error::Parse(format!("character bits must be 0 or 1, got {c:?}"))),
        })
        .collect()
}

fn solve_config(cli: &Cli, samples: Option<usize>) -> SolveConfig {
    SolveConfig {
        mode: match samples {
            Some(samples) => SearchMode::Sampled { samples, seed: cli.seed },
            None => SearchMode::Exhaustive,
        },
        max_exhaustive_n: cli.max_n,
        parallel: cli.parallel,
    }
}

pub fn execute(cli: &Cli) -> Result<Output> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Classify { file } => {
            let p: AlgebraPresentation = read_json(file)?;
            let w = classify(&decompose(&p));
            Ok(Output::ok(if json { to_json(&w)? } else { format!("{w}\n") }))
        }
        Command::Decompose { file } => {
            let p: AlgebraPresentation = read_json(file)?;
            let d = decompose(&p);
            d.validate()?;
            if json {
                return Ok(Output::ok(to_json(&d)?));
            }
            let mut out = format!("r={} s={}\n", d.r(), d.s());
            for (i, c) in d.centrals.iter().enumerate() {
                writeln!(out, "beta{} = {}\tsquare {}", i + 1, c.monomial, c.square).unwrap();
            }
            for (i, pr) in d.pairs.iter().enumerate() {
                writeln!(
                    out,
                    "gamma{k} = {}\tsquare {}\tdelta{k} = {}\tsquare {}",
                    pr.gamma,
                    pr.gamma_square,
                    pr.delta,
                    pr.delta_square,
                    k = i + 1
                )
                .unwrap();
            }
            Ok(Output::ok(out))
        }
        Command::Represent { file, character, generators } => {
            let p: AlgebraPresentation = read_json(file)?;
            let d = decompose(&p);
            let w = classify(&d);
            if w.irrep_order > cli.max_order as u64 {
                return Err(Error::ResourceCap {
                    what: "representation order",
                    value: usize::try_from(w.irrep_order).unwrap_or(usize::MAX),
                    cap: cli.max_order,
                });
            }
            let bits = match character {
                Some(s) => parse_bits(s)?,
                None => vec![false; character_len(&d)],
            };
            let mut rep = build_irrep(&d, &bits)?;
            if *generators == Generators::Original {
                rep = pushforward(&rep)?;
            }
            check_relations(&rep.presentation(), &rep.images)?;
            if json {
                return Ok(Output::ok(to_json(&rep.to_record())?));
            }
            let name = if *generators == Generators::Original { "a" } else { "g" };
            let mut out = format!("{} order={}\n", w.label, rep.order);
            for (i, x) in rep.images.iter().enumerate() {
                writeln!(out, "{name}{}:\n{x}", i + 1).unwrap();
            }
            Ok(Output::ok(out))
        }
        Command::Solve { file, samples } => {
            let lambda: LambdaPattern = read_json(file)?;
            let r = solve(&lambda, &solve_config(cli, *samples))?;
            if json {
                return Ok(Output::ok(to_json(&r)?));
            }
            let kappa: Vec<String> = r.kappa.iter().map(|s| s.to_string()).collect();
            Ok(Output::ok(format!(
                "b={} kappa=[{}] {} exhaustive={}\n",
                r.b,
                kappa.join(","),
                r.wedderburn.label,
                r.exhaustive
            )))
        }
        Command::Hadamard { verify_only: Some(path), .. } => {
            let bundle: HadamardBundle = read_json(path)?;
            let report = verify_bundle(&bundle)?;
            let stdout = if json {
                to_json(&report)?
            } else {
                format!("{}\n", if report.pass { "pass".to_string() } else { format!("fail: {}", report.failures().join(", ")) })
            };
            Ok(Output { stdout, pass: report.pass })
        }
        Command::Hadamard { m, diag, offdiag, samples, .. } => {
            let m = m.expect("clap requires m without --verify-only");
            let diag = diag.clone().unwrap_or_else(|| "I".repeat(m));
            let offdiag = offdiag.clone().unwrap_or_else(|| "X".repeat(m));
            if diag.chars().count() != m || offdiag.chars().count() != m {
                return Err(Error::Parse(format!("--diag and --offdiag need exactly {m} choices")));
            }
            let spec = TransversalSpec::parse(&diag, &offdiag)?;
            let options = HadamardOptions {
                solve: solve_config(cli, *samples),
                max_order: cli.max_order,
            };
            let bundle = complete(&spec, &options)?;
            if json {
                return Ok(Output::ok(to_json(&bundle)?));
            }
            Ok(Output::ok(bundle.h.to_pm_text()?))
        }
        Command::Tables { max, part } => {
            if *max > MAX_TABLE_BOUND {
                return Err(Error::ResourceCap {
                    what: "table bound",
                    value: *max,
                    cap: MAX_TABLE_BOUND,
                });
            }
            let grid = matches!(part, TablePart::All | TablePart::Grid);
            let irreps = matches!(part, TablePart::All | TablePart::Irreps);
            if json {
                let mut value = serde_json::Map::new();
                if grid {
                    let rows: Vec<Vec<String>> = render_grid(*max)?
                        .lines()
                        .map(|l| l.split('\t').map(str::to_string).collect())
                        .collect();
                    value.insert("grid".into(), json!(rows));
                }
                if irreps {
                    let mut tables = Vec::new();
                    for line in render_irrep_tables(&IRREP_TABLE_SUMS)?.lines() {
                        let f: Vec<&str> = line.split('\t').collect();
                        if f.len() == 4 {
                            tables.push(json!({
                                "p": f[0].parse::<u64>().expect("rendered integer"),
                                "q": f[1].parse::<u64>().expect("rendered integer"),
                                "label": f[2],
                                "order": f[3].parse::<u64>().expect("rendered integer"),
                            }));
                        }
                    }
                    value.insert("irreps".into(), json!(tables));
                }
                return Ok(Output::ok(to_json(&value)?));
            }
            let mut out = String::new();
            if grid {
                out.push_str(&render_grid(*max)?);
            }
            if irreps {
                out.push_str(&render_irrep_tables(&IRREP_TABLE_SUMS)?);
            }
            Ok(Output::ok(out))
        }
        Command::Rho { n } => {
            let r = rho(*n)?;
            Ok(Output::ok(if json {
                to_json(&json!({ "n": n, "rho": r }))?
            } else {
                format!("{r}\n")
            }))
        }
        Command::Verify { target } => match target {
            VerifyTarget::Bundle { file } => {
                let bundle: HadamardBundle = read_json(file)?;
                let report = verify_bundle(&bundle)?;
                let stdout = if json { to_json(&report)? } else { format!("pass={}\n", report.pass) };
                Ok(Output { stdout, pass: report.pass })
            }
            VerifyTarget::Family { file } => {
                let family: Vec<MonomialMatrix> = read_json(file)?;
                let report = check_hr_bound(&family)?;
                let stdout = if json {
                    to_json(&report)?
                } else {
                    format!("size={} order={} rho={} pass={}\n", report.size, report.order, report.rho, report.pass)
                };
                Ok(Output { stdout, pass: report.pass })
            }
            VerifyTarget::Representation { presentation, representation } => {
                let p: AlgebraPresentation = read_json(presentation)?;
                let rec: RepresentationRecord = read_json(representation)?;
                let (pass, message) = match check_relations(&p, &rec.images) {
                    Ok(()) => (true, None),
                    Err(Error::Verification(msg)) => (false, Some(msg)),
                    Err(e) => return Err(e),
                };
                let stdout = if json {
                    to_json(&json!({ "pass": pass, "message": message }))?
                } else {
                    format!("pass={pass}\n")
                };
                Ok(Output { stdout, pass })
            }
        },
    }
}

//! Command-line front end. JSON goes to stdout unless `--out` is given;
//! `--tsv` switches table-shaped outputs to tab-separated text.
//!
//! Exit status: 0 on success, 1 on domain errors, 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::descent::{coarse_coefficient, floor_identity_sweep, RamifiedBoundary};
use crate::divisor::{log_canonical_divisor, DivisorClass, Genus, Model};
use crate::error::{Error, Result};
use crate::fcurves::{enumerate_fcurves, gkm_nef_check, intersection_table, table_tsv, NefVerdict};
use crate::graph::{
    find_elliptic_tails, is_pseudostable, is_stable, t_equivalent, t_transform, CurveGraph,
};
use crate::linear_series::{dimension_profile, TailConfiguration};
use crate::oracle::{run_oracles, summarize, Bounds, Scope};
use crate::phase::{critical_alphas, sign_table};
use crate::rational::{self, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

fn parse_genus(s: &str) -> std::result::Result<Genus, String> {
    let g: u32 = s.parse().map_err(|_| format!("'{s}' is not a genus"))?;
    Genus::new(g).map_err(|e| e.to_string())
}

#[derive(Debug, Clone)]
pub struct Scopes(pub Vec<Scope>);

fn parse_scopes(s: &str) -> std::result::Result<Scopes, String> {
    Scope::parse_list(s).map(Scopes).map_err(|e| e.to_string())
}

fn parse_bounds(s: &str) -> std::result::Result<Bounds, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "mgalpha",
    version,
    about = "Log canonical models of the moduli space of stable curves"
)]
pub struct Cli {
    /// Tab-separated output for table-shaped results.
    #[arg(long, global = true)]
    pub tsv: bool,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Nefness of K + αδ (or of a class given as JSON) by the F-curve criterion.
    NefCheck(NefCheckArgs),
    /// Critical α values and contracted strata.
    Phases {
        #[arg(long, value_parser = parse_genus)]
        genus: Genus,
        #[arg(long, value_enum)]
        model: Model,
    },
    /// F-curves of a genus, optionally with their intersections with K + αδ.
    Fcurves {
        #[arg(long, value_parser = parse_genus)]
        genus: Genus,
        #[arg(long, value_parser = parse_rational, requires = "model")]
        alpha: Option<Rational>,
        #[arg(long, value_enum, requires = "alpha")]
        model: Option<Model>,
    },
    /// Dimensions of the twisted limit linear series.
    Vnprofile {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u32,
    },
    /// Dual graph operations.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Stack to coarse descent.
    #[command(subcommand)]
    Descent(DescentCommand),
    /// Brute-force cross-checks.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Markdown phase report for a range of genera.
    Report {
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
    },
}

#[derive(Debug, Args)]
pub struct NefCheckArgs {
    #[arg(long, value_parser = parse_genus, required_unless_present = "class")]
    pub genus: Option<Genus>,
    #[arg(long, value_parser = parse_rational, required_unless_present = "class")]
    pub alpha: Option<Rational>,
    #[arg(long, value_enum, default_value = "mg")]
    pub model: Model,
    /// JSON divisor class file; overrides --genus/--alpha/--model.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["genus", "alpha"])]
    pub class: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GraphCommand {
    /// Stability and pseudostability verdicts with reasons.
    Check { file: PathBuf },
    /// Elliptic tails of a stable graph.
    Tails { file: PathBuf },
    /// Replace every elliptic tail by a cusp.
    Transform { file: PathBuf },
    /// Whether two stable graphs have isomorphic transforms.
    Equiv { first: PathBuf, second: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum DescentCommand {
    /// Coarse-space coefficient (e − 1 + a)/e.
    Coeff {
        #[arg(long)]
        e: u64,
        #[arg(long, value_parser = parse_rational)]
        a: Rational,
    },
    /// Exhaustive floor-identity sweep.
    Sweep {
        #[arg(long, default_value_t = 200)]
        m_max: u64,
        #[arg(long, default_value_t = 20)]
        e_max: u64,
        #[arg(long, default_value_t = 12)]
        q_max: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Compare main implementations against the brute-force oracles.
    Run {
        /// Comma-separated: fcurves, pseudostability, isomorphism, riemann-roch, floor, or all.
        #[arg(long, default_value = "all", value_parser = parse_scopes)]
        scope: Scopes,
        /// `default`, `quick`, optionally followed by `,key=value` overrides.
        #[arg(long, default_value = "default", value_parser = parse_bounds)]
        bounds: Bounds,
    },
}

/// Payload ready for printing.
enum Output {
    Json(String),
    Text(String),
}

fn json<T: Serialize>(value: &T) -> Result<Output> {
    Ok(Output::Json(serde_json::to_string_pretty(value)?))
}

fn read_graph(path: &Path) -> Result<CurveGraph> {
    CurveGraph::from_json(&std::fs::read_to_string(path)?)
}

#[derive(Serialize)]
struct GraphCheck {
    genus: u32,
    stable: crate::graph::Verdict,
    pseudostable: crate::graph::Verdict,
}

#[derive(Serialize)]
struct Coefficient {
    e: u64,
    #[serde(with = "rational::as_string")]
    a: Rational,
    #[serde(with = "rational::as_string")]
    coarse: Rational,
}

#[derive(Serialize)]
struct Equivalence {
    equivalent: bool,
    first: CurveGraph,
    second: CurveGraph,
}

fn dispatch(cli: &Cli) -> Result<(Output, bool)> {
    let tsv = cli.tsv;
    let out = match &cli.command {
        Command::NefCheck(args) => {
            let class = match &args.class {
                Some(path) => DivisorClass::from_json(&std::fs::read_to_string(path)?)?,
                None => {
                    let g = args.genus.expect("clap enforces --genus");
                    let alpha = args.alpha.as_ref().expect("clap enforces --alpha");
                    log_canonical_divisor(g, alpha, args.model)?
                }
            };
            let verdict = gkm_nef_check(&class);
            match (&verdict, tsv) {
                (NefVerdict::Nef { certificate }, true) => Output::Text(table_tsv(certificate)),
                (_, true) => Output::Text(table_tsv(&intersection_table(&class))),
                _ => json(&verdict)?,
            }
        }
        Command::Phases { genus, model } => {
            if tsv {
                Output::Text(sign_table(*genus, *model)?.to_tsv())
            } else {
                json(&critical_alphas(*genus, *model)?)?
            }
        }
        Command::Fcurves {
            genus,
            alpha,
            model,
        } => match (alpha, model) {
            (Some(alpha), Some(model)) => {
                let table = intersection_table(&log_canonical_divisor(*genus, alpha, *model)?);
                if tsv {
                    Output::Text(table_tsv(&table))
                } else {
                    json(&table)?
                }
            }
            _ => {
                let list = enumerate_fcurves(*genus);
                if tsv {
                    let mut s = String::from("family\tparams\n");
                    for f in &list {
                        let p: Vec<String> = f.params().iter().map(u32::to_string).collect();
                        s.push_str(&format!("{}\t{}\n", f.family(), p.join(",")));
                    }
                    Output::Text(s)
                } else {
                    json(&list)?
                }
            }
        },
        Command::Vnprofile { g, r, n } => {
            let cfg = TailConfiguration::new(*g, *r)?;
            json(&dimension_profile(&cfg, *n)?)?
        }
        Command::Graph(cmd) => match cmd {
            GraphCommand::Check { file } => {
                let g = read_graph(file)?;
                json(&GraphCheck {
                    genus: crate::graph::arithmetic_genus(&g)?,
                    stable: is_stable(&g),
                    pseudostable: is_pseudostable(&g),
                })?
            }
            GraphCommand::Tails { file } => json(&find_elliptic_tails(&read_graph(file)?)?)?,
            GraphCommand::Transform { file } => json(&t_transform(&read_graph(file)?)?)?,
            GraphCommand::Equiv { first, second } => {
                let (a, b) = (read_graph(first)?, read_graph(second)?);
                let equivalent = t_equivalent(&a, &b)?;
                json(&Equivalence {
                    equivalent,
                    first: t_transform(&a)?,
                    second: t_transform(&b)?,
                })?
            }
        },
        Command::Descent(cmd) => match cmd {
            DescentCommand::Coeff { e, a } => {
                let b = RamifiedBoundary::new(*e, a.clone())?;
                json(&Coefficient {
                    e: *e,
                    a: a.clone(),
                    coarse: coarse_coefficient(&b),
                })?
            }
            DescentCommand::Sweep {
                m_max,
                e_max,
                q_max,
            } => {
                let summary = floor_identity_sweep(*m_max, *e_max, *q_max);
                let passed = summary.passed();
                return Ok((json(&summary)?, passed));
            }
        },
        Command::Oracle(OracleCommand::Run { scope, bounds }) => {
            let summary = summarize(bounds.clone(), run_oracles(&scope.0, bounds)?);
            let ok = summary.all_agree;
            return Ok((json(&summary)?, ok));
        }
        Command::Report { from, to } => Output::Text(crate::report::report(*from, *to)?),
    };
    Ok((out, true))
}

fn emit(cli: &Cli, output: Output, stdout: &mut dyn Write) -> Result<()> {
    let mut text = match output {
        Output::Json(s) | Output::Text(s) => s,
    };
    if !text.is_empty() && !text.ends_with('\n') {
        text.push('\n');
    }
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parse `args` (program name first) and execute; returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let result = dispatch(&cli).and_then(|(output, ok)| emit(&cli, output, stdout).map(|()| ok));
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_DOMAIN,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_DOMAIN
        }
    }
}

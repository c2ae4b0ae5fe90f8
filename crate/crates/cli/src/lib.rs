//! Command-line driver for `lambdag-core`.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error, 3 a `verify` row
//! disagreed.

pub mod record;
pub mod table;

use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use lambdag_core::arith::ExponentVector;
use lambdag_core::strata::{
    builtin_delta, builtin_delta0, builtin_gamma_psi, pullback_integral, validate_graph, DualGraph,
};
use lambdag_core::theorems::{
    lambda2_closed, lambda2_integral, lambda_g_prediction, prediction_verifiable,
    verification_inputs, verify, Lambda2Method,
};
use lambdag_core::{psi_integral, Error, ModuliIndex};

use crate::record::OutputRecord;

pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DISAGREE: u8 = 3;

/// Largest `verify --n-max` accepted without `--hard`.
pub const DEFAULT_N_CAP: usize = 12;
/// Largest `verify --n-max` accepted with `--hard`.
pub const HARD_N_CAP: usize = 20;

#[derive(Debug, Parser)]
#[command(
    name = "lambdag",
    version,
    about = "Exact psi and lambda_2 intersection numbers in genus <= 2"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ValueFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Lambda2Choice {
    PixtonEq5,
    PixtonEq3,
    Closed,
}

/// `delta`, `delta0`, `gamma-psi`, or `file:<path>` in the graph text format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSource {
    Delta,
    Delta0,
    GammaPsi,
    File(PathBuf),
}

impl FromStr for GraphSource {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "delta" => Ok(GraphSource::Delta),
            "delta0" => Ok(GraphSource::Delta0),
            "gamma-psi" => Ok(GraphSource::GammaPsi),
            _ => match s.strip_prefix("file:") {
                Some(p) if !p.is_empty() => Ok(GraphSource::File(PathBuf::from(p))),
                _ => Err(format!(
                    "expected delta, delta0, gamma-psi or file:<path>, got {s:?}"
                )),
            },
        }
    }
}

impl std::fmt::Display for GraphSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GraphSource::Delta => f.write_str("delta"),
            GraphSource::Delta0 => f.write_str("delta0"),
            GraphSource::GammaPsi => f.write_str("gamma-psi"),
            GraphSource::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

fn parse_exponents(s: &str) -> Result<ExponentVector, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// ⟨ψ_1^k_1 ⋯ ψ_n^k_n⟩ on M(g,n) for g = 0 or 1.
    Psi {
        #[arg(long)]
        genus: u32,
        /// Comma-separated exponents, one per marked point.
        #[arg(long, value_parser = parse_exponents)]
        k: ExponentVector,
        #[arg(long, value_enum, default_value_t = ValueFormat::Text)]
        format: ValueFormat,
    },
    /// Integral of Ψ^K against the pullback of a genus-2 stratum.
    Pullback {
        /// delta, delta0, gamma-psi, or file:<path> in the graph text format.
        #[arg(long)]
        graph: GraphSource,
        /// Comma-separated exponents summing to n + 1.
        #[arg(long, value_parser = parse_exponents)]
        k: ExponentVector,
        #[arg(long, value_enum, default_value_t = ValueFormat::Text)]
        format: ValueFormat,
    },
    /// ∫ λ_2 Ψ^K over M(2,n), n = number of exponents.
    Lambda2 {
        /// Comma-separated exponents summing to n + 1.
        #[arg(long, value_parser = parse_exponents)]
        k: ExponentVector,
        #[arg(long, value_enum, default_value_t = Lambda2Choice::PixtonEq5)]
        method: Lambda2Choice,
        #[arg(long, value_enum, default_value_t = ValueFormat::Text)]
        format: ValueFormat,
    },
    /// λ_g formula prediction; only genus 2 is independently checked.
    LambdaG {
        #[arg(long)]
        genus: u32,
        /// Comma-separated exponents summing to 2g - 3 + n.
        #[arg(long, value_parser = parse_exponents)]
        k: ExponentVector,
        #[arg(long, value_enum, default_value_t = ValueFormat::Text)]
        format: ValueFormat,
    },
    /// Cross-check every method on all partitions of n+1 for n <= n-max.
    Verify {
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
        /// Allow n-max above the default cap.
        #[arg(long)]
        hard: bool,
    },
}

fn emit_value<W: Write>(out: &mut W, format: ValueFormat, rec: &OutputRecord, label: Option<&str>) {
    match format {
        ValueFormat::Text => {
            for r in &rec.results {
                match label {
                    Some(l) => {
                        let _ = writeln!(out, "{} ({l})", r.value);
                    }
                    None => {
                        let _ = writeln!(out, "{}", r.value);
                    }
                }
            }
        }
        ValueFormat::Json => {
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string(rec).expect("record serializes")
            );
        }
    }
}

fn load_graph(source: &GraphSource) -> Result<DualGraph, String> {
    Ok(match source {
        GraphSource::Delta => builtin_delta(),
        GraphSource::Delta0 => builtin_delta0(),
        GraphSource::GammaPsi => builtin_gamma_psi(),
        GraphSource::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let graph: DualGraph = text.parse().map_err(|e: Error| e.to_string())?;
            let report = validate_graph(&graph);
            if !report.is_valid() {
                let lines: Vec<String> = report
                    .violations
                    .iter()
                    .map(|v| format!("  - {v}"))
                    .collect();
                return Err(format!(
                    "invalid graph {}:\n{}",
                    path.display(),
                    lines.join("\n")
                ));
            }
            graph
        }
    })
}

/// Runs one parsed invocation, writing results to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run<W: Write, E: Write>(cli: Cli, out: &mut W, err: &mut E) -> u8 {
    let domain = |err: &mut E, msg: &dyn std::fmt::Display| {
        let _ = writeln!(err, "error: {msg}");
        EXIT_DOMAIN
    };
    match cli.command {
        Command::Psi { genus, k, format } => {
            match psi_integral(ModuliIndex::new(genus, k.len()), &k) {
                Ok(v) => {
                    let rec = OutputRecord::new("psi")
                        .input("genus", genus)
                        .input("k", &k)
                        .result("string-dilaton", v);
                    emit_value(out, format, &rec, None);
                    0
                }
                Err(e) => domain(err, &e),
            }
        }
        Command::Pullback { graph, k, format } => {
            let g = match load_graph(&graph) {
                Ok(g) => g,
                Err(msg) => return domain(err, &msg),
            };
            match pullback_integral(&g, &k) {
                Ok(v) => {
                    let rec = OutputRecord::new("pullback")
                        .input("graph", &graph)
                        .input("k", &k)
                        .result("strata-sum", v);
                    emit_value(out, format, &rec, None);
                    0
                }
                Err(e) => domain(err, &e),
            }
        }
        Command::Lambda2 { k, method, format } => {
            let n = k.len();
            let (name, value) = match method {
                Lambda2Choice::Closed => ("closed", lambda2_closed(n, &k)),
                Lambda2Choice::PixtonEq5 => (
                    "pixton-eq5",
                    lambda2_integral(n, &k, Lambda2Method::PixtonEq5),
                ),
                Lambda2Choice::PixtonEq3 => (
                    "pixton-eq3",
                    lambda2_integral(n, &k, Lambda2Method::PixtonEq3),
                ),
            };
            match value {
                Ok(v) => {
                    let rec = OutputRecord::new("lambda2").input("k", &k).result(name, v);
                    emit_value(out, format, &rec, None);
                    0
                }
                Err(e) => domain(err, &e),
            }
        }
        Command::LambdaG { genus, k, format } => match lambda_g_prediction(genus, k.len(), &k) {
            Ok(v) => {
                let verified = prediction_verifiable(genus);
                let method = if verified {
                    "lambda-g-formula"
                } else {
                    "formula-only"
                };
                let rec = OutputRecord::new("lambda-g")
                    .input("genus", genus)
                    .input("k", &k)
                    .result(method, v);
                emit_value(out, format, &rec, (!verified).then_some("formula-only"));
                0
            }
            Err(e) => domain(err, &e),
        },
        Command::Verify {
            n_max,
            format,
            hard,
        } => {
            let cap = if hard { HARD_N_CAP } else { DEFAULT_N_CAP };
            if n_max == 0 || n_max > cap {
                let hint = if hard {
                    ""
                } else {
                    " (use --hard to go higher)"
                };
                let _ = writeln!(err, "error: --n-max must be between 1 and {cap}{hint}");
                return EXIT_USAGE;
            }
            if n_max > DEFAULT_N_CAP {
                let rows = verification_inputs(n_max).len();
                let _ = writeln!(
                    err,
                    "warning: {rows} partitions, up to 2^{n_max} = {} strata each",
                    1u64 << n_max
                );
            }
            let reports = match verify(n_max) {
                Ok(r) => r,
                Err(e) => return domain(err, &e),
            };
            let written = match format {
                TableFormat::Text => table::write_text(&mut *out, &reports),
                TableFormat::Csv => table::write_csv(&mut *out, &reports),
                TableFormat::Json => table::write_json(&mut *out, &reports),
            };
            if let Err(e) = written {
                return domain(err, &e);
            }
            if reports.iter().all(|r| r.agreed) {
                0
            } else {
                EXIT_DISAGREE
            }
        }
    }
}

/// Convenience for tests: parse `args` (without the program name) and run.
pub fn run_args(args: &[&str]) -> (u8, String, String) {
    let argv = std::iter::once("lambdag").chain(args.iter().copied());
    match Cli::try_parse_from(argv) {
        Ok(cli) => {
            let (mut out, mut err) = (Vec::new(), Vec::new());
            let code = run(cli, &mut out, &mut err);
            (
                code,
                String::from_utf8(out).unwrap(),
                String::from_utf8(err).unwrap(),
            )
        }
        Err(e) => (e.exit_code() as u8, String::new(), e.to_string()),
    }
}

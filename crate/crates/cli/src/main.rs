//! `cesaro-lab`: evaluate generalized Cesaro operators, norms and spectral
//! certificates, and run the verification suite.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for
//! configuration or input errors.

mod input;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cesaro_core::report::{canonical_json, format_float, render};
use cesaro_core::spectral::{
    certificates_csv, dense_eigen_crosscheck, eigen_certificate, finite_section_eigenvalues,
    norm_lower_bound,
};
use cesaro_core::{run_suite, CheckReport, Error, Format, SearchOptions, SpaceSpec, SuiteConfig};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use input::{parse_operator, parse_sequence};

const THREADS_VAR: &str = "CESARO_LAB_THREADS";

#[derive(Parser)]
#[command(
    name = "cesaro-lab",
    version,
    about = "Generalized Cesaro operators on sequence spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// json, csv or markdown.
    #[arg(long, default_value = "json")]
    format: String,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Apply an operator to a sequence.
    Apply {
        /// cesaro, diagonal, shift:M, resolvent:M, conv:[..], or JSON.
        #[arg(long, default_value = "cesaro")]
        op: String,
        /// JSON array, @file, or a generator such as e:0, xi, geometric:0.5.
        #[arg(long)]
        seq: String,
        #[arg(long, default_value_t = 0.5)]
        t: f64,
        /// Length for generated sequences.
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate a space norm.
    Norm {
        /// e.g. lp:2, linf, cesp:1.5, ces0, cesinf, dp:1, lpw:2:power:1, c0w:exp:0.5, xpq:2:3.
        #[arg(long)]
        space: String,
        #[arg(long)]
        seq: String,
        #[arg(long, default_value_t = 0.5)]
        t: f64,
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Eigen-residual of x^[m] for the eigenvalue 1/(m+1).
    Eigen {
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value_t = 512)]
        n: usize,
        #[arg(long, default_value = "lp:2")]
        space: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Search lower bound and analytic upper bound for one operator norm.
    Bound {
        #[arg(long)]
        space: String,
        #[arg(long, default_value = "cesaro")]
        op: String,
        #[arg(long, default_value_t = 0.5)]
        t: f64,
        #[arg(long, default_value_t = 512)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 3000)]
        budget: usize,
        #[arg(long, default_value_t = 1e-9)]
        slack: f64,
        /// Also write the certificate table (CSV) here.
        #[arg(long)]
        certs_out: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Run the full verification suite.
    Verify {
        /// JSON config; flags below override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated t grid.
        #[arg(long, value_delimiter = ',')]
        t: Option<Vec<f64>>,
        /// Comma-separated p grid.
        #[arg(long, value_delimiter = ',')]
        p: Option<Vec<f64>>,
        /// Comma-separated q grid, paired with p.
        #[arg(long, value_delimiter = ',')]
        q: Option<Vec<f64>>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        budget: Option<usize>,
        /// Write the norm certificate table (CSV) here.
        #[arg(long)]
        certs_out: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Eigenvalues of the N x N section of C_t.
    Spectrum {
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 64)]
        n: usize,
        /// Also run the dense eigen-solver cross-check (N <= 64).
        #[arg(long)]
        dense: bool,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
}

enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| format!("{THREADS_VAR} must be a positive integer, got `{value}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn run(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Apply {
            op,
            seq,
            t,
            n,
            output,
        } => {
            let op = parse_operator(&op, t)?;
            let x = parse_sequence(&seq, n, t)?;
            let y = op.apply(&x)?;
            let rows: Vec<Vec<String>> = y
                .iter()
                .enumerate()
                .map(|(i, v)| vec![i.to_string(), format_float(*v)])
                .collect();
            let json = serde_json::to_value(y.as_slice())?;
            write_table(&output, &json, &["n", "value"], &rows)?;
            Ok(Outcome::Pass)
        }
        Command::Norm {
            space,
            seq,
            t,
            n,
            output,
        } => {
            let space: SpaceSpec = space.parse()?;
            let x = parse_sequence(&seq, n, t)?;
            let value = space.norm(&x)?;
            #[derive(Serialize)]
            struct NormOutput {
                space: String,
                len: usize,
                #[serde(flatten)]
                value: cesaro_core::NormValue,
            }
            let record = NormOutput {
                space: space.to_string(),
                len: x.len(),
                value,
            };
            let json = serde_json::to_value(&record)?;
            let row = vec![
                record.space.clone(),
                record.len.to_string(),
                format_float(record.value.value),
                serde_json::to_value(record.value.exactness)?
                    .as_str()
                    .unwrap_or_default()
                    .to_owned(),
                record
                    .value
                    .tail_bound
                    .map(format_float)
                    .unwrap_or_default(),
            ];
            write_table(
                &output,
                &json,
                &["space", "len", "value", "exactness", "tail_bound"],
                &[row],
            )?;
            Ok(Outcome::Pass)
        }
        Command::Eigen {
            t,
            m,
            n,
            space,
            tol,
            output,
        } => {
            let space: SpaceSpec = space.parse()?;
            let cert = eigen_certificate(t, m, n, &space)?;
            let report = CheckReport::at_most(
                "eigen-residual",
                "C_t x^[m] = x^[m]/(m+1)",
                cert.residual,
                tol,
                0.0,
            )
            .input("t", t)
            .input("m", m as u64)
            .input("n", n as u64)
            .input("lambda", cert.lambda)
            .input("space", space.to_string());
            write_reports(&output, &[report])
        }
        Command::Bound {
            space,
            op,
            t,
            n,
            seed,
            budget,
            slack,
            certs_out,
            output,
        } => {
            let space: SpaceSpec = space.parse()?;
            let op = parse_operator(&op, t)?;
            let opts = SearchOptions {
                budget,
                ..SearchOptions::default()
            }
            .with_seed(seed);
            let cert = norm_lower_bound(&space, &op, n, &opts)?;
            let tag = |r: CheckReport| {
                r.input("space", space.to_string())
                    .input("op", op.to_string())
                    .input("n", n as u64)
                    .input("e0_ratio", cert.e0_ratio)
                    .input("evaluations", cert.evaluations as u64)
                    .seed(seed)
            };
            let report = tag(match cert.upper {
                Some(upper) => CheckReport::at_most(
                    "norm-sandwich",
                    &cert.bound_source,
                    cert.lower,
                    upper,
                    slack,
                ),
                None => {
                    CheckReport::skipped("norm-sandwich", &cert.bound_source, "no analytic bound")
                        .input("lower", cert.lower)
                }
            });
            if let Some(path) = certs_out {
                write_text(Some(&path), &certificates_csv(std::slice::from_ref(&cert))?)?;
            }
            write_reports(&output, &[report])
        }
        Command::Verify {
            config,
            t,
            p,
            q,
            n,
            seed,
            budget,
            certs_out,
            output,
        } => {
            let mut suite = match &config {
                Some(path) => {
                    let text = fs::read_to_string(path).map_err(|e| Error::Config {
                        path: path.display().to_string(),
                        message: e.to_string(),
                    })?;
                    SuiteConfig::from_json(&text)?
                }
                None => SuiteConfig::default(),
            };
            if let Some(t) = t {
                suite.t_grid = t;
            }
            if let Some(p) = p {
                suite.p_grid = p;
            }
            if let Some(q) = q {
                suite.q_grid = Some(q);
            }
            if let Some(n) = n {
                suite.n = n;
            }
            if let Some(seed) = seed {
                suite.seed = seed;
            }
            if let Some(budget) = budget {
                suite.budget = budget;
            }
            let outcome = run_suite(&suite)?;
            if let Some(path) = certs_out {
                write_text(Some(&path), &certificates_csv(&outcome.certificates)?)?;
            }
            write_reports(&output, &outcome.reports)
        }
        Command::Spectrum {
            t,
            n,
            dense,
            seed,
            output,
        } => {
            let spectrum = finite_section_eigenvalues(t, n)?;
            let mut json = serde_json::to_value(&spectrum)?;
            if dense {
                let deviation = dense_eigen_crosscheck(t, n, seed)?;
                json["dense_deviation"] = Value::from(deviation);
            }
            let rows: Vec<Vec<String>> = spectrum
                .eigenvalues
                .iter()
                .enumerate()
                .map(|(k, v)| vec![k.to_string(), format_float(*v)])
                .collect();
            write_table(&output, &json, &["k", "eigenvalue"], &rows)?;
            Ok(Outcome::Pass)
        }
    }
}

fn format_of(output: &Output) -> Result<Format, Error> {
    output.format.parse()
}

fn write_text(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn write_reports(output: &Output, reports: &[CheckReport]) -> Result<Outcome, Error> {
    let text = render(reports, format_of(output)?)?;
    write_text(output.out.as_deref(), &text)?;
    let failed = reports
        .iter()
        .any(|r| r.status == cesaro_core::Status::Fail);
    Ok(if failed { Outcome::Fail } else { Outcome::Pass })
}

/// Writes `json` for the JSON format, otherwise a CSV or markdown table.
fn write_table(
    output: &Output,
    json: &Value,
    header: &[&str],
    rows: &[Vec<String>],
) -> Result<(), Error> {
    let mut text = String::new();
    match format_of(output)? {
        Format::Json => {
            text = canonical_json(json);
            text.push('\n');
        }
        Format::Csv => {
            for line in std::iter::once(header.iter().map(|s| s.to_string()).collect::<Vec<_>>())
                .chain(rows.iter().cloned())
            {
                text.push_str(&line.join(","));
                text.push('\n');
            }
        }
        Format::Markdown => {
            text.push_str(&format!("| {} |\n", header.join(" | ")));
            text.push_str(&format!("|{}\n", "---|".repeat(header.len())));
            for row in rows {
                text.push_str(&format!("| {} |\n", row.join(" | ")));
            }
        }
    }
    write_text(output.out.as_deref(), &text)
}

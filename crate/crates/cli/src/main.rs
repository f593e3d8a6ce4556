use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use cohom::group_homology::{compute, Method, Variance};
use cohom::harness::{
    builtin_suite, enumerate, module_value, parse_instance, parse_scenarios, render_machine, render_text, run_all,
    summary_counts, Claim, EnumerateBounds, Instance, Report, RunOptions,
};
use cohom::{Error, RingSpec, Scalar};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "cohom", version, about = "Exact group (co)homology and claim verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Degree n of H_n / H^n.
    #[arg(long, global = true, default_value_t = 1)]
    degree: usize,

    /// Coefficient ring: Z, Z[1/l] (or just l). For `verify`, used by
    /// scenarios that give no ring.
    #[arg(long, global = true)]
    ring: Option<String>,

    /// Largest group order for `enumerate`.
    #[arg(long, global = true, default_value_t = 8)]
    max_order: usize,

    /// Cell budget for chain complexes; larger computations are skipped.
    #[arg(long, global = true, default_value_t = cohom::algebra::DEFAULT_CELL_BUDGET)]
    budget_cells: usize,

    /// Seed of random modules. For `enumerate`, the first seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// H_n(G, M) for the instance in FILE (a path, `-` for stdin, or inline JSON).
    Homology { input: String },
    /// H^n(G, M).
    Cohomology { input: String },
    /// M^G.
    Invariants { input: String },
    /// M_G.
    Coinvariants { input: String },
    /// Runs the built-in suite (`suite`) or a scenario file.
    Verify {
        target: String,
        /// Record wall-clock times in the reports.
        #[arg(long)]
        timing: bool,
    },
    /// Lists the scenarios of a claim within `--max-order`.
    Enumerate {
        claim: String,
        /// Number of seeds per instance.
        #[arg(long, default_value_t = 3)]
        seeds: u64,
        /// Run the scenarios instead of printing them.
        #[arg(long)]
        run: bool,
    },
}

enum Failure {
    Input(String),
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Input(_) | Error::NotAGroup(_) | Error::InvalidAction(_) | Error::Dimension(_) => {
                Failure::Input(e.to_string())
            }
            e => Failure::Failed(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("input error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}

fn ring_flag(cli: &Cli) -> Result<Option<RingSpec>, Failure> {
    cli.ring.as_deref().map(|r| r.parse::<RingSpec>().map_err(Failure::from)).transpose()
}

fn read_text(input: &str) -> Result<String, Failure> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(input.to_string());
    }
    if input == "-" {
        return std::io::read_to_string(std::io::stdin()).map_err(|e| Failure::Input(format!("stdin: {e}")));
    }
    let path = PathBuf::from(input);
    std::fs::read_to_string(&path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn dispatch(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Homology { input } => single(cli, input, Query::Homology),
        Command::Cohomology { input } => single(cli, input, Query::Cohomology),
        Command::Invariants { input } => single(cli, input, Query::Invariants),
        Command::Coinvariants { input } => single(cli, input, Query::Coinvariants),
        Command::Verify { target, timing } => {
            let mut scenarios = if target == "suite" {
                builtin_suite()
            } else {
                parse_scenarios(&read_text(target)?)?
            };
            let ring = ring_flag(cli)?;
            for s in &mut scenarios {
                if s.ring.is_none() {
                    s.ring = ring.map(Into::into);
                }
                if s.seed.is_none() && s.module.is_none() {
                    s.seed = cli.seed;
                }
            }
            let opts = RunOptions { budget: cli.budget_cells, timing: *timing, ..RunOptions::default() };
            let reports = run_all(&scenarios, &opts)?;
            emit_reports(cli.format, &reports)
        }
        Command::Enumerate { claim, seeds, run } => {
            let claim: Claim = claim.parse()?;
            let bounds = EnumerateBounds { max_order: cli.max_order, seeds: *seeds, base_seed: cli.seed.unwrap_or(1) };
            let scenarios = enumerate(claim, &bounds)?;
            if *run {
                let opts = RunOptions { budget: cli.budget_cells, ..RunOptions::default() };
                return emit_reports(cli.format, &run_all(&scenarios, &opts)?);
            }
            let mut out = std::io::stdout().lock();
            match cli.format {
                Format::Machine => {
                    let doc = json!({ "scenarios": scenarios });
                    writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable")).ok();
                }
                Format::Text => {
                    for s in &scenarios {
                        writeln!(out, "{}", s.id).ok();
                    }
                    writeln!(out, "{} scenarios", scenarios.len()).ok();
                }
            }
            Ok(0)
        }
    }
}

fn emit_reports(format: Format, reports: &[Report]) -> Result<u8, Failure> {
    let mut out = std::io::stdout().lock();
    for r in reports {
        match format {
            Format::Text => write!(out, "{}", render_text(r)).ok(),
            Format::Machine => writeln!(out, "{}", render_machine(r)).ok(),
        };
    }
    if format == Format::Text {
        let counts = summary_counts(reports);
        let parts: Vec<String> = counts.iter().map(|(k, v)| format!("{v} {k}")).collect();
        writeln!(out, "{} scenarios: {}", reports.len(), parts.join(", ")).ok();
    }
    Ok(if reports.iter().all(|r| r.status.is_ok()) { 0 } else { EXIT_FAIL })
}

#[derive(Clone, Copy)]
enum Query {
    Homology,
    Cohomology,
    Invariants,
    Coinvariants,
}

fn single(cli: &Cli, input: &str, q: Query) -> Result<u8, Failure> {
    let mut inst = parse_instance(&read_text(input)?)?;
    if let Some(r) = ring_flag(cli)? {
        inst.ring = Some(r.into());
    }
    if inst.seed.is_none() {
        inst.seed = cli.seed;
    }
    let result = match answer::<i64>(cli, &inst, q) {
        Err(Error::Overflow) => answer::<cohom::Big>(cli, &inst, q),
        r => r,
    };
    let (label, value, free_rank, text) = match result {
        Ok(x) => x,
        Err(Error::Budget { cells, budget }) => {
            let mut out = std::io::stdout().lock();
            match cli.format {
                Format::Text => writeln!(out, "skipped (budget): needs {cells} cells, budget {budget}").ok(),
                Format::Machine => writeln!(out, "{}", json!({"status": "skipped_budget", "cells": cells, "budget": budget})).ok(),
            };
            return Ok(0);
        }
        Err(e) => return Err(e.into()),
    };
    let ring = inst.ring()?;
    let mut out = std::io::stdout().lock();
    match cli.format {
        Format::Text => writeln!(out, "{label} = {text}").ok(),
        Format::Machine => writeln!(
            out,
            "{}",
            json!({
                "quantity": label,
                "ring": ring.to_string(),
                "group": inst.group.name(),
                "value": value,
                "free_rank": free_rank,
                "module": text,
            })
        )
        .ok(),
    };
    Ok(0)
}

/// The name of the computed module, its invariant factors followed by `0` per
/// free summand, its free rank and its description.
fn answer<T: Scalar>(
    cli: &Cli,
    inst: &Instance,
    q: Query,
) -> cohom::Result<(String, serde_json::Value, usize, String)> {
    let m = inst.gmodule::<T>(cohom::linear_groups::DEFAULT_GROUP_BOUND)?;
    let n = cli.degree;
    let module = match q {
        Query::Homology => compute(&m, n, Variance::Homology, Method::Auto, cli.budget_cells)?.summary.module().clone(),
        Query::Cohomology => compute(&m, n, Variance::Cohomology, Method::Auto, cli.budget_cells)?.summary.module().clone(),
        Query::Invariants => m.invariants()?.0,
        Query::Coinvariants => m.coinvariants()?.0,
    };
    let label = match q {
        Query::Homology => format!("H_{n}(G, M)"),
        Query::Cohomology => format!("H^{n}(G, M)"),
        Query::Invariants => "M^G".to_string(),
        Query::Coinvariants => "M_G".to_string(),
    };
    Ok((label, module_value(&module), module.free_rank(), module.to_string()))
}

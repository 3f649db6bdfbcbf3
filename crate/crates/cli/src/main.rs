//! `affine`: batch certification runs driven by JSON experiment files.
//!
//! Exit status: 0 when every task meets its expectation, 1 when a task fails,
//! 2 when the only shortfalls are inconclusive checks, 3 on bad input.

mod run;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;

use run::{algebra_summary, run_task, Status};

#[derive(Parser)]
#[command(name = "affine", version, about = "Exact certificates for affine Kac-Moody modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Root listing and bracket table for the algebra of the experiment.
    Algebra(Common),
    /// Validate the partition tasks.
    Partition(Common),
    /// Singular-vector and cyclicity certificates.
    Certify(Common),
    /// Free-field realization checks.
    Wakimoto(Common),
    /// Twisting intertwiner checks.
    Twist(Common),
    /// Every task in the file.
    Run(Common),
}

#[derive(Args)]
struct Common {
    /// Experiment file (JSON).
    #[arg(long)]
    spec: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Seed for sampled sweeps.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl Command {
    fn parts(&self) -> (&'static str, &Common) {
        match self {
            Command::Algebra(c) => ("algebra", c),
            Command::Partition(c) => ("partition", c),
            Command::Certify(c) => ("certify", c),
            Command::Wakimoto(c) => ("wakimoto", c),
            Command::Twist(c) => ("twist", c),
            Command::Run(c) => ("run", c),
        }
    }
}

fn execute(command: &Command) -> Result<Status> {
    let (name, args) = command.parts();
    if let Some(n) = args.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global().context("thread pool")?;
    }
    let text = std::fs::read_to_string(&args.spec).with_context(|| format!("reading {}", args.spec.display()))?;
    let spec = spec::parse(&text).with_context(|| format!("in {}", args.spec.display()))?;
    let (status, body) = if name == "algebra" {
        (Status::Pass, json!({ "algebra": algebra_summary(&spec)? }))
    } else {
        let selected: Vec<(usize, &spec::Task)> =
            spec.tasks.iter().enumerate().filter(|(_, t)| name == "run" || t.kind() == name).collect();
        let results = selected
            .par_iter()
            .map(|&(i, t)| run_task(&spec, t, i, args.seed).with_context(|| format!("task {}", t.name(i))))
            .collect::<Result<Vec<_>>>()?;
        let status = results.iter().map(|r| r.status).max().unwrap_or(Status::Pass);
        (status, json!({ "results": results }))
    };
    let mut doc = json!({
        "schema": 1,
        "command": name,
        "algebra": { "type": spec.algebra.cartan, "K": spec.algebra.k },
        "status": status,
    });
    doc.as_object_mut().expect("object").extend(body.as_object().expect("object").clone());
    let out = serde_json::to_string_pretty(&doc)? + "\n";
    match &args.out {
        Some(p) => std::fs::write(p, out).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{out}"),
    }
    Ok(status)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli.command) {
        Ok(status) => ExitCode::from(status.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

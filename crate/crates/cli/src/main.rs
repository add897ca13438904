use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use l2control::format;
use l2control::rotator::compile_pulses;
use l2control::selfcheck::{self, Options};
use l2control::synthesis::{density_witness, synthesize_staircase, synthesize_transfer, DEFAULT_MAX_DEPTH};
use l2control::{ControlError, SparseState};

/// Synthesize, simulate and compile control words on l2(Z).
#[derive(Parser, Debug)]
#[command(name = "l2control", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Prepare a target state from e0.
    Synthesize(Io),
    /// Drive --input towards --target within 3*epsilon.
    Transfer(Io),
    /// Apply --sequence to --input.
    Simulate(Io),
    /// Compile a sequence file into a rotator pulse schedule.
    Compile(Io),
    /// Find a permutation word making --target and --input non-orthogonal.
    Witness(Io),
    /// Run the seeded invariant suite.
    Selfcheck(Io),
}

#[derive(Args, Debug)]
struct Io {
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    target: Option<PathBuf>,
    /// Sequence file for `simulate`.
    #[arg(long)]
    sequence: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
    max_depth: usize,
    /// Replaces the pass/fail tolerance of the command.
    #[arg(long)]
    tol: Option<f64>,
}

/// A finished run: the report printed on stdout and whether its checks held.
struct Outcome {
    stdout: String,
    passed: bool,
}

impl Outcome {
    fn json(report: serde_json::Value, passed: bool) -> Self {
        let mut stdout = serde_json::to_string_pretty(&report).expect("report serializes");
        stdout.push('\n');
        Self { stdout, passed }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            let kind = err.downcast_ref::<ControlError>().map_or("Error", ControlError::kind);
            let body = json!({"error": kind, "message": format!("{err:#}")});
            eprintln!("{body}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Synthesize(io) => synthesize(io),
        Command::Transfer(io) => transfer(io),
        Command::Simulate(io) => simulate(io),
        Command::Compile(io) => compile(io),
        Command::Witness(io) => witness(io),
        Command::Selfcheck(io) => self_check(io),
    }
}

fn synthesize(io: Io) -> anyhow::Result<Outcome> {
    let target = read_state(required(&io.target, "--target")?)?;
    let stair = synthesize_staircase(&target)?;
    let seq = stair.sequence();
    let out = SparseState::basis(0).apply_sequence(&seq);
    let fidelity = target.inner(&out).norm();
    write_output(&io.output, &format::sequence_to_json(&seq))?;
    let tol = io.tol.unwrap_or(1e-10);
    Ok(Outcome::json(
        json!({
            "command": "synthesize",
            "fidelity": fidelity,
            "composites": stair.composite_count(),
            "radius": stair.radius,
            "primitives": seq.len(),
        }),
        fidelity >= 1.0 - tol,
    ))
}

fn transfer(io: Io) -> anyhow::Result<Outcome> {
    let a = read_state(required(&io.input, "--input")?)?;
    let b = read_state(required(&io.target, "--target")?)?;
    let plan = synthesize_transfer(&a, &b, io.epsilon)?;
    let distance = a.apply_sequence(&plan.sequence).distance(&b);
    write_output(&io.output, &format::plan_to_json(&plan))?;
    let slack = io.tol.unwrap_or(0.0);
    Ok(Outcome::json(
        json!({
            "command": "transfer",
            "N": plan.n,
            "alpha": plan.alpha,
            "beta": plan.beta,
            "certified_bound": plan.certified_bound,
            "distance": distance,
            "primitives": plan.sequence.len(),
        }),
        distance <= plan.certified_bound + slack && plan.certified_bound <= 3.0 * plan.epsilon,
    ))
}

fn simulate(io: Io) -> anyhow::Result<Outcome> {
    let a = read_state(required(&io.input, "--input")?)?;
    let seq = read_sequence(required(&io.sequence, "--sequence")?)?;
    let out = a.apply_sequence(&seq);
    let drift = (out.norm() - a.norm()).abs();
    write_output(&io.output, &format::state_to_json(&out))?;
    let tol = io.tol.unwrap_or(1e-12 * (seq.len() as f64 / 100.0).max(1.0));
    Ok(Outcome::json(
        json!({
            "command": "simulate",
            "primitives": seq.len(),
            "norm_in": a.norm(),
            "norm_out": out.norm(),
            "norm_drift": drift,
        }),
        drift <= tol,
    ))
}

fn compile(io: Io) -> anyhow::Result<Outcome> {
    let seq = read_sequence(required(&io.input, "--input")?)?;
    let schedule = compile_pulses(&seq);
    write_output(&io.output, &format::schedule_to_json(&schedule))?;
    let conflicts: Vec<[i64; 2]> = schedule.degeneracy_conflicts().into_iter().map(|(x, y)| [x, y]).collect();
    Ok(Outcome::json(
        json!({
            "command": "compile",
            "primitives": seq.len(),
            "pulses": schedule.pulses.len(),
            "kicks": schedule.kick_count(),
            "degenerate_pairs": conflicts,
        }),
        true,
    ))
}

fn witness(io: Io) -> anyhow::Result<Outcome> {
    let a = read_state(required(&io.input, "--input")?)?;
    let b = read_state(required(&io.target, "--target")?)?;
    let w = density_witness(&a, &b, io.max_depth)?;
    write_output(&io.output, &format::sequence_to_json(&w.sequence))?;
    let factors: Vec<serde_json::Value> =
        w.factors.iter().filter_map(|f| f.transposition()).map(|(k, kl)| json!({"swap_range": [k, kl - k]})).collect();
    Ok(Outcome::json(
        json!({
            "command": "witness",
            "factors": factors,
            "inner": [w.inner.re, w.inner.im],
            "abs_inner": w.inner.norm(),
            "sequence": format::sequence_to_value(&w.sequence),
        }),
        true,
    ))
}

fn self_check(io: Io) -> anyhow::Result<Outcome> {
    let report = selfcheck::run(io.seed, &Options { tolerance: io.tol });
    if let Some(path) = &io.output {
        let mut text = serde_json::to_string_pretty(&report)?;
        text.push('\n');
        write_file(path, &text)?;
    }
    Ok(Outcome { stdout: report.render(), passed: report.all_passed() })
}

fn required<'a>(path: &'a Option<PathBuf>, flag: &str) -> anyhow::Result<&'a Path> {
    path.as_deref().ok_or_else(|| anyhow!("missing required flag {flag}"))
}

fn read_state(path: &Path) -> anyhow::Result<SparseState> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(format::state_from_json(&text)?)
}

fn read_sequence(path: &Path) -> anyhow::Result<l2control::ControlSequence> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(format::sequence_from_json(&text)?)
}

fn write_output(path: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => write_file(p, text),
        None => Ok(()),
    }
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

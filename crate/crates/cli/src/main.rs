//! `qtoffoli`: verify, inspect, serialize and sweep the qudit-catalysed
//! `C^{n-1}(U)` networks.
//!
//! Exit codes: 0 when every requested check passes, 1 on a failed check or
//! I/O error, 2 on invalid usage.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qudit_toffoli::circuit_text;
use qudit_toffoli::hilbert::{omega_pow, StateVector, SubsystemLayout};
use qudit_toffoli::networks::{
    build_network, oracle_output, verify_with, NetworkKind, OutcomeMode, TargetGate, VerifyOptions,
};
use qudit_toffoli::physics::{HamiltonianSpec, Spin};
use qudit_toffoli::sweep::{log_spaced, run_sweep, write_csv};
use qudit_toffoli::CIRCUIT_TOL;

const MAX_WIDTH: usize = 8;

#[derive(Parser)]
#[command(name = "qtoffoli", version, about = "Qudit-catalysed generalized Toffoli networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a network against the direct C^{n-1}(U) oracle.
    Verify {
        #[command(flatten)]
        net: NetworkArgs,
        /// Random input states on top of the full basis.
        #[arg(long, default_value_t = 16)]
        random_states: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List every measurement branch of a measured network for one input.
    Branches {
        #[command(flatten)]
        net: NetworkArgs,
        /// Input bitstring, qubit 0 first (default: all ones).
        #[arg(long)]
        input: Option<String>,
        /// `all`, `random`, or an outcome value.
        #[arg(long, default_value = "all")]
        outcome: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sweep the dispersive residual over couplings and write CSV.
    Sweep(SweepArgs),
    /// Write a network in the line-oriented circuit format.
    Emit {
        #[command(flatten)]
        net: NetworkArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct NetworkArgs {
    /// a (coherent), b (measured) or b-z (measured, clock form).
    #[arg(long, default_value = "b")]
    network: NetworkKind,
    /// Number of qubits (controls plus target).
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Target gate: x, z or random:SEED.
    #[arg(long, default_value = "x")]
    u: TargetGate,
    /// Ancilla value that fires U.
    #[arg(long, default_value_t = 1)]
    control_value: usize,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 0.5)]
    spin: f64,
    #[arg(long, default_value_t = 1e-3)]
    g_min: f64,
    #[arg(long, default_value_t = 1e-2)]
    g_max: f64,
    #[arg(long, default_value_t = 5)]
    g_steps: usize,
    #[arg(long, default_value_t = 8)]
    cutoff: usize,
    /// Cavity frequency ω.
    #[arg(long, default_value_t = 5.0)]
    cavity_freq: f64,
    /// Spin frequency Ω.
    #[arg(long, default_value_t = 6.0)]
    spin_freq: f64,
    /// Coefficient χ of the a†a S_z interaction.
    #[arg(long, default_value_t = 1.0)]
    chi: f64,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Accepted for symmetry with the other commands; the sweep is deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum Failure {
    Usage(String),
    Check(String),
}

type CmdResult = Result<(), Failure>;

fn usage(msg: impl ToString) -> Failure {
    Failure::Usage(msg.to_string())
}

fn check(msg: impl ToString) -> Failure {
    Failure::Check(msg.to_string())
}

impl NetworkArgs {
    fn validate(&self) -> CmdResult {
        if !(2..=MAX_WIDTH).contains(&self.n) {
            return Err(usage(format!("--n must be in 2..={MAX_WIDTH}, got {}", self.n)));
        }
        if self.control_value >= self.n {
            return Err(usage(format!(
                "--control-value must be below the ancilla dimension {}",
                self.n
            )));
        }
        Ok(())
    }
}

fn cmd_verify(net: &NetworkArgs, random_states: usize, seed: u64) -> CmdResult {
    net.validate()?;
    let opts = VerifyOptions {
        control_value: net.control_value,
        random_states,
        seed,
    };
    let report = verify_with(net.n, &net.u.operator(), net.network, &opts).map_err(check)?;
    println!("# u={} seed={}", net.u, seed);
    println!("{report}");
    if report.passed {
        Ok(())
    } else {
        Err(check("verification failed"))
    }
}

fn parse_input(bits: Option<&str>, n: usize) -> Result<StateVector, Failure> {
    let digits: Vec<usize> = match bits {
        None => vec![1; n],
        Some(s) => s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(usage(format!("--input must be a bitstring, got '{s}'"))),
            })
            .collect::<Result<_, _>>()?,
    };
    if digits.len() != n {
        return Err(usage(format!("--input needs {n} bits, got {}", digits.len())));
    }
    StateVector::basis(SubsystemLayout::qubits(n).map_err(usage)?, &digits).map_err(usage)
}

fn cmd_branches(net: &NetworkArgs, input: Option<&str>, outcome: &str, seed: u64) -> CmdResult {
    net.validate()?;
    if net.network == NetworkKind::Coherent {
        return Err(usage("branches needs a measured network (b or b-z)"));
    }
    let mode = match outcome {
        "all" => OutcomeMode::EnumerateAll,
        "random" => OutcomeMode::Seeded(seed),
        a => OutcomeMode::Fixed(
            a.parse()
                .ok()
                .filter(|&a| a < net.n)
                .ok_or_else(|| usage(format!("--outcome must be all, random or 0..{}", net.n)))?,
        ),
    };
    let psi = parse_input(input, net.n)?;
    let circuit = build_network(net.network, net.n, &net.u.operator(), net.control_value).map_err(usage)?;
    let program = circuit.compile().map_err(check)?;
    let reference = oracle_output(&circuit, &psi).map_err(check)?;
    let records = program.run_measured(&psi, mode, &reference).map_err(check)?;
    let total: f64 = program.outcome_distribution(&psi).map_err(check)?.iter().sum();

    println!("# network={} n={} u={} control_value={} seed={}", net.network, net.n, net.u, net.control_value, seed);
    println!("{:>3} {:>12} {:>22} {:>22} {:>11}", "a", "probability", "global_phase", "expected", "deviation");
    let mut ok = (total - 1.0).abs() < 1e-12;
    for r in &records {
        let a = r.outcome.expect("measured");
        let expected = omega_pow(net.n, (a * circuit.ancilla_init) as i64);
        let deviation = r.post_correction_state.max_abs_diff(&reference.scaled(expected));
        ok &= deviation < CIRCUIT_TOL;
        println!(
            "{a:>3} {:>12.6} {:>+10.6}{:>+10.6}i {:>+10.6}{:>+10.6}i {deviation:>11.3e}",
            r.probability, r.global_phase.re, r.global_phase.im, expected.re, expected.im
        );
    }
    println!("sum of probabilities {total:.6}");
    println!("result {}", if ok { "PASS" } else { "FAIL" });
    if ok {
        Ok(())
    } else {
        Err(check("branch check failed"))
    }
}

fn cmd_sweep(args: &SweepArgs) -> CmdResult {
    let spin = Spin::new(args.spin).map_err(usage)?;
    if spin.dim() < 2 {
        return Err(usage("--spin must be at least 1/2"));
    }
    let spec = HamiltonianSpec {
        cavity_freq: args.cavity_freq,
        spin_freq: args.spin_freq,
        coupling: args.g_max,
        chi: args.chi,
        spin,
        cutoff: args.cutoff,
    };
    spec.validate().map_err(usage)?;
    if spec.detuning() == 0.0 {
        return Err(usage("--spin-freq must differ from --cavity-freq"));
    }
    if args.chi == 0.0 {
        return Err(usage("--chi must be nonzero"));
    }
    let g_values = log_spaced(args.g_min, args.g_max, args.g_steps).map_err(usage)?;
    let rows = run_sweep(&spec, &g_values).map_err(check)?;

    let mut csv = Vec::new();
    write_csv(&rows, &mut csv).map_err(check)?;
    let slope = rows.first().and_then(|r| r.fitted_slope);
    let summary = match slope {
        Some(s) => format!("s={} n={} fitted residual slope {s:.4}", spin, spec.qudit_dim()),
        None => format!("s={} n={} fitted residual slope n/a (single coupling)", spin, spec.qudit_dim()),
    };
    match &args.out {
        Some(path) => {
            fs::write(path, &csv).map_err(|e| check(format!("cannot write {}: {e}", path.display())))?;
            println!("{summary}");
            println!("wrote {} rows to {}", rows.len(), path.display());
        }
        None => {
            io::stdout().write_all(&csv).map_err(check)?;
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn cmd_emit(net: &NetworkArgs, out: Option<&PathBuf>) -> CmdResult {
    net.validate()?;
    let circuit = build_network(net.network, net.n, &net.u.operator(), net.control_value).map_err(usage)?;
    let text = circuit_text::emit(&circuit);
    let parsed = circuit_text::parse(&text).map_err(check)?;
    if parsed != circuit || circuit_text::emit(&parsed) != text {
        return Err(check("emitted circuit does not round-trip"));
    }
    match out {
        Some(path) => fs::write(path, &text).map_err(|e| check(format!("cannot write {}: {e}", path.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(check),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify { net, random_states, seed } => cmd_verify(net, *random_states, *seed),
        Command::Branches { net, input, outcome, seed } => cmd_branches(net, input.as_deref(), outcome, *seed),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Emit { net, out } => cmd_emit(net, out.as_ref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

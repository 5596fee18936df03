use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cl2n::backend::{Backend, BackendConfig, Fault};
use cl2n::bench::{bench, parse_sizes, write_csv, BenchConfig, BenchOp};
use cl2n::circuit::{parse, Circuit};
use cl2n::core::OracleLimit;
use cl2n::run::{run, RunOptions};
use cl2n::validate::{validate, ValidateOptions};
use cl2n::{Error, Result};

#[derive(Parser)]
#[command(name = "cl2n", version, about = "Clifford circuits in the real algebra Cl(2,0)^N")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a circuit and write a JSON report.
    Run {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Backend::Stabilizer)]
        backend: Backend,
        #[arg(long, default_value_t = 1)]
        shots: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest qubit count accepted by the dense-clifford backend.
        #[arg(long, default_value_t = OracleLimit::DEFAULT)]
        oracle_cap: usize,
    },
    /// Cross-check all three backends; exits 1 if any check fails.
    Validate {
        file: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        shots: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = OracleLimit::DEFAULT)]
        oracle_cap: usize,
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Corrupt the stabilizer gate table (for testing the checks).
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
    /// Time pauli_mul or tableau gates across sizes and emit CSV.
    Bench {
        /// `2^10..2^20`, a comma list, or a single size.
        #[arg(long, default_value = "2^10..2^20")]
        sizes: String,
        #[arg(long, default_value_t = 20)]
        reps: usize,
        /// Operations timed together in one repetition.
        #[arg(long, default_value_t = 16)]
        gates: usize,
        #[arg(long, value_enum, default_value_t = BenchOp::PauliMul)]
        op: BenchOp,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV path; stdout when omitted.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn load(path: &Path) -> Result<Circuit> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })?;
    parse(&text).map_err(|source| Error::Parse { path: path.into(), source })
}

fn write_out(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|source| Error::Io { path: p.into(), source }),
        None => io::stdout()
            .write_all(bytes)
            .map_err(|source| Error::Io { path: "<stdout>".into(), source }),
    }
}

fn execute(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Run { file, backend, shots, seed, out, oracle_cap } => {
            let circuit = load(&file)?;
            let config = BackendConfig { backend, oracle: OracleLimit::new(oracle_cap)?, fault: None };
            let report = run(&circuit, &RunOptions { config, shots, seed })?;
            let mut json = serde_json::to_vec_pretty(&report)?;
            json.push(b'\n');
            write_out(out.as_deref(), &json)?;
            Ok(true)
        }
        Command::Validate { file, shots, seed, oracle_cap, json, inject_fault } => {
            let circuit = load(&file)?;
            let opts = ValidateOptions { shots, seed, oracle: OracleLimit::new(oracle_cap)?, fault: inject_fault };
            let report = validate(&circuit, &opts)?;
            print!("{report}");
            if let Some(path) = json {
                let mut bytes = serde_json::to_vec_pretty(&report)?;
                bytes.push(b'\n');
                write_out(Some(&path), &bytes)?;
            }
            Ok(report.passed())
        }
        Command::Bench { sizes, reps, gates, op, seed, csv } => {
            let sizes = parse_sizes(&sizes)?;
            let rows = bench(&sizes, &BenchConfig { op, ops_per_rep: gates, reps, seed })?;
            let mut out = Vec::new();
            write_csv(&rows, &mut out).expect("writing to memory");
            write_out(csv.as_deref(), &out)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

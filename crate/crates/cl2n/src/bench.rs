//! Timing of `pauli_mul` and per-gate tableau updates across sizes.

use std::hint::black_box;
use std::io::Write;
use std::time::Instant;

use clap::ValueEnum;
use cl2n_core::{GateOp, PauliString, Tableau};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::stats::Summary;

/// A full tableau stores `2n × 2n` bits; beyond this it no longer fits
/// comfortably in memory.
pub const TABLEAU_BENCH_MAX_QUBITS: usize = 1 << 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum BenchOp {
    /// In-place product of two random Pauli strings.
    PauliMul,
    /// One random H, S or CNOT on a tableau.
    TableauGate,
}

impl BenchOp {
    pub fn id(self) -> &'static str {
        match self {
            BenchOp::PauliMul => "pauli_mul",
            BenchOp::TableauGate => "tableau_gate",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BenchConfig {
    pub op: BenchOp,
    /// Operations timed together per repetition.
    pub ops_per_rep: usize,
    pub reps: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub op: &'static str,
    pub n: usize,
    /// Nanoseconds per operation.
    pub median_ns: f64,
    pub p90_ns: f64,
}

fn size_term(s: &str) -> Result<usize> {
    let bad = || Error::Config(format!("invalid size `{s}`"));
    let s = s.trim();
    let v = match s.split_once('^') {
        Some((base, exp)) => {
            let base: usize = base.trim().parse().map_err(|_| bad())?;
            let exp: u32 = exp.trim().parse().map_err(|_| bad())?;
            base.checked_pow(exp).ok_or_else(bad)?
        }
        None => s.parse().map_err(|_| bad())?,
    };
    if v == 0 {
        return Err(Error::Config("sizes must be positive".into()));
    }
    Ok(v)
}

/// Parses `2^10..2^20` (powers of two from the first to the last),
/// comma-separated lists such as `64,2^12`, or a single size.
pub fn parse_sizes(spec: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in spec.split(',') {
        match part.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (size_term(lo)?, size_term(hi)?);
                if lo > hi {
                    return Err(Error::Config(format!("empty size range `{part}`")));
                }
                let mut n = lo;
                while n <= hi {
                    out.push(n);
                    n = match n.checked_mul(2) {
                        Some(next) => next,
                        None => break,
                    };
                }
            }
            None => out.push(size_term(part)?),
        }
    }
    Ok(out)
}

fn random_pauli(rng: &mut ChaCha8Rng, n: usize) -> PauliString {
    let words = n.div_ceil(64);
    let x = (0..words).map(|_| rng.random()).collect();
    let z = (0..words).map(|_| rng.random()).collect();
    PauliString::from_words(n, x, z, 0).expect("word count matches n")
}

fn random_tableau_gate(rng: &mut ChaCha8Rng, n: usize) -> GateOp {
    let a = rng.random_range(0..n);
    match rng.random_range(0..if n > 1 { 3 } else { 2 }) {
        0 => GateOp::H(a),
        1 => GateOp::S(a),
        _ => GateOp::Cnot { control: a, target: (a + rng.random_range(1..n)) % n },
    }
}

/// Per-operation timings of one size.
pub fn bench_size(n: usize, cfg: &BenchConfig) -> Result<BenchRow> {
    if cfg.reps == 0 {
        return Err(Error::Config("repetitions must be at least 1".into()));
    }
    if cfg.ops_per_rep == 0 {
        return Err(Error::Config("operations per repetition must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ n as u64);
    let mut samples = Vec::with_capacity(cfg.reps);
    match cfg.op {
        BenchOp::PauliMul => {
            let mut a = random_pauli(&mut rng, n);
            let b = random_pauli(&mut rng, n);
            // one untimed pass to fault in the pages
            a.mul_assign(&b)?;
            for _ in 0..cfg.reps {
                let start = Instant::now();
                for _ in 0..cfg.ops_per_rep {
                    a.mul_assign(black_box(&b))?;
                }
                samples.push(start.elapsed().as_nanos() as f64 / cfg.ops_per_rep as f64);
            }
            black_box(&a);
        }
        BenchOp::TableauGate => {
            if n > TABLEAU_BENCH_MAX_QUBITS {
                return Err(Error::Config(format!(
                    "tableau benchmark supports at most {TABLEAU_BENCH_MAX_QUBITS} qubits, got {n}"
                )));
            }
            let mut t = Tableau::new(n)?;
            let gates: Vec<GateOp> = (0..cfg.ops_per_rep).map(|_| random_tableau_gate(&mut rng, n)).collect();
            for g in &gates {
                t.apply_gate(g)?;
            }
            for _ in 0..cfg.reps {
                let start = Instant::now();
                for g in &gates {
                    t.apply_gate(black_box(g))?;
                }
                samples.push(start.elapsed().as_nanos() as f64 / cfg.ops_per_rep as f64);
            }
            black_box(&t);
        }
    }
    let s = Summary::of(&mut samples);
    Ok(BenchRow { op: cfg.op.id(), n, median_ns: s.median, p90_ns: s.p90 })
}

pub fn bench(sizes: &[usize], cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    if cfg.reps == 0 {
        return Err(Error::Config("repetitions must be at least 1".into()));
    }
    sizes.iter().map(|&n| bench_size(n, cfg)).collect()
}

pub const CSV_HEADER: &str = "op,n,median_ns,p90_ns";

pub fn write_csv(rows: &[BenchRow], mut w: impl Write) -> std::io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(w, "{},{},{:.1},{:.1}", r.op, r.n, r.median_ns, r.p90_ns)?;
    }
    Ok(())
}

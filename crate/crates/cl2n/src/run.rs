//! Executing a circuit for many shots and collecting a [`RunReport`].

use std::collections::BTreeMap;
use std::time::Instant;

use cl2n_core::GateOp;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::backend::{shot_rng, Backend, BackendConfig, FinalState, Simulator};
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::stats::Summary;

/// One measurement event.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub shot: usize,
    /// Position of the measurement in the circuit's op list.
    pub op: usize,
    pub qubit: usize,
    pub slot: usize,
    pub outcome: u8,
    pub deterministic: bool,
}

/// Wall-clock figures; excluded when comparing reports for determinism.
/// Per-shot times cover the ops from the first measurement on; the common
/// unitary prefix is simulated once and counted only in `total_ns`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub total_ns: u64,
    pub shot_median_ns: u64,
    pub shot_p90_ns: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub backend: Backend,
    pub n: usize,
    pub shots: usize,
    pub seed: u64,
    /// Classical register width.
    pub creg: usize,
    pub measurements_per_shot: usize,
    /// `shots × measurements_per_shot` entries, ordered by shot then op.
    pub records: Vec<MeasurementRecord>,
    /// Final classical register of each shot, slot 0 first.
    pub outcomes: Vec<String>,
    pub counts: BTreeMap<String, usize>,
    /// State after shot 0.
    pub final_state: FinalState,
    pub timing: Timing,
}

impl RunReport {
    /// The report as JSON with the `timing` key removed.
    pub fn deterministic_json(&self) -> Result<serde_json::Value> {
        let mut v = serde_json::to_value(self)?;
        if let Some(map) = v.as_object_mut() {
            map.remove("timing");
        }
        Ok(v)
    }

    pub fn frequencies(&self) -> BTreeMap<String, f64> {
        self.counts
            .iter()
            .map(|(k, &c)| (k.clone(), c as f64 / self.shots as f64))
            .collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub config: BackendConfig,
    pub shots: usize,
    pub seed: u64,
}

impl RunOptions {
    pub fn new(backend: Backend, shots: usize, seed: u64) -> Self {
        RunOptions { config: BackendConfig::new(backend), shots, seed }
    }
}

struct Shot {
    records: Vec<MeasurementRecord>,
    register: String,
    final_state: Option<FinalState>,
    ns: u64,
}

fn register_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Runs ops `skip..` on a copy of `prefix`, the state after ops `..skip`.
fn run_shot(circuit: &Circuit, opts: &RunOptions, prefix: &dyn Simulator, skip: usize, shot: usize) -> Result<Shot> {
    let start = Instant::now();
    let mut sim = prefix.boxed_clone();
    let mut rng = shot_rng(opts.seed, shot as u64);
    let mut register = vec![false; circuit.creg()];
    let mut records = Vec::with_capacity(circuit.measurement_count());
    for (i, op) in circuit.ops().iter().enumerate().skip(skip) {
        match *op {
            GateOp::Measure { qubit, slot } => {
                let slot = slot.expect("parsed circuits carry slots");
                let m = sim.measure(qubit, &mut rng)?;
                register[slot] = m.outcome;
                records.push(MeasurementRecord {
                    shot,
                    op: i,
                    qubit,
                    slot,
                    outcome: u8::from(m.outcome),
                    deterministic: m.deterministic,
                });
            }
            _ => sim.apply_gate(op)?,
        }
    }
    let final_state = (shot == 0).then(|| sim.final_state());
    Ok(Shot {
        records,
        register: register_string(&register),
        final_state,
        ns: start.elapsed().as_nanos() as u64,
    })
}

/// Runs every shot, in parallel, each on its own stream `(seed, shot)`.
/// Results are ordered by shot index.
pub fn run(circuit: &Circuit, opts: &RunOptions) -> Result<RunReport> {
    if opts.shots == 0 {
        return Err(Error::Config("shots must be at least 1".into()));
    }
    let start = Instant::now();
    // everything before the first measurement is the same in every shot
    let skip = circuit.ops().iter().position(|op| op.is_measurement()).unwrap_or(circuit.ops().len());
    let mut prefix = opts.config.build(circuit.n())?;
    for op in &circuit.ops()[..skip] {
        prefix.apply_gate(op)?;
    }
    let prefix: &dyn Simulator = prefix.as_ref();
    let shots: Vec<Shot> = (0..opts.shots)
        .into_par_iter()
        .map(|s| run_shot(circuit, opts, prefix, skip, s))
        .collect::<Result<_>>()?;
    let total_ns = start.elapsed().as_nanos() as u64;

    let mut counts = BTreeMap::new();
    let mut records = Vec::with_capacity(opts.shots * circuit.measurement_count());
    let mut outcomes = Vec::with_capacity(opts.shots);
    let mut times = Vec::with_capacity(opts.shots);
    let mut final_state = None;
    for shot in shots {
        *counts.entry(shot.register.clone()).or_insert(0) += 1;
        records.extend(shot.records);
        outcomes.push(shot.register);
        times.push(shot.ns as f64);
        final_state = final_state.or(shot.final_state);
    }
    let summary = Summary::of(&mut times);
    Ok(RunReport {
        backend: opts.config.backend,
        n: circuit.n(),
        shots: opts.shots,
        seed: opts.seed,
        creg: circuit.creg(),
        measurements_per_shot: circuit.measurement_count(),
        records,
        outcomes,
        counts,
        final_state: final_state.expect("shot 0 ran"),
        timing: Timing {
            total_ns,
            shot_median_ns: summary.median as u64,
            shot_p90_ns: summary.p90 as u64,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse;

    fn bell() -> Circuit {
        parse("qubits 2\nh 0\ncnot 0 1\nmeasure 0\nmeasure 1\n").unwrap()
    }

    #[test]
    fn record_count_and_correlations() {
        let r = run(&bell(), &RunOptions::new(Backend::Stabilizer, 200, 7)).unwrap();
        assert_eq!(r.records.len(), 200 * 2);
        assert!(r.counts.keys().all(|k| k == "00" || k == "11"));
        assert_eq!(r.counts.values().sum::<usize>(), 200);
        assert_eq!(r.outcomes.len(), 200);
    }

    #[test]
    fn same_seed_same_report() {
        for b in Backend::ALL {
            let a = run(&bell(), &RunOptions::new(b, 64, 3)).unwrap();
            let c = run(&bell(), &RunOptions::new(b, 64, 3)).unwrap();
            assert_eq!(a.deterministic_json().unwrap(), c.deterministic_json().unwrap());
            assert!(a.deterministic_json().unwrap().get("timing").is_none());
        }
    }

    #[test]
    fn zero_shots_rejected() {
        assert!(run(&bell(), &RunOptions::new(Backend::Stabilizer, 0, 0)).is_err());
    }

    #[test]
    fn capacity_on_oracle_backends() {
        let c = parse("qubits 6\nh 0\n").unwrap();
        assert!(run(&c, &RunOptions::new(Backend::DenseClifford, 1, 0)).is_err());
        assert!(run(&c, &RunOptions::new(Backend::Stabilizer, 1, 0)).is_ok());
    }

    #[test]
    fn unitary_circuit_keeps_norm() {
        let c = parse("qubits 3\nh 0\ns 0\ncnot 0 2\ny 1\nswap 1 2\ncz 0 1\n").unwrap();
        for b in [Backend::Statevector, Backend::DenseClifford] {
            let r = run(&c, &RunOptions::new(b, 1, 0)).unwrap();
            let FinalState::Amplitudes(a) = r.final_state else { panic!() };
            let norm: f64 = a.iter().map(|[re, im]| re * re + im * im).sum();
            assert!((norm - 1.0).abs() <= 1e-10);
        }
    }
}

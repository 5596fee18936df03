//! Cross-checking the three backends on one circuit.
//!
//! Every measurement branch with nonzero probability is followed with all
//! three simulators forced onto the same outcomes. After each op the
//! tableau's rows are checked against the amplitude vector, the algebraic
//! state is compared with it, and measurement probabilities must agree. The
//! branch weights give the exact distribution of the classical register,
//! which is then compared with seeded shot frequencies from each backend.

use std::collections::BTreeMap;
use std::fmt;

use cl2n_core::{GateOp, OracleLimit, PauliLetter, PauliString, StateVector};
use serde::Serialize;

use crate::backend::{
    Backend, BackendConfig, DenseCliffordSim, Fault, Simulator, StabilizerSim, StateVectorSim,
    CERTAINTY_EPS,
};
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::run::{run, RunOptions};

pub const EXACT_TOLERANCE: f64 = 1e-8;
pub const STATISTICAL_TOLERANCE: f64 = 0.02;
/// Upper bound on simultaneously tracked measurement branches.
pub const MAX_BRANCHES: usize = 4096;

pub const INVARIANTS: &str = "tableau-invariants";
pub const EIGENSTATES: &str = "stabilizer-eigenstates";
pub const EXPECTATIONS: &str = "stabilizer-expectations";
pub const DENSE_AGREEMENT: &str = "dense-vs-statevector";
pub const PROBABILITIES: &str = "measurement-probabilities";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub max_deviation: f64,
    pub tolerance: f64,
    /// Where the first violation happened; empty on success.
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, tolerance: f64) -> Self {
        Check { name: name.into(), passed: true, max_deviation: 0.0, tolerance, detail: String::new() }
    }

    fn observe(&mut self, deviation: f64, context: impl FnOnce() -> String) {
        let bad = deviation.is_nan() || deviation > self.tolerance;
        self.max_deviation = if deviation.is_nan() { f64::INFINITY } else { self.max_deviation.max(deviation) };
        if bad && self.passed {
            self.passed = false;
            self.detail = context();
        }
    }

    fn fail(&mut self, context: impl FnOnce() -> String) {
        self.observe(f64::INFINITY, context);
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidateReport {
    pub n: usize,
    pub shots: usize,
    pub seed: u64,
    pub branches: usize,
    /// Exact probability of every reachable register value.
    pub distribution: BTreeMap<String, f64>,
    pub checks: Vec<Check>,
}

impl ValidateReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for ValidateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.passed {
                writeln!(f, "PASS {} (max deviation {:.3e})", c.name, c.max_deviation)?;
            } else {
                writeln!(f, "FAIL {}: {}", c.name, c.detail)?;
            }
        }
        let failed = self.failures().count();
        if failed == 0 {
            writeln!(f, "result: PASS ({} checks, {} branches)", self.checks.len(), self.branches)
        } else {
            writeln!(f, "result: FAIL ({failed} of {} checks failed)", self.checks.len())
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ValidateOptions {
    pub shots: usize,
    pub seed: u64,
    pub oracle: OracleLimit,
    pub fault: Option<Fault>,
}

impl ValidateOptions {
    pub fn new(shots: usize, seed: u64) -> Self {
        ValidateOptions { shots, seed, oracle: OracleLimit::default(), fault: None }
    }
}

#[derive(Clone)]
struct Branch {
    next_op: usize,
    stabilizer: StabilizerSim,
    dense: DenseCliffordSim,
    reference: StateVectorSim,
    register: Vec<bool>,
    probability: f64,
    /// Outcomes so far, for error messages.
    path: String,
}

struct Exact {
    invariants: Check,
    eigenstates: Check,
    expectations: Check,
    dense: Check,
    probabilities: Check,
}

fn location(b: &Branch, circuit: &Circuit) -> String {
    let path = if b.path.is_empty() { String::new() } else { format!(" on outcomes {}", b.path) };
    match b.next_op.checked_sub(1) {
        Some(i) => format!("after op {} `{}`{path}", i + 1, circuit.ops()[i]),
        None => "initial state".to_string(),
    }
}

fn probes(n: usize) -> Vec<PauliString> {
    let mut out = Vec::with_capacity(3 * n);
    for q in 0..n {
        for l in [PauliLetter::X, PauliLetter::Y, PauliLetter::Z] {
            out.push(PauliString::single(n, q, l).expect("q < n"));
        }
    }
    out
}

fn check_state(b: &Branch, circuit: &Circuit, exact: &mut Exact) -> Result<()> {
    let tableau = b.stabilizer.tableau();
    if let Err(v) = tableau.check_invariants() {
        exact.invariants.fail(|| format!("{}: {v}", location(b, circuit)));
    } else {
        exact.invariants.observe(0.0, String::new);
    }

    let amps = b.reference.amplitudes();
    for s in tableau.stabilizers() {
        let image = b.reference.apply_pauli(s)?;
        let dev = image.iter().zip(amps).map(|(x, y)| (x - y).norm_sqr().sqrt()).fold(0.0, f64::max);
        exact.eigenstates.observe(dev, || {
            format!("{}: stabilizer {} moves the state by {dev:.3e}", location(b, circuit), s.to_signed_text())
        });
    }

    for p in probes(circuit.n()).iter().chain(tableau.stabilizers()) {
        let actual = b.reference.expectation(p)?;
        let predicted = match tableau.expectation(p) {
            Ok(e) => f64::from(e),
            Err(e) => {
                exact.expectations.fail(|| format!("{}: <{}>: {e}", location(b, circuit), p.to_signed_text()));
                continue;
            }
        };
        let dev = (actual - predicted).norm_sqr().sqrt();
        exact.expectations.observe(dev, || {
            format!(
                "{}: tableau gives <{}> = {predicted}, amplitudes give {:.6}",
                location(b, circuit),
                p.to_signed_text(),
                actual.re
            )
        });
    }

    let algebraic = b.dense.state().to_statevector();
    let reference = StateVector::new(circuit.n(), amps.to_vec())?;
    let dev = algebraic.max_abs_diff(&reference);
    exact.dense.observe(dev, || format!("{}: amplitudes differ by {dev:.3e}", location(b, circuit)));
    Ok(())
}

/// Follows every branch; returns the exact register distribution and branch count.
fn explore(circuit: &Circuit, opts: &ValidateOptions, exact: &mut Exact) -> Result<(BTreeMap<String, f64>, usize)> {
    let n = circuit.n();
    let root = Branch {
        next_op: 0,
        stabilizer: StabilizerSim::with_fault(n, opts.fault)?,
        dense: DenseCliffordSim::new(n, opts.oracle)?,
        reference: StateVectorSim::new(n)?,
        register: vec![false; circuit.creg()],
        probability: 1.0,
        path: String::new(),
    };
    check_state(&root, circuit, exact)?;
    let mut stack = vec![root];
    let mut distribution = BTreeMap::new();
    let mut leaves = 0;
    while let Some(mut b) = stack.pop() {
        let Some(op) = circuit.ops().get(b.next_op).copied() else {
            let key: String = b.register.iter().map(|&x| if x { '1' } else { '0' }).collect();
            *distribution.entry(key).or_insert(0.0) += b.probability;
            leaves += 1;
            continue;
        };
        b.next_op += 1;
        match op {
            GateOp::Measure { qubit, slot } => {
                for outcome in [true, false] {
                    let mut child = b.clone();
                    let p = child.reference.measure_forced(qubit, outcome)?;
                    // a corrupted tableau may not be able to answer; count that as a deviation
                    let ps = child.stabilizer.measure_forced(qubit, outcome).unwrap_or(f64::NAN);
                    let pd = child.dense.measure_forced(qubit, outcome)?;
                    let dev = (ps - p).abs().max((pd - p).abs());
                    exact.probabilities.observe(dev, || {
                        format!(
                            "{}: P(qubit {qubit} = {}) is {p:.6} from amplitudes, {ps:.6} from the tableau, {pd:.6} from the algebra",
                            location(&child, circuit),
                            u8::from(outcome)
                        )
                    });
                    if p <= CERTAINTY_EPS {
                        continue;
                    }
                    child.register[slot.expect("parsed circuits carry slots")] = outcome;
                    child.probability *= p;
                    child.path.push(if outcome { '1' } else { '0' });
                    check_state(&child, circuit, exact)?;
                    stack.push(child);
                }
                if stack.len() + leaves > MAX_BRANCHES {
                    return Err(Error::Config(format!(
                        "more than {MAX_BRANCHES} measurement branches; validation needs fewer random measurements"
                    )));
                }
            }
            _ => {
                b.stabilizer.apply_gate(&op)?;
                b.dense.apply_gate(&op)?;
                b.reference.apply_gate(&op)?;
                check_state(&b, circuit, exact)?;
                stack.push(b);
            }
        }
    }
    Ok((distribution, leaves))
}

/// Runs all checks. Errors are reserved for unusable input (capacity, too
/// many branches); deviations are reported as failed checks.
pub fn validate(circuit: &Circuit, opts: &ValidateOptions) -> Result<ValidateReport> {
    opts.oracle.check(circuit.n())?;
    let mut exact = Exact {
        invariants: Check::new(INVARIANTS, 0.0),
        eigenstates: Check::new(EIGENSTATES, EXACT_TOLERANCE),
        expectations: Check::new(EXPECTATIONS, EXACT_TOLERANCE),
        dense: Check::new(DENSE_AGREEMENT, EXACT_TOLERANCE),
        probabilities: Check::new(PROBABILITIES, EXACT_TOLERANCE),
    };
    let (distribution, branches) = explore(circuit, opts, &mut exact)?;
    let mut checks = vec![exact.invariants, exact.eigenstates, exact.expectations, exact.dense, exact.probabilities];

    if opts.shots > 0 {
        for backend in Backend::ALL {
            let mut check = Check::new(format!("born-statistics/{backend}"), STATISTICAL_TOLERANCE);
            let config = BackendConfig { backend, oracle: opts.oracle, fault: opts.fault };
            let freq = match run(circuit, &RunOptions { config, shots: opts.shots, seed: opts.seed }) {
                Ok(report) => report.frequencies(),
                Err(e) => {
                    check.fail(|| format!("run failed: {e}"));
                    checks.push(check);
                    continue;
                }
            };
            let keys: std::collections::BTreeSet<&String> = freq.keys().chain(distribution.keys()).collect();
            for k in keys {
                let f = freq.get(k).copied().unwrap_or(0.0);
                let p = distribution.get(k).copied().unwrap_or(0.0);
                let dev = (f - p).abs();
                check.observe(dev, || format!("register {k:?}: frequency {f:.4} vs probability {p:.4}"));
            }
            checks.push(check);
        }
    }

    Ok(ValidateReport {
        n: circuit.n(),
        shots: opts.shots,
        seed: opts.seed,
        branches,
        distribution,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse;

    #[test]
    fn bell_passes() {
        let c = parse("qubits 2\nh 0\ncnot 0 1\nmeasure 0\nmeasure 1\n").unwrap();
        let r = validate(&c, &ValidateOptions::new(2000, 1)).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.branches, 2);
        assert_eq!(r.distribution.len(), 2);
        assert!((r.distribution["00"] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn faults_are_named() {
        let c = parse("qubits 2\nh 0\ns 0\ncnot 0 1\nh 1\nmeasure 0\nmeasure 1\n").unwrap();
        let cases = [
            (Fault::SwapSAndSdg, EIGENSTATES),
            (Fault::ReverseCnot, EIGENSTATES),
            (Fault::DuplicateStabilizer, INVARIANTS),
        ];
        for (fault, name) in cases {
            let opts = ValidateOptions { fault: Some(fault), ..ValidateOptions::new(0, 0) };
            let r = validate(&c, &opts).unwrap();
            assert!(!r.passed());
            let failed = r.check(name).unwrap();
            assert!(!failed.passed, "{fault:?}: {r}");
            assert!(!failed.detail.is_empty());
        }
    }

    #[test]
    fn capacity_is_checked() {
        let c = parse("qubits 6\nh 0\n").unwrap();
        assert!(validate(&c, &ValidateOptions::new(0, 0)).is_err());
        let opts = ValidateOptions { oracle: OracleLimit::new(6).unwrap(), ..ValidateOptions::new(0, 0) };
        assert!(validate(&c, &opts).unwrap().passed());
    }

    #[test]
    fn deterministic_measurements_do_not_branch() {
        let c = parse("qubits 2\nx 1\nmeasure 0\nmeasure 1\nmeasure 1\n").unwrap();
        let r = validate(&c, &ValidateOptions::new(100, 0)).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.branches, 1);
        assert_eq!(r.distribution.keys().collect::<Vec<_>>(), ["011"]);
    }
}

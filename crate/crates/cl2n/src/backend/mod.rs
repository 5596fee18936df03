//! Three interchangeable simulators behind one trait.
//!
//! * `stabilizer`: the packed tableau, any `n`.
//! * `dense-clifford`: `ψ = aP_N` in the `4^N`-coefficient algebra, evolved by
//!   operator pairs and measured with the projectors `½(1 ± e1^(q))`.
//! * `statevector`: a plain complex amplitude vector, written independently
//!   of the algebra so it can serve as the reference.

mod dense;
mod stabilizer;
mod statevector;

use std::fmt;

use cl2n_core::{GateOp, Measurement, OracleLimit};
use clap::ValueEnum;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use dense::DenseCliffordSim;
pub use stabilizer::{Fault, StabilizerSim};
pub use statevector::{StateVectorSim, STATEVECTOR_MAX_QUBITS};

use crate::error::Result;

/// Probabilities closer than this to 0 or 1 count as certain.
pub const CERTAINTY_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    Stabilizer,
    DenseClifford,
    Statevector,
}

impl Backend {
    pub const ALL: [Backend; 3] = [Backend::Stabilizer, Backend::DenseClifford, Backend::Statevector];

    pub fn id(self) -> &'static str {
        match self {
            Backend::Stabilizer => "stabilizer",
            Backend::DenseClifford => "dense-clifford",
            Backend::Statevector => "statevector",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// State at the end of a shot.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FinalState {
    /// Signed stabilizer generators, e.g. `+XX`.
    Stabilizers(Vec<String>),
    /// `[re, im]` per basis index; bit `k` of the index is qubit `k`.
    Amplitudes(Vec<[f64; 2]>),
}

pub trait Simulator: Send + Sync {
    fn n(&self) -> usize;

    fn apply_gate(&mut self, gate: &GateOp) -> Result<()>;

    /// Z measurement with the outcome drawn from `rng` when it is not certain.
    fn measure(&mut self, qubit: usize, rng: &mut dyn RngCore) -> Result<Measurement>;

    /// Probability of `outcome` followed by collapse onto it. A zero-probability
    /// outcome leaves the state untouched.
    fn measure_forced(&mut self, qubit: usize, outcome: bool) -> Result<f64>;

    fn final_state(&self) -> FinalState;

    fn boxed_clone(&self) -> Box<dyn Simulator>;
}

/// Backend selection plus the limits and test hooks that go with it.
#[derive(Clone, Copy, Debug)]
pub struct BackendConfig {
    pub backend: Backend,
    /// Qubit cap of the dense-clifford backend.
    pub oracle: OracleLimit,
    /// Corrupts the stabilizer backend's gate handling (testing only).
    pub fault: Option<Fault>,
}

impl BackendConfig {
    pub fn new(backend: Backend) -> Self {
        BackendConfig { backend, oracle: OracleLimit::default(), fault: None }
    }

    pub fn build(&self, n: usize) -> Result<Box<dyn Simulator>> {
        Ok(match self.backend {
            Backend::Stabilizer => Box::new(StabilizerSim::with_fault(n, self.fault)?),
            Backend::DenseClifford => Box::new(DenseCliffordSim::new(n, self.oracle)?),
            Backend::Statevector => Box::new(StateVectorSim::new(n)?),
        })
    }
}

/// The random stream of one shot: ChaCha8 seeded with `seed`, stream `shot`.
pub fn shot_rng(seed: u64, shot: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shot);
    rng
}

/// Outcome for an uncertain measurement with `P(1) = p1`.
pub(crate) fn sample(p1: f64, rng: &mut dyn RngCore) -> Measurement {
    if p1 <= CERTAINTY_EPS {
        return Measurement { outcome: false, deterministic: true };
    }
    if p1 >= 1.0 - CERTAINTY_EPS {
        return Measurement { outcome: true, deterministic: true };
    }
    Measurement { outcome: rng.random::<f64>() < p1, deterministic: false }
}

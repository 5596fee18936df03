use cl2n_core::{GateOp, Measurement, Tableau};
use clap::ValueEnum;
use rand::RngCore;
use serde::{Deserialize, Serialize};

use super::{FinalState, Simulator};
use crate::error::Result;

/// Deliberate defects in the stabilizer gate table, used to check that
/// validation notices them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// `s` and `sdg` exchanged.
    SwapSAndSdg,
    /// `cnot` applied with control and target reversed.
    ReverseCnot,
    /// After every gate the second stabilizer is overwritten by the first.
    DuplicateStabilizer,
}

#[derive(Clone)]
pub struct StabilizerSim {
    tableau: Tableau,
    fault: Option<Fault>,
}

/// An "rng" that always yields the same bit, for forcing random outcomes.
struct FixedBit(bool);

impl RngCore for FixedBit {
    fn next_u32(&mut self) -> u32 {
        u32::from(self.0)
    }

    fn next_u64(&mut self) -> u64 {
        u64::from(self.0)
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        dst.fill(u8::from(self.0));
    }
}

impl StabilizerSim {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_fault(n, None)
    }

    pub fn with_fault(n: usize, fault: Option<Fault>) -> Result<Self> {
        Ok(StabilizerSim { tableau: Tableau::new(n)?, fault })
    }

    pub fn tableau(&self) -> &Tableau {
        &self.tableau
    }

    fn translate(&self, gate: &GateOp) -> GateOp {
        match (self.fault, *gate) {
            (Some(Fault::SwapSAndSdg), GateOp::S(q)) => GateOp::Sdg(q),
            (Some(Fault::SwapSAndSdg), GateOp::Sdg(q)) => GateOp::S(q),
            (Some(Fault::ReverseCnot), GateOp::Cnot { control, target }) => {
                GateOp::Cnot { control: target, target: control }
            }
            (_, g) => g,
        }
    }
}

impl Simulator for StabilizerSim {
    fn n(&self) -> usize {
        self.tableau.n()
    }

    fn apply_gate(&mut self, gate: &GateOp) -> Result<()> {
        self.tableau.apply_gate(&self.translate(gate))?;
        let n = self.tableau.n();
        if self.fault == Some(Fault::DuplicateStabilizer) && n >= 2 {
            let mut rows = std::mem::replace(&mut self.tableau, Tableau::new(1)?).into_rows();
            rows[n + 1] = rows[n].clone();
            self.tableau = Tableau::from_rows(rows)?;
        }
        Ok(())
    }

    fn measure(&mut self, qubit: usize, rng: &mut dyn RngCore) -> Result<Measurement> {
        Ok(self.tableau.measure_z(qubit, rng)?)
    }

    fn measure_forced(&mut self, qubit: usize, outcome: bool) -> Result<f64> {
        let m = self.tableau.measure_z(qubit, &mut FixedBit(outcome))?;
        Ok(match (m.deterministic, m.outcome == outcome) {
            (false, _) => 0.5,
            (true, true) => 1.0,
            (true, false) => 0.0,
        })
    }

    fn boxed_clone(&self) -> Box<dyn Simulator> {
        Box::new(self.clone())
    }

    fn final_state(&self) -> FinalState {
        FinalState::Stabilizers(self.tableau.stabilizers().iter().map(|s| s.to_signed_text()).collect())
    }
}

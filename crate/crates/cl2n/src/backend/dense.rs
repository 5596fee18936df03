use std::collections::HashMap;

use cl2n_core::{
    gate_to_operator_pair, vacuum, DenseMultivector, GateOp, IdealState, Measurement, Multivector2,
    OperatorPair, OracleLimit,
};
use rand::RngCore;

use super::{sample, FinalState, Simulator, CERTAINTY_EPS};
use crate::error::Result;

/// `ψ = aP_N` in the dense algebra.
#[derive(Clone)]
pub struct DenseCliffordSim {
    state: IdealState,
    pairs: HashMap<GateOp, OperatorPair>,
}

impl DenseCliffordSim {
    pub fn new(n: usize, limit: OracleLimit) -> Result<Self> {
        limit.check(n)?;
        Ok(DenseCliffordSim {
            state: IdealState::new(vacuum(n)?)?,
            pairs: HashMap::new(),
        })
    }

    pub fn state(&self) -> &IdealState {
        &self.state
    }

    /// `½(1 + e1^(q))` for outcome 0, `½(1 − e1^(q))` for outcome 1.
    fn projector(&self, q: usize, outcome: bool) -> Result<DenseMultivector> {
        let s = if outcome { -0.5 } else { 0.5 };
        Ok(DenseMultivector::local(self.n(), q, &Multivector2::new(0.5, s, 0.0, 0.0))?)
    }

    /// Probability of `outcome` and the unnormalized projected state.
    fn project(&self, q: usize, outcome: bool) -> Result<(f64, IdealState)> {
        let projected = self.state.left_mul(&self.projector(q, outcome)?)?;
        Ok((projected.norm_sqr(), projected))
    }
}

impl Simulator for DenseCliffordSim {
    fn n(&self) -> usize {
        self.state.n()
    }

    fn apply_gate(&mut self, gate: &GateOp) -> Result<()> {
        let n = self.n();
        if !self.pairs.contains_key(gate) {
            self.pairs.insert(*gate, gate_to_operator_pair(gate, n)?);
        }
        self.state = self.pairs[gate].apply(&self.state)?;
        Ok(())
    }

    fn measure(&mut self, qubit: usize, rng: &mut dyn RngCore) -> Result<Measurement> {
        let (p1, one) = self.project(qubit, true)?;
        let m = sample(p1, rng);
        let (p, projected) = if m.outcome { (p1, one) } else { self.project(qubit, false)? };
        self.state = projected.scale(1.0 / p.sqrt());
        Ok(m)
    }

    fn measure_forced(&mut self, qubit: usize, outcome: bool) -> Result<f64> {
        let (p, projected) = self.project(qubit, outcome)?;
        if p > CERTAINTY_EPS {
            self.state = projected.scale(1.0 / p.sqrt());
        }
        Ok(p)
    }

    fn boxed_clone(&self) -> Box<dyn Simulator> {
        Box::new(self.clone())
    }

    fn final_state(&self) -> FinalState {
        let v = self.state.to_statevector();
        FinalState::Amplitudes(v.amplitudes().iter().map(|a| [a.re, a.im]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn bell_through_the_algebra() {
        let mut s = DenseCliffordSim::new(2, OracleLimit::default()).unwrap();
        s.apply_gate(&GateOp::H(0)).unwrap();
        s.apply_gate(&GateOp::Cnot { control: 0, target: 1 }).unwrap();
        let v = s.state().to_statevector();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((v.amplitudes()[0].re - r).abs() < 1e-12);
        assert!((v.amplitudes()[3].re - r).abs() < 1e-12);
        assert!((s.state().norm_sqr() - 1.0).abs() < 1e-12);

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let a = s.measure(0, &mut rng).unwrap();
        let b = s.measure(1, &mut rng).unwrap();
        assert!(!a.deterministic && b.deterministic);
        assert_eq!(a.outcome, b.outcome);
        assert!((s.state().norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn respects_oracle_limit() {
        assert!(DenseCliffordSim::new(6, OracleLimit::default()).is_err());
        assert!(DenseCliffordSim::new(6, OracleLimit::new(6).unwrap()).is_ok());
    }
}

use std::f64::consts::FRAC_1_SQRT_2;

use cl2n_core::{Complex64, Error as CoreError, GateOp, Measurement, PauliString};
use rand::RngCore;

use super::{sample, FinalState, Simulator, CERTAINTY_EPS};
use crate::error::Result;

/// Upper bound on qubits for the amplitude vector (`2^20` amplitudes, 16 MiB).
pub const STATEVECTOR_MAX_QUBITS: usize = 20;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `2^n` complex amplitudes; bit `k` of the index is qubit `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVectorSim {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVectorSim {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(CoreError::ZeroQubits.into());
        }
        if n > STATEVECTOR_MAX_QUBITS {
            return Err(CoreError::Capacity { qubits: n, limit: STATEVECTOR_MAX_QUBITS }.into());
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(StateVectorSim { n, amps })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probability_one(&self, q: usize) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|(b, _)| b >> q & 1 == 1)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// `P|ψ⟩` for a Pauli string, letter by letter on basis indices.
    pub fn apply_pauli(&self, p: &PauliString) -> Result<Vec<Complex64>> {
        if p.n() != self.n {
            return Err(CoreError::DimensionMismatch { left: self.n, right: p.n() }.into());
        }
        let (xmask, zmask) = (p.x_words()[0] as usize, p.z_words()[0] as usize);
        // Y|b⟩ = i(-1)^b |b^1⟩, X and Z as usual
        let base = I.powu(u32::from(p.phase()) + p.y_count());
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (b, a) in self.amps.iter().enumerate() {
            let sign = if (b & zmask).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            out[b ^ xmask] += a * base * sign;
        }
        Ok(out)
    }

    /// `⟨ψ|P|ψ⟩`.
    pub fn expectation(&self, p: &PauliString) -> Result<Complex64> {
        let pv = self.apply_pauli(p)?;
        Ok(self.amps.iter().zip(&pv).map(|(a, b)| a.conj() * b).sum())
    }

    fn pairs(&mut self, q: usize, mut f: impl FnMut(&mut Complex64, &mut Complex64)) {
        let bit = 1 << q;
        for b in 0..self.amps.len() {
            if b & bit == 0 {
                let (lo, hi) = self.amps.split_at_mut(b | bit);
                f(&mut lo[b], &mut hi[0]);
            }
        }
    }

    fn phase_where(&mut self, mask: usize, factor: Complex64) {
        for (b, a) in self.amps.iter_mut().enumerate() {
            if b & mask == mask {
                *a *= factor;
            }
        }
    }

    fn collapse(&mut self, q: usize, outcome: bool, p: f64) {
        let scale = 1.0 / p.sqrt();
        for (b, a) in self.amps.iter_mut().enumerate() {
            if (b >> q & 1 == 1) == outcome {
                *a *= scale;
            } else {
                *a = Complex64::new(0.0, 0.0);
            }
        }
    }
}

impl Simulator for StateVectorSim {
    fn n(&self) -> usize {
        self.n
    }

    fn apply_gate(&mut self, gate: &GateOp) -> Result<()> {
        gate.validate(self.n)?;
        match *gate {
            GateOp::H(q) => self.pairs(q, |a, b| {
                let (x, y) = (*a, *b);
                *a = (x + y) * FRAC_1_SQRT_2;
                *b = (x - y) * FRAC_1_SQRT_2;
            }),
            GateOp::S(q) => self.phase_where(1 << q, I),
            GateOp::Sdg(q) => self.phase_where(1 << q, -I),
            GateOp::X(q) => self.pairs(q, std::mem::swap),
            GateOp::Y(q) => self.pairs(q, |a, b| {
                let (x, y) = (*a, *b);
                *a = -I * y;
                *b = I * x;
            }),
            GateOp::Z(q) => self.phase_where(1 << q, Complex64::new(-1.0, 0.0)),
            GateOp::Cnot { control, target } => {
                for b in 0..self.amps.len() {
                    if b >> control & 1 == 1 && b >> target & 1 == 0 {
                        self.amps.swap(b, b | 1 << target);
                    }
                }
            }
            GateOp::Cz(a, b) => self.phase_where(1 << a | 1 << b, Complex64::new(-1.0, 0.0)),
            GateOp::Swap(a, b) => {
                for i in 0..self.amps.len() {
                    if i >> a & 1 == 1 && i >> b & 1 == 0 {
                        self.amps.swap(i, i ^ (1 << a | 1 << b));
                    }
                }
            }
            GateOp::Measure { .. } => return Err(CoreError::NotUnitary.into()),
        }
        Ok(())
    }

    fn measure(&mut self, qubit: usize, rng: &mut dyn RngCore) -> Result<Measurement> {
        GateOp::Measure { qubit, slot: None }.validate(self.n)?;
        let p1 = self.probability_one(qubit);
        let m = sample(p1, rng);
        let p = if m.outcome { p1 } else { 1.0 - p1 };
        self.collapse(qubit, m.outcome, p);
        Ok(m)
    }

    fn measure_forced(&mut self, qubit: usize, outcome: bool) -> Result<f64> {
        GateOp::Measure { qubit, slot: None }.validate(self.n)?;
        let p1 = self.probability_one(qubit);
        let p = if outcome { p1 } else { 1.0 - p1 };
        if p > CERTAINTY_EPS {
            self.collapse(qubit, outcome, p);
        }
        Ok(p)
    }

    fn boxed_clone(&self) -> Box<dyn Simulator> {
        Box::new(self.clone())
    }

    fn final_state(&self) -> FinalState {
        FinalState::Amplitudes(self.amps.iter().map(|a| [a.re, a.im]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cl2n_core::{gate_to_operator_pair, StateVector};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn bell_amplitudes() {
        let mut s = StateVectorSim::new(2).unwrap();
        s.apply_gate(&GateOp::H(0)).unwrap();
        s.apply_gate(&GateOp::Cnot { control: 0, target: 1 }).unwrap();
        let r = FRAC_1_SQRT_2;
        assert_eq!(s.amplitudes(), &[c(r, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(r, 0.0)]);
        assert!((s.expectation(&"XX".parse().unwrap()).unwrap() - 1.0).l1_norm() < 1e-12);
        assert!((s.expectation(&"YY".parse().unwrap()).unwrap() + 1.0).l1_norm() < 1e-12);
        assert!(s.expectation(&"XI".parse().unwrap()).unwrap().l1_norm() < 1e-12);
    }

    #[test]
    fn gates_match_operator_pairs() {
        // an unrelated route to the same unitaries: the algebra's ρ matrices
        let n = 3;
        let mut seed = StateVectorSim::new(n).unwrap();
        for g in [GateOp::H(0), GateOp::H(1), GateOp::S(1), GateOp::Cnot { control: 1, target: 2 }, GateOp::H(2), GateOp::S(2)] {
            seed.apply_gate(&g).unwrap();
        }
        let all = (0..n).flat_map(|q| {
            let mut v = vec![GateOp::H(q), GateOp::S(q), GateOp::Sdg(q), GateOp::X(q), GateOp::Y(q), GateOp::Z(q)];
            for t in (0..n).filter(|&t| t != q) {
                v.extend([GateOp::Cnot { control: q, target: t }, GateOp::Cz(q, t), GateOp::Swap(q, t)]);
            }
            v
        });
        for g in all {
            let mut s = seed.clone();
            s.apply_gate(&g).unwrap();
            let m = gate_to_operator_pair(&g, n).unwrap().matrix().unwrap();
            let expect = m.mul_vec(&StateVector::new(n, seed.amplitudes().to_vec()).unwrap());
            let got = StateVector::new(n, s.amplitudes().to_vec()).unwrap();
            assert!(got.max_abs_diff(&expect) < 1e-12, "{g}");
        }
    }

    #[test]
    fn forced_measurement() {
        let mut s = StateVectorSim::new(1).unwrap();
        s.apply_gate(&GateOp::H(0)).unwrap();
        let p = s.measure_forced(0, true).unwrap();
        assert!((p - 0.5).abs() < 1e-12);
        assert!((s.probability_one(0) - 1.0).abs() < 1e-12);
        assert_eq!(s.measure_forced(0, false).unwrap(), 0.0);
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn capacity() {
        assert!(StateVectorSim::new(STATEVECTOR_MAX_QUBITS + 1).is_err());
        assert!(StateVectorSim::new(0).is_err());
    }
}

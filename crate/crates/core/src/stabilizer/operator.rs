use core::f64::consts::FRAC_1_SQRT_2;

use super::GateOp;
use crate::blade::{BladeIndex, Multivector2};
use crate::error::{Error, Result};
use crate::ideal::OperatorPair;
use crate::tensor::DenseMultivector;

const HALF_PLUS_E1: Multivector2 = Multivector2::new(0.5, 0.5, 0.0, 0.0);
const HALF_MINUS_E1: Multivector2 = Multivector2::new(0.5, -0.5, 0.0, 0.0);

fn local(n: usize, q: usize, x: Multivector2) -> Result<DenseMultivector> {
    DenseMultivector::local(n, q, &x)
}

fn blade(n: usize, q: usize, b: BladeIndex) -> Result<DenseMultivector> {
    DenseMultivector::local_blade(n, q, b)
}

/// `½(1 + e1^(c)) + ½(1 − e1^(c)) · u^(t)`: identity when `c` is `|0⟩`, `u` on `t` otherwise.
fn controlled(n: usize, c: usize, t: usize, u: BladeIndex) -> Result<DenseMultivector> {
    let off = local(n, c, HALF_PLUS_E1)?;
    let on = local(n, c, HALF_MINUS_E1)?.gp(&blade(n, t, u)?)?;
    off.add(&on)
}

/// The algebra element(s) whose action on the state module is the gate's unitary.
///
/// `H`, `X`, `Z`, `CNOT`, `CZ` and `SWAP` are real left multiplications.
/// `S`, `Sdg` and `Y` carry a factor of `i` somewhere and need the
/// right-`J` part.
pub fn gate_to_operator_pair(gate: &GateOp, n: usize) -> Result<OperatorPair> {
    gate.validate(n)?;
    match *gate {
        GateOp::H(q) => {
            let e1 = blade(n, q, BladeIndex::E1)?;
            let e2 = blade(n, q, BladeIndex::E2)?;
            OperatorPair::real(e1.add(&e2)?.scale(FRAC_1_SQRT_2))
        }
        GateOp::X(q) => OperatorPair::real(blade(n, q, BladeIndex::E2)?),
        GateOp::Z(q) => OperatorPair::real(blade(n, q, BladeIndex::E1)?),
        // Y = -i e12
        GateOp::Y(q) => OperatorPair::new(
            DenseMultivector::zeros(n)?,
            blade(n, q, BladeIndex::E12)?.scale(-1.0),
        ),
        // diag(1, ±i) = ½(1 + e1) ± ½(1 − e1) i
        GateOp::S(q) => OperatorPair::local(n, q, &HALF_PLUS_E1, &HALF_MINUS_E1),
        GateOp::Sdg(q) => OperatorPair::local(n, q, &HALF_PLUS_E1, &HALF_MINUS_E1.scale(-1.0)),
        GateOp::Cnot { control, target } => {
            OperatorPair::real(controlled(n, control, target, BladeIndex::E2)?)
        }
        GateOp::Cz(a, b) => OperatorPair::real(controlled(n, a, b, BladeIndex::E1)?),
        // ½(1 + X⊗X + Y⊗Y + Z⊗Z), with Y⊗Y = (−i)² e12⊗e12
        GateOp::Swap(a, b) => {
            let pair = |blade_kind| -> Result<DenseMultivector> {
                blade(n, a, blade_kind)?.gp(&blade(n, b, blade_kind)?)
            };
            let sum = DenseMultivector::one(n)?
                .add(&pair(BladeIndex::E2)?)?
                .sub(&pair(BladeIndex::E12)?)?
                .add(&pair(BladeIndex::E1)?)?;
            OperatorPair::real(sum.scale(0.5))
        }
        GateOp::Measure { .. } => Err(Error::NotUnitary),
    }
}

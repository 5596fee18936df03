use core::fmt;

use crate::error::{Error, Result};

/// One circuit instruction. Qubit indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateOp {
    H(usize),
    S(usize),
    Sdg(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Cnot { control: usize, target: usize },
    Cz(usize, usize),
    Swap(usize, usize),
    /// Z-basis measurement, optionally written to a classical slot.
    Measure { qubit: usize, slot: Option<usize> },
}

impl GateOp {
    /// The circuit-file keyword.
    pub fn keyword(&self) -> &'static str {
        match self {
            GateOp::H(_) => "h",
            GateOp::S(_) => "s",
            GateOp::Sdg(_) => "sdg",
            GateOp::X(_) => "x",
            GateOp::Y(_) => "y",
            GateOp::Z(_) => "z",
            GateOp::Cnot { .. } => "cnot",
            GateOp::Cz(..) => "cz",
            GateOp::Swap(..) => "swap",
            GateOp::Measure { .. } => "measure",
        }
    }

    /// Qubits touched, in operand order; the second entry is `None` for one-qubit ops.
    pub fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            GateOp::H(q)
            | GateOp::S(q)
            | GateOp::Sdg(q)
            | GateOp::X(q)
            | GateOp::Y(q)
            | GateOp::Z(q)
            | GateOp::Measure { qubit: q, .. } => (q, None),
            GateOp::Cnot { control, target } => (control, Some(target)),
            GateOp::Cz(a, b) | GateOp::Swap(a, b) => (a, Some(b)),
        }
    }

    pub fn is_measurement(&self) -> bool {
        matches!(self, GateOp::Measure { .. })
    }

    /// Checks index range and distinctness for `n` qubits.
    pub fn validate(&self, n: usize) -> Result<()> {
        let (a, b) = self.qubits();
        for q in core::iter::once(a).chain(b) {
            if q >= n {
                return Err(Error::QubitOutOfRange { qubit: q, n });
            }
        }
        if b == Some(a) {
            return Err(Error::RepeatedQubit(a));
        }
        Ok(())
    }
}

impl fmt::Display for GateOp {
    /// Canonical circuit-file form, e.g. `cnot 0 1` or `measure 2 -> 0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GateOp::Measure { qubit, slot: Some(k) } => write!(f, "measure {qubit} -> {k}"),
            GateOp::Measure { qubit, slot: None } => write!(f, "measure {qubit}"),
            _ => {
                let (a, b) = self.qubits();
                write!(f, "{} {a}", self.keyword())?;
                if let Some(b) = b {
                    write!(f, " {b}")?;
                }
                Ok(())
            }
        }
    }
}

//! Stabilizer simulation with packed Pauli rows.
//!
//! A Clifford gate maps Pauli strings to Pauli strings, so a stabilizer state
//! is tracked by conjugating its generators. Each update is XOR on the x/z
//! bits of the touched columns plus a sign flip; products of rows (needed for
//! measurement) go through [`PauliString::mul`](crate::tensor::PauliString::mul)
//! with full phase tracking.
//!
//! Cost per one- or two-qubit gate is `O(n)` (one bit update per row, `2n`
//! rows). A random measurement costs `O(n²/64)` word operations for the row
//! products; a deterministic one the same for the accumulated product.

mod gate;
mod operator;
mod tableau;

pub use gate::GateOp;
pub use operator::gate_to_operator_pair;
pub use tableau::{Measurement, Tableau, TableauViolation};

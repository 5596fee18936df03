//! Qubits in the real Clifford algebra Cl(2,0)^⊗N.
//!
//! The crate is organized bottom-up:
//!
//! * [`blade`]: exact arithmetic in the four-dimensional algebra Cl(2,0).
//! * [`tensor`]: the N-qubit algebra as signed blade strings and packed
//!   symplectic Pauli strings (linear-time products), plus a dense
//!   `4^N`-coefficient form used as an oracle at small N.
//! * [`ideal`]: states as elements of the minimal left ideal generated by the
//!   vacuum idempotent, the left-action representation `ρ`, and density
//!   operators.
//! * [`stabilizer`]: a destabilizer/stabilizer tableau whose gate updates are
//!   bit operations on packed Pauli rows.
//!
//! The crate is `no_std` with `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod blade;
pub mod error;
pub mod ideal;
pub mod stabilizer;
pub mod tensor;

pub use blade::{blade_mul, idempotent_p, BladeIndex, Multivector2, SignedBlade};
pub use error::{Error, Result};
pub use ideal::{
    conjugate_evolution_check, density_from_generator, vacuum, CMatrix, DensityMatrix,
    EvolutionCheck, IdealState, OperatorPair, StateVector,
};
pub use stabilizer::{gate_to_operator_pair, GateOp, Measurement, Tableau, TableauViolation};
pub use tensor::{BladeString, DenseMultivector, OracleLimit, PauliLetter, PauliString};

pub use num_complex::Complex64;

//! States as elements of the minimal left ideal generated by the vacuum.
//!
//! A state is `ψ = aP_N` (or a complex combination `aP_N + bP_N J`), the
//! preparation map is `ϑ(g) = gP_N` and operators act by left
//! multiplication, `ρ(g)ψ = gψ`. Associativity gives `ρ(g)ϑ(h) = ϑ(gh)`.
//!
//! The complex unit is right multiplication by the bivector of qubit 0. It
//! squares to `-1` and commutes with every left action, so all left actions
//! are complex-linear. Amplitudes are read off in the basis
//! `B_b = (⊗_k e2^{b_k}) P_N`, where `e1^(k)` and `e2^(k)` act as `σz` and
//! `σx` on bit `k`.

mod density;
mod matrix;
mod state;

pub use density::{
    conjugate_evolution_check, density_from_generator, DensityMatrix, EvolutionCheck,
    EVOLUTION_TOLERANCE,
};
pub use matrix::{CMatrix, StateVector};
pub use state::{apply, j_total, rho_matrix, theta, vacuum, IdealState, OperatorPair, IDEAL_TOLERANCE};

//! The N-qubit algebra `Cl(2,0)^⊗N`.
//!
//! Products are local: the product of two simple tensors is the tensor of the
//! per-qubit products, with generators on distinct qubits commuting. Three
//! representations live here:
//!
//! * [`BladeString`]: a signed simple tensor of unit blades.
//! * [`PauliString`]: the same information packed into x/z bit masks with a
//!   phase exponent, so a product is XOR plus popcount phase bookkeeping.
//! * [`DenseMultivector`]: all `4^N` coefficients, the small-N oracle.

mod blade_string;
mod dense;
mod pauli;

pub use blade_string::BladeString;
pub use dense::{DenseMultivector, OracleLimit};
pub use pauli::{PauliLetter, PauliString};


pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}
#[cfg(test)]
pub(crate) use dense::index_to_blade_string as dense_index_string;

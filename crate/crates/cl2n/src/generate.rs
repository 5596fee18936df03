//! Random circuits for property tests, validation sweeps and the corpus.

use cl2n_core::GateOp;
use rand::Rng;

use crate::circuit::Circuit;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateKind {
    H,
    S,
    Sdg,
    X,
    Y,
    Z,
    Cnot,
    Cz,
    Swap,
    Measure,
}

impl GateKind {
    pub const CLIFFORD: [GateKind; 9] = [
        GateKind::H,
        GateKind::S,
        GateKind::Sdg,
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::Cnot,
        GateKind::Cz,
        GateKind::Swap,
    ];

    /// `{H, S, CNOT, X, Z}`.
    pub const BASIC: [GateKind; 5] = [GateKind::H, GateKind::S, GateKind::Cnot, GateKind::X, GateKind::Z];

    pub fn is_two_qubit(self) -> bool {
        matches!(self, GateKind::Cnot | GateKind::Cz | GateKind::Swap)
    }
}

/// One op of `kind` on random qubits; two-qubit kinds need `n ≥ 2`.
pub fn random_op<R: Rng + ?Sized>(rng: &mut R, n: usize, kind: GateKind) -> GateOp {
    let a = rng.random_range(0..n);
    let b = if kind.is_two_qubit() {
        assert!(n >= 2, "two-qubit gate on one qubit");
        (a + rng.random_range(1..n)) % n
    } else {
        a
    };
    match kind {
        GateKind::H => GateOp::H(a),
        GateKind::S => GateOp::S(a),
        GateKind::Sdg => GateOp::Sdg(a),
        GateKind::X => GateOp::X(a),
        GateKind::Y => GateOp::Y(a),
        GateKind::Z => GateOp::Z(a),
        GateKind::Cnot => GateOp::Cnot { control: a, target: b },
        GateKind::Cz => GateOp::Cz(a, b),
        GateKind::Swap => GateOp::Swap(a, b),
        GateKind::Measure => {
            let slot = if rng.random_bool(0.5) { None } else { Some(rng.random_range(0..4)) };
            GateOp::Measure { qubit: a, slot }
        }
    }
}

/// `depth` ops drawn uniformly from `kinds` (two-qubit kinds are skipped at `n = 1`).
pub fn random_circuit<R: Rng + ?Sized>(rng: &mut R, n: usize, depth: usize, kinds: &[GateKind]) -> Circuit {
    let usable: Vec<GateKind> = kinds.iter().copied().filter(|k| n >= 2 || !k.is_two_qubit()).collect();
    assert!(!usable.is_empty(), "no usable gate kinds");
    let mut c = Circuit::new(n).expect("n >= 1");
    for _ in 0..depth {
        let kind = usable[rng.random_range(0..usable.len())];
        c.push(random_op(rng, n, kind)).expect("in range");
    }
    c
}

/// Appends `measure q` for every qubit.
pub fn measure_all(c: &mut Circuit) {
    for q in 0..c.n() {
        c.push(GateOp::Measure { qubit: q, slot: None }).expect("in range");
    }
}

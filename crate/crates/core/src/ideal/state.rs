use alloc::vec::Vec;

use num_complex::Complex64;

use super::matrix::{CMatrix, StateVector};
use crate::blade::{idempotent_p, BladeIndex, Multivector2};
use crate::error::{Error, Result};
use crate::tensor::DenseMultivector;

/// Absolute tolerance for membership in the state module.
pub const IDEAL_TOLERANCE: f64 = 1e-10;

/// `P_N = ⊗_k ½(1 + e1^(k))`: `2^n` coefficients of `2^-n` on the products of `e1`s.
pub fn vacuum(n: usize) -> Result<DenseMultivector> {
    if n == 0 {
        return Err(Error::ZeroQubits);
    }
    let p = DenseMultivector::from_multivector2(&idempotent_p());
    let mut out = p.clone();
    for _ in 1..n {
        out = out.tensor(&p)?;
    }
    Ok(out)
}

/// The bivector `J^(0)` on qubit 0, whose right action is the complex unit.
pub fn j_total(n: usize) -> Result<DenseMultivector> {
    DenseMultivector::local_blade(n, 0, BladeIndex::E12)
}

/// Signed entries of one real basis vector of the state module.
///
/// The real basis is `B_b = (⊗_k e2^{b_k}) P_N` together with `B_b J^(0)`.
/// Every factor is `½` times one of `1 ± e1` or `e2 ± e12`, so each basis
/// vector has `2^n` entries of magnitude `2^-n` and the whole basis is
/// orthogonal in the coefficient inner product with squared norm `2^-n`.
fn basis_entries(n: usize, bits: usize, imaginary: bool) -> impl Iterator<Item = (usize, f64)> {
    let mag = 1.0 / (1u64 << n) as f64;
    // (code, sign) of the two blades in each local factor
    let factor = move |k: usize| -> [(usize, f64); 2] {
        let one = bits >> k & 1 == 1;
        match (k == 0 && imaginary, one) {
            (false, false) => [(0, 1.0), (1, 1.0)],   // ½(1 + e1)
            (false, true) => [(2, 1.0), (3, -1.0)],   // e2 ½(1 + e1) = ½(e2 - e12)
            (true, false) => [(2, 1.0), (3, 1.0)],    // ½(1 + e1) e12 = ½(e2 + e12)
            (true, true) => [(0, 1.0), (1, -1.0)],    // e2 ½(1 + e1) e12 = ½(1 - e1)
        }
    };
    (0..1usize << n).map(move |choice| {
        let mut idx = 0;
        let mut sign = 1.0;
        for k in 0..n {
            let (code, s) = factor(k)[choice >> k & 1];
            idx |= code << (2 * k);
            sign *= s;
        }
        (idx, sign * mag)
    })
}

/// An element of the J-closed state module `V_N = A_N P_N ⊕ A_N P_N J`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealState {
    psi: DenseMultivector,
}

impl IdealState {
    /// Checks that `psi` lies in the state module.
    pub fn new(psi: DenseMultivector) -> Result<Self> {
        let residual = decompose(&psi).1;
        let tol = IDEAL_TOLERANCE * psi.max_abs().max(1.0);
        if residual > tol {
            return Err(Error::OutsideIdeal { residual });
        }
        Ok(IdealState { psi })
    }

    pub(crate) fn new_unchecked(psi: DenseMultivector) -> Self {
        IdealState { psi }
    }

    /// The state with the given amplitudes.
    pub fn from_statevector(v: &StateVector) -> Result<Self> {
        let n = v.n();
        let mut psi = DenseMultivector::zeros(n)?;
        let c = psi.coeffs_mut();
        for (b, a) in v.amplitudes().iter().enumerate() {
            for (imaginary, w) in [(false, a.re), (true, a.im)] {
                if w == 0.0 {
                    continue;
                }
                for (i, s) in basis_entries(n, b, imaginary) {
                    c[i] += w * s;
                }
            }
        }
        Ok(IdealState { psi })
    }

    /// `B_b`, the algebraic image of `|b⟩`.
    pub fn basis(n: usize, b: usize) -> Result<Self> {
        Self::from_statevector(&StateVector::basis(n, b))
    }

    pub fn n(&self) -> usize {
        self.psi.n()
    }

    pub fn multivector(&self) -> &DenseMultivector {
        &self.psi
    }

    pub fn into_multivector(self) -> DenseMultivector {
        self.psi
    }

    /// Amplitudes in the basis `{B_b}`, with `B_b J` read as `i B_b`.
    pub fn to_statevector(&self) -> StateVector {
        decompose(&self.psi).0
    }

    /// Right multiplication by `J^(0)`: the complex unit `i`.
    pub fn mul_j(&self) -> Result<IdealState> {
        Ok(IdealState {
            psi: self.psi.gp(&j_total(self.n())?)?,
        })
    }

    pub fn add(&self, other: &IdealState) -> Result<IdealState> {
        Ok(IdealState {
            psi: self.psi.add(&other.psi)?,
        })
    }

    pub fn scale(&self, s: f64) -> IdealState {
        IdealState {
            psi: self.psi.scale(s),
        }
    }

    /// `⟨ψ|ψ⟩ = 2^N Σ c²`: the basis states are orthogonal in the coefficient
    /// inner product, each with squared length `2^-N`.
    pub fn norm_sqr(&self) -> f64 {
        let sum: f64 = self.psi.coeffs().iter().map(|c| c * c).sum();
        sum * (1u64 << self.n()) as f64
    }

    /// Left action `ρ(g)ψ = gψ`.
    pub fn left_mul(&self, g: &DenseMultivector) -> Result<IdealState> {
        Ok(IdealState {
            psi: g.gp(&self.psi)?,
        })
    }
}

/// Amplitudes of `psi` and the `∞`-norm of what the basis does not capture.
fn decompose(psi: &DenseMultivector) -> (StateVector, f64) {
    let n = psi.n();
    let c = psi.coeffs();
    let inv_norm = (1u64 << n) as f64;
    let mut rebuilt = alloc::vec![0.0; c.len()];
    let amplitudes: Vec<Complex64> = (0..1usize << n)
        .map(|b| {
            let mut parts = [0.0; 2];
            for (slot, imaginary) in [(0, false), (1, true)] {
                let dot: f64 = basis_entries(n, b, imaginary).map(|(i, s)| s * c[i]).sum();
                let w = dot * inv_norm;
                for (i, s) in basis_entries(n, b, imaginary) {
                    rebuilt[i] += w * s;
                }
                parts[slot] = w;
            }
            Complex64::new(parts[0], parts[1])
        })
        .collect();
    let residual = c
        .iter()
        .zip(&rebuilt)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    (
        StateVector::new(n, amplitudes).expect("2^n amplitudes"),
        residual,
    )
}

/// `ϑ(g) = g P_N`.
pub fn theta(g: &DenseMultivector) -> Result<IdealState> {
    Ok(IdealState {
        psi: g.gp(&vacuum(g.n())?)?,
    })
}

/// Matrix of the left action of `g` in the basis `{B_b}`.
pub fn rho_matrix(g: &DenseMultivector) -> Result<CMatrix> {
    let n = g.n();
    let cols = (0..1usize << n)
        .map(|b| Ok(IdealState::basis(n, b)?.left_mul(g)?.to_statevector()))
        .collect::<Result<Vec<_>>>()?;
    Ok(CMatrix::from_columns(&cols))
}

/// A complex-linear operator `ψ ↦ aψ + bψJ` on the state module.
///
/// `b = 0` is the plain left action `ρ(a)`. The `b` part is needed for gates
/// with non-real matrices, such as `S = diag(1, i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorPair {
    pub a: DenseMultivector,
    pub b: DenseMultivector,
}

impl OperatorPair {
    pub fn new(a: DenseMultivector, b: DenseMultivector) -> Result<Self> {
        if a.n() != b.n() {
            return Err(Error::DimensionMismatch {
                left: a.n(),
                right: b.n(),
            });
        }
        Ok(OperatorPair { a, b })
    }

    pub fn real(a: DenseMultivector) -> Result<Self> {
        let b = DenseMultivector::zeros(a.n())?;
        Ok(OperatorPair { a, b })
    }

    pub fn identity(n: usize) -> Result<Self> {
        OperatorPair::real(DenseMultivector::one(n)?)
    }

    /// Single-qubit pair `(x, y)` placed on `qubit`.
    pub fn local(n: usize, qubit: usize, x: &Multivector2, y: &Multivector2) -> Result<Self> {
        OperatorPair::new(
            DenseMultivector::local(n, qubit, x)?,
            DenseMultivector::local(n, qubit, y)?,
        )
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn apply(&self, s: &IdealState) -> Result<IdealState> {
        if s.n() != self.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: s.n(),
            });
        }
        let left = self.a.gp(&s.psi)?;
        if self.b.nnz() == 0 {
            return Ok(IdealState::new_unchecked(left));
        }
        let right = self.b.gp(&s.psi)?.gp(&j_total(s.n())?)?;
        Ok(IdealState::new_unchecked(left.add(&right)?))
    }

    /// `ρ(a) + i ρ(b)`.
    pub fn matrix(&self) -> Result<CMatrix> {
        let ra = rho_matrix(&self.a)?;
        let rb = rho_matrix(&self.b)?;
        Ok(ra.add(&rb.scale(Complex64::new(0.0, 1.0))))
    }

    /// The operator "apply `self`, then `next`".
    ///
    /// Right multiplication by `J` commutes with every left action, so
    /// `(a' + b'J)(a + bJ) = (a'a - b'b) + (a'b + b'a)J`.
    pub fn then(&self, next: &OperatorPair) -> Result<OperatorPair> {
        let a = next.a.gp(&self.a)?.sub(&next.b.gp(&self.b)?)?;
        let b = next.a.gp(&self.b)?.add(&next.b.gp(&self.a)?)?;
        OperatorPair::new(a, b)
    }
}

/// `apply` as a free function over an operator pair.
pub fn apply(op: &OperatorPair, s: &IdealState) -> Result<IdealState> {
    op.apply(s)
}

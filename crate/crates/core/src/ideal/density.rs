use num_complex::Complex64;

use super::matrix::CMatrix;
use super::state::{rho_matrix, vacuum};
use crate::error::{Error, Result};
use crate::tensor::DenseMultivector;

/// Below this `∞`-norm the generated state `aP_N` counts as zero.
const DEGENERATE_TOLERANCE: f64 = 1e-12;

/// Tolerance of [`conjugate_evolution_check`].
pub const EVOLUTION_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    entries: CMatrix,
}

impl DensityMatrix {
    pub fn new(n: usize, entries: CMatrix) -> Result<Self> {
        if entries.dim() != 1 << n {
            return Err(Error::DimensionMismatch {
                left: 1 << n,
                right: entries.dim(),
            });
        }
        Ok(DensityMatrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    /// Divides by the trace. A zero-trace matrix is returned unchanged.
    pub fn normalized(&self) -> DensityMatrix {
        let t = self.trace();
        if t.norm_sqr() == 0.0 {
            return self.clone();
        }
        DensityMatrix {
            n: self.n,
            entries: self.entries.scale(t.inv()),
        }
    }

    /// `‖ρ² − ρ‖∞`.
    pub fn idempotency_defect(&self) -> f64 {
        self.entries.mul(&self.entries).max_abs_diff(&self.entries)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.entries.is_hermitian(tol)
    }

    /// Convex combination `Σ w_i ρ_i`. Weights must be non-negative and sum to 1.
    pub fn mixture(parts: &[(f64, DensityMatrix)]) -> Result<DensityMatrix> {
        let Some((_, first)) = parts.first() else {
            return Err(Error::DegenerateState);
        };
        let n = first.n;
        let mut acc = CMatrix::zeros(1 << n);
        for (w, rho) in parts {
            if rho.n != n {
                return Err(Error::DimensionMismatch { left: n, right: rho.n });
            }
            acc = acc.add(&rho.entries.scale(Complex64::new(*w, 0.0)));
        }
        Ok(DensityMatrix { n, entries: acc })
    }
}

/// `Π = ρ(a P_N ã)`, the unnormalized projector onto `ρ(a)|0…0⟩`.
///
/// Call [`DensityMatrix::normalized`] for the unit-trace projector.
pub fn density_from_generator(a: &DenseMultivector) -> Result<DensityMatrix> {
    let n = a.n();
    let p = vacuum(n)?;
    let state = a.gp(&p)?;
    if state.max_abs() <= DEGENERATE_TOLERANCE {
        return Err(Error::DegenerateState);
    }
    let projector = state.gp(&a.reverse())?;
    DensityMatrix::new(n, rho_matrix(&projector)?)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvolutionCheck {
    pub passed: bool,
    pub max_deviation: f64,
}

/// Compares the two routes for evolving `Π_x` by the gate `a`:
/// conjugation `ρ(a) Π_x ρ(a)†` against `ρ((ax) P_N (ax)~)`.
pub fn conjugate_evolution_check(a: &DenseMultivector, x: &DenseMultivector) -> Result<EvolutionCheck> {
    let n = a.n();
    let p = vacuum(n)?;
    let rho_a = rho_matrix(a)?;
    let pi_x = rho_matrix(&x.gp(&p)?.gp(&x.reverse())?)?;
    let heisenberg = rho_a.mul(&pi_x).mul(&rho_a.adjoint());
    let ax = a.gp(x)?;
    let schrodinger = rho_matrix(&ax.gp(&p)?.gp(&ax.reverse())?)?;
    let max_deviation = heisenberg.max_abs_diff(&schrodinger);
    Ok(EvolutionCheck {
        passed: max_deviation <= EVOLUTION_TOLERANCE,
        max_deviation,
    })
}

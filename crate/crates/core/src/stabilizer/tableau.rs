use alloc::vec::Vec;
use core::fmt;

use rand_core::RngCore;
use thiserror::Error;

use super::GateOp;
use crate::error::{Error, Result};
use crate::tensor::{PauliLetter, PauliString};

/// Outcome of a Z-basis measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Measurement {
    pub outcome: bool,
    /// `false` when the outcome was drawn from the random stream.
    pub deterministic: bool,
}

/// A broken tableau invariant.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TableauViolation {
    #[error("row {row} has non-Hermitian phase i^{phase}")]
    Phase { row: usize, phase: u8 },
    #[error("rows {a} and {b} should {} but do not", if *.expect_commute { "commute" } else { "anticommute" })]
    Commutation {
        a: usize,
        b: usize,
        expect_commute: bool,
    },
    #[error("generators have GF(2) rank {rank}, expected {expected}")]
    Rank { rank: usize, expected: usize },
}

/// Destabilizer/stabilizer tableau of an `n`-qubit stabilizer state.
///
/// Rows `0..n` are destabilizers and rows `n..2n` stabilizers. Each row is a
/// Hermitian [`PauliString`] (phase exponent 0 or 2). A gate conjugates every
/// row by flipping a few bits in one or two columns, so its cost is one word
/// operation per row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    n: usize,
    rows: Vec<PauliString>,
}

impl Tableau {
    /// `|0…0⟩`: stabilizers `Z_j`, destabilizers `X_j`.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroQubits);
        }
        let mut rows = Vec::with_capacity(2 * n);
        for j in 0..n {
            rows.push(PauliString::single(n, j, PauliLetter::X)?);
        }
        for j in 0..n {
            rows.push(PauliString::single(n, j, PauliLetter::Z)?);
        }
        Ok(Tableau { n, rows })
    }

    /// Builds a tableau from `2n` rows of `n` qubits each. Only the shape is
    /// checked; see [`check_invariants`](Self::check_invariants).
    pub fn from_rows(rows: Vec<PauliString>) -> Result<Self> {
        let n = rows.len() / 2;
        if n == 0 {
            return Err(Error::ZeroQubits);
        }
        if rows.len() != 2 * n {
            return Err(Error::DimensionMismatch { left: 2 * n, right: rows.len() });
        }
        if let Some(r) = rows.iter().find(|r| r.n() != n) {
            return Err(Error::DimensionMismatch { left: n, right: r.n() });
        }
        Ok(Tableau { n, rows })
    }

    pub fn into_rows(self) -> Vec<PauliString> {
        self.rows
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[PauliString] {
        &self.rows
    }

    pub fn destabilizers(&self) -> &[PauliString] {
        &self.rows[..self.n]
    }

    pub fn stabilizers(&self) -> &[PauliString] {
        &self.rows[self.n..]
    }

    #[cfg(test)]
    pub(crate) fn rows_mut(&mut self) -> &mut [PauliString] {
        &mut self.rows
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::QubitOutOfRange { qubit: q, n: self.n });
        }
        Ok(())
    }

    /// Conjugates every row by a unitary gate. Measurements are rejected; use
    /// [`measure_z`](Self::measure_z) or [`apply`](Self::apply).
    pub fn apply_gate(&mut self, gate: &GateOp) -> Result<()> {
        gate.validate(self.n)?;
        match *gate {
            GateOp::H(q) => self.h(q),
            GateOp::S(q) => self.s(q),
            GateOp::Sdg(q) => self.sdg(q),
            GateOp::X(q) => self.update_column(q, |x, z| (x, z, z)),
            GateOp::Z(q) => self.update_column(q, |x, z| (x, z, x)),
            GateOp::Y(q) => self.update_column(q, |x, z| (x, z, x ^ z)),
            GateOp::Cnot { control, target } => self.cnot(control, target),
            GateOp::Cz(a, b) => {
                self.h(b);
                self.cnot(a, b);
                self.h(b);
            }
            GateOp::Swap(a, b) => {
                self.cnot(a, b);
                self.cnot(b, a);
                self.cnot(a, b);
            }
            GateOp::Measure { .. } => return Err(Error::NotUnitary),
        }
        Ok(())
    }

    /// Applies a gate or performs a measurement.
    pub fn apply<R: RngCore + ?Sized>(&mut self, op: &GateOp, rng: &mut R) -> Result<Option<Measurement>> {
        match *op {
            GateOp::Measure { qubit, .. } => self.measure_z(qubit, rng).map(Some),
            _ => self.apply_gate(op).map(|()| None),
        }
    }

    /// Rewrites bit `q` of every row: `f(x, z) -> (x', z', flip_sign)`.
    #[inline]
    fn update_column(&mut self, q: usize, f: impl Fn(bool, bool) -> (bool, bool, bool)) {
        for row in &mut self.rows {
            let (x, z) = (row.x_bit(q), row.z_bit(q));
            let (nx, nz, flip) = f(x, z);
            row.set_x_bit(q, nx);
            row.set_z_bit(q, nz);
            if flip {
                row.set_phase(row.phase() ^ 2);
            }
        }
    }

    fn h(&mut self, q: usize) {
        self.update_column(q, |x, z| (z, x, x & z));
    }

    fn s(&mut self, q: usize) {
        self.update_column(q, |x, z| (x, z ^ x, x & z));
    }

    fn sdg(&mut self, q: usize) {
        self.update_column(q, |x, z| (x, z ^ x, x & !z));
    }

    fn cnot(&mut self, c: usize, t: usize) {
        for row in &mut self.rows {
            let (xc, zc, xt, zt) = (row.x_bit(c), row.z_bit(c), row.x_bit(t), row.z_bit(t));
            if xc & zt & !(xt ^ zc) {
                row.set_phase(row.phase() ^ 2);
            }
            row.set_x_bit(t, xt ^ xc);
            row.set_z_bit(c, zc ^ zt);
        }
    }

    /// Measures `Z_q`.
    ///
    /// If a stabilizer anticommutes with `Z_q` the outcome is one bit from
    /// `rng`; the first such stabilizer (by row index) is multiplied into
    /// every other anticommuting row, moved to the paired destabilizer slot,
    /// and replaced by `±Z_q`. Otherwise the outcome is the sign of the
    /// product of stabilizers selected by the destabilizers that anticommute
    /// with `Z_q`, and the tableau is unchanged.
    pub fn measure_z<R: RngCore + ?Sized>(&mut self, q: usize, rng: &mut R) -> Result<Measurement> {
        self.check_qubit(q)?;
        let n = self.n;
        let pivot = (n..2 * n).find(|&i| self.rows[i].x_bit(q));
        match pivot {
            Some(p) => {
                let pivot_row = self.rows[p].clone();
                for i in 0..2 * n {
                    if i != p && i != p - n && self.rows[i].x_bit(q) {
                        self.rows[i].mul_assign(&pivot_row)?;
                    }
                }
                let outcome = rng.next_u32() & 1 == 1;
                let mut z = PauliString::single(n, q, PauliLetter::Z)?;
                if outcome {
                    z.set_phase(2);
                }
                self.rows[p - n] = pivot_row;
                self.rows[p] = z;
                Ok(Measurement {
                    outcome,
                    deterministic: false,
                })
            }
            None => {
                let mut acc = PauliString::identity(n);
                for i in 0..n {
                    if self.rows[i].x_bit(q) {
                        acc.mul_assign(&self.rows[i + n])?;
                    }
                }
                if !acc.is_hermitian() {
                    return Err(Error::InconsistentTableau("stabilizer product is not Hermitian"));
                }
                Ok(Measurement {
                    outcome: acc.is_negative(),
                    deterministic: true,
                })
            }
        }
    }

    /// `⟨ψ|p|ψ⟩` for a Hermitian Pauli string: `±1` when `±p` is in the
    /// stabilizer group, `0` when `p` anticommutes with a stabilizer.
    pub fn expectation(&self, p: &PauliString) -> Result<i8> {
        if p.n() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: p.n(),
            });
        }
        if !p.is_hermitian() {
            return Err(Error::OddPhase(p.phase()));
        }
        for s in self.stabilizers() {
            if !s.commutes_with(p)? {
                return Ok(0);
            }
        }
        // p commutes with the whole group, so p = ±∏ s_i over the stabilizers
        // whose paired destabilizer anticommutes with p.
        let mut acc = PauliString::identity(self.n);
        for i in 0..self.n {
            if !self.rows[i].commutes_with(p)? {
                acc.mul_assign(&self.rows[i + self.n])?;
            }
        }
        if acc.x_words() != p.x_words() || acc.z_words() != p.z_words() {
            return Err(Error::InconsistentTableau("string commutes with every stabilizer but is not generated by them"));
        }
        Ok(if acc.phase() == p.phase() { 1 } else { -1 })
    }

    /// Checks Hermitian rows, the commutation pattern, and full GF(2) rank.
    pub fn check_invariants(&self) -> core::result::Result<(), TableauViolation> {
        let n = self.n;
        for (row, r) in self.rows.iter().enumerate() {
            if !r.is_hermitian() {
                return Err(TableauViolation::Phase {
                    row,
                    phase: r.phase(),
                });
            }
        }
        for a in 0..2 * n {
            for b in a + 1..2 * n {
                let expect_commute = !(b == a + n && a < n);
                let commute = self.rows[a].commutes_with(&self.rows[b]).unwrap_or(false);
                if commute != expect_commute {
                    return Err(TableauViolation::Commutation { a, b, expect_commute });
                }
            }
        }
        let rank = self.gf2_rank();
        if rank != 2 * n {
            return Err(TableauViolation::Rank {
                rank,
                expected: 2 * n,
            });
        }
        Ok(())
    }

    fn gf2_rank(&self) -> usize {
        let mut rows: Vec<Vec<u64>> = self
            .rows
            .iter()
            .map(|r| r.x_words().iter().chain(r.z_words()).copied().collect())
            .collect();
        let words = self.rows[0].x_words().len();
        let mut rank = 0;
        for col in 0..2 * self.n {
            // column index in the concatenated [x | z] layout
            let (w, b) = if col < self.n {
                (col / 64, col % 64)
            } else {
                (words + (col - self.n) / 64, (col - self.n) % 64)
            };
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] >> b & 1 == 1) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pr = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[w] >> b & 1 == 1 {
                    for (x, y) in row.iter_mut().zip(&pr) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

impl fmt::Display for Tableau {
    /// One stabilizer per line with an explicit sign, e.g. `+XX`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.stabilizers() {
            writeln!(f, "{}", s.to_signed_text())?;
        }
        Ok(())
    }
}

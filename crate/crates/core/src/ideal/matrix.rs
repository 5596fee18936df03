use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `2^n` complex amplitudes; index bit `k` is qubit `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(n: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                left: 1 << n,
                right: amplitudes.len(),
            });
        }
        Ok(StateVector { n, amplitudes })
    }

    /// `|b⟩` for the bitstring whose bit `k` is qubit `k`.
    pub fn basis(n: usize, b: usize) -> Self {
        let mut amplitudes = vec![ZERO; 1 << n];
        amplitudes[b] = ONE;
        StateVector { n, amplitudes }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_sqr())
    }

    /// Unit-norm copy; the zero vector is returned unchanged.
    pub fn normalized(&self) -> StateVector {
        let norm = self.norm();
        if norm == 0.0 {
            return self.clone();
        }
        self.scale(Complex64::new(1.0 / norm, 0.0))
    }

    pub fn scale(&self, s: Complex64) -> StateVector {
        StateVector {
            n: self.n,
            amplitudes: self.amplitudes.iter().map(|a| a * s).collect(),
        }
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Probability that measuring `qubit` gives 1, relative to the full norm.
    pub fn probability_one(&self, qubit: usize) -> f64 {
        let total = self.norm_sqr();
        if total == 0.0 {
            return 0.0;
        }
        let ones: f64 = self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(b, _)| b >> qubit & 1 == 1)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        ones / total
    }

    /// Entrywise `∞`-norm of the difference.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        let worst = self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .fold(0.0, f64::max);
        libm::sqrt(worst)
    }
}

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let dim = rows.len();
        let mut m = CMatrix::zeros(dim);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), dim, "matrix must be square");
            m.data[i * dim..(i + 1) * dim].copy_from_slice(r);
        }
        m
    }

    pub fn from_real(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        let mut m = CMatrix::zeros(dim);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), dim, "matrix must be square");
            for (j, &v) in r.iter().enumerate() {
                m[(i, j)] = Complex64::new(v, 0.0);
            }
        }
        m
    }

    /// Matrix whose column `j` is `cols[j]`.
    pub fn from_columns(cols: &[StateVector]) -> Self {
        let dim = cols.len();
        let mut m = CMatrix::zeros(dim);
        for (j, c) in cols.iter().enumerate() {
            for (i, a) in c.amplitudes().iter().enumerate() {
                m[(i, j)] = *a;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.data.chunks(self.dim.max(1))
    }

    pub fn mul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        let d = self.dim;
        let mut out = CMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * rhs.data[k * d + j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &StateVector) -> StateVector {
        assert_eq!(self.dim, v.amplitudes.len());
        let amplitudes = self
            .rows()
            .map(|row| row.iter().zip(&v.amplitudes).map(|(a, b)| a * b).sum())
            .collect();
        StateVector {
            n: v.n,
            amplitudes,
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        let d = self.dim;
        let mut out = CMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn add(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn kron(&self, rhs: &CMatrix) -> CMatrix {
        let (da, db) = (self.dim, rhs.dim);
        let mut out = CMatrix::zeros(da * db);
        for i in 0..da {
            for j in 0..da {
                let a = self[(i, j)];
                for k in 0..db {
                    for l in 0..db {
                        out[(i * db + k, j * db + l)] = a * rhs[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Entrywise `∞`-norm of the difference (modulus of complex entries).
    pub fn max_abs_diff(&self, rhs: &CMatrix) -> f64 {
        if self.dim != rhs.dim {
            return f64::INFINITY;
        }
        libm::sqrt(
            self.data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| (a - b).norm_sqr())
                .fold(0.0, f64::max),
        )
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

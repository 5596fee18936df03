use alloc::vec;
use alloc::vec::Vec;

use super::BladeString;
use crate::blade::{BladeIndex, Multivector2};
use crate::error::{Error, Result};

/// Qubit bound for dense `4^n` representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimit {
    max_qubits: usize,
}

impl OracleLimit {
    /// Largest qubit count any dense value may have (`16^7` term pairs per product).
    pub const HARD_CAP: usize = 7;
    pub const DEFAULT: usize = 5;

    pub fn new(max_qubits: usize) -> Result<Self> {
        if max_qubits > Self::HARD_CAP {
            return Err(Error::Capacity {
                qubits: max_qubits,
                limit: Self::HARD_CAP,
            });
        }
        Ok(OracleLimit { max_qubits })
    }

    pub fn hard() -> Self {
        OracleLimit {
            max_qubits: Self::HARD_CAP,
        }
    }

    pub fn max_qubits(&self) -> usize {
        self.max_qubits
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if n > self.max_qubits {
            return Err(Error::Capacity {
                qubits: n,
                limit: self.max_qubits,
            });
        }
        Ok(())
    }
}

impl Default for OracleLimit {
    fn default() -> Self {
        OracleLimit {
            max_qubits: Self::DEFAULT,
        }
    }
}

const E1_BITS: usize = 0x5555_5555_5555_5555u64 as usize;

/// Sign of the product of two basis blades given by packed indices.
///
/// Qubit `k` occupies bits `2k` (e1) and `2k+1` (e2). A qubit contributes a
/// minus sign when the left factor has `e2` and the right factor has `e1`.
#[inline]
pub(crate) fn index_product_negative(i: usize, j: usize) -> bool {
    ((i >> 1) & j & E1_BITS).count_ones() & 1 == 1
}

/// A general element of `Cl(2,0)^⊗n`, stored as `4^n` coefficients.
///
/// Coefficient `c[i]` belongs to the blade whose code on qubit `k` is
/// `(i >> 2k) & 3`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMultivector {
    n: usize,
    c: Vec<f64>,
}

impl DenseMultivector {
    pub fn zeros(n: usize) -> Result<Self> {
        OracleLimit::hard().check(n)?;
        Ok(DenseMultivector {
            n,
            c: vec![0.0; 1 << (2 * n)],
        })
    }

    pub fn scalar(n: usize, v: f64) -> Result<Self> {
        let mut d = DenseMultivector::zeros(n)?;
        d.c[0] = v;
        Ok(d)
    }

    pub fn one(n: usize) -> Result<Self> {
        DenseMultivector::scalar(n, 1.0)
    }

    pub fn from_coeffs(n: usize, c: Vec<f64>) -> Result<Self> {
        OracleLimit::hard().check(n)?;
        if c.len() != 1 << (2 * n) {
            return Err(Error::DimensionMismatch {
                left: 1 << (2 * n),
                right: c.len(),
            });
        }
        Ok(DenseMultivector { n, c })
    }

    pub fn from_multivector2(x: &Multivector2) -> Self {
        DenseMultivector { n: 1, c: x.c.to_vec() }
    }

    pub fn from_blade_string(b: &BladeString) -> Result<Self> {
        let mut d = DenseMultivector::zeros(b.n())?;
        let idx = blade_string_index(b);
        d.c[idx] = f64::from(b.sign());
        Ok(d)
    }

    /// `x` placed on `qubit`, identity on every other factor.
    pub fn local(n: usize, qubit: usize, x: &Multivector2) -> Result<Self> {
        if qubit >= n {
            return Err(Error::QubitOutOfRange { qubit, n });
        }
        let mut d = DenseMultivector::zeros(n)?;
        for (code, &v) in x.c.iter().enumerate() {
            d.c[code << (2 * qubit)] = v;
        }
        Ok(d)
    }

    /// Unit blade on `qubit`.
    pub fn local_blade(n: usize, qubit: usize, b: BladeIndex) -> Result<Self> {
        DenseMultivector::local(n, qubit, &Multivector2::blade(b))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.c
    }

    pub fn coeff(&self, b: &BladeString) -> f64 {
        f64::from(b.sign()) * self.c[blade_string_index(b)]
    }

    /// Number of nonzero coefficients.
    pub fn nnz(&self) -> usize {
        self.c.iter().filter(|v| **v != 0.0).count()
    }

    /// Nonzero terms as signed blade strings with their coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (BladeString, f64)> + '_ {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, &v)| (index_to_blade_string(self.n, i), v))
    }

    fn check_n(&self, rhs: &DenseMultivector) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: rhs.n,
            });
        }
        Ok(())
    }

    /// Geometric product over all pairs of nonzero terms.
    pub fn gp(&self, rhs: &DenseMultivector) -> Result<DenseMultivector> {
        self.check_n(rhs)?;
        let right: Vec<(usize, f64)> = rhs
            .c
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(j, &v)| (j, v))
            .collect();
        let mut out = vec![0.0; self.c.len()];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for &(j, b) in &right {
                let t = a * b;
                if index_product_negative(i, j) {
                    out[i ^ j] -= t;
                } else {
                    out[i ^ j] += t;
                }
            }
        }
        Ok(DenseMultivector { n: self.n, c: out })
    }

    /// [`gp`](Self::gp) with an explicit qubit bound.
    pub fn gp_within(&self, rhs: &DenseMultivector, limit: &OracleLimit) -> Result<DenseMultivector> {
        limit.check(self.n)?;
        self.gp(rhs)
    }

    /// Tensor product; `self` occupies the low qubits of the result.
    pub fn tensor(&self, rhs: &DenseMultivector) -> Result<DenseMultivector> {
        let mut out = DenseMultivector::zeros(self.n + rhs.n)?;
        let shift = 2 * self.n;
        for (j, &b) in rhs.c.iter().enumerate() {
            if b == 0.0 {
                continue;
            }
            for (i, &a) in self.c.iter().enumerate() {
                out.c[i | j << shift] = a * b;
            }
        }
        Ok(out)
    }

    /// Per-factor reversion: a term flips sign once per local `e12`.
    pub fn reverse(&self) -> DenseMultivector {
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let bivectors = (i & (i >> 1) & E1_BITS).count_ones();
                if bivectors % 2 == 1 {
                    -v
                } else {
                    v
                }
            })
            .collect();
        DenseMultivector { n: self.n, c }
    }

    pub fn add(&self, rhs: &DenseMultivector) -> Result<DenseMultivector> {
        self.check_n(rhs)?;
        let c = self.c.iter().zip(&rhs.c).map(|(a, b)| a + b).collect();
        Ok(DenseMultivector { n: self.n, c })
    }

    pub fn sub(&self, rhs: &DenseMultivector) -> Result<DenseMultivector> {
        self.check_n(rhs)?;
        let c = self.c.iter().zip(&rhs.c).map(|(a, b)| a - b).collect();
        Ok(DenseMultivector { n: self.n, c })
    }

    pub fn scale(&self, s: f64) -> DenseMultivector {
        DenseMultivector {
            n: self.n,
            c: self.c.iter().map(|v| v * s).collect(),
        }
    }

    /// `∞`-norm of the difference; `∞` when the qubit counts differ.
    pub fn max_abs_diff(&self, rhs: &DenseMultivector) -> f64 {
        if self.n != rhs.n {
            return f64::INFINITY;
        }
        self.c
            .iter()
            .zip(&rhs.c)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }
}

pub(crate) fn blade_string_index(b: &BladeString) -> usize {
    b.codes()
        .iter()
        .enumerate()
        .fold(0, |acc, (k, code)| acc | (code.code() as usize) << (2 * k))
}

pub(crate) fn index_to_blade_string(n: usize, i: usize) -> BladeString {
    let codes = (0..n)
        .map(|k| BladeIndex::from_bits((i >> (2 * k)) as u8))
        .collect();
    BladeString::new(codes, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blade::idempotent_p;
    use proptest::prelude::*;

    fn random_blade_string(n: usize) -> impl Strategy<Value = BladeString> {
        (prop::collection::vec(0u8..4, n), any::<bool>()).prop_map(|(codes, neg)| {
            BladeString::new(codes.into_iter().map(BladeIndex::from_bits).collect(), neg)
        })
    }

    fn random_dense(n: usize) -> impl Strategy<Value = DenseMultivector> {
        prop::collection::vec(-1.0f64..1.0, 1 << (2 * n))
            .prop_map(move |c| DenseMultivector::from_coeffs(n, c).unwrap())
    }

    #[test]
    fn sign_rule_matches_blade_table() {
        for a in 0..4 {
            for b in 0..4 {
                let table = crate::blade::blade_mul(BladeIndex::from_bits(a), BladeIndex::from_bits(b));
                assert_eq!(table.negative, index_product_negative(a as usize, b as usize));
            }
        }
    }

    #[test]
    fn tensor_of_idempotents() {
        let p = DenseMultivector::from_multivector2(&idempotent_p());
        let p2 = p.tensor(&p).unwrap();
        // 1, e1(0), e1(1), e1(0)e1(1) at indices 0, 1, 4, 5
        for i in 0..16 {
            let expect = if [0, 1, 4, 5].contains(&i) { 0.25 } else { 0.0 };
            assert_eq!(p2.coeffs()[i], expect, "index {i}");
        }
        assert_eq!(p2.gp(&p2).unwrap(), p2);
    }

    #[test]
    fn identity_and_embedding() {
        let x = DenseMultivector::from_multivector2(&Multivector2::new(0.3, -1.0, 2.0, 0.5));
        let one = DenseMultivector::one(1).unwrap();
        assert_eq!(x.gp(&one).unwrap(), x);
        let embedded = x.tensor(&one).unwrap();
        assert_eq!(embedded, DenseMultivector::local(2, 0, &Multivector2::new(0.3, -1.0, 2.0, 0.5)).unwrap());
    }

    #[test]
    fn capacity_and_dimension_errors() {
        assert_eq!(
            DenseMultivector::zeros(8),
            Err(Error::Capacity { qubits: 8, limit: 7 })
        );
        let a = DenseMultivector::one(6).unwrap();
        assert_eq!(
            a.gp_within(&a, &OracleLimit::default()),
            Err(Error::Capacity { qubits: 6, limit: 5 })
        );
        assert!(OracleLimit::new(8).is_err());
        let b = DenseMultivector::one(2).unwrap();
        assert!(matches!(a.gp(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn reverse_of_bivector_strings() {
        let s = BladeString::new(vec![BladeIndex::E12, BladeIndex::E12], false);
        let d = DenseMultivector::from_blade_string(&s).unwrap();
        assert_eq!(d.reverse(), d);
        let s = BladeString::new(vec![BladeIndex::E12, BladeIndex::E1], false);
        let d = DenseMultivector::from_blade_string(&s).unwrap();
        assert_eq!(d.reverse(), d.scale(-1.0));
    }

    proptest! {
        #[test]
        fn string_mul_matches_dense(
            (a, b) in (1usize..=3).prop_flat_map(|n| (random_blade_string(n), random_blade_string(n)))
        ) {
            let prod = a.mul(&b).unwrap();
            let dense = DenseMultivector::from_blade_string(&a).unwrap()
                .gp(&DenseMultivector::from_blade_string(&b).unwrap()).unwrap();
            prop_assert_eq!(dense, DenseMultivector::from_blade_string(&prod).unwrap());
        }

        #[test]
        fn reverse_matches_string_reverse(a in (1usize..=4).prop_flat_map(random_blade_string)) {
            let d = DenseMultivector::from_blade_string(&a).unwrap();
            prop_assert_eq!(d.reverse(), DenseMultivector::from_blade_string(&a.reverse()).unwrap());
        }

        #[test]
        fn dense_gp_is_associative(
            (a, b, c) in (1usize..=2).prop_flat_map(|n| (random_dense(n), random_dense(n), random_dense(n)))
        ) {
            let l = a.gp(&b).unwrap().gp(&c).unwrap();
            let r = a.gp(&b.gp(&c).unwrap()).unwrap();
            prop_assert!(l.max_abs_diff(&r) <= 1e-12);
        }

        #[test]
        fn dense_reverse_is_anti_automorphism(
            (a, b) in (1usize..=2).prop_flat_map(|n| (random_dense(n), random_dense(n)))
        ) {
            let l = a.gp(&b).unwrap().reverse();
            let r = b.reverse().gp(&a.reverse()).unwrap();
            prop_assert!(l.max_abs_diff(&r) <= 1e-12);
        }

        #[test]
        fn tensor_is_associative(a in random_dense(1), b in random_dense(1), c in random_dense(1)) {
            let l = a.tensor(&b).unwrap().tensor(&c).unwrap();
            let r = a.tensor(&b.tensor(&c).unwrap()).unwrap();
            prop_assert!(l.max_abs_diff(&r) <= 1e-15);
        }

        #[test]
        fn tensor_is_multiplicative(a in random_dense(1), b in random_dense(1),
                                    c in random_dense(1), d in random_dense(1)) {
            // (a⊗b)(c⊗d) = ac ⊗ bd with commuting factors
            let l = a.tensor(&b).unwrap().gp(&c.tensor(&d).unwrap()).unwrap();
            let r = a.gp(&c).unwrap().tensor(&b.gp(&d).unwrap()).unwrap();
            prop_assert!(l.max_abs_diff(&r) <= 1e-12);
        }
    }
}

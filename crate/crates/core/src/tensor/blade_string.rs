use alloc::vec::Vec;
use core::fmt;

use crate::blade::{blade_mul, BladeIndex, SignedBlade};
use crate::error::{Error, Result};

/// A signed simple tensor `± b_0 ⊗ b_1 ⊗ … ⊗ b_{n-1}` of unit blades.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BladeString {
    codes: Vec<BladeIndex>,
    negative: bool,
}

impl BladeString {
    pub fn new(codes: Vec<BladeIndex>, negative: bool) -> Self {
        BladeString { codes, negative }
    }

    pub fn identity(n: usize) -> Self {
        BladeString::new(alloc::vec![BladeIndex::SCALAR; n], false)
    }

    /// The local copy of `blade` on `qubit`, identity elsewhere.
    pub fn local(n: usize, qubit: usize, blade: BladeIndex) -> Result<Self> {
        if qubit >= n {
            return Err(Error::QubitOutOfRange { qubit, n });
        }
        let mut s = BladeString::identity(n);
        s.codes[qubit] = blade;
        Ok(s)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.codes.len()
    }

    pub fn codes(&self) -> &[BladeIndex] {
        &self.codes
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn negate(&self) -> Self {
        BladeString::new(self.codes.clone(), !self.negative)
    }

    /// Local product: one table lookup per qubit, local signs folded into the global sign.
    pub fn mul(&self, rhs: &BladeString) -> Result<BladeString> {
        if self.n() != rhs.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: rhs.n(),
            });
        }
        let mut negative = self.negative ^ rhs.negative;
        let codes = self
            .codes
            .iter()
            .zip(&rhs.codes)
            .map(|(&a, &b)| {
                let SignedBlade { negative: s, blade } = blade_mul(a, b);
                negative ^= s;
                blade
            })
            .collect();
        Ok(BladeString { codes, negative })
    }

    /// Reversion applied per factor: each local `e12` flips the sign.
    pub fn reverse(&self) -> BladeString {
        let flips = self.codes.iter().filter(|b| **b == BladeIndex::E12).count();
        BladeString::new(self.codes.clone(), self.negative ^ (flips % 2 == 1))
    }

    /// Number of local bivector factors.
    pub fn bivector_count(&self) -> usize {
        self.codes.iter().filter(|b| **b == BladeIndex::E12).count()
    }
}

impl fmt::Display for BladeString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.negative { "-" } else { "+" })?;
        for (i, b) in self.codes.iter().enumerate() {
            if i > 0 {
                f.write_str("⊗")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn s(codes: &[u8], negative: bool) -> BladeString {
        BladeString::new(
            codes.iter().map(|&c| BladeIndex::new(c).unwrap()).collect(),
            negative,
        )
    }

    #[test]
    fn per_factor_products() {
        // (e1 ⊗ 1)(e2 ⊗ e2) = e12 ⊗ e2
        assert_eq!(s(&[1, 0], false).mul(&s(&[2, 2], false)).unwrap(), s(&[3, 2], false));
        // (e2 ⊗ 1)(e1 ⊗ 1) = -e12 ⊗ 1
        assert_eq!(s(&[2, 0], false).mul(&s(&[1, 0], false)).unwrap(), s(&[3, 0], true));
    }

    #[test]
    fn mismatched_lengths() {
        assert_eq!(
            s(&[1], false).mul(&s(&[1, 1], false)),
            Err(Error::DimensionMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn reversal_signs() {
        assert_eq!(s(&[3, 3], false).reverse(), s(&[3, 3], false));
        assert_eq!(s(&[3, 1], false).reverse(), s(&[3, 1], true));
    }

    #[test]
    fn local_embedding() {
        let e = BladeString::local(3, 1, BladeIndex::E2).unwrap();
        assert_eq!(e.codes(), &vec![BladeIndex::SCALAR, BladeIndex::E2, BladeIndex::SCALAR][..]);
        assert!(BladeString::local(3, 3, BladeIndex::E2).is_err());
        assert_eq!(alloc::format!("{}", s(&[3, 0, 2], true)), "-e12⊗1⊗e2");
    }
}

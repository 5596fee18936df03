//! The four-dimensional real algebra Cl(2,0).
//!
//! Basis blades are encoded as two-bit codes: bit 0 marks `e1`, bit 1 marks
//! `e2`. The code of a product of blades is the XOR of the factor codes, and
//! the grade of a blade is the popcount of its code. This is the same bit
//! layout the symplectic Pauli representation uses downstream (`e1` is the
//! z-bit, `e2` is the x-bit).

use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// One of the four unit blades `1, e1, e2, e12`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BladeIndex(u8);

impl BladeIndex {
    pub const SCALAR: BladeIndex = BladeIndex(0);
    pub const E1: BladeIndex = BladeIndex(1);
    pub const E2: BladeIndex = BladeIndex(2);
    pub const E12: BladeIndex = BladeIndex(3);

    pub const ALL: [BladeIndex; 4] = [Self::SCALAR, Self::E1, Self::E2, Self::E12];

    /// Returns `None` for codes outside `0..4`.
    pub const fn new(code: u8) -> Option<Self> {
        if code < 4 {
            Some(BladeIndex(code))
        } else {
            None
        }
    }

    /// Masks the code to its low two bits.
    #[inline]
    pub const fn from_bits(code: u8) -> Self {
        BladeIndex(code & 3)
    }

    #[inline]
    pub const fn code(self) -> u8 {
        self.0
    }

    #[inline]
    pub const fn grade(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub const fn has_e1(self) -> bool {
        self.0 & 1 != 0
    }

    #[inline]
    pub const fn has_e2(self) -> bool {
        self.0 & 2 != 0
    }
}

impl fmt::Display for BladeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "1",
            1 => "e1",
            2 => "e2",
            _ => "e12",
        })
    }
}

/// An element of the eight-element group `{±1, ±e1, ±e2, ±e12}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedBlade {
    pub negative: bool,
    pub blade: BladeIndex,
}

impl SignedBlade {
    pub const ONE: SignedBlade = SignedBlade::positive(BladeIndex::SCALAR);

    pub const fn positive(blade: BladeIndex) -> Self {
        SignedBlade {
            negative: false,
            blade,
        }
    }

    pub const fn negated(blade: BladeIndex) -> Self {
        SignedBlade {
            negative: true,
            blade,
        }
    }

    /// `+1` or `-1`.
    pub const fn sign(self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    /// All eight group elements, positive ones first.
    pub fn group() -> [SignedBlade; 8] {
        let mut out = [SignedBlade::ONE; 8];
        for (i, b) in BladeIndex::ALL.iter().enumerate() {
            out[i] = SignedBlade::positive(*b);
            out[i + 4] = SignedBlade::negated(*b);
        }
        out
    }

    pub fn to_multivector(self) -> Multivector2 {
        let mut c = [0.0; 4];
        c[self.blade.code() as usize] = if self.negative { -1.0 } else { 1.0 };
        Multivector2 { c }
    }
}

impl Mul for SignedBlade {
    type Output = SignedBlade;

    fn mul(self, rhs: SignedBlade) -> SignedBlade {
        let p = blade_mul(self.blade, rhs.blade);
        SignedBlade {
            negative: p.negative ^ self.negative ^ rhs.negative,
            blade: p.blade,
        }
    }
}

impl fmt::Display for SignedBlade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.negative { "-" } else { "+" }, self.blade)
    }
}

/// Sign of the product `a * b` of two unit blades, indexed by `a.code() * 4 + b.code()`.
///
/// The only reordering needed is moving an `e1` of `b` past an `e2` of `a`,
/// so the product is negative exactly when `a` carries `e2` and `b` carries `e1`.
const PRODUCT_NEGATIVE: [bool; 16] = {
    let mut t = [false; 16];
    let mut a = 0;
    while a < 4 {
        let mut b = 0;
        while b < 4 {
            t[a * 4 + b] = (a & 2 != 0) && (b & 1 != 0);
            b += 1;
        }
        a += 1;
    }
    t
};

/// Geometric product of two unit blades.
#[inline]
pub fn blade_mul(a: BladeIndex, b: BladeIndex) -> SignedBlade {
    SignedBlade {
        negative: PRODUCT_NEGATIVE[(a.0 as usize) << 2 | b.0 as usize],
        blade: BladeIndex(a.0 ^ b.0),
    }
}

/// A general element `c0 + c1 e1 + c2 e2 + c3 e12` of Cl(2,0).
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Multivector2 {
    pub c: [f64; 4],
}

impl Multivector2 {
    pub const ZERO: Multivector2 = Multivector2 { c: [0.0; 4] };
    pub const ONE: Multivector2 = Multivector2 {
        c: [1.0, 0.0, 0.0, 0.0],
    };
    pub const E1: Multivector2 = Multivector2 {
        c: [0.0, 1.0, 0.0, 0.0],
    };
    pub const E2: Multivector2 = Multivector2 {
        c: [0.0, 0.0, 1.0, 0.0],
    };
    /// The bivector `J = e1 e2`, which squares to `-1`.
    pub const E12: Multivector2 = Multivector2 {
        c: [0.0, 0.0, 0.0, 1.0],
    };

    pub const fn new(c0: f64, c1: f64, c2: f64, c3: f64) -> Self {
        Multivector2 {
            c: [c0, c1, c2, c3],
        }
    }

    pub fn blade(b: BladeIndex) -> Self {
        SignedBlade::positive(b).to_multivector()
    }

    #[inline]
    pub fn coeff(&self, b: BladeIndex) -> f64 {
        self.c[b.code() as usize]
    }

    /// Geometric product, the bilinear extension of [`blade_mul`].
    pub fn gp(&self, rhs: &Multivector2) -> Multivector2 {
        let mut out = [0.0; 4];
        for (i, &x) in self.c.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            for (j, &y) in rhs.c.iter().enumerate() {
                let term = x * y;
                if PRODUCT_NEGATIVE[i << 2 | j] {
                    out[i ^ j] -= term;
                } else {
                    out[i ^ j] += term;
                }
            }
        }
        Multivector2 { c: out }
    }

    /// Grade projection onto `k ∈ {0, 1, 2}`.
    pub fn grade(&self, k: u32) -> Result<Multivector2> {
        if k > 2 {
            return Err(Error::InvalidGrade(k));
        }
        Ok(self.grade_unchecked(k))
    }

    fn grade_unchecked(&self, k: u32) -> Multivector2 {
        let mut c = [0.0; 4];
        for b in BladeIndex::ALL {
            if b.grade() == k {
                c[b.code() as usize] = self.c[b.code() as usize];
            }
        }
        Multivector2 { c }
    }

    /// Reversion: fixes grades 0 and 1, negates the bivector part.
    pub fn reverse(&self) -> Multivector2 {
        Multivector2::new(self.c[0], self.c[1], self.c[2], -self.c[3])
    }

    /// Outer product, extended bilinearly over the grade components of both sides.
    pub fn wedge(&self, rhs: &Multivector2) -> Multivector2 {
        self.graded_product(rhs, |r, s| (r + s <= 2).then_some(r + s))
    }

    /// Inner product `⟨x_r y_s⟩_{|r-s|}`, extended bilinearly.
    pub fn inner(&self, rhs: &Multivector2) -> Multivector2 {
        self.graded_product(rhs, |r, s| Some(r.abs_diff(s)))
    }

    fn graded_product(
        &self,
        rhs: &Multivector2,
        target: impl Fn(u32, u32) -> Option<u32>,
    ) -> Multivector2 {
        let mut out = Multivector2::ZERO;
        for r in 0..=2 {
            let x = self.grade_unchecked(r);
            for s in 0..=2 {
                if let Some(k) = target(r, s) {
                    let y = rhs.grade_unchecked(s);
                    out += x.gp(&y).grade_unchecked(k);
                }
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Multivector2 {
        Multivector2 {
            c: self.c.map(|v| v * s),
        }
    }

    /// Largest absolute coefficient difference.
    pub fn max_abs_diff(&self, other: &Multivector2) -> f64 {
        self.c
            .iter()
            .zip(other.c.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// The primitive idempotent `P = ½(1 + e1)`, the algebraic image of `|0⟩`.
pub const fn idempotent_p() -> Multivector2 {
    Multivector2::new(0.5, 0.5, 0.0, 0.0)
}

impl Add for Multivector2 {
    type Output = Multivector2;
    fn add(self, rhs: Multivector2) -> Multivector2 {
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(rhs.c) {
            *a += b;
        }
        Multivector2 { c }
    }
}

impl AddAssign for Multivector2 {
    fn add_assign(&mut self, rhs: Multivector2) {
        *self = *self + rhs;
    }
}

impl Sub for Multivector2 {
    type Output = Multivector2;
    fn sub(self, rhs: Multivector2) -> Multivector2 {
        self + (-rhs)
    }
}

impl Neg for Multivector2 {
    type Output = Multivector2;
    fn neg(self) -> Multivector2 {
        self.scale(-1.0)
    }
}

impl Mul for Multivector2 {
    type Output = Multivector2;
    fn mul(self, rhs: Multivector2) -> Multivector2 {
        self.gp(&rhs)
    }
}

impl Mul<f64> for Multivector2 {
    type Output = Multivector2;
    fn mul(self, rhs: f64) -> Multivector2 {
        self.scale(rhs)
    }
}

impl From<SignedBlade> for Multivector2 {
    fn from(b: SignedBlade) -> Self {
        b.to_multivector()
    }
}

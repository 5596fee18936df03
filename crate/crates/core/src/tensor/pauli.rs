use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::{words_for, BladeString, WORD_BITS};
use crate::blade::BladeIndex;
use crate::error::{Error, Result};

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    /// `(x, z)` bits: `X = (1,0)`, `Z = (0,1)`, `Y = (1,1)`.
    pub const fn bits(self) -> (bool, bool) {
        match self {
            PauliLetter::I => (false, false),
            PauliLetter::X => (true, false),
            PauliLetter::Y => (true, true),
            PauliLetter::Z => (false, true),
        }
    }

    pub const fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliLetter::I,
            (true, false) => PauliLetter::X,
            (true, true) => PauliLetter::Y,
            (false, true) => PauliLetter::Z,
        }
    }

    pub const fn as_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }
}

/// A phased Pauli word `i^k · L_0 ⊗ L_1 ⊗ … ⊗ L_{n-1}` in symplectic form.
///
/// Letter `j` is read from bit `j` of the x and z masks (`X = (1,0)`,
/// `Z = (0,1)`, `Y = (1,1)`), packed 64 qubits per word. Bits at positions
/// `>= n` in the last word are always zero. The phase exponent `k` multiplies
/// the word with `Y` taken as the Hermitian letter itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: u8,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        let w = words_for(n);
        PauliString {
            n,
            x: vec![0; w],
            z: vec![0; w],
            phase: 0,
        }
    }

    /// `letter` on `qubit`, identity elsewhere.
    pub fn single(n: usize, qubit: usize, letter: PauliLetter) -> Result<Self> {
        let mut p = PauliString::identity(n);
        if qubit >= n {
            return Err(Error::QubitOutOfRange { qubit, n });
        }
        p.set_letter(qubit, letter);
        Ok(p)
    }

    pub fn from_letters(letters: &[PauliLetter], phase: u8) -> Self {
        let mut p = PauliString::identity(letters.len());
        for (q, &l) in letters.iter().enumerate() {
            p.set_letter(q, l);
        }
        p.phase = phase & 3;
        p
    }

    /// Builds from packed masks. Bits beyond `n` are cleared.
    pub fn from_words(n: usize, mut x: Vec<u64>, mut z: Vec<u64>, phase: u8) -> Result<Self> {
        let w = words_for(n);
        if x.len() != w || z.len() != w {
            return Err(Error::DimensionMismatch {
                left: w,
                right: x.len().max(z.len()),
            });
        }
        if let (Some(lx), Some(lz)) = (x.last_mut(), z.last_mut()) {
            let tail = n % WORD_BITS;
            if tail != 0 {
                let mask = (1u64 << tail) - 1;
                *lx &= mask;
                *lz &= mask;
            }
        }
        Ok(PauliString {
            n,
            x,
            z,
            phase: phase & 3,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn set_phase(&mut self, k: u8) {
        self.phase = k & 3;
    }

    pub fn with_phase(mut self, k: u8) -> Self {
        self.set_phase(k);
        self
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    #[inline]
    pub fn x_bit(&self, q: usize) -> bool {
        self.x[q / WORD_BITS] >> (q % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn z_bit(&self, q: usize) -> bool {
        self.z[q / WORD_BITS] >> (q % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub(crate) fn set_x_bit(&mut self, q: usize, v: bool) {
        let (w, b) = (q / WORD_BITS, q % WORD_BITS);
        self.x[w] = (self.x[w] & !(1 << b)) | (u64::from(v) << b);
    }

    #[inline]
    pub(crate) fn set_z_bit(&mut self, q: usize, v: bool) {
        let (w, b) = (q / WORD_BITS, q % WORD_BITS);
        self.z[w] = (self.z[w] & !(1 << b)) | (u64::from(v) << b);
    }

    pub fn letter(&self, q: usize) -> PauliLetter {
        PauliLetter::from_bits(self.x_bit(q), self.z_bit(q))
    }

    pub fn set_letter(&mut self, q: usize, l: PauliLetter) {
        let (x, z) = l.bits();
        self.set_x_bit(q, x);
        self.set_z_bit(q, z);
    }

    pub fn letters(&self) -> impl Iterator<Item = PauliLetter> + '_ {
        (0..self.n).map(|q| self.letter(q))
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    pub fn y_count(&self) -> u32 {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x & z).count_ones())
            .fold(0u32, u32::wrapping_add)
    }

    pub fn is_identity_word(&self) -> bool {
        self.x.iter().chain(&self.z).all(|w| *w == 0)
    }

    /// `true` when the encoded operator is Hermitian (`k` even).
    pub fn is_hermitian(&self) -> bool {
        self.phase & 1 == 0
    }

    /// `±1` sign for Hermitian strings: `true` means `-`.
    pub fn is_negative(&self) -> bool {
        self.phase == 2
    }

    fn check_n(&self, rhs: &PauliString) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: rhs.n,
            });
        }
        Ok(())
    }

    /// Operator product `self · rhs`.
    ///
    /// Each letter is rewritten in Z-then-X order (`Y = -i·ZX`), the local
    /// products are reordered with one sign per qubit where `self` has an X
    /// and `rhs` has a Z, and the result is converted back to letter form.
    /// Everything is XOR and popcount over whole words.
    pub fn mul(&self, rhs: &PauliString) -> Result<PauliString> {
        self.check_n(rhs)?;
        let w = self.x.len();
        let mut x = Vec::with_capacity(w);
        let mut z = Vec::with_capacity(w);
        let mut acc = 0u32;
        for i in 0..w {
            let (ax, az, bx, bz) = (self.x[i], self.z[i], rhs.x[i], rhs.z[i]);
            let (ox, oz) = (ax ^ bx, az ^ bz);
            acc = acc.wrapping_add(pair_phase(ax, az, bx, bz, ox, oz));
            x.push(ox);
            z.push(oz);
        }
        Ok(PauliString {
            n: self.n,
            x,
            z,
            phase: (u32::from(self.phase) + u32::from(rhs.phase) + acc) as u8 & 3,
        })
    }

    /// In-place `self ← self · rhs`.
    pub fn mul_assign(&mut self, rhs: &PauliString) -> Result<()> {
        self.check_n(rhs)?;
        let mut acc = 0u32;
        for i in 0..self.x.len() {
            let (ax, az, bx, bz) = (self.x[i], self.z[i], rhs.x[i], rhs.z[i]);
            let (ox, oz) = (ax ^ bx, az ^ bz);
            acc = acc.wrapping_add(pair_phase(ax, az, bx, bz, ox, oz));
            self.x[i] = ox;
            self.z[i] = oz;
        }
        self.phase = (u32::from(self.phase) + u32::from(rhs.phase) + acc) as u8 & 3;
        Ok(())
    }

    /// Whether the two operators commute (symplectic inner product is zero).
    pub fn commutes_with(&self, other: &PauliString) -> Result<bool> {
        self.check_n(other)?;
        let mut parity = 0u32;
        for i in 0..self.x.len() {
            parity ^= ((self.x[i] & other.z[i]) ^ (self.z[i] & other.x[i])).count_ones();
        }
        Ok(parity & 1 == 0)
    }

    /// Splits into a real signed blade string and a leftover power of `i`.
    ///
    /// Letters map as `I ↦ 1`, `Z ↦ e1`, `X ↦ e2`, `Y ↦ e12`. Since
    /// `e12 = i·Y`, each `Y` contributes a factor `-i`; the total exponent
    /// `(k + 3·#Y) mod 4` is returned with its real part (`0` or `2`) folded
    /// into the string's sign and `0` or `1` left over.
    pub fn to_blade(&self) -> (BladeString, u8) {
        let k = (u32::from(self.phase) + 3 * self.y_count()) as u8 & 3;
        (self.blade_codes(k & 2 == 2), k & 1)
    }

    /// Like [`to_blade`](Self::to_blade) but reports the full residual exponent
    /// and leaves the string unsigned.
    pub fn to_blade_with_residual(&self) -> (BladeString, u8) {
        let k = (u32::from(self.phase) + 3 * self.y_count()) as u8 & 3;
        (self.blade_codes(false), k)
    }

    fn blade_codes(&self, negative: bool) -> BladeString {
        let codes = (0..self.n)
            .map(|q| BladeIndex::from_bits(u8::from(self.z_bit(q)) | u8::from(self.x_bit(q)) << 1))
            .collect();
        BladeString::new(codes, negative)
    }

    /// The Pauli string equal to a signed blade string (`e12 = iY`).
    pub fn from_blade(b: &BladeString) -> Self {
        let mut p = PauliString::identity(b.n());
        for (q, code) in b.codes().iter().enumerate() {
            p.set_z_bit(q, code.has_e1());
            p.set_x_bit(q, code.has_e2());
        }
        let sign = if b.is_negative() { 2 } else { 0 };
        p.phase = (sign + b.bivector_count() as u32 % 4) as u8 & 3;
        p
    }

    /// Text form: phase prefix `""`, `"i"`, `"-"`, `"-i"`, then one letter
    /// per qubit with qubit 0 leftmost.
    pub fn to_text(&self) -> String {
        alloc::format!("{self}")
    }

    /// Text form with an explicit `+` for Hermitian strings (`"+XX"`, `"-ZZ"`).
    pub fn to_signed_text(&self) -> String {
        if self.phase == 0 {
            alloc::format!("+{self}")
        } else {
            self.to_text()
        }
    }
}

/// Phase exponent contributed by one word of a product, before adding the
/// input exponents. `#Y` counts convert letter form to Z-then-X order and back;
/// `x_a & z_b` counts the local swaps `X Z = -Z X`.
#[inline(always)]
fn pair_phase(ax: u64, az: u64, bx: u64, bz: u64, ox: u64, oz: u64) -> u32 {
    let y_in = (ax & az).count_ones() + (bx & bz).count_ones();
    let swaps = (ax & bz).count_ones();
    let y_out = (ox & oz).count_ones();
    3 * y_in + 2 * swaps + y_out
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.phase {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        })?;
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Accepts the [`Display`](fmt::Display) form, plus an optional leading `+`.
    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let mut phase = 0u8;
        match bytes.first() {
            Some(b'-') => {
                phase = 2;
                pos = 1;
            }
            Some(b'+') => pos = 1,
            _ => {}
        }
        if bytes.get(pos) == Some(&b'i') {
            phase += 1;
            pos += 1;
        }
        let body = &bytes[pos..];
        if body.is_empty() {
            return Err(Error::PauliSyntax {
                position: pos,
                message: "expected at least one of I, X, Y, Z",
            });
        }
        let mut p = PauliString::identity(body.len());
        for (q, ch) in body.iter().enumerate() {
            let l = match ch {
                b'I' => PauliLetter::I,
                b'X' => PauliLetter::X,
                b'Y' => PauliLetter::Y,
                b'Z' => PauliLetter::Z,
                _ => {
                    return Err(Error::PauliSyntax {
                        position: pos + q,
                        message: "expected one of I, X, Y, Z",
                    })
                }
            };
            p.set_letter(q, l);
        }
        p.phase = phase;
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn xz_is_minus_i_y() {
        let r = p("X").mul(&p("Z")).unwrap();
        assert_eq!((r.x_bit(0), r.z_bit(0), r.phase()), (true, true, 3));
        assert_eq!(r, p("-iY"));
    }

    #[test]
    fn two_qubit_product() {
        // (X⊗X)(Z⊗Z) = (-iY)⊗(-iY) = -(Y⊗Y)
        assert_eq!(p("XX").mul(&p("ZZ")).unwrap(), p("-YY"));
    }

    #[test]
    fn identity_is_neutral() {
        for s in ["X", "-iY", "iZ", "-I"] {
            assert_eq!(PauliString::identity(1).mul(&p(s)).unwrap(), p(s));
        }
        assert_eq!(
            p("XY").mul(&p("XYZ")),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn blade_conversion_examples() {
        let (b, r) = p("Z").to_blade_with_residual();
        assert_eq!((b.codes()[0], r), (BladeIndex::E1, 0));
        let (b, r) = p("Y").to_blade_with_residual();
        assert_eq!((b.codes()[0], r), (BladeIndex::E12, 3));
        let (b, r) = p("iY").to_blade_with_residual();
        assert_eq!((b.codes()[0], r), (BladeIndex::E12, 0));

        let s = BladeString::new(alloc::vec![BladeIndex::E12, BladeIndex::E1], false);
        let q = PauliString::from_blade(&s);
        assert_eq!(q, p("iYZ"));
        assert_eq!(q.x_words()[0], 0b01);
        assert_eq!(q.z_words()[0], 0b11);
        assert_eq!(q.phase(), 1);
        assert_eq!(PauliString::from_blade(&BladeString::identity(4)), p("IIII"));
    }

    #[test]
    fn text_format() {
        assert_eq!(p("-iXYZ").to_string(), "-iXYZ");
        assert_eq!(p("+XX").to_signed_text(), "+XX");
        assert_eq!(p("-ZZ").to_signed_text(), "-ZZ");
        assert_eq!(p("+iX"), p("iX"));
        assert!(matches!("".parse::<PauliString>(), Err(Error::PauliSyntax { position: 0, .. })));
        assert!(matches!("-i".parse::<PauliString>(), Err(Error::PauliSyntax { position: 2, .. })));
        assert!(matches!("XQ".parse::<PauliString>(), Err(Error::PauliSyntax { position: 1, .. })));
        assert!("ix".parse::<PauliString>().is_err());
    }

    #[test]
    fn multiword_boundaries() {
        let n = 130;
        let mut a = PauliString::identity(n);
        a.set_letter(63, PauliLetter::X);
        a.set_letter(64, PauliLetter::Z);
        a.set_letter(129, PauliLetter::Y);
        let mut b = PauliString::identity(n);
        b.set_letter(63, PauliLetter::Z);
        b.set_letter(129, PauliLetter::Y);
        // X·Z on 63 gives -iY; Z stays on 64; Y·Y = I on 129.
        let c = a.mul(&b).unwrap();
        assert_eq!(c.letter(63), PauliLetter::Y);
        assert_eq!(c.letter(64), PauliLetter::Z);
        assert_eq!(c.letter(129), PauliLetter::I);
        assert_eq!(c.phase(), 3);
        assert_eq!(c.weight(), 2);
        let back: PauliString = c.to_string().parse().unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn from_words_clears_tail() {
        let q = PauliString::from_words(3, alloc::vec![!0], alloc::vec![0], 0).unwrap();
        assert_eq!(q.x_words()[0], 0b111);
        assert!(PauliString::from_words(65, alloc::vec![0], alloc::vec![0], 0).is_err());
    }

    fn arb_pauli(n: usize) -> impl Strategy<Value = PauliString> {
        (prop::collection::vec(0u8..4, n), 0u8..4).prop_map(|(ls, k)| {
            let letters: Vec<_> = ls
                .iter()
                .map(|&c| PauliLetter::from_bits(c & 1 == 1, c & 2 == 2))
                .collect();
            PauliString::from_letters(&letters, k)
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(a in (1usize..80).prop_flat_map(arb_pauli)) {
            prop_assert_eq!(a.to_string().parse::<PauliString>().unwrap(), a);
        }

        #[test]
        fn blade_round_trip(a in (1usize..80).prop_flat_map(arb_pauli)) {
            // a = i^odd · b
            let (b, odd) = a.to_blade();
            let restored = PauliString::from_blade(&b);
            let phase = restored.phase() + odd;
            prop_assert_eq!(restored.with_phase(phase), a);
        }

        #[test]
        fn commutation_matches_phase_difference(
            (a, b) in (1usize..100).prop_flat_map(|n| (arb_pauli(n), arb_pauli(n)))
        ) {
            let ab = a.mul(&b).unwrap();
            let ba = b.mul(&a).unwrap();
            prop_assert_eq!(ab.x_words(), ba.x_words());
            prop_assert_eq!(ab.z_words(), ba.z_words());
            let diff = (ab.phase() + 4 - ba.phase()) & 3;
            let commute = a.commutes_with(&b).unwrap();
            prop_assert_eq!(diff, if commute { 0 } else { 2 });
        }

        #[test]
        fn in_place_matches_allocating(
            (a, b) in (1usize..200).prop_flat_map(|n| (arb_pauli(n), arb_pauli(n)))
        ) {
            let mut c = a.clone();
            c.mul_assign(&b).unwrap();
            prop_assert_eq!(c, a.mul(&b).unwrap());
        }

        #[test]
        fn product_is_associative(
            (a, b, c) in (1usize..70).prop_flat_map(|n| (arb_pauli(n), arb_pauli(n), arb_pauli(n)))
        ) {
            let l = a.mul(&b).unwrap().mul(&c).unwrap();
            let r = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }
    }
}

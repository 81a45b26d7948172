//! n-qubit Pauli operators in symplectic form.
//!
//! An operator is stored as `i^k · X^x Z^z`, where `x` and `z` are bit masks
//! over the qubits and the product `X^x Z^z` is taken slot by slot. The
//! leftmost character of an observable string is the most significant bit, so
//! `"IX"` has `x = 0b01`. With this convention `Y = iXZ`, so a Hermitian
//! operator carries `k ≡ popcount(x & z) (mod 2)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest qubit count accepted by the parser (masks are `u64`).
pub const MAX_QUBITS: usize = 64;
/// Largest qubit count for which a dense matrix is built.
pub const MAX_DENSE_QUBITS: usize = 4;
/// Largest qubit count accepted by [`enumerate_observables`].
pub const MAX_ENUMERATE_QUBITS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("empty observable string")]
    Empty,
    #[error("invalid character {found:?} at position {position} (expected one of I, X, Y, Z)")]
    BadChar { position: usize, found: char },
    #[error("observable has {0} qubits, at most {MAX_QUBITS} are supported")]
    TooManyQubits(usize),
    #[error("qubit count mismatch: {0} vs {1}")]
    QubitMismatch(usize, usize),
    #[error("dense matrices are limited to {MAX_DENSE_QUBITS} qubits, got {0}")]
    DenseTooLarge(usize),
    #[error("qubit count {0} out of range 1..={MAX_ENUMERATE_QUBITS}")]
    QubitRange(usize),
}

/// An element of the n-qubit Pauli group, `i^phase · X^x Z^z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n_qubits: usize,
    x: u64,
    z: u64,
    phase: u8,
}

impl PauliOperator {
    pub fn identity(n_qubits: usize) -> Self {
        assert!((1..=MAX_QUBITS).contains(&n_qubits), "qubit count out of range");
        Self { n_qubits, x: 0, z: 0, phase: 0 }
    }

    /// Builds `i^phase · X^x Z^z`. Bits beyond `n_qubits` are rejected.
    pub fn from_parts(n_qubits: usize, x: u64, z: u64, phase: u8) -> Self {
        assert!((1..=MAX_QUBITS).contains(&n_qubits), "qubit count out of range");
        let mask = qubit_mask(n_qubits);
        assert!(x & !mask == 0 && z & !mask == 0, "mask wider than qubit count");
        Self { n_qubits, x, z, phase: phase % 4 }
    }

    /// The Hermitian operator with `+` sign and the given symplectic bits
    /// (so `from_bits(1, 1, 1)` is `Y`).
    pub fn from_bits(n_qubits: usize, x: u64, z: u64) -> Self {
        let k = ((x & z).count_ones() % 4) as u8;
        Self::from_parts(n_qubits, x, z, k)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn phase_exponent(&self) -> u8 {
        self.phase
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Phase relative to the Hermitian `+` form: 0 → `+`, 1 → `i`, 2 → `-`, 3 → `-i`.
    pub fn display_phase(&self) -> u8 {
        ((4 + self.phase as u32 - (self.x & self.z).count_ones() % 4) % 4) as u8
    }

    pub fn is_hermitian(&self) -> bool {
        self.display_phase().is_multiple_of(2)
    }

    /// Same symplectic bits with the `+` Hermitian phase. Observables are
    /// compared through this form wherever the sign is irrelevant.
    pub fn phase_free(&self) -> Self {
        Self::from_bits(self.n_qubits, self.x, self.z)
    }

    pub fn negate(&self) -> Self {
        Self { phase: (self.phase + 2) % 4, ..*self }
    }

    /// Symplectic key `(x, z)`, the canonical sort key.
    pub fn bits(&self) -> (u64, u64) {
        (self.x, self.z)
    }

    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    /// Single-qubit letter at string position `pos` (0 = leftmost).
    pub fn letter(&self, pos: usize) -> char {
        let bit = self.n_qubits - 1 - pos;
        match ((self.x >> bit) & 1, (self.z >> bit) & 1) {
            (0, 0) => 'I',
            (1, 0) => 'X',
            (1, 1) => 'Y',
            _ => 'Z',
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, PauliError> {
        if self.n_qubits != other.n_qubits {
            return Err(PauliError::QubitMismatch(self.n_qubits, other.n_qubits));
        }
        // Z^z1 X^x2 = (-1)^{z1·x2} X^x2 Z^z1
        let swap = 2 * ((self.z & other.x).count_ones() % 2);
        let phase = (self.phase as u32 + other.phase as u32 + swap) % 4;
        Ok(Self {
            n_qubits: self.n_qubits,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
            phase: phase as u8,
        })
    }

    pub fn commutes(&self, other: &Self) -> Result<bool, PauliError> {
        if self.n_qubits != other.n_qubits {
            return Err(PauliError::QubitMismatch(self.n_qubits, other.n_qubits));
        }
        Ok(symplectic_commute(self.bits(), other.bits()))
    }

    pub fn dense_matrix(&self) -> Result<DMatrix<Complex64>, PauliError> {
        if self.n_qubits > MAX_DENSE_QUBITS {
            return Err(PauliError::DenseTooLarge(self.n_qubits));
        }
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let mut m = DMatrix::from_element(1, 1, one);
        for pos in 0..self.n_qubits {
            let bit = self.n_qubits - 1 - pos;
            let xb = (self.x >> bit) & 1 == 1;
            let zb = (self.z >> bit) & 1 == 1;
            // X^x Z^z on one qubit
            let single = match (xb, zb) {
                (false, false) => DMatrix::from_row_slice(2, 2, &[one, zero, zero, one]),
                (true, false) => DMatrix::from_row_slice(2, 2, &[zero, one, one, zero]),
                (false, true) => DMatrix::from_row_slice(2, 2, &[one, zero, zero, -one]),
                (true, true) => DMatrix::from_row_slice(2, 2, &[zero, -one, one, zero]),
            };
            m = m.kronecker(&single);
        }
        let scale = match self.phase {
            0 => one,
            1 => Complex64::new(0.0, 1.0),
            2 => -one,
            _ => Complex64::new(0.0, -1.0),
        };
        Ok(m * scale)
    }
}

/// `true` iff the symplectic form `x_a·z_b + z_a·x_b` vanishes mod 2.
pub fn symplectic_commute(a: (u64, u64), b: (u64, u64)) -> bool {
    ((a.0 & b.1).count_ones() + (a.1 & b.0).count_ones()).is_multiple_of(2)
}

fn qubit_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Ord for PauliOperator {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n_qubits, self.x, self.z, self.phase).cmp(&(other.n_qubits, other.x, other.z, other.phase))
    }
}

impl PartialOrd for PauliOperator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.display_phase() {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(prefix)?;
        for pos in 0..self.n_qubits {
            write!(f, "{}", self.letter(pos))?;
        }
        Ok(())
    }
}

impl FromStr for PauliOperator {
    type Err = PauliError;

    /// Grammar: `["+"|"-"]["i"]{I|X|Y|Z}+`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0;
        let mut display = 0u32;
        if let Some(&c) = chars.first() {
            if c == '+' {
                pos = 1;
            } else if c == '-' {
                pos = 1;
                display = 2;
            }
        }
        if chars.get(pos) == Some(&'i') {
            pos += 1;
            display += 1;
        }
        let body = &chars[pos..];
        if body.is_empty() {
            return Err(PauliError::Empty);
        }
        if body.len() > MAX_QUBITS {
            return Err(PauliError::TooManyQubits(body.len()));
        }
        let n = body.len();
        let (mut x, mut z) = (0u64, 0u64);
        for (i, &c) in body.iter().enumerate() {
            let bit = 1u64 << (n - 1 - i);
            match c {
                'I' => {}
                'X' => x |= bit,
                'Z' => z |= bit,
                'Y' => {
                    x |= bit;
                    z |= bit;
                }
                other => return Err(PauliError::BadChar { position: pos + i, found: other }),
            }
        }
        let phase = (display + (x & z).count_ones()) % 4;
        Ok(Self::from_parts(n, x, z, phase as u8))
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliOperator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

pub fn parse(text: &str) -> Result<PauliOperator, PauliError> {
    text.parse()
}

pub fn multiply(a: &PauliOperator, b: &PauliOperator) -> Result<PauliOperator, PauliError> {
    a.multiply(b)
}

pub fn commutes(a: &PauliOperator, b: &PauliOperator) -> Result<bool, PauliError> {
    a.commutes(b)
}

/// All `4^n - 1` non-identity Hermitian observables with `+` sign, ordered by
/// `(x_mask, z_mask)` read as big-endian integers.
pub fn enumerate_observables(n: usize) -> Result<Vec<PauliOperator>, PauliError> {
    if !(1..=MAX_ENUMERATE_QUBITS).contains(&n) {
        return Err(PauliError::QubitRange(n));
    }
    let side = 1u64 << n;
    let mut out = Vec::with_capacity((side * side - 1) as usize);
    for x in 0..side {
        for z in 0..side {
            if x == 0 && z == 0 {
                continue;
            }
            out.push(PauliOperator::from_bits(n, x, z));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn parse_encodings() {
        let ix = p("IX");
        assert_eq!((ix.n_qubits(), ix.x_mask(), ix.z_mask(), ix.phase_exponent()), (2, 0b01, 0, 0));
        let yy = p("YY");
        assert_eq!((yy.x_mask(), yy.z_mask(), yy.phase_exponent()), (0b11, 0b11, 2));
        assert_eq!(yy.to_string(), "YY");
        assert_eq!(p("-ZI"), p("ZI").negate());
        assert_eq!(p("iXZ").to_string(), "iXZ");
        assert_eq!(p("+XZ"), p("XZ"));
    }

    #[test]
    fn parse_errors_name_position() {
        assert_eq!(parse(""), Err(PauliError::Empty));
        assert_eq!(parse("-"), Err(PauliError::Empty));
        assert_eq!(parse("XQZ"), Err(PauliError::BadChar { position: 1, found: 'Q' }));
        assert_eq!(parse("-iXa"), Err(PauliError::BadChar { position: 3, found: 'a' }));
    }

    #[test]
    fn products() {
        assert_eq!(p("X").multiply(&p("Z")).unwrap(), p("-iY"));
        assert_eq!(p("XI").multiply(&p("IZ")).unwrap(), p("XZ"));
        let xx_yy = p("XX").multiply(&p("YY")).unwrap();
        assert_eq!(xx_yy, p("-ZZ"));
        assert_eq!(xx_yy.multiply(&p("ZZ")).unwrap(), p("-II"));
        assert!(matches!(p("X").multiply(&p("XX")), Err(PauliError::QubitMismatch(1, 2))));
    }

    #[test]
    fn commutation() {
        assert!(!p("X").commutes(&p("Z")).unwrap());
        assert!(p("XX").commutes(&p("ZZ")).unwrap());
        assert!(p("IX").commutes(&p("XI")).unwrap());
    }

    #[test]
    fn dense_small_cases() {
        let i = p("I").dense_matrix().unwrap();
        assert_eq!(i, DMatrix::identity(2, 2));
        let x = p("X").dense_matrix().unwrap();
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        assert_eq!(x, DMatrix::from_row_slice(2, 2, &[zero, one, one, zero]));
        let y = p("Y").dense_matrix().unwrap();
        let iu = Complex64::new(0.0, 1.0);
        assert_eq!(y, DMatrix::from_row_slice(2, 2, &[zero, -iu, iu, zero]));
        assert!(matches!(p("XXXXX").dense_matrix(), Err(PauliError::DenseTooLarge(5))));
    }

    #[test]
    fn enumeration_sizes_and_order() {
        let one = enumerate_observables(1).unwrap();
        let names: Vec<String> = one.iter().map(|o| o.to_string()).collect();
        assert_eq!(names, ["Z", "X", "Y"]);
        assert_eq!(enumerate_observables(2).unwrap().len(), 15);
        assert_eq!(enumerate_observables(3).unwrap().len(), 63);
        assert_eq!(enumerate_observables(4).unwrap().len(), 255);
        assert!(enumerate_observables(0).is_err());
        assert!(enumerate_observables(5).is_err());
        let three = enumerate_observables(3).unwrap();
        assert!(three.windows(2).all(|w| w[0].bits() < w[1].bits()));
        assert!(three.iter().all(|o| o.is_hermitian() && o.display_phase() == 0));
    }

    #[test]
    fn squares_are_plus_minus_identity() {
        for o in enumerate_observables(3).unwrap() {
            for ph in 0..4 {
                let a = PauliOperator::from_parts(3, o.x_mask(), o.z_mask(), ph);
                let sq = a.multiply(&a).unwrap();
                assert!(sq.is_identity_up_to_phase());
                assert!(sq.phase_exponent().is_multiple_of(2));
            }
        }
    }

    #[test]
    fn round_trip_two_and_three_qubits() {
        for n in [2, 3] {
            for o in enumerate_observables(n).unwrap() {
                for ph in 0..4 {
                    let a = PauliOperator::from_parts(n, o.x_mask(), o.z_mask(), ph);
                    assert_eq!(p(&a.to_string()), a);
                }
            }
        }
    }
}

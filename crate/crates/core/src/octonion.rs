//! Real octonions over the basis `e_0..e_7`.
//!
//! Multiplication is driven by a single stored signed-index table. The
//! generator relations (`e_4 = e_1 e_2`, `e_5 = e_1 e_3`, ...) are not used
//! to build the table; they are checked against it in the tests.

use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Index of an octonion basis unit, always in `0..=7`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct BasisIndex(u8);

impl BasisIndex {
    pub const REAL: BasisIndex = BasisIndex(0);

    pub fn new(value: u8) -> Result<Self, Error> {
        if value < 8 {
            Ok(BasisIndex(value))
        } else {
            Err(Error::BasisIndex(value as i64))
        }
    }

    /// # Panics
    /// If `value > 7`. Meant for literals in tables and tests.
    pub const fn of(value: u8) -> Self {
        assert!(value < 8, "basis index out of range");
        BasisIndex(value)
    }

    pub const fn get(self) -> u8 {
        self.0
    }

    pub const fn idx(self) -> usize {
        self.0 as usize
    }

    pub fn all() -> impl Iterator<Item = BasisIndex> + Clone {
        (0..8).map(BasisIndex)
    }

    pub fn imaginary() -> impl Iterator<Item = BasisIndex> + Clone {
        (1..8).map(BasisIndex)
    }
}

impl TryFrom<u8> for BasisIndex {
    type Error = Error;
    fn try_from(value: u8) -> Result<Self, Error> {
        BasisIndex::new(value)
    }
}

impl From<BasisIndex> for u8 {
    fn from(b: BasisIndex) -> u8 {
        b.0
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// Signed basis element `sign * e_index`. Products of a unit with itself
/// land on `index == 0`, the real unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedBasis {
    pub sign: i8,
    pub index: BasisIndex,
}

impl SignedBasis {
    pub fn is_scalar(self) -> bool {
        self.index == BasisIndex::REAL
    }
}

// Row i, column j holds e_i * e_j as (sign, index); index 0 is the real unit.
#[rustfmt::skip]
const TABLE: [[(i8, u8); 8]; 8] = [
    [( 1, 0), ( 1, 1), ( 1, 2), ( 1, 3), ( 1, 4), ( 1, 5), ( 1, 6), ( 1, 7)],
    [( 1, 1), (-1, 0), ( 1, 4), ( 1, 5), (-1, 2), (-1, 3), (-1, 7), ( 1, 6)],
    [( 1, 2), (-1, 4), (-1, 0), ( 1, 6), ( 1, 1), ( 1, 7), (-1, 3), (-1, 5)],
    [( 1, 3), (-1, 5), (-1, 6), (-1, 0), (-1, 7), ( 1, 1), ( 1, 2), ( 1, 4)],
    [( 1, 4), ( 1, 2), (-1, 1), ( 1, 7), (-1, 0), (-1, 6), ( 1, 5), (-1, 3)],
    [( 1, 5), ( 1, 3), (-1, 7), (-1, 1), ( 1, 6), (-1, 0), (-1, 4), ( 1, 2)],
    [( 1, 6), ( 1, 7), ( 1, 3), (-1, 2), (-1, 5), ( 1, 4), (-1, 0), (-1, 1)],
    [( 1, 7), (-1, 6), ( 1, 5), (-1, 4), ( 1, 3), (-1, 2), ( 1, 1), (-1, 0)],
];

/// `e_i * e_j` read from the multiplication table.
pub fn basis_product(i: BasisIndex, j: BasisIndex) -> SignedBasis {
    let (sign, index) = TABLE[i.idx()][j.idx()];
    SignedBasis {
        sign,
        index: BasisIndex(index),
    }
}

/// An octonion `sum_k coeff[k] e_k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Octonion {
    pub coeff: [f64; 8],
}

impl Octonion {
    pub const ZERO: Octonion = Octonion { coeff: [0.0; 8] };
    pub const ONE: Octonion = Octonion {
        coeff: [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    };

    pub const fn new(coeff: [f64; 8]) -> Self {
        Octonion { coeff }
    }

    pub fn unit(k: BasisIndex) -> Self {
        let mut coeff = [0.0; 8];
        coeff[k.idx()] = 1.0;
        Octonion { coeff }
    }

    pub fn scalar(x: f64) -> Self {
        Octonion::ONE.scale(x)
    }

    pub fn real(&self) -> f64 {
        self.coeff[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.iter().all(|&c| c == 0.0)
    }

    /// True when every imaginary coefficient vanishes.
    pub fn is_real(&self) -> bool {
        self.coeff[1..].iter().all(|&c| c == 0.0)
    }

    pub fn scale(&self, s: f64) -> Self {
        Octonion {
            coeff: self.coeff.map(|c| c * s),
        }
    }

    pub fn conj(&self) -> Self {
        let mut coeff = self.coeff.map(|c| -c);
        coeff[0] = self.coeff[0];
        Octonion { coeff }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeff.iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.coeff.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn product(&self, rhs: &Octonion) -> Octonion {
        let mut out = [0.0; 8];
        for (i, &a) in self.coeff.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in rhs.coeff.iter().enumerate() {
                if b == 0.0 {
                    continue;
                }
                let (sign, k) = TABLE[i][j];
                out[k as usize] += f64::from(sign) * a * b;
            }
        }
        Octonion { coeff: out }
    }

    pub fn iter(&self) -> impl Iterator<Item = (BasisIndex, f64)> + '_ {
        BasisIndex::all().zip(self.coeff.iter().copied())
    }
}

/// `[a, b, c] = (ab)c - a(bc)`.
pub fn associator(a: &Octonion, b: &Octonion, c: &Octonion) -> Octonion {
    a.product(b).product(c) - a.product(&b.product(c))
}

impl Index<BasisIndex> for Octonion {
    type Output = f64;
    fn index(&self, k: BasisIndex) -> &f64 {
        &self.coeff[k.idx()]
    }
}

impl Add for Octonion {
    type Output = Octonion;
    fn add(mut self, rhs: Octonion) -> Octonion {
        self += rhs;
        self
    }
}

impl AddAssign for Octonion {
    fn add_assign(&mut self, rhs: Octonion) {
        for (a, b) in self.coeff.iter_mut().zip(rhs.coeff) {
            *a += b;
        }
    }
}

impl Sub for Octonion {
    type Output = Octonion;
    fn sub(mut self, rhs: Octonion) -> Octonion {
        self -= rhs;
        self
    }
}

impl SubAssign for Octonion {
    fn sub_assign(&mut self, rhs: Octonion) {
        for (a, b) in self.coeff.iter_mut().zip(rhs.coeff) {
            *a -= b;
        }
    }
}

impl Neg for Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        self.scale(-1.0)
    }
}

impl Mul for Octonion {
    type Output = Octonion;
    fn mul(self, rhs: Octonion) -> Octonion {
        self.product(&rhs)
    }
}

impl Mul<f64> for Octonion {
    type Output = Octonion;
    fn mul(self, rhs: f64) -> Octonion {
        self.scale(rhs)
    }
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.iter() {
            if c == 0.0 {
                continue;
            }
            if first {
                write!(f, "{c}*{k}")?;
            } else if c < 0.0 {
                write!(f, " - {}*{k}", -c)?;
            } else {
                write!(f, " + {c}*{k}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Basis triples `(i, j, k)` of distinct imaginary units, split by whether
/// `(e_i e_j) e_k = -e_i (e_j e_k)` holds. The associative ones are the
/// triples spanning a quaternionic subalgebra (`e_k = ±e_i e_j`).
#[derive(Clone, Debug, Default)]
pub struct TripleCensus {
    pub anti_associative: Vec<[BasisIndex; 3]>,
    pub associative: Vec<[BasisIndex; 3]>,
}

pub fn basis_triple_census() -> TripleCensus {
    let mut census = TripleCensus::default();
    for i in BasisIndex::imaginary() {
        for j in BasisIndex::imaginary() {
            for k in BasisIndex::imaginary() {
                if i == j || j == k || i == k {
                    continue;
                }
                let (ei, ej, ek) = (Octonion::unit(i), Octonion::unit(j), Octonion::unit(k));
                let left = ei.product(&ej).product(&ek);
                let right = ei.product(&ej.product(&ek));
                if left == -right {
                    census.anti_associative.push([i, j, k]);
                } else {
                    census.associative.push([i, j, k]);
                }
            }
        }
    }
    census
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(k: u8) -> Octonion {
        Octonion::unit(BasisIndex::of(k))
    }

    #[test]
    fn table_spot_values() {
        let p = basis_product(BasisIndex::of(1), BasisIndex::of(2));
        assert_eq!((p.sign, p.index.get()), (1, 4));
        let p = basis_product(BasisIndex::of(5), BasisIndex::of(3));
        assert_eq!((p.sign, p.index.get()), (-1, 1));
        let p = basis_product(BasisIndex::of(0), BasisIndex::of(6));
        assert_eq!((p.sign, p.index.get()), (1, 6));
    }

    #[test]
    fn generator_relations_match_table() {
        assert_eq!(e(1) * e(2), e(4));
        assert_eq!(e(1) * e(3), e(5));
        assert_eq!(e(2) * e(3), e(6));
        assert_eq!(e(4) * e(3), e(7));
        assert_eq!((e(1) * e(2)) * e(3), e(7));
    }

    #[test]
    fn squares_and_anticommutation() {
        for i in BasisIndex::imaginary() {
            let p = basis_product(i, i);
            assert_eq!((p.sign, p.index), (-1, BasisIndex::REAL));
            assert_eq!(basis_product(BasisIndex::REAL, i), SignedBasis { sign: 1, index: i });
            assert_eq!(basis_product(i, BasisIndex::REAL), SignedBasis { sign: 1, index: i });
            for j in BasisIndex::imaginary() {
                if i != j {
                    let a = basis_product(i, j);
                    let b = basis_product(j, i);
                    assert_eq!(a.index, b.index);
                    assert_eq!(a.sign, -b.sign);
                    assert!(!a.is_scalar());
                }
            }
        }
    }

    #[test]
    fn bilinear_products() {
        assert_eq!(e(4) * e(3), e(7));
        let a = Octonion::new([3.0, -1.0, 2.0, 0.5, 0.0, 0.0, 7.0, -2.0]);
        assert_eq!(Octonion::ONE * a, a);
        assert_eq!(a * Octonion::ONE, a);
        // (2e1 + e2) e2 = 2 e4 - e0
        let x = e(1).scale(2.0) + e(2);
        assert_eq!(x * e(2), e(4).scale(2.0) - e(0));
    }

    #[test]
    fn conjugation() {
        assert_eq!(e(0).conj(), e(0));
        assert_eq!(e(3).conj(), -e(3));
        let a = Octonion::new([1.0, -2.0, 3.0, 4.0, -5.0, 6.0, 7.0, -8.0]);
        assert_eq!(a * a.conj(), Octonion::scalar(a.norm_sqr()));
        assert_eq!(a.conj() * a, Octonion::scalar(a.norm_sqr()));
    }

    #[test]
    fn norms() {
        assert_eq!(e(5).norm(), 1.0);
        assert_eq!(Octonion::ZERO.norm(), 0.0);
    }

    #[test]
    fn associator_examples() {
        assert_eq!(associator(&e(1), &e(2), &e(3)), e(7).scale(2.0));
        let a = Octonion::new([1.0, 2.0, 0.0, -1.0, 4.0, 0.0, 3.0, 1.0]);
        let b = Octonion::new([0.0, -1.0, 5.0, 2.0, 0.0, 1.0, 0.0, 2.0]);
        assert!(associator(&Octonion::ONE, &a, &b).is_zero());
    }

    #[test]
    fn associator_is_alternating_on_basis() {
        for i in BasisIndex::all() {
            for j in BasisIndex::all() {
                for k in BasisIndex::all() {
                    let (a, b, c) = (Octonion::unit(i), Octonion::unit(j), Octonion::unit(k));
                    let abc = associator(&a, &b, &c);
                    if i == j || j == k || i == k {
                        assert!(abc.is_zero(), "[{i},{j},{k}] = {abc}");
                    }
                    assert_eq!(associator(&b, &a, &c), -abc);
                    assert_eq!(associator(&a, &c, &b), -abc);
                    assert_eq!(associator(&c, &b, &a), -abc);
                }
            }
        }
    }

    #[test]
    fn triple_census_counts() {
        let census = basis_triple_census();
        // 7 quaternionic lines, each giving 3! ordered triples.
        assert_eq!(census.associative.len(), 42);
        assert_eq!(census.anti_associative.len(), 7 * 6 * 5 - 42);
        for [i, j, k] in census.associative {
            assert_eq!(basis_product(i, j).index, k);
        }
    }

    #[test]
    fn basis_index_bounds() {
        assert!(BasisIndex::new(8).is_err());
        assert_eq!(BasisIndex::new(7).unwrap().get(), 7);
    }
}

//! Finite abelian groups in invariant-factor form.
//!
//! A [`FinAbGroup`] is `Z/m_1 ⊕ … ⊕ Z/m_k`; its elements are residue vectors.
//! Elements are enumerated in mixed-radix order with `coords[0]` varying
//! fastest, so index 0 is always the zero element. Every table in the crate
//! that is indexed by group elements uses this order.
//!
//! Characters are kept as exponent vectors `t`, with
//! `χ_t(x) = exp(2πi Σ_j t_j x_j / m_j)`. Values are never stored as floats;
//! [`FinAbGroup::pairing`] returns the exponent `k` of `ζ_e^k` where `e` is the
//! group exponent.

pub mod smith;

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use smith::{smith_decompose, Presentation, SmithDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("modulus {0} is not allowed (every modulus must be at least 2)")]
    BadModulus(u64),
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("residue {value} out of range for modulus {modulus} at coordinate {position}")]
    ResidueOutOfRange { position: usize, value: u64, modulus: u64 },
    #[error("group of order {0} is not 2-divisible")]
    NotTwoDivisible(u64),
    #[error("presented group is infinite (relation matrix has rank {rank} < {gens})")]
    InfiniteGroup { rank: usize, gens: usize },
    #[error("group order overflows u64")]
    Overflow,
}

/// An element of a [`FinAbGroup`]: one reduced residue per invariant factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbElement(pub(crate) Vec<u64>);

impl AbElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for AbElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FinAbGroup {
    moduli: Vec<u64>,
    order: u64,
    exponent: u64,
}

impl TryFrom<Vec<u64>> for FinAbGroup {
    type Error = AbelianError;

    fn try_from(moduli: Vec<u64>) -> Result<Self, Self::Error> {
        FinAbGroup::new(moduli)
    }
}

impl From<FinAbGroup> for Vec<u64> {
    fn from(g: FinAbGroup) -> Self {
        g.moduli
    }
}

impl FinAbGroup {
    pub fn new(moduli: Vec<u64>) -> Result<Self, AbelianError> {
        let mut order: u64 = 1;
        let mut exponent: u64 = 1;
        for &m in &moduli {
            if m < 2 {
                return Err(AbelianError::BadModulus(m));
            }
            order = order.checked_mul(m).ok_or(AbelianError::Overflow)?;
            exponent = exponent.lcm(&m);
        }
        Ok(FinAbGroup { moduli, order, exponent })
    }

    /// The group with one element (no invariant factors).
    pub fn trivial() -> Self {
        FinAbGroup { moduli: Vec::new(), order: 1, exponent: 1 }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn size(&self) -> usize {
        self.order as usize
    }

    /// Direct sum `self ⊕ other`; coordinates of `self` come first.
    pub fn direct_sum(&self, other: &FinAbGroup) -> Result<FinAbGroup, AbelianError> {
        let mut moduli = self.moduli.clone();
        moduli.extend_from_slice(&other.moduli);
        FinAbGroup::new(moduli)
    }

    pub fn zero(&self) -> AbElement {
        AbElement(vec![0; self.rank()])
    }

    /// The `i`-th standard generator.
    pub fn unit(&self, i: usize) -> AbElement {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        AbElement(v)
    }

    pub fn basis(&self) -> Vec<AbElement> {
        (0..self.rank()).map(|i| self.unit(i)).collect()
    }

    /// Builds an element from already reduced residues.
    pub fn element(&self, coords: &[u64]) -> Result<AbElement, AbelianError> {
        self.check_len(coords.len())?;
        for (position, (&value, &modulus)) in coords.iter().zip(&self.moduli).enumerate() {
            if value >= modulus {
                return Err(AbelianError::ResidueOutOfRange { position, value, modulus });
            }
        }
        Ok(AbElement(coords.to_vec()))
    }

    /// Reduces arbitrary integers into an element.
    pub fn reduce(&self, coords: &[i64]) -> AbElement {
        assert_eq!(coords.len(), self.rank(), "dimension mismatch");
        AbElement(
            coords
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| x.rem_euclid(m as i64) as u64)
                .collect(),
        )
    }

    pub fn contains(&self, x: &AbElement) -> bool {
        x.0.len() == self.rank() && x.0.iter().zip(&self.moduli).all(|(v, m)| v < m)
    }

    fn check_len(&self, got: usize) -> Result<(), AbelianError> {
        if got == self.rank() {
            Ok(())
        } else {
            Err(AbelianError::DimensionMismatch { expected: self.rank(), got })
        }
    }

    /// Mixed-radix index, `coords[0]` fastest.
    pub fn index(&self, x: &AbElement) -> usize {
        self.index_of(&x.0)
    }

    pub(crate) fn index_of(&self, coords: &[u64]) -> usize {
        let mut idx = 0usize;
        for (&v, &m) in coords.iter().zip(&self.moduli).rev() {
            idx = idx * m as usize + v as usize;
        }
        idx
    }

    pub fn element_at(&self, mut idx: usize) -> AbElement {
        debug_assert!(idx < self.size());
        let mut v = Vec::with_capacity(self.rank());
        for &m in &self.moduli {
            v.push((idx % m as usize) as u64);
            idx /= m as usize;
        }
        AbElement(v)
    }

    /// All elements in canonical enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = AbElement> + '_ {
        (0..self.size()).map(move |i| self.element_at(i))
    }

    pub fn try_add(&self, x: &AbElement, y: &AbElement) -> Result<AbElement, AbelianError> {
        self.check_len(x.0.len())?;
        self.check_len(y.0.len())?;
        Ok(self.add(x, y))
    }

    /// Componentwise sum. Panics if either argument has the wrong length;
    /// use [`FinAbGroup::try_add`] for a checked version.
    pub fn add(&self, x: &AbElement, y: &AbElement) -> AbElement {
        assert!(x.0.len() == self.rank() && y.0.len() == self.rank(), "dimension mismatch");
        AbElement(
            x.0.iter()
                .zip(&y.0)
                .zip(&self.moduli)
                .map(|((&a, &b), &m)| (a + b) % m)
                .collect(),
        )
    }

    pub fn neg(&self, x: &AbElement) -> AbElement {
        AbElement(
            x.0.iter()
                .zip(&self.moduli)
                .map(|(&a, &m)| if a == 0 { 0 } else { m - a })
                .collect(),
        )
    }

    pub fn sub(&self, x: &AbElement, y: &AbElement) -> AbElement {
        self.add(x, &self.neg(y))
    }

    /// `k · x` for any integer `k`.
    pub fn scale(&self, x: &AbElement, k: i64) -> AbElement {
        AbElement(
            x.0.iter()
                .zip(&self.moduli)
                .map(|(&a, &m)| {
                    let k = k.rem_euclid(m as i64) as u128;
                    ((a as u128 * k) % m as u128) as u64
                })
                .collect(),
        )
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a AbElement>) -> AbElement {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// Additive order of `x`.
    pub fn element_order(&self, x: &AbElement) -> u64 {
        x.0.iter()
            .zip(&self.moduli)
            .fold(1u64, |acc, (&a, &m)| acc.lcm(&(m / a.gcd(&m))))
    }

    /// Doubling is an automorphism exactly when every invariant factor is odd.
    pub fn is_two_divisible(&self) -> bool {
        self.moduli.iter().all(|m| m % 2 == 1)
    }

    /// The unique `b` with `b + b = a`.
    pub fn halve(&self, a: &AbElement) -> Result<AbElement, AbelianError> {
        if !self.is_two_divisible() {
            return Err(AbelianError::NotTwoDivisible(self.order));
        }
        Ok(AbElement(
            a.0.iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| (x * ((m + 1) / 2)) % m)
                .collect(),
        ))
    }

    /// `table[i * |G| + j]` is the index of `element_at(i) + element_at(j)`.
    pub(crate) fn add_table(&self) -> Vec<u32> {
        let n = self.size();
        let elems: Vec<AbElement> = self.elements().collect();
        let mut t = Vec::with_capacity(n * n);
        for x in &elems {
            for y in &elems {
                t.push(self.index(&self.add(x, y)) as u32);
            }
        }
        t
    }

    pub(crate) fn neg_table(&self) -> Vec<u32> {
        self.elements().map(|x| self.index(&self.neg(&x)) as u32).collect()
    }

    /// `out = x + y` on raw coordinate slices.
    pub(crate) fn add_into(&self, x: &[u64], y: &[u64], out: &mut [u64]) {
        for (((o, &a), &b), &m) in out.iter_mut().zip(x).zip(y).zip(&self.moduli) {
            *o = (a + b) % m;
        }
    }

    /// Every character of the group, as exponent vectors in enumeration order.
    /// `t = 0` (index 0) is the trivial character.
    pub fn all_characters(&self) -> Vec<AbElement> {
        self.elements().collect()
    }

    /// Exponent `k` (mod the group exponent `e`) with `χ_t(x) = ζ_e^k`.
    pub fn pairing(&self, t: &AbElement, x: &AbElement) -> u64 {
        self.pairing_coords(&t.0, &x.0)
    }

    pub(crate) fn pairing_coords(&self, t: &[u64], x: &[u64]) -> u64 {
        let e = self.exponent as u128;
        let mut k: u128 = 0;
        for ((&ti, &xi), &m) in t.iter().zip(x).zip(&self.moduli) {
            let w = (self.exponent / m) as u128;
            k = (k + (ti as u128 * xi as u128 % m as u128) * w) % e;
        }
        k as u64
    }

    /// Recovers `t` from the values `χ(unit_k) = ζ_e^{k_k}` on the basis.
    pub(crate) fn character_from_basis_values(&self, values: &[u64]) -> AbElement {
        AbElement(
            values
                .iter()
                .zip(&self.moduli)
                .map(|(&k, &m)| {
                    let w = self.exponent / m;
                    debug_assert_eq!(k % w, 0, "value is not an m-th root of unity");
                    (k / w) % m
                })
                .collect(),
        )
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, m) in self.moduli.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "]")
    }
}

//! The n-qubit quantum frame: rays, subspaces, gates and tensor utilities.
//!
//! Basis index `b` of an n-qubit vector holds qubit `q` (1-based) in bit
//! `(b >> (n - q)) & 1`, so qubit 1 is the most significant bit.

mod gates;
mod stateio;
mod subspace;
mod tensor;

use std::fmt;

use thiserror::Error;

use crate::linalg::{is_zero_vec, GaussianRational as C};

pub use gates::{gate, map_to_state, restrict_first, GateKind, PartialMap, QAction};
pub use stateio::{format_state, parse_state, parse_state_vector};
pub use subspace::Subspace;
pub use tensor::{
    embed_local, local_state, product_form, reachable, reshape, separability, support,
    tensor_subspaces, tensor_vectors, ProductForm, Separability,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QframeError {
    #[error("bad qubit index: {0}")]
    BadIndex(String),
    #[error("the zero vector is not a state")]
    ZeroVector,
    #[error("parse error: {0}")]
    Parse(String),
}

/// An n-qubit frame, `n >= 1`, with ambient dimension `2^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Frame {
    pub n: usize,
}

impl Frame {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a frame needs at least one qubit");
        Self { n }
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// All qubit indices `1..=n`.
    pub fn all(&self) -> Vec<usize> {
        (1..=self.n).collect()
    }

    /// `N \ I`, sorted.
    pub fn complement(&self, set: &[usize]) -> Vec<usize> {
        (1..=self.n).filter(|q| !set.contains(q)).collect()
    }

    /// Bit of qubit `q` in basis index `b`.
    pub fn bit(&self, b: usize, q: usize) -> usize {
        (b >> (self.n - q)) & 1
    }

    pub fn with_bit(&self, b: usize, q: usize, v: usize) -> usize {
        let mask = 1 << (self.n - q);
        if v == 1 {
            b | mask
        } else {
            b & !mask
        }
    }

    pub fn check_index(&self, q: usize) -> Result<(), QframeError> {
        if q == 0 || q > self.n {
            return Err(QframeError::BadIndex(format!("{q} not in 1..={}", self.n)));
        }
        Ok(())
    }

    /// Validates a list of distinct in-range indices.
    pub fn check_indices(&self, qs: &[usize]) -> Result<(), QframeError> {
        for (k, &q) in qs.iter().enumerate() {
            self.check_index(q)?;
            if qs[..k].contains(&q) {
                return Err(QframeError::BadIndex(format!("duplicate index {q}")));
            }
        }
        Ok(())
    }

    /// Sorted, deduplicated copy of an index set after validation.
    pub fn normalize_set(&self, qs: &[usize]) -> Result<Vec<usize>, QframeError> {
        self.check_indices(qs)?;
        let mut v = qs.to_vec();
        v.sort_unstable();
        Ok(v)
    }
}

/// The four local basis constants `0, 1, +, -`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Zero,
    One,
    Plus,
    Minus,
}

impl Basis {
    pub const ALL: [Basis; 4] = [Basis::Zero, Basis::One, Basis::Plus, Basis::Minus];
    /// The enumeration set used for schematic claims.
    pub const DETERMINING: [Basis; 3] = [Basis::Zero, Basis::One, Basis::Plus];

    pub fn vector(self) -> Vec<C> {
        let (a, b) = match self {
            Basis::Zero => (1, 0),
            Basis::One => (0, 1),
            Basis::Plus => (1, 1),
            Basis::Minus => (1, -1),
        };
        vec![C::from_int(a), C::from_int(b)]
    }

    pub fn symbol(self) -> char {
        match self {
            Basis::Zero => '0',
            Basis::One => '1',
            Basis::Plus => '+',
            Basis::Minus => '-',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            '0' => Some(Basis::Zero),
            '1' => Some(Basis::One),
            '+' => Some(Basis::Plus),
            '-' => Some(Basis::Minus),
            _ => None,
        }
    }
}

/// A state: a nonzero vector up to a nonzero scalar.
///
/// Stored scaled so that the first nonzero amplitude is 1, which makes ray
/// equality structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ray {
    amps: Vec<C>,
}

impl Ray {
    pub fn new(mut amps: Vec<C>) -> Result<Self, QframeError> {
        let Some(lead) = amps.iter().find(|a| !a.is_zero()).cloned() else {
            return Err(QframeError::ZeroVector);
        };
        if !lead.is_one() {
            let inv = lead.inv().expect("nonzero lead");
            for a in &mut amps {
                *a = &*a * &inv;
            }
        }
        Ok(Self { amps })
    }

    pub fn from_ints(amps: &[i64]) -> Result<Self, QframeError> {
        Self::new(amps.iter().map(|&a| C::from_int(a)).collect())
    }

    /// Computational basis state with the given index.
    pub fn basis_state(dim: usize, index: usize) -> Self {
        let mut v = vec![C::zero(); dim];
        v[index] = C::one();
        Self { amps: v }
    }

    /// Product state `c_1 ⊗ ... ⊗ c_n` of local constants.
    pub fn product(parts: &[Basis]) -> Self {
        let mut v = vec![C::one()];
        for p in parts {
            v = crate::linalg::vec_kron(&v, &p.vector());
        }
        Self::new(v).expect("product of nonzero vectors")
    }

    pub fn amplitudes(&self) -> &[C] {
        &self.amps
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn is_orthogonal(&self, other: &Ray) -> bool {
        crate::linalg::inner(&self.amps, &other.amps).is_zero()
    }

    /// Applies a linear map; `None` when the image vanishes.
    pub fn apply(&self, m: &crate::linalg::Matrix) -> Option<Ray> {
        let v = m.mul_vec(&self.amps);
        if is_zero_vec(&v) {
            None
        } else {
            Some(Ray::new(v).expect("nonzero"))
        }
    }

    pub fn as_subspace(&self) -> Subspace {
        Subspace::span(self.dim(), std::slice::from_ref(&self.amps))
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.amps.iter().map(ToString::to_string).collect();
        write!(f, "({})", cells.join(", "))
    }
}

impl fmt::Debug for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ray{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ray_equality_is_proportionality() {
        let a = Ray::from_ints(&[2, -2]).unwrap();
        let b = Ray::new(vec![C::i(), -C::i()]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, Ray::from_ints(&[1, 1]).unwrap());
        assert_eq!(Ray::from_ints(&[0, 0]), Err(QframeError::ZeroVector));
    }

    #[test]
    fn bit_convention_puts_qubit_one_first() {
        let f = Frame::new(3);
        assert_eq!(f.bit(0b100, 1), 1);
        assert_eq!(f.bit(0b100, 3), 0);
        assert_eq!(f.with_bit(0, 3, 1), 1);
        assert_eq!(Ray::product(&[Basis::Zero, Basis::One]), Ray::basis_state(4, 1));
    }

    #[test]
    fn index_validation() {
        let f = Frame::new(2);
        assert!(f.check_indices(&[1, 2]).is_ok());
        assert!(f.check_indices(&[1, 1]).is_err());
        assert!(f.check_indices(&[3]).is_err());
        assert_eq!(f.complement(&[2]), vec![1]);
    }
}

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};
use crate::scalar::Rational;

/// Integer coordinate vector. Ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticePoint(SmallVec<[i64; 4]>);

impl LatticePoint {
    pub fn new(coords: &[i64]) -> Self {
        Self(SmallVec::from_slice(coords))
    }

    pub fn zero(rank: usize) -> Self {
        Self(SmallVec::from_elem(0, rank))
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn dot(&self, other: &LatticePoint) -> i64 {
        dot(&self.0, &other.0)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self(self.0.iter().map(|x| x * k).collect())
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &LatticePoint) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a >= b)
    }

    pub fn componentwise_min(&self, other: &LatticePoint) -> Self {
        Self(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    /// Concatenation, as in a direct sum of lattices.
    pub fn concat(&self, other: &LatticePoint) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self(v)
    }

    pub fn split_at(&self, n: usize) -> (Self, Self) {
        (Self::new(&self.0[..n]), Self::new(&self.0[n..]))
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        Self(SmallVec::from_vec(v))
    }
}

impl From<&[i64]> for LatticePoint {
    fn from(v: &[i64]) -> Self {
        Self::new(v)
    }
}

impl<const N: usize> From<[i64; N]> for LatticePoint {
    fn from(v: [i64; N]) -> Self {
        Self::new(&v)
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

impl Add for &LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: &LatticePoint) -> LatticePoint {
        debug_assert_eq!(self.rank(), rhs.rank());
        LatticePoint(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: &LatticePoint) -> LatticePoint {
        debug_assert_eq!(self.rank(), rhs.rank());
        LatticePoint(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a - b).collect())
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: LatticePoint) -> LatticePoint {
        &self + &rhs
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: LatticePoint) -> LatticePoint {
        &self - &rhs
    }
}

impl Neg for &LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint(self.0.iter().map(|x| -x).collect())
    }
}

impl Neg for LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        -&self
    }
}

/// Names the lattice a group-algebra element lives over.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeTag(Arc<str>);

impl LatticeTag {
    pub fn new(name: &str) -> Self {
        Self(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for LatticeTag {
    fn from(s: &str) -> Self {
        Self::new(s)
    }
}

impl From<String> for LatticeTag {
    fn from(s: String) -> Self {
        Self(Arc::from(s))
    }
}

impl fmt::Debug for LatticeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for LatticeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Integer linear map between lattices, `target = matrix * source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMap {
    matrix: IntMatrix,
    source_rank: usize,
    target_rank: usize,
    injective: bool,
}

impl LatticeMap {
    /// `matrix` has `target_rank` rows of length `source_rank`.
    pub fn new(matrix: IntMatrix, source_rank: usize) -> Result<Self> {
        let target_rank = matrix.len();
        if let Some(row) = matrix.iter().find(|r| r.len() != source_rank) {
            return Err(Error::RankMismatch {
                expected: source_rank,
                got: row.len(),
            });
        }
        let injective = source_rank == 0 || linalg::int_rank(&matrix) == source_rank;
        Ok(Self {
            matrix,
            source_rank,
            target_rank,
            injective,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::new(linalg::int_identity(n), n).expect("square identity")
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    pub fn is_injective(&self) -> bool {
        self.injective
    }

    pub fn apply(&self, p: &LatticePoint) -> LatticePoint {
        debug_assert_eq!(p.rank(), self.source_rank);
        self.matrix.iter().map(|row| dot(row, p.coords())).collect::<Vec<_>>().into()
    }

    /// The unique integral preimage, if any. Requires an injective map.
    pub fn preimage(&self, p: &LatticePoint) -> Option<LatticePoint> {
        if !self.injective || p.rank() != self.target_rank {
            return None;
        }
        let a = linalg::to_rational(&self.matrix);
        let b: Vec<Rational> = p.coords().iter().map(|&x| crate::scalar::rat(x)).collect();
        let x = linalg::solve_unique(&a, &b)?;
        let ints = linalg::rational_vec_to_int(&x)?;
        let q: LatticePoint = ints.into();
        (self.apply(&q) == *p).then_some(q)
    }

    pub fn compose(&self, inner: &LatticeMap) -> Result<LatticeMap> {
        if inner.target_rank != self.source_rank {
            return Err(Error::RankMismatch {
                expected: self.source_rank,
                got: inner.target_rank,
            });
        }
        LatticeMap::new(linalg::int_mat_mul(&self.matrix, &inner.matrix), inner.source_rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn lex_order() {
        let mut pts = vec![LatticePoint::from([0, 2]), LatticePoint::from([-1, 5]), LatticePoint::from([0, -1])];
        pts.sort();
        assert_eq!(pts, vec![[-1, 5].into(), [0, -1].into(), [0, 2].into()]);
    }

    #[test]
    fn map_preimage() {
        let m = LatticeMap::new(vec![vec![2, 0], vec![1, 1]], 2).unwrap();
        assert!(m.is_injective());
        let p = LatticePoint::from([3, 5]);
        let img = m.apply(&p);
        assert_eq!(img, [6, 8].into());
        assert_eq!(m.preimage(&img), Some(p));
        assert_eq!(m.preimage(&[1, 0].into()), None);
        let degenerate = LatticeMap::new(vec![vec![1, 1], vec![2, 2]], 2).unwrap();
        assert!(!degenerate.is_injective());
    }
}

//! Finite reflection groups acting on an integer lattice.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::{dot, LatticePoint, LatticeTag};

const MAX_ORDER: usize = 4096;

/// A Weyl group, fully enumerated. Element 0 is the identity. Generator `i`
/// acts by `x -> x - (f_i . x) v_i`.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    tag: LatticeTag,
    rank: usize,
    functionals: Vec<LatticePoint>,
    vectors: Vec<LatticePoint>,
    /// Row-major `rank x rank` matrices.
    matrices: Vec<Vec<i64>>,
    words: Vec<Vec<u8>>,
    right: Vec<Vec<usize>>,
    left: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    index: BTreeMap<Vec<i64>, usize>,
}

impl WeylGroup {
    /// Enumerates the group generated by the reflections
    /// `x -> x - (functionals[i] . x) vectors[i]`.
    pub fn generate(tag: LatticeTag, rank: usize, functionals: Vec<LatticePoint>, vectors: Vec<LatticePoint>) -> Result<Self> {
        if functionals.len() != vectors.len() {
            return Err(Error::InvalidDatum("generator count mismatch".into()));
        }
        for p in functionals.iter().chain(vectors.iter()) {
            if p.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, got: p.rank() });
            }
        }
        let n = functionals.len();
        let gens: Vec<Vec<i64>> = (0..n)
            .map(|g| {
                let mut m = identity(rank);
                for i in 0..rank {
                    for j in 0..rank {
                        m[i * rank + j] -= vectors[g].coords()[i] * functionals[g].coords()[j];
                    }
                }
                m
            })
            .collect();

        let mut matrices = alloc::vec![identity(rank)];
        let mut words: Vec<Vec<u8>> = alloc::vec![Vec::new()];
        let mut index = BTreeMap::new();
        index.insert(matrices[0].clone(), 0usize);
        let mut queue = VecDeque::from([0usize]);
        // BFS in generator order yields shortlex-minimal reduced words.
        while let Some(cur) = queue.pop_front() {
            for (g, gm) in gens.iter().enumerate() {
                let m = mat_mul(&matrices[cur], gm, rank);
                if !index.contains_key(&m) {
                    if matrices.len() >= MAX_ORDER {
                        return Err(Error::WeylGroupTooLarge(MAX_ORDER));
                    }
                    let mut w = words[cur].clone();
                    w.push(g as u8);
                    index.insert(m.clone(), matrices.len());
                    queue.push_back(matrices.len());
                    matrices.push(m);
                    words.push(w);
                }
            }
        }
        let lookup = |m: &Vec<i64>| index[m];
        let right = matrices
            .iter()
            .map(|m| gens.iter().map(|g| lookup(&mat_mul(m, g, rank))).collect())
            .collect();
        let left = matrices
            .iter()
            .map(|m| gens.iter().map(|g| lookup(&mat_mul(g, m, rank))).collect())
            .collect();
        let inverse = matrices
            .iter()
            .map(|m| {
                let w = words[index[m]].clone();
                let mut acc = identity(rank);
                for &g in w.iter().rev() {
                    acc = mat_mul(&acc, &gens[g as usize], rank);
                }
                lookup(&acc)
            })
            .collect();
        Ok(Self {
            tag,
            rank,
            functionals,
            vectors,
            matrices,
            words,
            right,
            left,
            inverse,
            index,
        })
    }

    pub fn tag(&self) -> &LatticeTag {
        &self.tag
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.matrices.len()
    }

    pub fn num_generators(&self) -> usize {
        self.functionals.len()
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.order()
    }

    pub fn word(&self, w: usize) -> &[u8] {
        &self.words[w]
    }

    pub fn length(&self, w: usize) -> usize {
        self.words[w].len()
    }

    pub fn sign(&self, w: usize) -> i64 {
        if self.length(w).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn matrix(&self, w: usize) -> &[i64] {
        &self.matrices[w]
    }

    /// Index of the simple reflection `s_g`.
    pub fn generator(&self, g: usize) -> usize {
        self.right[0][g]
    }

    /// Index of `w s_g`.
    pub fn mul_gen_right(&self, w: usize, g: usize) -> usize {
        self.right[w][g]
    }

    /// Index of `s_g w`.
    pub fn mul_gen_left(&self, g: usize, w: usize) -> usize {
        self.left[w][g]
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.inverse[w]
    }

    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.words[b].iter().fold(a, |acc, &g| self.right[acc][g as usize])
    }

    pub fn index_of_matrix(&self, m: &[i64]) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn act(&self, w: usize, p: &LatticePoint) -> LatticePoint {
        let m = &self.matrices[w];
        let r = self.rank;
        (0..r)
            .map(|i| dot(&m[i * r..(i + 1) * r], p.coords()))
            .collect::<Vec<_>>()
            .into()
    }

    pub fn reflect(&self, g: usize, p: &LatticePoint) -> LatticePoint {
        let k = self.functionals[g].dot(p);
        p - &self.vectors[g].scale(k)
    }

    /// The functional `f_g` (a simple root).
    pub fn functional(&self, g: usize) -> &LatticePoint {
        &self.functionals[g]
    }

    /// The vector `v_g` (a simple coroot).
    pub fn vector(&self, g: usize) -> &LatticePoint {
        &self.vectors[g]
    }

    /// Smallest generator conjugate to `s_g`.
    pub fn conjugacy_representative(&self, g: usize) -> usize {
        let orbit = self.orbit(&self.vectors[g]);
        (0..g).find(|&h| orbit.binary_search(&self.vectors[h]).is_ok()).unwrap_or(g)
    }

    /// `f_g . p`, the pairing that decides the chamber walls.
    pub fn pairing(&self, g: usize, p: &LatticePoint) -> i64 {
        self.functionals[g].dot(p)
    }

    pub fn is_dominant(&self, p: &LatticePoint) -> bool {
        (0..self.num_generators()).all(|g| self.pairing(g, p) >= 0)
    }

    pub fn is_strictly_dominant(&self, p: &LatticePoint) -> bool {
        (0..self.num_generators()).all(|g| self.pairing(g, p) > 0)
    }

    /// Moves `p` into the dominant chamber, returning the dominant point and
    /// the element `w` with `w p` dominant.
    pub fn to_dominant(&self, p: &LatticePoint) -> (LatticePoint, usize) {
        let mut x = p.clone();
        let mut w = 0;
        while let Some(g) = (0..self.num_generators()).find(|&g| self.pairing(g, &x) < 0) {
            x = self.reflect(g, &x);
            w = self.left[w][g];
        }
        (x, w)
    }

    /// `Some((eta, sign))` with `alt(e^p) = sign * alt(e^eta)` and `eta`
    /// strictly dominant, or `None` when `p` lies on a wall.
    pub fn straighten(&self, p: &LatticePoint) -> Option<(LatticePoint, i64)> {
        let (x, w) = self.to_dominant(p);
        if self.is_strictly_dominant(&x) {
            Some((x, self.sign(w)))
        } else {
            None
        }
    }

    pub fn orbit(&self, p: &LatticePoint) -> Vec<LatticePoint> {
        let mut pts: Vec<LatticePoint> = self.elements().map(|w| self.act(w, p)).collect();
        pts.sort();
        pts.dedup();
        pts
    }
}

fn identity(r: usize) -> Vec<i64> {
    let mut m = alloc::vec![0; r * r];
    for i in 0..r {
        m[i * r + i] = 1;
    }
    m
}

fn mat_mul(a: &[i64], b: &[i64], r: usize) -> Vec<i64> {
    let mut out = alloc::vec![0; r * r];
    for i in 0..r {
        for k in 0..r {
            let x = a[i * r + k];
            if x != 0 {
                for j in 0..r {
                    out[i * r + j] += x * b[k * r + j];
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn a2() -> WeylGroup {
        // simple coroots in fundamental-coweight coordinates are the Cartan columns
        WeylGroup::generate(
            "a2".into(),
            2,
            vec![[1, 0].into(), [0, 1].into()],
            vec![[2, -1].into(), [-1, 2].into()],
        )
        .unwrap()
    }

    #[test]
    fn order_and_words() {
        let w = a2();
        assert_eq!(w.order(), 6);
        let longest = (0..6).max_by_key(|&i| w.length(i)).unwrap();
        assert_eq!(w.length(longest), 3);
        assert_eq!(w.word(longest), &[0, 1, 0]);
        assert_eq!(w.act(longest, &[1, 0].into()), [0, -1].into());
    }

    #[test]
    fn group_structure() {
        let w = a2();
        for a in w.elements() {
            assert_eq!(w.compose(a, w.inverse(a)), 0);
            for b in w.elements() {
                let ab = w.compose(a, b);
                assert_eq!(w.sign(ab), w.sign(a) * w.sign(b));
                let p = LatticePoint::from([3, -2]);
                assert_eq!(w.act(ab, &p), w.act(a, &w.act(b, &p)));
            }
        }
    }

    #[test]
    fn straightening() {
        let w = a2();
        assert_eq!(w.straighten(&[1, 1].into()), Some(([1, 1].into(), 1)));
        assert_eq!(w.straighten(&[-1, 2].into()), Some(([1, 1].into(), -1)));
        assert_eq!(w.straighten(&[0, 3].into()), None);
    }
}

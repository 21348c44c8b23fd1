//! Root data, their dual groups and isogeny decompositions.

mod cartan;
mod dual;
mod isogeny;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticeTag};
use crate::linalg::{self, IntMatrix};
use crate::scalar::{rat, Rational};
use crate::weyl::WeylGroup;

pub use cartan::{CartanFamily, CartanSpec, CartanType, LatticeChoice};
pub use dual::DualGroupDatum;
pub use isogeny::IsogenyDecomposition;

/// A (possibly non-reduced) root datum `(X^*, Φ, X_*, Φ^∨)` with root
/// multiplicities.
///
/// Roots are stored in coordinates of the character lattice and coroots in
/// the dual coordinates of the cocharacter lattice, so the pairing is the
/// dot product. Positive roots come first, then their negatives in the same
/// order.
#[derive(Clone, Debug)]
pub struct RootDatum {
    label: String,
    rank: usize,
    roots: Vec<LatticePoint>,
    coroots: Vec<LatticePoint>,
    positive: Vec<bool>,
    simple: Vec<usize>,
    mult: Vec<u32>,
    divisible: Vec<bool>,
    central: IntMatrix,
    weyl: WeylGroup,
}

impl RootDatum {
    /// Validates and assembles a root datum. `simple` lists the simple roots;
    /// positivity is derived from it. `mult` overrides default multiplicity 1
    /// and is keyed by root index.
    pub fn from_parts(
        label: &str,
        rank: usize,
        roots: Vec<LatticePoint>,
        coroots: Vec<LatticePoint>,
        simple: Vec<usize>,
        mult: &BTreeMap<usize, u32>,
    ) -> Result<Self> {
        let bad = |m: String| Error::InvalidDatum(m);
        if roots.len() != coroots.len() {
            return Err(bad("roots and coroots differ in number".into()));
        }
        for p in roots.iter().chain(coroots.iter()) {
            if p.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, got: p.rank() });
            }
        }
        let index: BTreeMap<&LatticePoint, usize> = roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
        if index.len() != roots.len() {
            return Err(bad("repeated root".into()));
        }
        for (i, (a, c)) in roots.iter().zip(&coroots).enumerate() {
            if a.dot(c) != 2 {
                return Err(bad(format!("root {i} pairs to {} with its coroot", a.dot(c))));
            }
            let Some(&j) = index.get(&-a) else {
                return Err(bad(format!("negative of root {i} missing")));
            };
            if coroots[j] != -c {
                return Err(bad(format!("coroot of -root {i} is not -coroot")));
            }
        }
        if simple.iter().any(|&s| s >= roots.len()) {
            return Err(bad("simple index out of range".into()));
        }
        for &s in &simple {
            for (i, (a, c)) in roots.iter().zip(&coroots).enumerate() {
                let ra = a - &roots[s].scale(a.dot(&coroots[s]));
                let rc = c - &coroots[s].scale(roots[s].dot(c));
                match index.get(&ra) {
                    Some(&j) if coroots[j] == rc => {}
                    _ => return Err(bad(format!("simple reflection {s} does not permute root {i}"))),
                }
            }
        }

        // positivity from the expansion in simple roots
        let basis = linalg::transpose(&simple.iter().map(|&s| roots[s].coords().iter().map(|&x| rat(x)).collect()).collect::<Vec<Vec<Rational>>>());
        let basis = if simple.is_empty() { Vec::new() } else { basis };
        let mut positive = Vec::with_capacity(roots.len());
        for (i, a) in roots.iter().enumerate() {
            let b: Vec<Rational> = a.coords().iter().map(|&x| rat(x)).collect();
            let coeffs = if simple.is_empty() {
                None
            } else {
                linalg::solve_unique(&basis, &b)
            };
            let Some(coeffs) = coeffs else {
                return Err(bad(format!("root {i} is not in the span of the simple roots")));
            };
            if coeffs.iter().any(|x| !x.is_integer()) {
                return Err(bad(format!("root {i} is not an integral combination of simple roots")));
            }
            let pos = coeffs.iter().all(|x| !x.is_negative());
            let neg = coeffs.iter().all(|x| !x.is_positive());
            if pos == neg {
                return Err(bad(format!("root {i} is neither positive nor negative")));
            }
            positive.push(pos);
        }

        let divisible: Vec<bool> = roots
            .iter()
            .map(|a| a.coords().iter().all(|x| x % 2 == 0) && index.contains_key(&LatticePoint::from(a.coords().iter().map(|x| x / 2).collect::<Vec<_>>())))
            .collect();

        let mut mults = alloc::vec![1u32; roots.len()];
        for (&i, &d) in mult {
            if i >= roots.len() || !positive[i] || d == 0 {
                return Err(bad(format!("invalid multiplicity key {i}")));
            }
            mults[i] = d;
            mults[index[&-&roots[i]]] = d;
        }
        for &s in &simple {
            for (i, a) in roots.iter().enumerate() {
                let ra = a - &roots[s].scale(a.dot(&coroots[s]));
                if mults[index[&ra]] != mults[i] {
                    let pos = if positive[i] { i } else { index[&-a] };
                    return Err(Error::MultNotOrbitConstant(pos));
                }
            }
        }

        let simple_coroots: IntMatrix = simple.iter().map(|&s| coroots[s].coords().to_vec()).collect();
        let central = linalg::integer_kernel(&simple_coroots, rank);

        let weyl = WeylGroup::generate(
            cochar_tag(label),
            rank,
            simple.iter().map(|&s| roots[s].clone()).collect(),
            simple.iter().map(|&s| coroots[s].clone()).collect(),
        )?;
        Ok(Self {
            label: label.into(),
            rank,
            roots,
            coroots,
            positive,
            simple,
            mult: mults,
            divisible,
            central,
            weyl,
        })
    }

    pub fn build(spec: &CartanSpec) -> Result<Self> {
        cartan::build(spec)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots.
    pub fn semisimple_rank(&self) -> usize {
        self.simple.len()
    }

    pub fn roots(&self) -> &[LatticePoint] {
        &self.roots
    }

    pub fn coroots(&self) -> &[LatticePoint] {
        &self.coroots
    }

    pub fn root(&self, i: usize) -> &LatticePoint {
        &self.roots[i]
    }

    pub fn coroot(&self, i: usize) -> &LatticePoint {
        &self.coroots[i]
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    pub fn simple_roots(&self) -> impl Iterator<Item = &LatticePoint> + '_ {
        self.simple.iter().map(|&s| &self.roots[s])
    }

    pub fn simple_coroots(&self) -> impl Iterator<Item = &LatticePoint> + '_ {
        self.simple.iter().map(|&s| &self.coroots[s])
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.positive[i]
    }

    pub fn positive_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.roots.len()).filter(|&i| self.positive[i])
    }

    pub fn mult(&self, i: usize) -> u32 {
        self.mult[i]
    }

    pub fn is_divisible(&self, i: usize) -> bool {
        self.divisible[i]
    }

    pub fn is_nonreduced(&self) -> bool {
        self.divisible.iter().any(|&d| d)
    }

    /// Indices of the non-divisible roots.
    pub fn nondivisible_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.roots.len()).filter(|&i| !self.divisible[i])
    }

    pub fn index_of_root(&self, a: &LatticePoint) -> Option<usize> {
        self.roots.iter().position(|r| r == a)
    }

    /// The Weyl group acting on the cocharacter lattice.
    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    /// Tag of the cocharacter lattice `X_*`.
    pub fn cochar_tag(&self) -> &LatticeTag {
        self.weyl.tag()
    }

    /// Characters vanishing on all coroots, as rows.
    pub fn central_characters(&self) -> &IntMatrix {
        &self.central
    }

    pub fn dominant(&self, p: &LatticePoint) -> bool {
        self.simple_roots().all(|a| a.dot(p) >= 0)
    }

    pub fn strictly_dominant(&self, p: &LatticePoint) -> bool {
        self.simple_roots().all(|a| a.dot(p) > 0)
    }

    /// `A_ij = <α_i, α_j^∨>` over the simple roots.
    pub fn cartan_matrix(&self) -> IntMatrix {
        self.simple_roots()
            .map(|a| self.simple_coroots().map(|c| a.dot(c)).collect())
            .collect()
    }

    /// The fundamental coweights, a `Z`-basis of the coweight lattice inside
    /// the coroot span, in rational cocharacter coordinates.
    pub fn coweight_lattice(&self) -> Vec<Vec<Rational>> {
        let n = self.simple.len();
        let a = linalg::to_rational(&self.cartan_matrix());
        let inv = linalg::inverse(&a).expect("Cartan matrix is invertible");
        (0..n)
            .map(|j| {
                let mut w = alloc::vec![Rational::zero(); self.rank];
                for (k, c) in self.simple_coroots().enumerate() {
                    for (wi, &ci) in w.iter_mut().zip(c.coords()) {
                        *wi += &inv[k][j] * rat(ci);
                    }
                }
                w
            })
            .collect()
    }

    /// Half the sum of positive non-divisible coroots, in rational
    /// cocharacter coordinates.
    pub fn rho_vee_rational(&self) -> Vec<Rational> {
        let mut s = alloc::vec![Rational::zero(); self.rank];
        for i in self.positive_indices().filter(|&i| !self.divisible[i]) {
            for (x, &c) in s.iter_mut().zip(self.coroots[i].coords()) {
                *x += rat(c);
            }
        }
        s.into_iter().map(|x| x / rat(2)).collect()
    }

    /// `ρ^∨` if it lies in the cocharacter lattice.
    pub fn rho_vee(&self) -> Option<LatticePoint> {
        linalg::rational_vec_to_int(&self.rho_vee_rational()).map(Into::into)
    }

    pub fn dual_datum(&self) -> Result<DualGroupDatum> {
        DualGroupDatum::new(self)
    }

    pub fn isogeny_decomposition(&self) -> Result<IsogenyDecomposition> {
        IsogenyDecomposition::new(self)
    }

    /// Points `λ` with `lo <= <α, λ> <= hi` for simple `α`, and central
    /// coordinates in `[-central_bound, central_bound]`.
    pub fn box_points(&self, lo: i64, hi: i64, central_bound: i64) -> Vec<LatticePoint> {
        let n = self.simple.len();
        let c = self.central.len();
        let f: IntMatrix = self
            .simple_roots()
            .map(|a| a.coords().to_vec())
            .chain(self.central.iter().cloned())
            .collect();
        let finv = linalg::inverse(&linalg::to_rational(&f)).expect("simple roots and central characters form a basis");
        let mut ranges: Vec<(i64, i64)> = alloc::vec![(lo, hi); n];
        ranges.extend(core::iter::repeat_n((-central_bound, central_bound), c));
        let mut out = Vec::new();
        let mut t: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        if ranges.iter().any(|r| r.0 > r.1) {
            return out;
        }
        loop {
            let tv: Vec<Rational> = t.iter().map(|&x| rat(x)).collect();
            let x = linalg::rat_mat_vec(&finv, &tv);
            if let Some(p) = linalg::rational_vec_to_int(&x) {
                out.push(LatticePoint::from(p));
            }
            let mut k = 0;
            loop {
                if k == t.len() {
                    out.sort();
                    return out;
                }
                if t[k] < ranges[k].1 {
                    t[k] += 1;
                    break;
                }
                t[k] = ranges[k].0;
                k += 1;
            }
        }
    }

    /// Strictly dominant points with simple pairings in `1..=n`.
    pub fn strictly_dominant_box(&self, n: i64) -> Vec<LatticePoint> {
        self.box_points(1, n, n)
    }

    /// `sum_{α>0} <α, p>`, the height of a cocharacter.
    pub fn height(&self, p: &LatticePoint) -> i64 {
        self.positive_indices().map(|i| self.roots[i].dot(p)).sum()
    }

    /// The points of [`strictly_dominant_box`](Self::strictly_dominant_box)
    /// of height at most the lowest height on its outer faces, so that the
    /// set is closed downward in the dominance order.
    pub fn strictly_dominant_height_box(&self, n: i64) -> Vec<LatticePoint> {
        let cube = self.strictly_dominant_box(n);
        let simple: Vec<&LatticePoint> = self.simple_roots().collect();
        let Some(bound) = cube
            .iter()
            .filter(|p| simple.iter().any(|a| a.dot(p) == n))
            .map(|p| self.height(p))
            .min()
        else {
            return cube;
        };
        cube.into_iter().filter(|p| self.height(p) <= bound).collect()
    }

    /// Dominant points with simple pairings in `0..=n`.
    pub fn dominant_box(&self, n: i64) -> Vec<LatticePoint> {
        self.box_points(0, n, n)
    }
}

pub(crate) fn cochar_tag(label: &str) -> LatticeTag {
    LatticeTag::from(format!("X_*({label})"))
}

#[cfg(test)]
mod tests;

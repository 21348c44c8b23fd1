use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{LatticeMap, LatticePoint, LatticeTag};
use crate::linalg::{self, IntMatrix, RatMatrix};
use crate::scalar::{rat, Rational};
use crate::weyl::WeylGroup;

use super::RootDatum;

/// The root datum `(𝒳, (Φ^nd)^∨, 𝒴, Φ^nd)` of the dual group, where
/// `𝒳 = X_* + Λ^∨` and `𝒴 = Hom(𝒳, Z)`.
///
/// Points of `𝒳` are written in the basis `x_basis`; dual roots live in `𝒳`
/// and dual coroots in the dual basis of `𝒴`.
#[derive(Clone, Debug)]
pub struct DualGroupDatum {
    label: String,
    rank: usize,
    x_basis: RatMatrix,
    inc: LatticeMap,
    roots: Vec<LatticePoint>,
    coroots: Vec<LatticePoint>,
    positive: Vec<bool>,
    simple: Vec<usize>,
    source_index: Vec<usize>,
    rho_vee: LatticePoint,
    weyl: WeylGroup,
}

impl DualGroupDatum {
    pub(super) fn new(datum: &RootDatum) -> Result<Self> {
        let r = datum.rank();
        let mut gens: Vec<Vec<Rational>> = (0..r)
            .map(|i| (0..r).map(|j| rat(i64::from(i == j))).collect())
            .collect();
        gens.extend(datum.coweight_lattice());
        let x_basis = linalg::rational_lattice_basis(&gens);
        if x_basis.len() != r {
            return Err(Error::DegenerateLattice);
        }
        // columns of xb are the basis vectors
        let xb = linalg::transpose(&x_basis);
        let xb_inv = linalg::inverse(&xb).ok_or(Error::DegenerateLattice)?;
        let to_x = |v: &[Rational]| -> Result<LatticePoint> {
            let x = linalg::rat_mat_vec(&xb_inv, v);
            linalg::rational_vec_to_int(&x)
                .map(Into::into)
                .ok_or_else(|| Error::InvalidDatum("point is not in the dual lattice".into()))
        };
        let as_rat = |p: &LatticePoint| -> Vec<Rational> { p.coords().iter().map(|&x| rat(x)).collect() };

        let inc_rows: Result<Vec<Vec<i64>>> = (0..r)
            .map(|j| {
                let e: Vec<Rational> = (0..r).map(|i| rat(i64::from(i == j))).collect();
                to_x(&e).map(|p| p.coords().to_vec())
            })
            .collect();
        let inc = LatticeMap::new(linalg::transpose(&inc_rows?), r)?;

        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        let mut positive = Vec::new();
        let mut source_index = Vec::new();
        let mut remap = BTreeMap::new();
        for i in datum.nondivisible_indices() {
            remap.insert(i, roots.len());
            roots.push(to_x(&as_rat(datum.coroot(i)))?);
            let y: Vec<Rational> = x_basis
                .iter()
                .map(|b| {
                    let mut s = Rational::zero();
                    for (bi, &ai) in b.iter().zip(datum.root(i).coords()) {
                        s += bi * rat(ai);
                    }
                    s
                })
                .collect();
            let y = linalg::rational_vec_to_int(&y)
                .ok_or_else(|| Error::InvalidDatum(format!("root {i} is not integral on the dual lattice")))?;
            coroots.push(LatticePoint::from(y));
            positive.push(datum.is_positive(i));
            source_index.push(i);
        }
        let simple: Vec<usize> = datum.simple_indices().iter().map(|s| remap[s]).collect();

        let rho_vee = to_x(&datum.rho_vee_rational())
            .map_err(|_| Error::InvalidDatum("half-sum of positive coroots is not in the dual lattice".into()))?;
        let label = datum.label().into();
        let weyl = WeylGroup::generate(
            dual_tag(datum.label()),
            r,
            simple.iter().map(|&s| coroots[s].clone()).collect(),
            simple.iter().map(|&s| roots[s].clone()).collect(),
        )?;
        Ok(Self {
            label,
            rank: r,
            x_basis,
            inc,
            roots,
            coroots,
            positive,
            simple,
            source_index,
            rho_vee,
            weyl,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Tag of `𝒳`.
    pub fn tag(&self) -> &LatticeTag {
        self.weyl.tag()
    }

    /// Basis of `𝒳` in rational cocharacter coordinates.
    pub fn x_basis(&self) -> &RatMatrix {
        &self.x_basis
    }

    /// The inclusion `X_* -> 𝒳`.
    pub fn inc(&self) -> &LatticeMap {
        &self.inc
    }

    /// Coroots of the non-divisible roots, in `𝒳` coordinates.
    pub fn dual_roots(&self) -> &[LatticePoint] {
        &self.roots
    }

    /// Non-divisible roots, in `𝒴` coordinates.
    pub fn dual_coroots(&self) -> &[LatticePoint] {
        &self.coroots
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.positive[i]
    }

    pub fn positive_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.roots.len()).filter(|&i| self.positive[i])
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    /// Index of the corresponding root in the source datum.
    pub fn source_index(&self, i: usize) -> usize {
        self.source_index[i]
    }

    pub fn rho_vee(&self) -> &LatticePoint {
        &self.rho_vee
    }

    /// The Weyl group acting on `𝒳`.
    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn dominant(&self, x: &LatticePoint) -> bool {
        self.weyl.is_dominant(x)
    }

    pub fn strictly_dominant(&self, x: &LatticePoint) -> bool {
        self.weyl.is_strictly_dominant(x)
    }

    pub fn cartan_matrix(&self) -> IntMatrix {
        self.simple
            .iter()
            .map(|&i| self.simple.iter().map(|&j| self.roots[i].dot(&self.coroots[j])).collect())
            .collect()
    }

    /// The quadruple as a root datum whose character lattice is `𝒳`.
    pub fn as_root_datum(&self) -> Result<RootDatum> {
        RootDatum::from_parts(
            &format!("dual({})", self.label),
            self.rank,
            self.roots.clone(),
            self.coroots.clone(),
            self.simple.clone(),
            &BTreeMap::new(),
        )
    }

    /// Whether the dual coroots span `𝒴`, i.e. the dual group is simply
    /// connected.
    pub fn is_simply_connected(&self) -> bool {
        let rows: IntMatrix = self.simple.iter().map(|&s| self.coroots[s].coords().to_vec()).collect();
        rows.len() == self.rank && linalg::is_unimodular(&rows)
    }

    /// `(x, y) = sum over dual coroots of <β, x><β, y>`, a W-invariant form.
    pub fn invariant_form(&self, x: &LatticePoint, y: &LatticePoint) -> i64 {
        self.coroots.iter().map(|b| b.dot(x) * b.dot(y)).sum()
    }

    /// Dominant points of `𝒳` with simple pairings in `0..=n` and central
    /// coordinates in `[-n, n]`.
    pub fn dominant_box(&self, n: i64) -> Vec<LatticePoint> {
        let simple_roots: IntMatrix = self.simple.iter().map(|&s| self.roots[s].coords().to_vec()).collect();
        let f: IntMatrix = self
            .simple
            .iter()
            .map(|&s| self.coroots[s].coords().to_vec())
            .chain(linalg::integer_kernel(&simple_roots, self.rank))
            .collect();
        let finv = linalg::inverse(&linalg::to_rational(&f)).expect("basis");
        let dims = f.len();
        let ns = self.simple.len();
        let mut out = Vec::new();
        let mut t: Vec<i64> = (0..dims).map(|k| if k < ns { 0 } else { -n }).collect();
        loop {
            let tv: Vec<Rational> = t.iter().map(|&x| rat(x)).collect();
            if let Some(p) = linalg::rational_vec_to_int(&linalg::rat_mat_vec(&finv, &tv)) {
                out.push(LatticePoint::from(p));
            }
            let mut k = 0;
            loop {
                if k == dims {
                    out.sort();
                    return out;
                }
                if t[k] < n {
                    t[k] += 1;
                    break;
                }
                t[k] = if k < ns { 0 } else { -n };
                k += 1;
            }
        }
    }
}

pub(crate) fn dual_tag(label: &str) -> LatticeTag {
    LatticeTag::from(format!("dual({label})"))
}

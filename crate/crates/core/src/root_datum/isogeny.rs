use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::{LatticeMap, LatticePoint, LatticeTag};
use crate::linalg::{self, IntMatrix};
use crate::scalar::{rat, Rational};

use super::RootDatum;

/// `G' -> G' / Z` (adjoint quotient) together with `G' -> G' / DG'` (the
/// cocenter torus `T`), realized on cocharacters as
/// `π_*: X_*(A') -> X_*(A) ⊕ X_*(T)`.
#[derive(Clone, Debug)]
pub struct IsogenyDecomposition {
    source: RootDatum,
    adjoint: RootDatum,
    torus_rank: usize,
    pi_star: LatticeMap,
    ambient: LatticeTag,
}

impl IsogenyDecomposition {
    pub(super) fn new(source: &RootDatum) -> Result<Self> {
        let r = source.rank();
        let n = source.semisimple_rank();
        // X_*(A') -> Λ^∨ pairs with the simple roots; X_*(T) is read off by the
        // saturated lattice of characters killing every coroot.
        let central = source.central_characters().clone();
        let torus_rank = central.len();
        let rows: IntMatrix = source
            .simple_roots()
            .map(|a| a.coords().to_vec())
            .chain(central.iter().cloned())
            .collect();
        let pi_star = LatticeMap::new(rows, r)?;
        if !pi_star.is_injective() {
            return Err(Error::InvalidDatum("cocharacter map has a kernel".into()));
        }

        // adjoint datum: roots in simple-root coordinates, coroots in
        // fundamental-coweight coordinates
        let sbasis = linalg::transpose(
            &source
                .simple_roots()
                .map(|a| a.coords().iter().map(|&x| rat(x)).collect())
                .collect::<Vec<Vec<Rational>>>(),
        );
        let mut roots = Vec::with_capacity(source.roots().len());
        let mut coroots = Vec::with_capacity(source.roots().len());
        for (a, c) in source.roots().iter().zip(source.coroots()) {
            let av: Vec<Rational> = a.coords().iter().map(|&x| rat(x)).collect();
            let coeffs = linalg::solve_unique(&sbasis, &av)
                .and_then(|x| linalg::rational_vec_to_int(&x))
                .ok_or_else(|| Error::InvalidDatum("root outside the simple-root lattice".into()))?;
            roots.push(LatticePoint::from(coeffs));
            coroots.push(LatticePoint::from(source.simple_roots().map(|s| s.dot(c)).collect::<Vec<_>>()));
        }
        let mult = source
            .positive_indices()
            .filter(|&i| source.mult(i) != 1)
            .map(|i| (i, source.mult(i)))
            .collect();
        let adjoint = RootDatum::from_parts(
            &format!("{}/Z", source.label()),
            n,
            roots,
            coroots,
            source.simple_indices().to_vec(),
            &mult,
        )?;
        let ambient = LatticeTag::from(format!("X_*({}/Z) + X_*(T)", source.label()));
        Ok(Self {
            source: source.clone(),
            adjoint,
            torus_rank,
            pi_star,
            ambient,
        })
    }

    pub fn source(&self) -> &RootDatum {
        &self.source
    }

    pub fn adjoint(&self) -> &RootDatum {
        &self.adjoint
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn pi_star(&self) -> &LatticeMap {
        &self.pi_star
    }

    /// Tag of `X_*(A) ⊕ X_*(T)`.
    pub fn ambient_tag(&self) -> &LatticeTag {
        &self.ambient
    }

    pub fn ambient_rank(&self) -> usize {
        self.adjoint.rank() + self.torus_rank
    }

    /// `π_*(μ') = (μ, λ)`.
    pub fn split(&self, p: &LatticePoint) -> (LatticePoint, LatticePoint) {
        self.pi_star.apply(p).split_at(self.adjoint.rank())
    }
}

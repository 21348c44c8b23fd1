use alloc::collections::BTreeMap;

use crate::algebra::GroupAlgebraElement;
use crate::characters::{character_on_cocharacters, tensor_coeffs};
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticeTag};
use crate::root_datum::{DualGroupDatum, RootDatum};
use crate::scalar::{rat, LaurentScalar};
use crate::weyl::WeylGroup;

/// An element of the spherical-Iwahori bimodule, written in the basis
/// `θ_λ^K`. Its coordinates live in the group algebra of the cocharacter
/// lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SavinModule {
    element: GroupAlgebraElement,
}

impl SavinModule {
    pub fn zero(datum: &RootDatum) -> Self {
        Self {
            element: GroupAlgebraElement::zero(datum.cochar_tag().clone(), datum.rank()),
        }
    }

    /// `θ_λ^K`.
    pub fn theta(datum: &RootDatum, lambda: LatticePoint) -> Self {
        Self {
            element: GroupAlgebraElement::basis(datum.cochar_tag().clone(), lambda),
        }
    }

    /// Interprets `e^λ` coordinates as `θ_λ^K` coordinates.
    pub fn from_coordinates(element: GroupAlgebraElement) -> Self {
        Self { element }
    }

    pub fn coordinates(&self) -> &GroupAlgebraElement {
        &self.element
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            element: self.element.add(&other.element)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            element: self.element.sub(&other.element)?,
        })
    }

    pub fn scale(&self, c: &LaurentScalar) -> Self {
        Self {
            element: self.element.scale(c),
        }
    }

    /// `θ_λ^K -> e^λ`.
    pub fn savin_transform(&self) -> GroupAlgebraElement {
        self.element.clone()
    }

    /// Right action of the spherical basis element `A_λ`: multiplication by
    /// `ch V_λ` after the transform.
    pub fn act_spherical(&self, dual: &DualGroupDatum, lambda: &LatticePoint) -> Result<Self> {
        let ch = character_on_cocharacters(dual, lambda, self.element.lattice())?;
        Ok(Self {
            element: self.element.mul(&ch)?,
        })
    }

    /// `alt` of the transform, straightened into the `φ_μ` basis.
    pub fn project_to_whittaker(&self, weyl: &WeylGroup) -> Result<WhittakerModuleModel> {
        if weyl.tag() != self.element.lattice() {
            return Err(Error::LatticeMismatch {
                left: self.element.lattice().as_str().into(),
                right: weyl.tag().as_str().into(),
            });
        }
        let mut out = WhittakerModuleModel::zero(self.element.lattice().clone(), self.element.rank());
        for (p, c) in self.element.terms() {
            if let Some((eta, sign)) = weyl.straighten(p) {
                out.add_term(eta, c.scale(&rat(sign)));
            }
        }
        Ok(out)
    }
}

/// Coordinates in the basis `φ_μ`, `μ` strictly dominant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhittakerModuleModel {
    lattice: LatticeTag,
    rank: usize,
    coords: BTreeMap<LatticePoint, LaurentScalar>,
}

impl WhittakerModuleModel {
    pub fn zero(lattice: LatticeTag, rank: usize) -> Self {
        Self {
            lattice,
            rank,
            coords: BTreeMap::new(),
        }
    }

    /// `φ_μ`.
    pub fn phi(weyl: &WeylGroup, mu: LatticePoint) -> Result<Self> {
        if !weyl.is_strictly_dominant(&mu) {
            return Err(Error::NonStrictlyDominant(mu));
        }
        let mut out = Self::zero(weyl.tag().clone(), weyl.rank());
        out.add_term(mu, LaurentScalar::one());
        Ok(out)
    }

    fn add_term(&mut self, mu: LatticePoint, c: LaurentScalar) {
        let slot = self.coords.entry(mu.clone()).or_default();
        slot.add_assign_ref(&c);
        if slot.is_zero() {
            self.coords.remove(&mu);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.lattice != other.lattice {
            return Err(Error::LatticeMismatch {
                left: self.lattice.as_str().into(),
                right: other.lattice.as_str().into(),
            });
        }
        let mut out = self.clone();
        for (mu, c) in &other.coords {
            out.add_term(mu.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &BTreeMap<LatticePoint, LaurentScalar> {
        &self.coords
    }

    pub fn coeff(&self, mu: &LatticePoint) -> LaurentScalar {
        self.coords.get(mu).cloned().unwrap_or_default()
    }

    /// `j(φ_μ) = alt(e^μ)`, extended linearly.
    pub fn j(&self, weyl: &WeylGroup) -> Result<GroupAlgebraElement> {
        if weyl.tag() != &self.lattice {
            return Err(Error::LatticeMismatch {
                left: self.lattice.as_str().into(),
                right: weyl.tag().as_str().into(),
            });
        }
        let mut acc = GroupAlgebraElement::zero(self.lattice.clone(), self.rank);
        for w in weyl.elements() {
            let sign = rat(weyl.sign(w));
            for (mu, c) in &self.coords {
                acc.add_term(weyl.act(w, mu), c.scale(&sign));
            }
        }
        Ok(acc)
    }
}

/// `φ_μ * A_λ = sum_η c^η φ_η` with `η` restricted to the cocharacter
/// lattice.
pub fn phi_action(datum: &RootDatum, dual: &DualGroupDatum, mu: &LatticePoint, lambda: &LatticePoint) -> Result<WhittakerModuleModel> {
    if !datum.strictly_dominant(mu) {
        return Err(Error::NonStrictlyDominant(mu.clone()));
    }
    if !datum.dominant(lambda) {
        return Err(Error::NonDominant(lambda.clone()));
    }
    let tc = tensor_coeffs(dual, lambda, &dual.inc().apply(mu))?;
    let mut out = WhittakerModuleModel::zero(datum.cochar_tag().clone(), datum.rank());
    for (eta, &c) in tc.iter() {
        if let Some(e) = dual.inc().preimage(eta) {
            out.add_term(e, LaurentScalar::from_int(c));
        }
    }
    Ok(out)
}

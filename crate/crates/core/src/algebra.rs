//! The group algebra `Q[v^±][L]` of a lattice `L`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{LatticeMap, LatticePoint, LatticeTag};
use crate::scalar::{rat_pow, LaurentScalar, Rational};
use crate::weyl::WeylGroup;

/// A finite sum `sum c_λ e^λ` over a tagged lattice. Terms are kept in
/// lexicographic order of exponents and zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupAlgebraElement {
    lattice: LatticeTag,
    rank: usize,
    terms: BTreeMap<LatticePoint, LaurentScalar>,
}

impl GroupAlgebraElement {
    pub fn zero(lattice: LatticeTag, rank: usize) -> Self {
        Self {
            lattice,
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(lattice: LatticeTag, rank: usize) -> Self {
        Self::basis(lattice, LatticePoint::zero(rank))
    }

    /// `e^λ`.
    pub fn basis(lattice: LatticeTag, point: LatticePoint) -> Self {
        Self::monomial(lattice, point, LaurentScalar::one())
    }

    pub fn monomial(lattice: LatticeTag, point: LatticePoint, coeff: LaurentScalar) -> Self {
        let mut out = Self::zero(lattice, point.rank());
        out.add_term(point, coeff);
        out
    }

    pub fn from_terms<I>(lattice: LatticeTag, rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (LatticePoint, LaurentScalar)>,
    {
        let mut out = Self::zero(lattice, rank);
        for (p, c) in terms {
            if p.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, got: p.rank() });
            }
            out.add_term(p, c);
        }
        Ok(out)
    }

    pub fn lattice(&self) -> &LatticeTag {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticePoint, &LaurentScalar)> + '_ {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &LatticePoint> + '_ {
        self.terms.keys()
    }

    pub fn coeff(&self, p: &LatticePoint) -> LaurentScalar {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, p: LatticePoint, c: LaurentScalar) {
        debug_assert_eq!(p.rank(), self.rank);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(slot) => {
                slot.add_assign_ref(&c);
                if slot.is_zero() {
                    self.terms.remove(&p);
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.lattice != other.lattice {
            return Err(Error::LatticeMismatch {
                left: self.lattice.as_str().into(),
                right: other.lattice.as_str().into(),
            });
        }
        if self.rank != other.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: other.rank });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), -c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.lattice.clone(), self.rank);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                out.add_term(p + q, a * b);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &LaurentScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.lattice.clone(), self.rank);
        }
        self.map_coeffs(|x| x * c)
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.lattice.clone(), self.rank);
        }
        self.map_coeffs(|x| x.scale(c))
    }

    /// Multiplies by `e^λ`.
    pub fn translate(&self, by: &LatticePoint) -> Self {
        Self {
            lattice: self.lattice.clone(),
            rank: self.rank,
            terms: self.terms.iter().map(|(p, c)| (p + by, c.clone())).collect(),
        }
    }

    fn map_coeffs(&self, f: impl Fn(&LaurentScalar) -> LaurentScalar) -> Self {
        Self {
            lattice: self.lattice.clone(),
            rank: self.rank,
            terms: self.terms.iter().map(|(p, c)| (p.clone(), f(c))).collect(),
        }
    }

    /// Applies `f` to every exponent, landing in `lattice`.
    pub fn map_points(&self, lattice: LatticeTag, rank: usize, f: impl Fn(&LatticePoint) -> LatticePoint) -> Self {
        let mut out = Self::zero(lattice, rank);
        for (p, c) in &self.terms {
            out.add_term(f(p), c.clone());
        }
        out
    }

    pub fn retag(&self, lattice: LatticeTag) -> Self {
        Self {
            lattice,
            rank: self.rank,
            terms: self.terms.clone(),
        }
    }

    /// Pushforward along a lattice map.
    pub fn push_forward(&self, map: &LatticeMap, lattice: LatticeTag) -> Result<Self> {
        if map.source_rank() != self.rank {
            return Err(Error::RankMismatch { expected: map.source_rank(), got: self.rank });
        }
        Ok(self.map_points(lattice, map.target_rank(), |p| map.apply(p)))
    }

    /// Pullback along an injective lattice map, `None` if some exponent is
    /// outside the image.
    pub fn pull_back(&self, map: &LatticeMap, lattice: LatticeTag) -> Option<Self> {
        let mut out = Self::zero(lattice, map.source_rank());
        for (p, c) in &self.terms {
            out.add_term(map.preimage(p)?, c.clone());
        }
        Some(out)
    }

    fn check_weyl(&self, w: &WeylGroup) -> Result<()> {
        if w.tag() != &self.lattice {
            return Err(Error::LatticeMismatch {
                left: self.lattice.as_str().into(),
                right: w.tag().as_str().into(),
            });
        }
        Ok(())
    }

    /// `e^λ -> e^{wλ}`.
    pub fn weyl_act(&self, group: &WeylGroup, w: usize) -> Result<Self> {
        self.check_weyl(group)?;
        Ok(self.map_points(self.lattice.clone(), self.rank, |p| group.act(w, p)))
    }

    /// `sum_w sign(w) w·a`.
    pub fn alt(&self, group: &WeylGroup) -> Result<Self> {
        self.check_weyl(group)?;
        let mut out = Self::zero(self.lattice.clone(), self.rank);
        for w in group.elements() {
            let sign = Rational::from_integer(group.sign(w).into());
            for (p, c) in &self.terms {
                out.add_term(group.act(w, p), c.scale(&sign));
            }
        }
        Ok(out)
    }

    pub fn is_symmetric(&self, group: &WeylGroup) -> bool {
        self.check_weyl(group).is_ok()
            && (0..group.num_generators()).all(|g| {
                self.terms
                    .iter()
                    .all(|(p, c)| self.terms.get(&group.reflect(g, p)) == Some(c))
            })
    }

    pub fn is_alternating(&self, group: &WeylGroup) -> bool {
        self.check_weyl(group).is_ok()
            && (0..group.num_generators()).all(|g| {
                self.terms.iter().all(|(p, c)| {
                    self.terms
                        .get(&group.reflect(g, p))
                        .is_some_and(|d| (c + d).is_zero())
                })
            })
    }

    /// Componentwise minimum of the support.
    fn min_exponent(&self) -> Option<LatticePoint> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, p| acc.componentwise_min(p)))
    }

    /// The exact quotient `num / den`, or `NonDivisible`.
    ///
    /// Both operands are shifted into the positive orthant and divided by
    /// lexicographic leading-term elimination; coefficients are divided
    /// exactly in `Q[v^±]`.
    pub fn exact_divide(&self, den: &Self) -> Result<Self> {
        self.check(den)?;
        let Some(dmin) = den.min_exponent() else {
            return Err(Error::DivisionByZero);
        };
        let Some(nmin) = self.min_exponent() else {
            return Ok(self.clone());
        };
        let d = den.translate(&-&dmin);
        let mut rem = self.translate(&-&nmin);
        let (dlead, dcoeff) = d.terms.iter().next_back().map(|(p, c)| (p.clone(), c.clone())).expect("nonzero");
        let mut quot = Self::zero(self.lattice.clone(), self.rank);
        while let Some((rlead, rcoeff)) = rem.terms.iter().next_back() {
            if !rlead.dominates(&dlead) {
                return Err(Error::NonDivisible);
            }
            let shift = rlead - &dlead;
            let c = rcoeff.exact_div(&dcoeff)?;
            for (p, x) in &d.terms {
                rem.add_term(p + &shift, -(x * &c));
            }
            quot.add_term(shift, c);
        }
        Ok(quot.translate(&(&nmin - &dmin)))
    }

    /// Value under `v -> v_value`, `e^λ -> prod z_i^{λ_i}`.
    pub fn evaluate(&self, v_value: &Rational, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.rank {
            return Err(Error::PointArity { expected: self.rank, got: point.len() });
        }
        let mut acc = Rational::zero();
        for (p, c) in &self.terms {
            let mut mono = Rational::one();
            for (z, &k) in point.iter().zip(p.coords()) {
                let k = i32::try_from(k).map_err(|_| Error::ZeroSpecialization)?;
                mono *= rat_pow(z, k)?;
            }
            acc += c.evaluate(v_value)? * mono;
        }
        Ok(acc)
    }

    /// Sum of all coefficients (`e^λ -> 1`), as a Laurent scalar.
    pub fn augmentation(&self) -> LaurentScalar {
        let mut acc = LaurentScalar::zero();
        for c in self.terms.values() {
            acc.add_assign_ref(c);
        }
        acc
    }

    pub fn into_terms(self) -> Vec<(LatticePoint, LaurentScalar)> {
        self.terms.into_iter().collect()
    }
}

impl fmt::Debug for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}<{}>", self, self.lattice)
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "e{p}")?;
            } else {
                write!(f, "({c})*e{p}")?;
            }
        }
        Ok(())
    }
}

//! Spherical Whittaker values: the recursion, its closed-form solutions for
//! both conductors, the reduction from a general group to its adjoint
//! quotient, and numeric specialization.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::GroupAlgebraElement;
use crate::characters::{character_on_cocharacters, tensor_coeffs, weyl_character};
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticeTag};
use crate::linalg;
use crate::root_datum::{DualGroupDatum, IsogenyDecomposition, RootDatum};
use crate::scalar::{ratio, LaurentScalar, Rational};

/// Conductor of the Whittaker character.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Conductor {
    /// Conductor `p`: values are indexed by strictly dominant cocharacters.
    P,
    /// Conductor `O`: values are indexed by dominant cocharacters.
    O,
}

impl fmt::Display for Conductor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conductor::P => "p",
            Conductor::O => "O",
        })
    }
}

/// Values `W(m_μ)` for finitely many `μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhittakerTable {
    conductor: Conductor,
    lattice: LatticeTag,
    rank: usize,
    normalization: GroupAlgebraElement,
    values: BTreeMap<LatticePoint, GroupAlgebraElement>,
}

impl WhittakerTable {
    /// Empty table over the cocharacter lattice of `datum`, normalization `e^0`.
    pub fn new(conductor: Conductor, datum: &RootDatum) -> Self {
        let lattice = datum.cochar_tag().clone();
        Self {
            conductor,
            normalization: GroupAlgebraElement::one(lattice.clone(), datum.rank()),
            lattice,
            rank: datum.rank(),
            values: BTreeMap::new(),
        }
    }

    pub fn with_normalization(mut self, r: GroupAlgebraElement) -> Self {
        self.normalization = r;
        self
    }

    pub fn conductor(&self) -> Conductor {
        self.conductor
    }

    pub fn lattice(&self) -> &LatticeTag {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn normalization(&self) -> &GroupAlgebraElement {
        &self.normalization
    }

    /// Inserts a value, checking the key against the conductor's index set.
    pub fn insert(&mut self, datum: &RootDatum, key: LatticePoint, value: GroupAlgebraElement) -> Result<()> {
        if key.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: key.rank() });
        }
        let ok = match self.conductor {
            Conductor::P => datum.strictly_dominant(&key),
            Conductor::O => datum.dominant(&key),
        };
        if !ok {
            return Err(Error::InvalidTableKey(key));
        }
        self.values.insert(key, value);
        Ok(())
    }

    pub fn get(&self, key: &LatticePoint) -> Option<&GroupAlgebraElement> {
        self.values.get(key)
    }

    pub fn get_mut(&mut self, key: &LatticePoint) -> Option<&mut GroupAlgebraElement> {
        self.values.get_mut(key)
    }

    pub fn keys(&self) -> impl Iterator<Item = &LatticePoint> + '_ {
        self.values.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticePoint, &GroupAlgebraElement)> + '_ {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Conductor-`p` table of [`cs_value`] on `keys`.
    pub fn cs_table(datum: &RootDatum, keys: &[LatticePoint], r: &GroupAlgebraElement) -> Result<Self> {
        let mut t = Self::new(Conductor::P, datum).with_normalization(r.clone());
        for k in keys {
            t.insert(datum, k.clone(), cs_value(datum, k, r)?)?;
        }
        Ok(t)
    }

    /// Conductor-`O` table of [`conductor_o_value`] on `keys`.
    pub fn conductor_o_table(datum: &RootDatum, dual: &DualGroupDatum, keys: &[LatticePoint], norm: &GroupAlgebraElement) -> Result<Self> {
        let mut t = Self::new(Conductor::O, datum).with_normalization(norm.clone());
        for k in keys {
            t.insert(datum, k.clone(), conductor_o_value(datum, dual, k, norm)?)?;
        }
        Ok(t)
    }
}

/// `δ^{1/2}(m_λ) = v^{-sum_{α>0} d_α <α, λ>}`.
pub fn delta_half(datum: &RootDatum, lambda: &LatticePoint) -> LaurentScalar {
    let e: i64 = datum
        .positive_indices()
        .map(|i| i64::from(datum.mult(i)) * datum.root(i).dot(lambda))
        .sum();
    LaurentScalar::v_pow(-i32::try_from(e).expect("exponent fits in i32"))
}

/// `r δ^{1/2}(m_μ) alt(e^μ)`, the closed form of `W(m_μ)` for conductor `p`.
pub fn cs_value(datum: &RootDatum, mu: &LatticePoint, r: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    if !datum.strictly_dominant(mu) {
        return Err(Error::NonStrictlyDominant(mu.clone()));
    }
    let alt = GroupAlgebraElement::basis(datum.cochar_tag().clone(), mu.clone()).alt(datum.weyl())?;
    Ok(r.mul(&alt)?.scale(&delta_half(datum, mu)))
}

/// The same value computed as `r δ^{1/2}(m_μ) ch V_{μ-ρ^∨} alt(e^{ρ^∨})`
/// over `𝒳` and pulled back to the cocharacters.
pub fn cs_value_product_form(datum: &RootDatum, dual: &DualGroupDatum, mu: &LatticePoint, r: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    if !datum.strictly_dominant(mu) {
        return Err(Error::NonStrictlyDominant(mu.clone()));
    }
    let rho = dual.rho_vee();
    let ch = weyl_character(dual, &(&dual.inc().apply(mu) - rho))?;
    let alt_rho = GroupAlgebraElement::basis(dual.tag().clone(), rho.clone()).alt(dual.weyl())?;
    let prod = ch.element.mul(&alt_rho)?;
    let back = prod
        .pull_back(dual.inc(), datum.cochar_tag().clone())
        .ok_or(Error::NotInImageOfRprime)?;
    Ok(r.mul(&back)?.scale(&delta_half(datum, mu)))
}

/// `η ∈ X_*` with `c^η != 0` in `ch V_λ · ch V_{μ-ρ^∨}`.
fn recursion_support(dual: &DualGroupDatum, lambda: &LatticePoint, mu: &LatticePoint) -> Result<Vec<(LatticePoint, i64)>> {
    let tc = tensor_coeffs(dual, lambda, &dual.inc().apply(mu))?;
    tc.iter()
        .map(|(eta, &c)| {
            dual.inc()
                .preimage(eta)
                .map(|e| (e, c))
                .ok_or_else(|| Error::InvalidDatum("tensor constituent outside the cocharacter lattice".into()))
        })
        .collect()
}

/// `δ^{-1/2}(m_μ) ch V_λ W(m_μ) - sum_η c^η δ^{-1/2}(m_η) W(m_η)`.
pub fn recursion_residual(datum: &RootDatum, dual: &DualGroupDatum, lambda: &LatticePoint, mu: &LatticePoint, table: &WhittakerTable) -> Result<GroupAlgebraElement> {
    if table.conductor() != Conductor::P {
        return Err(Error::ConductorMismatch);
    }
    if !datum.dominant(lambda) {
        return Err(Error::NonDominant(lambda.clone()));
    }
    if !datum.strictly_dominant(mu) {
        return Err(Error::NonStrictlyDominant(mu.clone()));
    }
    let support = recursion_support(dual, lambda, mu)?;
    let mut missing: Vec<LatticePoint> = support
        .iter()
        .map(|(e, _)| e)
        .chain(core::iter::once(mu))
        .filter(|e| table.get(e).is_none())
        .cloned()
        .collect();
    missing.sort();
    missing.dedup();
    if !missing.is_empty() {
        return Err(Error::MissingTableEntry(missing));
    }
    let ch = character_on_cocharacters(dual, lambda, datum.cochar_tag())?;
    let lhs = ch.mul(table.get(mu).expect("checked above"))?.scale(&delta_half(datum, &-mu));
    let mut rhs = GroupAlgebraElement::zero(datum.cochar_tag().clone(), datum.rank());
    for (eta, c) in &support {
        let w = table.get(eta).expect("checked above");
        rhs = rhs.add(&w.scale(&delta_half(datum, &-eta).scale(&Rational::from_integer((*c).into()))))?;
    }
    lhs.sub(&rhs)
}

/// Outcome of [`uniqueness_rank`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniquenessReport {
    /// Dimension of the solution space of the retained constraints.
    pub rank: usize,
    pub unknowns: usize,
    pub constraints_used: usize,
    /// `(λ, μ)` pairs whose constituents leave the box.
    pub constraints_skipped: Vec<(LatticePoint, LatticePoint)>,
    /// Whether the closed-form solution satisfies every retained constraint,
    /// which bounds the dimension below by one.
    pub certified: bool,
}

/// Dimension over `Frac(R)` of the solutions to the recursion restricted to
/// unknowns indexed by `box_points`. The upper bound comes from exact ranks
/// of the constraint matrix at several rational points; the lower bound is
/// the closed-form solution.
pub fn uniqueness_rank(datum: &RootDatum, dual: &DualGroupDatum, box_points: &[LatticePoint], lambda_set: &[LatticePoint]) -> Result<UniquenessReport> {
    let unknowns: Vec<LatticePoint> = box_points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    for mu in &unknowns {
        if !datum.strictly_dominant(mu) {
            return Err(Error::NonStrictlyDominant(mu.clone()));
        }
    }
    let col: BTreeMap<&LatticePoint, usize> = unknowns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let tag = datum.cochar_tag().clone();
    let mut rows: Vec<Vec<GroupAlgebraElement>> = Vec::new();
    let mut pairs = Vec::new();
    let mut skipped = Vec::new();
    for lambda in lambda_set {
        if !datum.dominant(lambda) {
            return Err(Error::NonDominant(lambda.clone()));
        }
        let ch = character_on_cocharacters(dual, lambda, &tag)?;
        for mu in &unknowns {
            let support = recursion_support(dual, lambda, mu)?;
            if support.iter().any(|(e, _)| !col.contains_key(e)) {
                skipped.push((lambda.clone(), mu.clone()));
                continue;
            }
            let mut row = alloc::vec![GroupAlgebraElement::zero(tag.clone(), datum.rank()); unknowns.len()];
            row[col[mu]] = ch.scale(&delta_half(datum, &-mu));
            for (eta, c) in &support {
                let coeff = delta_half(datum, &-eta).scale(&Rational::from_integer((-*c).into()));
                let j = col[eta];
                row[j] = row[j].add(&GroupAlgebraElement::monomial(tag.clone(), LatticePoint::zero(datum.rank()), coeff))?;
            }
            rows.push(row);
            pairs.push((lambda.clone(), mu.clone()));
        }
    }
    if rows.is_empty() {
        return Err(Error::EmptyConstraintSet);
    }

    let one = GroupAlgebraElement::one(tag.clone(), datum.rank());
    let solution: Vec<GroupAlgebraElement> = unknowns.iter().map(|m| cs_value(datum, m, &one)).collect::<Result<_>>()?;
    let mut certified = true;
    for row in &rows {
        let mut acc = GroupAlgebraElement::zero(tag.clone(), datum.rank());
        for (a, x) in row.iter().zip(&solution) {
            acc = acc.add(&a.mul(x)?)?;
        }
        certified &= acc.is_zero();
    }

    let mut best = 0;
    for k in 0..4i64 {
        let v = ratio(2 * k + 3, k + 2);
        let point: Vec<Rational> = (0..datum.rank()).map(|i| ratio(SMALL_PRIMES[(i + 2 * k as usize) % SMALL_PRIMES.len()], 1 + k + i as i64)).collect();
        let m: Vec<Vec<Rational>> = rows
            .iter()
            .map(|row| row.iter().map(|a| a.evaluate(&v, &point)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        best = best.max(linalg::rank(&m));
    }
    let upper = unknowns.len() - best;
    Ok(UniquenessReport {
        rank: if certified { upper.max(1) } else { upper },
        unknowns: unknowns.len(),
        constraints_used: rows.len(),
        constraints_skipped: skipped,
        certified,
    })
}

const SMALL_PRIMES: [i64; 6] = [2, 3, 5, 7, 11, 13];

/// `W_p(m_μ) = W_O(m_{μ-ρ^∨})`: reindexes a conductor-`O` table by `ρ^∨`.
pub fn conductor_swap(datum: &RootDatum, table: &WhittakerTable) -> Result<WhittakerTable> {
    if table.conductor() != Conductor::O {
        return Err(Error::ConductorMismatch);
    }
    let rho = datum.rho_vee().ok_or(Error::RhoNotInLattice)?;
    let mut out = WhittakerTable::new(Conductor::P, datum).with_normalization(table.normalization().clone());
    for (k, v) in table.iter() {
        out.insert(datum, k + &rho, v.clone())?;
    }
    Ok(out)
}

/// `δ^{1/2}(m_λ) ch V_λ · W_O(1)` with `W_O(1) = norm`.
pub fn conductor_o_value(datum: &RootDatum, dual: &DualGroupDatum, lambda: &LatticePoint, norm: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    if !datum.dominant(lambda) {
        return Err(Error::NonDominant(lambda.clone()));
    }
    datum.rho_vee().ok_or(Error::RhoNotInLattice)?;
    let ch = character_on_cocharacters(dual, lambda, datum.cochar_tag())?;
    Ok(ch.mul(norm)?.scale(&delta_half(datum, lambda)))
}

/// A value of a general group computed through its adjoint quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedValue {
    /// The value in `Q[X_*(A) ⊕ X_*(T)]`.
    pub ambient: GroupAlgebraElement,
    /// The same value pulled back to `Q[X_*(A')]`.
    pub value: GroupAlgebraElement,
}

fn lift_to_ambient(dec: &IsogenyDecomposition, body: &GroupAlgebraElement, torus: &LatticePoint) -> Result<ReducedValue> {
    // ξ^{-1}(t_λ) acts as e^{-λ} on the torus factor
    let shift = -torus;
    let ambient = body.map_points(dec.ambient_tag().clone(), dec.ambient_rank(), |p| p.concat(&shift));
    let value = ambient
        .pull_back(dec.pi_star(), dec.source().cochar_tag().clone())
        .ok_or(Error::NotInImageOfRprime)?;
    Ok(ReducedValue { ambient, value })
}

fn check_adjoint_norm(dec: &IsogenyDecomposition, norm: &GroupAlgebraElement) -> Result<()> {
    if norm.lattice() != dec.adjoint().cochar_tag() {
        return Err(Error::LatticeMismatch {
            left: norm.lattice().as_str().to_string(),
            right: dec.adjoint().cochar_tag().as_str().to_string(),
        });
    }
    Ok(())
}

/// `W'(m_{μ'}) = ξ^{-1}(t_λ) δ^{1/2}(m_{μ-ρ^∨}) ch V_{μ-ρ^∨} · W(m_{ρ^∨})` where
/// `π_*(μ') = (μ, λ)` and `W` is the adjoint value with `W(m_{ρ^∨}) = norm`
/// (default: [`cs_value`] at `ρ^∨` with `r = 1`).
pub fn general_cs_value(dec: &IsogenyDecomposition, mu: &LatticePoint, norm: Option<&GroupAlgebraElement>) -> Result<ReducedValue> {
    if !dec.source().strictly_dominant(mu) {
        return Err(Error::NonStrictlyDominant(mu.clone()));
    }
    let adj = dec.adjoint();
    let adj_dual = adj.dual_datum()?;
    let (m, torus) = dec.split(mu);
    let rho = adj.rho_vee().ok_or(Error::RhoNotInLattice)?;
    let tag = adj.cochar_tag().clone();
    let norm = match norm {
        Some(n) => {
            check_adjoint_norm(dec, n)?;
            n.clone()
        }
        None => cs_value(adj, &rho, &GroupAlgebraElement::one(tag.clone(), adj.rank()))?,
    };
    let shifted = &m - &rho;
    let ch = character_on_cocharacters(&adj_dual, &shifted, &tag)?;
    let body = ch.mul(&norm)?.scale(&delta_half(adj, &shifted));
    lift_to_ambient(dec, &body, &torus)
}

/// `W'_O(m_{λ'}) = ξ^{-1}(t_μ) δ^{1/2}(m_λ) ch V_λ · W'_O(1)` where
/// `π_*(λ') = (λ, μ)`; `norm` defaults to `e^0`.
pub fn general_cs_o_value(dec: &IsogenyDecomposition, lambda: &LatticePoint, norm: Option<&GroupAlgebraElement>) -> Result<ReducedValue> {
    if !dec.source().dominant(lambda) {
        return Err(Error::NonDominant(lambda.clone()));
    }
    let adj = dec.adjoint();
    let adj_dual = adj.dual_datum()?;
    let (l, torus) = dec.split(lambda);
    let tag = adj.cochar_tag().clone();
    let norm = match norm {
        Some(n) => {
            check_adjoint_norm(dec, n)?;
            n.clone()
        }
        None => GroupAlgebraElement::one(tag.clone(), adj.rank()),
    };
    let ch = character_on_cocharacters(&adj_dual, &l, &tag)?;
    let body = ch.mul(&norm)?.scale(&delta_half(adj, &l));
    lift_to_ambient(dec, &body, &torus)
}

/// A point of the dual torus together with a value of `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatakeSpecialization {
    point: Vec<Rational>,
    q_value: Rational,
    v_value: Rational,
}

impl SatakeSpecialization {
    /// Requires nonzero coordinates and `q = t^2` with `t` rational, `q > 1`;
    /// `v` specializes to the positive root `t`.
    pub fn new(point: Vec<Rational>, q_value: Rational) -> Result<Self> {
        if point.iter().any(Zero::is_zero) {
            return Err(Error::ZeroSpecialization);
        }
        if q_value <= Rational::one() {
            return Err(Error::InvalidQ(q_value.to_string()));
        }
        let v_value = rational_sqrt(&q_value).ok_or_else(|| Error::IrrationalSqrt(q_value.to_string()))?;
        Ok(Self { point, q_value, v_value })
    }

    pub fn point(&self) -> &[Rational] {
        &self.point
    }

    pub fn q_value(&self) -> &Rational {
        &self.q_value
    }

    pub fn v_value(&self) -> &Rational {
        &self.v_value
    }
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = int_sqrt(x.numer())?;
    let d = int_sqrt(x.denom())?;
    Some(Rational::new(n, d))
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact value of `elem` at `s`.
pub fn specialize(elem: &GroupAlgebraElement, s: &SatakeSpecialization) -> Result<Rational> {
    elem.evaluate(s.v_value(), s.point())
}

#[cfg(test)]
mod tests;

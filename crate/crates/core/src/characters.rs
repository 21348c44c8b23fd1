//! Weyl characters of the dual group and tensor-product coefficients.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use num_traits::{One, ToPrimitive};

use crate::algebra::GroupAlgebraElement;
use crate::error::{Error, Result};
use crate::lattice::LatticePoint;
use crate::root_datum::DualGroupDatum;
use crate::scalar::{rat, Rational};

/// `ch V_λ` as an element of `Q[𝒳]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub element: GroupAlgebraElement,
    pub highest_weight: LatticePoint,
}

impl Character {
    /// Multiplicity of the weight `μ`.
    pub fn multiplicity(&self, mu: &LatticePoint) -> i64 {
        coeff_to_int(&self.element, mu)
    }

    /// Weights with their multiplicities.
    pub fn weights(&self) -> BTreeMap<LatticePoint, i64> {
        self.element
            .support()
            .map(|p| (p.clone(), coeff_to_int(&self.element, p)))
            .collect()
    }

    pub fn dimension(&self) -> i64 {
        self.weights().values().sum()
    }
}

fn coeff_to_int(e: &GroupAlgebraElement, p: &LatticePoint) -> i64 {
    e.coeff(p)
        .as_rational()
        .and_then(|r| r.is_integer().then(|| r.to_integer()))
        .and_then(|n| n.to_i64())
        .expect("character coefficients are integers")
}

/// The coefficients `c^η` in `ch V_λ · ch V_{μ-ρ^∨} = sum_η c^η ch V_{η-ρ^∨}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorCoefficients {
    /// `λ` in `𝒳` coordinates.
    pub lambda: LatticePoint,
    pub mu: LatticePoint,
    pub coeffs: BTreeMap<LatticePoint, i64>,
}

impl TensorCoefficients {
    pub fn get(&self, eta: &LatticePoint) -> i64 {
        self.coeffs.get(eta).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticePoint, &i64)> + '_ {
        self.coeffs.iter()
    }
}

/// `ch V_λ = alt(e^{λ+ρ^∨}) / alt(e^{ρ^∨})` for dominant `λ ∈ 𝒳`.
pub fn weyl_character(dual: &DualGroupDatum, lambda: &LatticePoint) -> Result<Character> {
    if lambda.rank() != dual.rank() {
        return Err(Error::RankMismatch { expected: dual.rank(), got: lambda.rank() });
    }
    if !dual.dominant(lambda) {
        return Err(Error::NonDominant(lambda.clone()));
    }
    let tag = dual.tag().clone();
    let w = dual.weyl();
    let rho = dual.rho_vee();
    let num = GroupAlgebraElement::basis(tag.clone(), lambda + rho).alt(w)?;
    let den = GroupAlgebraElement::basis(tag, rho.clone()).alt(w)?;
    Ok(Character {
        element: num.exact_divide(&den)?,
        highest_weight: lambda.clone(),
    })
}

/// `ch V_λ` for `λ ∈ X_*`, pulled back to `Q[X_*]` along the inclusion.
pub fn character_on_cocharacters(dual: &DualGroupDatum, lambda: &LatticePoint, tag: &crate::lattice::LatticeTag) -> Result<GroupAlgebraElement> {
    let ch = weyl_character(dual, &dual.inc().apply(lambda))?;
    ch.element
        .pull_back(dual.inc(), tag.clone())
        .ok_or_else(|| Error::InvalidDatum("character weight outside the cocharacter lattice".into()))
}

/// Weight multiplicities of `V_λ` by Freudenthal's recursion.
pub fn freudenthal_multiplicities(dual: &DualGroupDatum, lambda: &LatticePoint) -> Result<BTreeMap<LatticePoint, i64>> {
    if !dual.dominant(lambda) {
        return Err(Error::NonDominant(lambda.clone()));
    }
    let w = dual.weyl();
    let rho = dual.rho_vee();
    let pos: Vec<&LatticePoint> = dual.positive_indices().map(|i| &dual.dual_roots()[i]).collect();
    // height functional: twice the half-sum of positive dual coroots
    let mut two_rho_y = LatticePoint::zero(dual.rank());
    for i in dual.positive_indices() {
        two_rho_y = &two_rho_y + &dual.dual_coroots()[i];
    }

    let mut dominant = BTreeSet::from([lambda.clone()]);
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(mu) = queue.pop_front() {
        for a in &pos {
            let nu = &mu - *a;
            if dual.dominant(&nu) && dominant.insert(nu.clone()) {
                queue.push_back(nu);
            }
        }
    }
    let mut order: Vec<LatticePoint> = dominant.into_iter().collect();
    order.sort_by_key(|mu| (two_rho_y.dot(&(lambda - mu)), mu.clone()));

    let norm = |x: &LatticePoint| dual.invariant_form(x, x);
    let top = norm(&(lambda + rho));
    let mut mult: BTreeMap<LatticePoint, i64> = BTreeMap::new();
    for mu in order {
        if mu == *lambda {
            mult.insert(mu, 1);
            continue;
        }
        let mut sum = 0i64;
        for a in &pos {
            let mut k = 1;
            loop {
                let nu = &mu + &a.scale(k);
                let (dom, _) = w.to_dominant(&nu);
                let Some(&m) = mult.get(&dom) else { break };
                sum += m * dual.invariant_form(&nu, a);
                k += 1;
            }
        }
        let denom = top - norm(&(&mu + rho));
        let m = Rational::new((2 * sum).into(), denom.into());
        let m = m.to_integer().to_i64().filter(|_| m.is_integer()).expect("integral multiplicity");
        if m != 0 {
            mult.insert(mu, m);
        }
    }
    let mut out = BTreeMap::new();
    for (mu, m) in mult {
        for p in w.orbit(&mu) {
            out.insert(p, m);
        }
    }
    Ok(out)
}

/// `prod_{α>0} <α, λ+ρ^∨> / <α, ρ^∨>` over the positive dual coroots.
pub fn dimension(dual: &DualGroupDatum, lambda: &LatticePoint) -> Result<u64> {
    if !dual.dominant(lambda) {
        return Err(Error::NonDominant(lambda.clone()));
    }
    let rho = dual.rho_vee();
    let shifted = lambda + rho;
    let mut d = Rational::one();
    for i in dual.positive_indices() {
        let a = &dual.dual_coroots()[i];
        d *= Rational::new(a.dot(&shifted).into(), a.dot(rho).into());
    }
    Ok(d.to_integer().to_u64().expect("dimension is a positive integer"))
}

/// Expands `ch V_λ · alt(e^μ) = sum_ν m_λ(ν) alt(e^{μ+ν})` and straightens
/// each term into the strictly dominant chamber. `lambda` is given in
/// cocharacter coordinates, `mu` in `𝒳`.
pub fn tensor_coeffs(dual: &DualGroupDatum, lambda: &LatticePoint, mu: &LatticePoint) -> Result<TensorCoefficients> {
    if lambda.rank() != dual.inc().source_rank() {
        return Err(Error::RankMismatch { expected: dual.inc().source_rank(), got: lambda.rank() });
    }
    let lx = dual.inc().apply(lambda);
    if !dual.dominant(&lx) {
        return Err(Error::NonDominant(lambda.clone()));
    }
    tensor_coeffs_dual(dual, &lx, mu)
}

/// As [`tensor_coeffs`] with `λ` already in `𝒳`.
pub fn tensor_coeffs_dual(dual: &DualGroupDatum, lambda: &LatticePoint, mu: &LatticePoint) -> Result<TensorCoefficients> {
    if !dual.strictly_dominant(mu) {
        return Err(Error::NonStrictlyDominant(mu.clone()));
    }
    let ch = weyl_character(dual, lambda)?;
    let mut coeffs: BTreeMap<LatticePoint, i64> = BTreeMap::new();
    for (nu, m) in ch.weights() {
        if let Some((eta, sign)) = dual.weyl().straighten(&(mu + &nu)) {
            *coeffs.entry(eta).or_insert(0) += sign * m;
        }
    }
    coeffs.retain(|_, c| *c != 0);
    Ok(TensorCoefficients {
        lambda: lambda.clone(),
        mu: mu.clone(),
        coeffs,
    })
}

/// `sum_η c^η ch V_{η-ρ^∨}`, the right side of the tensor identity.
pub fn recombine(dual: &DualGroupDatum, tc: &TensorCoefficients) -> Result<GroupAlgebraElement> {
    let mut acc = GroupAlgebraElement::zero(dual.tag().clone(), dual.rank());
    for (eta, &c) in &tc.coeffs {
        let ch = weyl_character(dual, &(eta - dual.rho_vee()))?;
        acc = acc.add(&ch.element.scale_rational(&rat(c)))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{CartanSpec, LatticeChoice, RootDatum};

    fn dual(t: &str, l: LatticeChoice) -> DualGroupDatum {
        RootDatum::build(&CartanSpec::parse(t, l).unwrap()).unwrap().dual_datum().unwrap()
    }

    fn pt(c: &[i64]) -> LatticePoint {
        LatticePoint::new(c)
    }

    #[test]
    fn trivial_character() {
        let d = dual("A2", LatticeChoice::Adjoint);
        let ch = weyl_character(&d, &pt(&[0, 0])).unwrap();
        assert_eq!(ch.weights(), BTreeMap::from([(pt(&[0, 0]), 1)]));
        assert_eq!(dimension(&d, &pt(&[0, 0])).unwrap(), 1);
        assert_eq!(freudenthal_multiplicities(&d, &pt(&[0, 0])).unwrap(), BTreeMap::from([(pt(&[0, 0]), 1)]));
    }

    #[test]
    fn sl2_side_three_dimensional() {
        // weights of the adjoint representation of SL2: the hand-computed
        // string 2, 0, -2 with multiplicity one
        let d = dual("A1", LatticeChoice::Adjoint);
        let expected = BTreeMap::from([(pt(&[-2]), 1), (pt(&[0]), 1), (pt(&[2]), 1)]);
        assert_eq!(weyl_character(&d, &pt(&[2])).unwrap().weights(), expected);
        assert_eq!(freudenthal_multiplicities(&d, &pt(&[2])).unwrap(), expected);
        for n in 0..8 {
            assert_eq!(dimension(&d, &pt(&[n])).unwrap(), n as u64 + 1);
        }
    }

    #[test]
    fn standard_rep_of_sp2() {
        let d = dual("BC1", LatticeChoice::Adjoint);
        let ch = weyl_character(&d, &pt(&[1])).unwrap();
        assert_eq!(ch.weights(), BTreeMap::from([(pt(&[-1]), 1), (pt(&[1]), 1)]));
        assert_eq!(dimension(&d, &pt(&[1])).unwrap(), 2);
    }

    #[test]
    fn a2_adjoint_zero_weight() {
        // highest root of the dual A2 is ω1 + ω2 in 𝒳 = coweight lattice
        let d = dual("A2", LatticeChoice::Adjoint);
        let lam = pt(&[1, 1]);
        let m = freudenthal_multiplicities(&d, &lam).unwrap();
        assert_eq!(m[&pt(&[0, 0])], 2);
        assert_eq!(m.values().sum::<i64>(), 8);
        assert_eq!(weyl_character(&d, &lam).unwrap().weights(), m);
    }

    #[test]
    fn non_dominant_rejected() {
        let d = dual("A1", LatticeChoice::Adjoint);
        assert!(matches!(weyl_character(&d, &pt(&[-1])), Err(Error::NonDominant(_))));
        assert!(matches!(freudenthal_multiplicities(&d, &pt(&[-1])), Err(Error::NonDominant(_))));
        assert!(matches!(dimension(&d, &pt(&[-1])), Err(Error::NonDominant(_))));
        assert!(matches!(tensor_coeffs(&d, &pt(&[1]), &pt(&[0])), Err(Error::NonStrictlyDominant(_))));
    }

    #[test]
    fn tensor_examples() {
        let d = dual("A1", LatticeChoice::Adjoint);
        // V_1 ⊗ V_2 = V_3 ⊕ V_1, checked by multiplying explicit characters
        let tc = tensor_coeffs(&d, &pt(&[2]), &pt(&[2])).unwrap();
        assert_eq!(tc.coeffs, BTreeMap::from([(pt(&[2]), 1), (pt(&[4]), 1)]));
        let zero = tensor_coeffs(&d, &pt(&[0]), &pt(&[3])).unwrap();
        assert_eq!(zero.coeffs, BTreeMap::from([(pt(&[3]), 1)]));
        let a2 = dual("A2", LatticeChoice::Adjoint);
        for lam in [pt(&[1, 0]), pt(&[2, 1])] {
            let tc = tensor_coeffs(&a2, &lam, a2.rho_vee()).unwrap();
            assert_eq!(tc.coeffs, BTreeMap::from([(&lam + a2.rho_vee(), 1)]));
        }
    }

    #[test]
    fn tensor_identity_reconstructs_product() {
        let d = dual("B2", LatticeChoice::Adjoint);
        let lam = pt(&[1, 1]);
        let mu = pt(&[2, 1]);
        let tc = tensor_coeffs_dual(&d, &lam, &mu).unwrap();
        let lhs = weyl_character(&d, &lam)
            .unwrap()
            .element
            .mul(&weyl_character(&d, &(&mu - d.rho_vee())).unwrap().element)
            .unwrap();
        assert_eq!(lhs, recombine(&d, &tc).unwrap());
        assert!(tc.coeffs.values().all(|&c| c > 0));
    }
}

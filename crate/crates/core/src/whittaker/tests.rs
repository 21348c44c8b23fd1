use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::characters::dimension;
use crate::root_datum::{CartanSpec, LatticeChoice};
use crate::scalar::rat;

fn datum(t: &str, l: LatticeChoice) -> RootDatum {
    RootDatum::build(&CartanSpec::parse(t, l).unwrap()).unwrap()
}

fn pt(c: &[i64]) -> LatticePoint {
    LatticePoint::new(c)
}

fn elem(d: &RootDatum, terms: &[(i64, i32, i64)]) -> GroupAlgebraElement {
    // (exponent, v-power, coefficient) for rank-one lattices
    let mut e = GroupAlgebraElement::zero(d.cochar_tag().clone(), 1);
    for &(x, k, c) in terms {
        e.add_term(pt(&[x]), LaurentScalar::v_pow(k).scale(&rat(c)));
    }
    e
}

fn one(d: &RootDatum) -> GroupAlgebraElement {
    GroupAlgebraElement::one(d.cochar_tag().clone(), d.rank())
}

fn catalog() -> Vec<RootDatum> {
    let mut out = Vec::new();
    for t in ["A1", "A2", "B2", "G2"] {
        out.push(datum(t, LatticeChoice::Adjoint));
        out.push(datum(t, LatticeChoice::SimplyConnected));
    }
    out.push(datum("BC1", LatticeChoice::Adjoint));
    out.push(datum("BC2", LatticeChoice::Adjoint));
    out
}

#[test]
fn delta_half_values() {
    let a1 = datum("A1", LatticeChoice::Adjoint);
    assert!(delta_half(&a1, &pt(&[0])).is_one());
    // <α, 1> = 1 on the coweight lattice
    assert_eq!(delta_half(&a1, &pt(&[1])), LaurentScalar::v_pow(-1));
    let sl2 = datum("A1", LatticeChoice::SimplyConnected);
    assert_eq!(delta_half(&sl2, &pt(&[1])), LaurentScalar::v_pow(-2));
    let su3 = RootDatum::build(
        &CartanSpec::parse("BC1", LatticeChoice::Adjoint)
            .unwrap()
            .with_mult(BTreeMap::from([(0, 2), (1, 1)])),
    )
    .unwrap();
    assert_eq!(delta_half(&su3, &pt(&[1])), LaurentScalar::v_pow(-4));
    let a2 = datum("A2", LatticeChoice::Adjoint);
    let (x, y) = (pt(&[2, -1]), pt(&[1, 3]));
    assert_eq!(delta_half(&a2, &(&x + &y)), delta_half(&a2, &x) * delta_half(&a2, &y));
    assert!((delta_half(&a2, &x) * delta_half(&a2, &-&x)).is_one());
}

#[test]
fn cs_value_at_rho() {
    let d = datum("A1", LatticeChoice::Adjoint);
    assert_eq!(cs_value(&d, &pt(&[1]), &one(&d)).unwrap(), elem(&d, &[(1, -1, 1), (-1, -1, -1)]));
    assert_eq!(cs_value(&d, &pt(&[0]), &one(&d)), Err(Error::NonStrictlyDominant(pt(&[0]))));
}

#[test]
fn product_form_agrees() {
    for d in catalog() {
        let dual = d.dual_datum().unwrap();
        let r = one(&d);
        for mu in d.strictly_dominant_box(3) {
            assert_eq!(
                cs_value(&d, &mu, &r).unwrap(),
                cs_value_product_form(&d, &dual, &mu, &r).unwrap(),
                "{} {mu}",
                d.label()
            );
        }
    }
}

#[test]
fn adjoint_ratio() {
    for t in ["A1", "A2", "B2"] {
        let d = datum(t, LatticeChoice::Adjoint);
        let dual = d.dual_datum().unwrap();
        let rho = d.rho_vee().unwrap();
        let r = one(&d);
        let base = cs_value(&d, &rho, &r).unwrap();
        for lam in d.dominant_box(3) {
            let q = cs_value(&d, &(&lam + &rho), &r).unwrap().exact_divide(&base).unwrap();
            let ch = character_on_cocharacters(&dual, &lam, d.cochar_tag()).unwrap();
            assert_eq!(q, ch.scale(&delta_half(&d, &lam)));
        }
    }
}

#[test]
fn recursion_on_cs_tables() {
    for d in catalog() {
        let dual = d.dual_datum().unwrap();
        let keys = d.strictly_dominant_box(5);
        let table = WhittakerTable::cs_table(&d, &keys, &one(&d)).unwrap();
        let mut checked = 0;
        for lam in d.dominant_box(2) {
            for mu in d.strictly_dominant_box(3) {
                match recursion_residual(&d, &dual, &lam, &mu, &table) {
                    Ok(r) => {
                        assert!(r.is_zero(), "{} {lam} {mu}", d.label());
                        checked += 1;
                    }
                    Err(Error::MissingTableEntry(_)) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
        assert!(checked > 0, "{}", d.label());
    }
}

#[test]
fn recursion_detects_perturbation() {
    let d = datum("A1", LatticeChoice::Adjoint);
    let dual = d.dual_datum().unwrap();
    let keys: Vec<_> = (1..=6).map(|k| pt(&[k])).collect();
    let mut table = WhittakerTable::cs_table(&d, &keys, &one(&d)).unwrap();
    assert!(recursion_residual(&d, &dual, &pt(&[0]), &pt(&[3]), &table).unwrap().is_zero());
    let v = LaurentScalar::v_pow(1);
    let slot = table.get_mut(&pt(&[3])).unwrap();
    *slot = slot.scale(&v);
    assert!(!recursion_residual(&d, &dual, &pt(&[1]), &pt(&[2]), &table).unwrap().is_zero());
    assert_eq!(
        recursion_residual(&d, &dual, &pt(&[2]), &pt(&[5]), &table),
        Err(Error::MissingTableEntry(vec![pt(&[7])]))
    );
}

#[test]
fn table_keys_are_validated() {
    let d = datum("A1", LatticeChoice::Adjoint);
    let mut p = WhittakerTable::new(Conductor::P, &d);
    assert_eq!(p.insert(&d, pt(&[0]), one(&d)), Err(Error::InvalidTableKey(pt(&[0]))));
    let mut o = WhittakerTable::new(Conductor::O, &d);
    assert!(o.insert(&d, pt(&[0]), one(&d)).is_ok());
    assert_eq!(o.insert(&d, pt(&[-1]), one(&d)), Err(Error::InvalidTableKey(pt(&[-1]))));
}

#[test]
fn uniqueness() {
    let d = datum("A1", LatticeChoice::Adjoint);
    let dual = d.dual_datum().unwrap();
    let keys: Vec<_> = (1..=6).map(|k| pt(&[k])).collect();
    let rep = uniqueness_rank(&d, &dual, &keys, &[pt(&[1]), pt(&[2])]).unwrap();
    assert_eq!(rep.rank, 1);
    assert!(rep.certified);
    assert!(!rep.constraints_skipped.is_empty());

    assert_eq!(uniqueness_rank(&d, &dual, &[pt(&[1])], &[pt(&[1])]), Err(Error::EmptyConstraintSet));

    let d = datum("A2", LatticeChoice::Adjoint);
    let dual = d.dual_datum().unwrap();
    let rep = uniqueness_rank(&d, &dual, &d.strictly_dominant_height_box(4), &[pt(&[1, 0]), pt(&[0, 1])]).unwrap();
    assert_eq!(rep.rank, 1);
    assert_eq!(rep.unknowns, 10);
    // the cube leaves its top corner unconstrained
    let rep = uniqueness_rank(&d, &dual, &d.strictly_dominant_box(4), &[pt(&[1, 0]), pt(&[0, 1])]).unwrap();
    assert_eq!(rep.rank, 2);
}

#[test]
fn conductor_o_pipeline() {
    let d = datum("A1", LatticeChoice::Adjoint);
    let dual = d.dual_datum().unwrap();
    let r = one(&d);
    assert_eq!(conductor_o_value(&d, &dual, &pt(&[0]), &r).unwrap(), r);
    assert_eq!(conductor_o_value(&d, &dual, &pt(&[1]), &r).unwrap(), elem(&d, &[(1, -1, 1), (-1, -1, 1)]));

    let sl2 = datum("A1", LatticeChoice::SimplyConnected);
    let sdual = sl2.dual_datum().unwrap();
    assert_eq!(conductor_o_value(&sl2, &sdual, &pt(&[1]), &one(&sl2)), Err(Error::RhoNotInLattice));

    for t in ["A1", "A2", "B2"] {
        let d = datum(t, LatticeChoice::Adjoint);
        let dual = d.dual_datum().unwrap();
        let rho = d.rho_vee().unwrap();
        let o = WhittakerTable::conductor_o_table(&d, &dual, &d.dominant_box(4), &one(&d)).unwrap();
        let p = conductor_swap(&d, &o).unwrap();
        assert_eq!(p.conductor(), Conductor::P);
        assert_eq!(p.get(&rho), o.get(&LatticePoint::zero(d.rank())));
        for lam in d.dominant_box(1) {
            for mu in d.strictly_dominant_box(2) {
                assert!(recursion_residual(&d, &dual, &lam, &mu, &p).unwrap().is_zero());
            }
        }
        assert_eq!(conductor_swap(&d, &p), Err(Error::ConductorMismatch));
    }
}

#[test]
fn general_reduction_adjoint() {
    let d = datum("A2", LatticeChoice::Adjoint);
    let dec = d.isogeny_decomposition().unwrap();
    for mu in d.strictly_dominant_box(3) {
        let g = general_cs_value(&dec, &mu, None).unwrap();
        assert_eq!(g.value.retag(d.cochar_tag().clone()), cs_value(&d, &mu, &one(&d)).unwrap());
    }
}

#[test]
fn general_reduction_sl2() {
    let d = datum("A1", LatticeChoice::SimplyConnected);
    let dec = d.isogeny_decomposition().unwrap();
    let g = general_cs_value(&dec, &pt(&[1]), None).unwrap();
    let mut ambient = GroupAlgebraElement::zero(dec.ambient_tag().clone(), 1);
    ambient.add_term(pt(&[2]), LaurentScalar::v_pow(-2));
    ambient.add_term(pt(&[-2]), LaurentScalar::v_pow(-2).scale(&rat(-1)));
    assert_eq!(g.ambient, ambient);
    assert_eq!(g.value, elem(&d, &[(1, -2, 1), (-1, -2, -1)]));

    let dual = d.dual_datum().unwrap();
    let mut table = WhittakerTable::new(Conductor::P, &d);
    for k in 1..=6 {
        let mu = pt(&[k]);
        table.insert(&d, mu.clone(), general_cs_value(&dec, &mu, None).unwrap().value).unwrap();
    }
    for lam in 0..=2 {
        for mu in 1..=4 {
            assert!(recursion_residual(&d, &dual, &pt(&[lam]), &pt(&[mu]), &table).unwrap().is_zero());
        }
    }
}

#[test]
fn general_reduction_with_torus() {
    // GL2 in the basis e1+e2, e1-e2... given as ω^∨ and central coordinates
    let spec = CartanSpec::parse("A1", LatticeChoice::Explicit(vec![vec![1, 1], vec![-1, 1]])).unwrap();
    let d = RootDatum::build(&spec).unwrap();
    let dec = d.isogeny_decomposition().unwrap();
    assert_eq!(dec.torus_rank(), 1);
    for mu in d.strictly_dominant_box(3) {
        let g = general_cs_value(&dec, &mu, None).unwrap();
        assert!(!g.value.is_zero());
        let o = general_cs_o_value(&dec, &(&mu - &mu), None).unwrap();
        assert_eq!(o.value, GroupAlgebraElement::one(d.cochar_tag().clone(), d.rank()));
    }
}

#[test]
fn specialization() {
    let d = datum("A1", LatticeChoice::Adjoint);
    let dual = d.dual_datum().unwrap();
    let s = SatakeSpecialization::new(vec![rat(2)], rat(4)).unwrap();
    assert_eq!(specialize(&one(&d), &s).unwrap(), rat(1));
    let ch2 = character_on_cocharacters(&dual, &pt(&[2]), d.cochar_tag()).unwrap();
    assert_eq!(specialize(&ch2, &s).unwrap(), ratio(21, 4));
    let ones = SatakeSpecialization::new(vec![rat(1)], rat(9)).unwrap();
    for k in 0..5 {
        let ch = character_on_cocharacters(&dual, &pt(&[k]), d.cochar_tag()).unwrap();
        assert_eq!(specialize(&ch, &ones).unwrap(), rat(dimension(&dual, &pt(&[k])).unwrap() as i64));
    }
    assert_eq!(*s.v_value(), rat(2));
    assert_eq!(SatakeSpecialization::new(vec![rat(1)], rat(2)), Err(Error::IrrationalSqrt("2".into())));
    assert_eq!(SatakeSpecialization::new(vec![rat(0)], rat(4)), Err(Error::ZeroSpecialization));
    assert!(SatakeSpecialization::new(vec![rat(1)], ratio(1, 4)).is_err());
    assert_eq!(SatakeSpecialization::new(vec![rat(1)], ratio(9, 4)).unwrap().v_value(), &ratio(3, 2));
}

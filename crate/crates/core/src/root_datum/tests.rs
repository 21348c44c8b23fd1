use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::scalar::ratio;

fn datum(t: &str, l: LatticeChoice) -> RootDatum {
    RootDatum::build(&CartanSpec::parse(t, l).unwrap()).unwrap()
}

fn adj(t: &str) -> RootDatum {
    datum(t, LatticeChoice::Adjoint)
}

fn sc(t: &str) -> RootDatum {
    datum(t, LatticeChoice::SimplyConnected)
}

const CATALOG: &[&str] = &["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "G2", "BC1", "BC2"];

#[test]
fn a1_lattices() {
    let pgl2 = adj("A1");
    assert_eq!(pgl2.rank(), 1);
    assert_eq!(pgl2.positive_indices().count(), 1);
    assert_eq!(pgl2.coroot(0), &LatticePoint::from([2]));
    assert_eq!(pgl2.rho_vee(), Some([1].into()));

    let sl2 = sc("A1");
    assert_eq!(sl2.root(0), &LatticePoint::from([2]));
    assert_eq!(sl2.coroot(0), &LatticePoint::from([1]));
    assert_eq!(sl2.rho_vee(), None);
    assert_eq!(sl2.rho_vee_rational(), vec![ratio(1, 2)]);
}

#[test]
fn bc1_roots() {
    let d = adj("BC1");
    let mut pos: Vec<_> = d.positive_indices().map(|i| d.root(i).clone()).collect();
    pos.sort();
    assert_eq!(pos, vec![[1].into(), [2].into()]);
    assert!(d.is_nonreduced());
    assert_eq!(d.roots().len(), 4);
    assert_eq!(d.nondivisible_indices().count(), 2);
    let two = d.index_of_root(&[2].into()).unwrap();
    assert!(d.is_divisible(two));
    // (2α)^∨ = α^∨ / 2
    assert_eq!(d.coroot(two).scale(2), *d.coroot(0));
}

#[test]
fn weyl_orders() {
    let expected = [
        ("A1", 2),
        ("A2", 6),
        ("A3", 24),
        ("A4", 120),
        ("B2", 8),
        ("B3", 48),
        ("B4", 384),
        ("C2", 8),
        ("C3", 48),
        ("C4", 384),
        ("D4", 192),
        ("G2", 12),
        ("BC1", 2),
        ("BC2", 8),
    ];
    for (t, n) in expected {
        assert_eq!(adj(t).weyl().order(), n, "{t} adjoint");
        assert_eq!(sc(t).weyl().order(), n, "{t} sc");
    }
}

#[test]
fn length_is_inversion_count() {
    for t in CATALOG {
        let d = adj(t);
        let w = d.weyl();
        for e in w.elements() {
            let inversions = d
                .positive_indices()
                .filter(|&i| {
                    let img = w.act(e, d.coroot(i));
                    d.coroots().iter().position(|c| *c == img).is_some_and(|j| !d.is_positive(j))
                })
                .count();
            let nd_inversions = d
                .positive_indices()
                .filter(|&i| !d.is_divisible(i))
                .filter(|&i| {
                    let img = w.act(e, d.coroot(i));
                    d.coroots().iter().position(|c| *c == img).is_some_and(|j| !d.is_positive(j))
                })
                .count();
            assert_eq!(w.length(e), nd_inversions, "{t}");
            assert!(inversions >= nd_inversions);
        }
    }
}

#[test]
fn dominant_chamber_is_fundamental_domain() {
    for t in ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "BC2"] {
        let d = adj(t);
        let w = d.weyl();
        for p in d.box_points(-2, 2, 0) {
            let dominant: Vec<_> = w.orbit(&p).into_iter().filter(|x| d.dominant(x)).collect();
            assert_eq!(dominant.len(), 1, "{t} {p:?}");
        }
    }
}

#[test]
fn dominance_examples() {
    let d = adj("A2");
    let zero = LatticePoint::zero(2);
    assert!(d.dominant(&zero) && !d.strictly_dominant(&zero));
    let rho = d.rho_vee().unwrap();
    assert!(d.strictly_dominant(&rho));
    for i in d.simple_indices() {
        assert_eq!(d.root(*i).dot(&rho), 1);
    }
    let a1 = adj("A1");
    let m = LatticePoint::from([-1]);
    assert!(!a1.dominant(&m) && !a1.strictly_dominant(&m));
}

#[test]
fn coweight_lattices() {
    assert_eq!(adj("A1").coweight_lattice(), vec![vec![rat(1)]]);
    assert_eq!(sc("A1").coweight_lattice(), vec![vec![ratio(1, 2)]]);
    for t in ["A2", "B2", "G2", "BC1", "BC2"] {
        for d in [adj(t), sc(t)] {
            let omega = d.coweight_lattice();
            for (i, a) in d.simple_roots().enumerate() {
                for (j, w) in omega.iter().enumerate() {
                    let mut s = Rational::zero();
                    for (x, &y) in w.iter().zip(a.coords()) {
                        s += x * rat(y);
                    }
                    assert_eq!(s, rat(i64::from(i == j)));
                }
            }
            for i in 0..d.roots().len() {
                for w in &omega {
                    let mut s = Rational::zero();
                    for (x, &y) in w.iter().zip(d.root(i).coords()) {
                        s += x * rat(y);
                    }
                    assert!(s.is_integer());
                }
            }
        }
    }
}

#[test]
fn invalid_specs() {
    for t in ["E6", "A5", "D3", "B1", "G3", "BC3", "X2", "A"] {
        assert!(matches!(CartanType::parse(t), Err(Error::InvalidCartanType(_))), "{t}");
    }
    let spec = CartanSpec::parse("A1", LatticeChoice::Explicit(vec![vec![4]])).unwrap();
    assert_eq!(RootDatum::build(&spec).unwrap_err(), Error::LatticeMissingCoroots);
    let spec = CartanSpec::parse("A2", LatticeChoice::Explicit(vec![vec![1, 0], vec![2, 0]])).unwrap();
    assert_eq!(RootDatum::build(&spec).unwrap_err(), Error::DegenerateLattice);
    let spec = CartanSpec::parse("A2", LatticeChoice::Adjoint)
        .unwrap()
        .with_mult(BTreeMap::from([(0, 2)]));
    assert!(matches!(RootDatum::build(&spec), Err(Error::MultNotOrbitConstant(_))));
}

#[test]
fn multiplicities_on_orbits() {
    // α and 2α lie in different orbits; all three A2 positive roots share one
    let spec = CartanSpec::parse("BC1", LatticeChoice::Adjoint)
        .unwrap()
        .with_mult(BTreeMap::from([(0, 2), (1, 1)]));
    let d = RootDatum::build(&spec).unwrap();
    assert_eq!(d.mult(0), 2);
    assert_eq!(d.mult(d.index_of_root(&-d.root(0)).unwrap()), 2);
    let spec = CartanSpec::parse("A2", LatticeChoice::Adjoint)
        .unwrap()
        .with_mult(BTreeMap::from([(0, 3), (1, 3), (2, 3)]));
    assert!(RootDatum::build(&spec).is_ok());
}

#[test]
fn explicit_lattice_with_central_torus() {
    // GL2: e1 = ω + c, e2 = -ω + c in coweight and rescaled central coordinates
    let spec = CartanSpec::parse("A1", LatticeChoice::Explicit(vec![vec![1, 1], vec![-1, 1]])).unwrap();
    let d = RootDatum::build(&spec).unwrap();
    assert_eq!(d.rank(), 2);
    assert_eq!(d.coroot(0), &LatticePoint::from([1, -1]));
    assert_eq!(d.root(0), &LatticePoint::from([1, -1]));
    assert_eq!(d.central_characters().len(), 1);
    assert_eq!(d.weyl().order(), 2);
}

#[test]
fn dual_of_pgl2_is_sl2() {
    let d = adj("A1");
    let dual = d.dual_datum().unwrap();
    assert_eq!(dual.rank(), 1);
    assert_eq!(dual.x_basis(), &vec![vec![rat(1)]]);
    assert_eq!(dual.dual_roots()[0], [2].into());
    assert_eq!(dual.dual_coroots()[0], [1].into());
    assert_eq!(dual.rho_vee(), &LatticePoint::from([1]));
    assert!(dual.is_simply_connected());
    assert!(dual.as_root_datum().is_ok());
}

#[test]
fn dual_of_sl2_enlarges_lattice() {
    let d = sc("A1");
    let dual = d.dual_datum().unwrap();
    assert_eq!(dual.x_basis(), &vec![vec![ratio(1, 2)]]);
    assert_eq!(dual.inc().apply(&[1].into()), [2].into());
    assert_eq!(dual.rho_vee(), &LatticePoint::from([1]));
}

#[test]
fn dual_of_bc_is_type_c() {
    for n in ["1", "2"] {
        let d = adj(&["BC", n].concat());
        let dual = d.dual_datum().unwrap();
        assert_eq!(dual.dual_roots().len(), d.nondivisible_indices().count());
        if n == "2" {
            assert_eq!(dual.cartan_matrix(), adj("C2").cartan_matrix());
        } else {
            assert_eq!(dual.cartan_matrix(), vec![vec![2]]);
        }
        // C_n has roots of two lengths, long ones twice the short squared length
        let lens: Vec<i64> = dual.dual_roots().iter().map(|r| dual.invariant_form(r, r)).collect();
        let (lo, hi) = (*lens.iter().min().unwrap(), *lens.iter().max().unwrap());
        if n == "2" {
            assert_eq!(hi, 2 * lo);
        }
    }
}

#[test]
fn dual_of_split_semisimple_is_simply_connected() {
    for t in CATALOG {
        for d in [adj(t), sc(t)] {
            let dual = d.dual_datum().unwrap();
            assert!(dual.is_simply_connected(), "{}", d.label());
            let expected: IntMatrix = linalg::transpose(&d.cartan_matrix());
            if !d.is_nonreduced() {
                assert_eq!(dual.cartan_matrix(), expected);
            }
            for i in 0..dual.dual_roots().len() {
                assert_eq!(dual.dual_roots()[i].dot(&dual.dual_coroots()[i]), 2);
            }
            assert!(dual.strictly_dominant(dual.rho_vee()));
            let rd = dual.as_root_datum().unwrap();
            assert_eq!(rd.weyl().order(), d.weyl().order());
        }
    }
}

#[test]
fn double_dual_is_simply_connected_form() {
    for t in CATALOG {
        let d = adj(t);
        let dd = d.dual_datum().unwrap().as_root_datum().unwrap().dual_datum().unwrap();
        assert!(dd.is_simply_connected());
        let nd_cartan: IntMatrix = d.cartan_matrix();
        assert_eq!(dd.cartan_matrix(), nd_cartan, "{t}");
        assert_eq!(dd.dual_roots().len(), d.nondivisible_indices().count());
    }
}

#[test]
fn inclusion_respects_dominance_and_weyl_action() {
    for t in ["A1", "A2", "B2", "G2", "BC2"] {
        for d in [adj(t), sc(t)] {
            let dual = d.dual_datum().unwrap();
            let inc = dual.inc();
            for p in d.box_points(-2, 3, 0) {
                let x = inc.apply(&p);
                assert_eq!(d.dominant(&p), dual.dominant(&x));
                for g in 0..d.semisimple_rank() {
                    assert_eq!(inc.apply(&d.weyl().reflect(g, &p)), dual.weyl().reflect(g, &x));
                }
            }
        }
    }
}

#[test]
fn isogeny_of_adjoint_is_trivial() {
    let d = adj("A2");
    let dec = d.isogeny_decomposition().unwrap();
    assert_eq!(dec.torus_rank(), 0);
    assert_eq!(dec.pi_star().matrix(), &linalg::int_identity(2));
}

#[test]
fn isogeny_of_sl2_doubles() {
    let d = sc("A1");
    let dec = d.isogeny_decomposition().unwrap();
    assert_eq!(dec.torus_rank(), 0);
    assert!(dec.pi_star().is_injective());
    assert_eq!(dec.pi_star().apply(&[1].into()), [2].into());
    assert_eq!(dec.adjoint().coroot(0), &LatticePoint::from([2]));
}

#[test]
fn isogeny_with_torus_factor() {
    // X_* = Zα^∨ ⊕ Z
    let spec = CartanSpec::parse("A1", LatticeChoice::Explicit(vec![vec![2, 0], vec![0, 1]])).unwrap();
    let d = RootDatum::build(&spec).unwrap();
    let dec = d.isogeny_decomposition().unwrap();
    assert_eq!(dec.torus_rank(), 1);
    assert_eq!(dec.pi_star().apply(&[1, 0].into()), [2, 0].into());
    let t = dec.pi_star().apply(&[0, 1].into());
    assert_eq!(t.coords()[0], 0);
    assert_eq!(t.coords()[1].abs(), 1);
    // coroots of G' map bijectively onto coroots of the adjoint quotient
    for (i, c) in d.coroots().iter().enumerate() {
        let (ad, tor) = dec.split(c);
        assert!(tor.is_zero());
        assert_eq!(&ad, dec.adjoint().coroot(i));
    }
}

#[test]
fn boxes() {
    let d = adj("A2");
    let b = d.strictly_dominant_box(2);
    assert_eq!(b.len(), 4);
    assert!(b.iter().all(|p| d.strictly_dominant(p)));
    assert_eq!(d.dominant_box(2).len(), 9);
    let s = sc("A2");
    // only points in the root lattice: pairings (a, b) with a + 2b = 0 mod 3
    let pts = s.strictly_dominant_box(3);
    assert_eq!(pts.len(), 3);
}

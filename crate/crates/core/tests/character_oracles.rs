use std::collections::BTreeMap;

use whittaker_core::characters::{dimension, freudenthal_multiplicities, tensor_coeffs, weyl_character};
use whittaker_core::{CartanSpec, LatticeChoice, LatticePoint, RootDatum};

fn datum(t: &str, l: LatticeChoice) -> RootDatum {
    RootDatum::build(&CartanSpec::parse(t, l).unwrap()).unwrap()
}

/// Weight multiplicities of the SL3 representation with highest weight
/// `a ω1 + b ω2`, by counting Gelfand-Tsetlin patterns.
fn gt_weights(a: i64, b: i64) -> BTreeMap<LatticePoint, i64> {
    let top = [a + b, b, 0];
    let mut out = BTreeMap::new();
    for x in top[1]..=top[0] {
        for y in top[2]..=top[1] {
            for z in y..=x {
                let w = [z, x + y - z, top.iter().sum::<i64>() - x - y];
                *out.entry(LatticePoint::from([w[0] - w[1], w[1] - w[2]])).or_insert(0) += 1;
            }
        }
    }
    out
}

#[test]
fn sl3_characters_match_gelfand_tsetlin() {
    let dual = datum("A2", LatticeChoice::Adjoint).dual_datum().unwrap();
    for a in 0..=4 {
        for b in 0..=4 {
            let lam = LatticePoint::from([a, b]);
            let oracle = gt_weights(a, b);
            assert_eq!(weyl_character(&dual, &lam).unwrap().weights(), oracle, "({a},{b})");
            assert_eq!(freudenthal_multiplicities(&dual, &lam).unwrap(), oracle);
            assert_eq!(dimension(&dual, &lam).unwrap() as i64, oracle.values().sum::<i64>());
        }
    }
}

#[test]
fn fundamental_dimensions() {
    // dual groups: PGL3 -> SL3, SO5 -> Sp4, G2 -> G2
    let cases = [
        ("A2", vec![3, 3]),
        ("B2", vec![4, 5]),
        ("G2", vec![7, 14]),
    ];
    for (t, dims) in cases {
        let dual = datum(t, LatticeChoice::Adjoint).dual_datum().unwrap();
        let mut got: Vec<u64> = (0..2)
            .map(|i| {
                let mut c = [0, 0];
                c[i] = 1;
                dimension(&dual, &LatticePoint::from(c)).unwrap()
            })
            .collect();
        got.sort();
        assert_eq!(got, dims, "{t}");
    }
}

#[test]
fn clebsch_gordan() {
    // V_a ⊗ V_b = V_{a+b} ⊕ V_{a+b-2} ⊕ ... ⊕ V_{|a-b|} for SL2, written in
    // the shifted indexing η = highest weight + ρ
    let d = datum("A1", LatticeChoice::Adjoint);
    let dual = d.dual_datum().unwrap();
    for a in 0..=5i64 {
        for b in 0..=5i64 {
            let tc = tensor_coeffs(&dual, &LatticePoint::from([a]), &LatticePoint::from([b + 1])).unwrap();
            let want: BTreeMap<LatticePoint, i64> = (0..=a.min(b))
                .map(|k| (LatticePoint::from([a + b - 2 * k + 1]), 1))
                .collect();
            assert_eq!(tc.coeffs, want, "{a} {b}");
        }
    }
}

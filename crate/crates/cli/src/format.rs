//! JSON encodings of group-algebra elements, root-datum recipes and
//! verification reports.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use whittaker_core::characters::TensorCoefficients;
use whittaker_core::{
    CartanSpec, CartanType, DualGroupDatum, GroupAlgebraElement, LatticeChoice, LatticePoint, LatticeTag,
    LaurentScalar, Rational, RootDatum,
};

use crate::CliError;

/// `"num/den"`, always with an explicit denominator.
pub fn rational_to_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    Rational::from_str(s.trim()).map_err(|_| CliError::Parse(format!("not a rational: `{s}`")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<i64>,
    pub coeff: Vec<(i32, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub lattice: String,
    pub terms: Vec<TermJson>,
}

pub fn scalar_to_json(c: &LaurentScalar) -> Vec<(i32, String)> {
    c.terms().map(|(k, x)| (k, rational_to_string(x))).collect()
}

pub fn scalar_from_json(c: &[(i32, String)]) -> Result<LaurentScalar, CliError> {
    let mut s = LaurentScalar::zero();
    for (k, x) in c {
        s.add_term(*k, parse_rational(x)?);
    }
    Ok(s)
}

impl From<&GroupAlgebraElement> for ElementJson {
    fn from(e: &GroupAlgebraElement) -> Self {
        Self {
            lattice: e.lattice().as_str().to_string(),
            terms: e
                .terms()
                .map(|(p, c)| TermJson {
                    exp: p.coords().to_vec(),
                    coeff: scalar_to_json(c),
                })
                .collect(),
        }
    }
}

impl ElementJson {
    /// Rebuilds the element; `rank` is needed for the empty element.
    pub fn to_element(&self, rank: usize) -> Result<GroupAlgebraElement, CliError> {
        let mut e = GroupAlgebraElement::zero(LatticeTag::from(self.lattice.as_str()), rank);
        for t in &self.terms {
            if t.exp.len() != rank {
                return Err(CliError::Parse(format!("exponent {:?} has the wrong rank", t.exp)));
            }
            e.add_term(LatticePoint::from(t.exp.clone()), scalar_from_json(&t.coeff)?);
        }
        Ok(e)
    }
}

pub fn element_json(e: &GroupAlgebraElement) -> Value {
    serde_json::to_value(ElementJson::from(e)).expect("serializable")
}

pub fn point_json(p: &LatticePoint) -> Value {
    json!(p.coords())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeJson {
    Named(String),
    Basis { basis: Vec<Vec<i64>> },
}

/// On-disk recipe for a root datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
    #[serde(rename = "type")]
    pub cartan: String,
    pub lattice: LatticeJson,
    #[serde(default)]
    pub mult: BTreeMap<String, u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl SpecJson {
    pub fn to_spec(&self) -> Result<CartanSpec, CliError> {
        let lattice = match &self.lattice {
            LatticeJson::Named(s) if s == "adjoint" => LatticeChoice::Adjoint,
            LatticeJson::Named(s) if s == "sc" => LatticeChoice::SimplyConnected,
            LatticeJson::Named(s) => return Err(CliError::Parse(format!("unknown lattice `{s}`"))),
            LatticeJson::Basis { basis } => LatticeChoice::Explicit(basis.clone()),
        };
        let mut mult = BTreeMap::new();
        for (k, &d) in &self.mult {
            let i = k.parse().map_err(|_| CliError::Parse(format!("bad root index `{k}`")))?;
            mult.insert(i, d);
        }
        let mut spec = CartanSpec::new(CartanType::parse(&self.cartan)?, lattice).with_mult(mult);
        if let Some(l) = &self.label {
            spec = spec.with_label(l);
        }
        Ok(spec)
    }
}

fn points(ps: impl IntoIterator<Item = impl AsRef<[i64]>>) -> Value {
    Value::Array(ps.into_iter().map(|p| json!(p.as_ref())).collect())
}

fn rationals(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(|x| json!(rational_to_string(x))).collect())
}

pub fn datum_json(d: &RootDatum, dual: &DualGroupDatum) -> Value {
    let positive: Vec<usize> = d.positive_indices().collect();
    let mult: BTreeMap<String, u32> = positive.iter().map(|&i| (i.to_string(), d.mult(i))).collect();
    json!({
        "label": d.label(),
        "rank": d.rank(),
        "semisimple_rank": d.semisimple_rank(),
        "roots": points(d.roots().iter().map(|r| r.coords())),
        "coroots": points(d.coroots().iter().map(|r| r.coords())),
        "positive": positive,
        "simple": d.simple_indices(),
        "mult": mult,
        "cartan_matrix": d.cartan_matrix(),
        "weyl_order": d.weyl().order(),
        "rho_vee": rationals(&d.rho_vee_rational()),
        "dual": {
            "label": dual.label(),
            "lattice": dual.tag().as_str(),
            "roots": points(dual.dual_roots().iter().map(|r| r.coords())),
            "coroots": points(dual.dual_coroots().iter().map(|r| r.coords())),
            "simple": dual.simple_indices(),
            "rho_vee": point_json(dual.rho_vee()),
            "inclusion": dual.inc().matrix(),
            "simply_connected": dual.is_simply_connected(),
        },
    })
}

pub fn tensor_json(tc: &TensorCoefficients) -> Value {
    json!({
        "lambda": point_json(&tc.lambda),
        "mu": point_json(&tc.mu),
        "coeffs": tc.iter().map(|(eta, c)| json!({"eta": eta.coords(), "c": c})).collect::<Vec<_>>(),
    })
}

/// One verification sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub datum: String,
    pub cases: usize,
    pub failures: Vec<Value>,
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(check: &str, datum: &str) -> Self {
        Self {
            check: check.into(),
            datum: datum.into(),
            cases: 0,
            failures: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn case(&mut self, ok: bool, detail: impl FnOnce() -> Value) {
        self.cases += 1;
        if !ok {
            self.failures.push(detail());
        }
    }

    pub fn fail(&mut self, detail: Value) {
        self.failures.push(detail);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use whittaker_core::scalar::ratio;

    #[test]
    fn element_round_trip() {
        let tag = LatticeTag::from("X");
        let mut e = GroupAlgebraElement::zero(tag, 2);
        e.add_term(LatticePoint::from([1, -2]), LaurentScalar::from_terms([(-1, ratio(3, 2)), (2, ratio(-1, 1))]));
        e.add_term(LatticePoint::from([0, 0]), LaurentScalar::one());
        let j = ElementJson::from(&e);
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(
            text,
            r#"{"lattice":"X","terms":[{"exp":[0,0],"coeff":[[0,"1/1"]]},{"exp":[1,-2],"coeff":[[-1,"3/2"],[2,"-1/1"]]}]}"#
        );
        let back: ElementJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_element(2).unwrap(), e);
    }

    #[test]
    fn spec_parsing() {
        let s: SpecJson = serde_json::from_str(r#"{"type":"BC1","lattice":"adjoint","mult":{"0":2,"1":1}}"#).unwrap();
        let spec = s.to_spec().unwrap();
        assert_eq!(spec.mult, BTreeMap::from([(0, 2), (1, 1)]));
        let s: SpecJson = serde_json::from_str(r#"{"type":"A1","lattice":{"basis":[[1,1],[-1,1]]}}"#).unwrap();
        assert_eq!(s.to_spec().unwrap().lattice, LatticeChoice::Explicit(vec![vec![1, 1], vec![-1, 1]]));
        let s: SpecJson = serde_json::from_str(r#"{"type":"A1","lattice":"weird"}"#).unwrap();
        assert!(s.to_spec().is_err());
    }
}

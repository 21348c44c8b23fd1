use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use crate::error::{Error, Result};
use crate::lattice::LatticePoint;
use crate::linalg::{self, IntMatrix};
use crate::scalar::{rat, Rational};

use super::RootDatum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanFamily {
    A,
    B,
    C,
    D,
    G,
    /// Non-reduced: `B_n` together with twice its short roots.
    BC,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub family: CartanFamily,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: CartanFamily, rank: usize) -> Result<Self> {
        use CartanFamily::*;
        let ok = match family {
            A => (1..=4).contains(&rank),
            B | C => (2..=4).contains(&rank),
            D => rank == 4,
            G => rank == 2,
            BC => (1..=2).contains(&rank),
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::InvalidCartanType(format!("{family:?}{rank}")))
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        use CartanFamily::*;
        let err = || Error::InvalidCartanType(s.into());
        let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(err)?;
        let (fam, n) = s.split_at(split);
        let family = match fam {
            "A" => A,
            "B" => B,
            "C" => C,
            "D" => D,
            "G" => G,
            "BC" => BC,
            _ => return Err(err()),
        };
        let rank = n.parse().map_err(|_| err())?;
        Self::new(family, rank).map_err(|_| err())
    }

    /// Simple roots in a Euclidean realization.
    fn euclidean_simple_roots(&self) -> Vec<Vec<i64>> {
        use CartanFamily::*;
        let n = self.rank;
        let e = |dim: usize, i: usize| {
            let mut v = vec![0; dim];
            v[i] = 1;
            v
        };
        let diff = |dim: usize, i: usize| {
            let mut v = e(dim, i);
            v[i + 1] = -1;
            v
        };
        match self.family {
            A => (0..n).map(|i| diff(n + 1, i)).collect(),
            B | BC => (0..n - 1).map(|i| diff(n, i)).chain([e(n, n - 1)]).collect(),
            C => (0..n - 1)
                .map(|i| diff(n, i))
                .chain([e(n, n - 1).into_iter().map(|x| 2 * x).collect()])
                .collect(),
            D => {
                let mut last = vec![0; n];
                last[n - 2] = 1;
                last[n - 1] = 1;
                (0..n - 1).map(|i| diff(n, i)).chain([last]).collect()
            }
            G => vec![vec![1, -1, 0], vec![-2, 1, 1]],
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeChoice {
    Adjoint,
    SimplyConnected,
    /// Basis vectors of the cocharacter lattice in fundamental-coweight
    /// coordinates, followed by central coordinates.
    Explicit(IntMatrix),
}

/// Recipe for a catalog root datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanSpec {
    pub cartan: CartanType,
    pub lattice: LatticeChoice,
    /// Multiplicity overrides keyed by positive-root index.
    pub mult: BTreeMap<usize, u32>,
    pub label: Option<String>,
}

impl CartanSpec {
    pub fn new(cartan: CartanType, lattice: LatticeChoice) -> Self {
        Self {
            cartan,
            lattice,
            mult: BTreeMap::new(),
            label: None,
        }
    }

    pub fn parse(cartan: &str, lattice: LatticeChoice) -> Result<Self> {
        Ok(Self::new(CartanType::parse(cartan)?, lattice))
    }

    pub fn with_mult(mut self, mult: BTreeMap<usize, u32>) -> Self {
        self.mult = mult;
        self
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn default_label(&self) -> String {
        let kind = match self.lattice {
            LatticeChoice::Adjoint => "adjoint",
            LatticeChoice::SimplyConnected => "sc",
            LatticeChoice::Explicit(_) => "explicit",
        };
        format!("{}-{}", self.cartan, kind)
    }
}

fn edot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn reflect(x: &[i64], a: &[i64]) -> Vec<i64> {
    let k = 2 * edot(x, a) / edot(a, a);
    x.iter().zip(a).map(|(xi, ai)| xi - k * ai).collect()
}

pub(super) fn build(spec: &CartanSpec) -> Result<RootDatum> {
    let ct = spec.cartan;
    let n = ct.rank;
    let simple = ct.euclidean_simple_roots();

    // closure under simple reflections
    let mut roots: Vec<Vec<i64>> = simple.clone();
    let mut i = 0;
    while i < roots.len() {
        for a in &simple {
            let r = reflect(&roots[i], a);
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        i += 1;
    }
    if ct.family == CartanFamily::BC {
        let doubles: Vec<Vec<i64>> = roots
            .iter()
            .filter(|r| edot(r, r) == 1)
            .map(|r| r.iter().map(|x| 2 * x).collect())
            .collect();
        roots.extend(doubles);
    }

    // simple-root coordinates and coroot pairings with the simple roots
    let sbasis: Vec<Vec<Rational>> = linalg::transpose(
        &simple
            .iter()
            .map(|a| a.iter().map(|&x| rat(x)).collect())
            .collect::<Vec<Vec<Rational>>>(),
    );
    let mut data: Vec<(Vec<i64>, Vec<i64>)> = roots
        .iter()
        .map(|b| {
            let bv: Vec<Rational> = b.iter().map(|&x| rat(x)).collect();
            let coeffs = linalg::solve_unique(&sbasis, &bv).expect("root in span");
            let coeffs = linalg::rational_vec_to_int(&coeffs).expect("integral expansion");
            let bb = edot(b, b);
            let cor: Vec<i64> = simple.iter().map(|a| 2 * edot(a, b) / bb).collect();
            (coeffs, cor)
        })
        .collect();
    let height = |c: &Vec<i64>| c.iter().sum::<i64>();
    data.retain(|(c, _)| height(c) > 0);
    data.sort_by_key(|(c, _)| (height(c), Reverse(c.clone())));
    let npos = data.len();
    let negs: Vec<(Vec<i64>, Vec<i64>)> = data
        .iter()
        .map(|(c, k)| (c.iter().map(|x| -x).collect(), k.iter().map(|x| -x).collect()))
        .collect();
    data.extend(negs);

    // lattice basis as columns in ambient (coweight + central) coordinates
    let basis_rows: IntMatrix = match &spec.lattice {
        LatticeChoice::Adjoint => linalg::int_identity(n),
        // coroot lattice; for BC the coroots of the divisible roots are needed
        LatticeChoice::SimplyConnected => linalg::lattice_basis(&data.iter().map(|(_, c)| c.clone()).collect::<Vec<_>>()),
        LatticeChoice::Explicit(rows) => rows.clone(),
    };
    let m = basis_rows.len();
    if m < n || basis_rows.iter().any(|r| r.len() != m) {
        return Err(Error::DegenerateLattice);
    }
    let bmat = linalg::transpose(&basis_rows);
    let binv = linalg::inverse(&linalg::to_rational(&bmat)).ok_or(Error::DegenerateLattice)?;

    let pad = |v: &[i64]| -> Vec<i64> {
        let mut out = v.to_vec();
        out.resize(m, 0);
        out
    };
    let mut char_roots = Vec::with_capacity(data.len());
    let mut cochar_roots = Vec::with_capacity(data.len());
    for (c, k) in &data {
        let a = pad(c);
        char_roots.push(LatticePoint::from(basis_rows.iter().map(|b| edot(b, &a)).collect::<Vec<_>>()));
        let kv: Vec<Rational> = pad(k).into_iter().map(rat).collect();
        let x = linalg::rat_mat_vec(&binv, &kv);
        let x = linalg::rational_vec_to_int(&x).ok_or(Error::LatticeMissingCoroots)?;
        cochar_roots.push(LatticePoint::from(x));
    }
    let simple_idx: Vec<usize> = (0..n).collect();
    for &k in spec.mult.keys() {
        if k >= npos {
            return Err(Error::InvalidDatum(format!("multiplicity key {k} is not a positive root")));
        }
    }
    let label = spec.label.clone().unwrap_or_else(|| spec.default_label());
    RootDatum::from_parts(&label, m, char_roots, cochar_roots, simple_idx, &spec.mult)
}

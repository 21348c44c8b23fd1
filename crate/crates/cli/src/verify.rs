//! Verification sweeps. Each check runs over a deterministic finite grid
//! and returns a [`Report`]; failures carry enough context to reproduce.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use whittaker_core::characters::{
    character_on_cocharacters, dimension, freudenthal_multiplicities, weyl_character,
};
use whittaker_core::hecke::{phi_action, QjMode};
use whittaker_core::linalg;
use whittaker_core::whittaker::{
    conductor_swap, cs_value, cs_value_product_form, delta_half, general_cs_o_value, general_cs_value,
    recursion_residual, specialize, uniqueness_rank,
};
use whittaker_core::{
    BernsteinElement, DualGroupDatum, Error, GroupAlgebraElement, HeckeAlgebra, LatticePoint, LaurentScalar,
    ParamPoly, Rational, RootDatum, SavinModule, SatakeSpecialization, WhittakerModuleModel, WhittakerTable,
};

use crate::format::{point_json, rational_to_string, Report};

/// Sweep sizes shared by all checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Simple pairings of `μ` range over `1..=box_size`.
    pub box_size: i64,
    /// Simple pairings of `λ` range over `0..=lambda_max`.
    pub lambda_max: i64,
    pub seed: u64,
    /// Randomized samples per check (associativity triples, points).
    pub samples: usize,
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            box_size: 3,
            lambda_max: 2,
            seed: 0,
            samples: 50,
            timing: false,
        }
    }
}

pub const CHECKS: &[&str] = &[
    "characters",
    "dual",
    "bernstein",
    "savin",
    "module",
    "recursion",
    "ratio",
    "swap",
    "uniqueness",
    "general",
    "split",
];

pub fn run_check(name: &str, d: &RootDatum, opts: &Options) -> Option<Report> {
    let start = Instant::now();
    let mut r = Report::new(name, d.label());
    let dual = match d.dual_datum() {
        Ok(x) => x,
        Err(e) => {
            r.fail(json!({"error": e.to_string()}));
            return Some(r);
        }
    };
    let res = match name {
        "characters" => characters(&mut r, &dual, opts),
        "dual" => dual_invariants(&mut r, d, &dual),
        "bernstein" => bernstein(&mut r, d, opts),
        "savin" => savin(&mut r, d, opts),
        "module" => module(&mut r, d, &dual, opts),
        "recursion" => recursion(&mut r, d, &dual, opts),
        "ratio" => ratio(&mut r, d, &dual, opts),
        "swap" => swap(&mut r, d, &dual, opts),
        "uniqueness" => uniqueness(&mut r, d, &dual, opts),
        "general" => general(&mut r, d, opts),
        "split" => split_sanity(&mut r, d, opts),
        _ => return None,
    };
    if let Err(e) = res {
        r.fail(json!({"error": e.to_string()}));
    }
    if opts.timing {
        r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Some(r)
}

type Res = Result<(), Error>;

fn pj(p: &LatticePoint) -> Value {
    point_json(p)
}

/// Weyl-character and Freudenthal multiplicities agree term by term, and the
/// augmentation is the dimension, for dominant `λ ∈ 𝒳` in the box.
fn characters(r: &mut Report, dual: &DualGroupDatum, opts: &Options) -> Res {
    for lam in dual.dominant_box(opts.lambda_max) {
        character_case(r, dual, &lam)?;
    }
    Ok(())
}

pub fn character_case(r: &mut Report, dual: &DualGroupDatum, lam: &LatticePoint) -> Res {
    let ch = weyl_character(dual, lam)?;
    let fr = freudenthal_multiplicities(dual, lam)?;
    let dim = dimension(dual, lam)?;
    let aug = ch.element.augmentation();
    let ok = ch.weights() == fr && aug == LaurentScalar::from_int(dim as i64);
    r.case(ok, || json!({"lambda": pj(lam), "dimension": dim}));
    Ok(())
}

/// Every dominant `λ ∈ 𝒳` of a semisimple dual with `dim V_λ <= max_dim`.
pub fn dominant_up_to_dimension(dual: &DualGroupDatum, max_dim: u64) -> Result<Vec<LatticePoint>, Error> {
    let simple: Vec<&LatticePoint> = dual.simple_indices().iter().map(|&s| &dual.dual_coroots()[s]).collect();
    let mut out = BTreeSet::new();
    let mut n = 1;
    loop {
        let mut face_small = false;
        for lam in dual.dominant_box(n) {
            if dimension(dual, &lam)? <= max_dim {
                if simple.iter().any(|a| a.dot(&lam) == n) {
                    face_small = true;
                }
                out.insert(lam);
            }
        }
        if !face_small {
            return Ok(out.into_iter().collect());
        }
        n += 1;
    }
}

/// Integrality of the dual root datum and `ρ^∨ ∈ 𝒳`.
fn dual_invariants(r: &mut Report, d: &RootDatum, dual: &DualGroupDatum) -> Res {
    let as_datum = dual.as_root_datum();
    r.case(as_datum.is_ok(), || json!({"error": "dual data do not form a root datum"}));
    for (a, c) in dual.dual_roots().iter().zip(dual.dual_coroots()) {
        r.case(a.dot(c) == 2, || json!({"root": pj(a), "coroot": pj(c)}));
    }
    for &s in dual.simple_indices() {
        let c = &dual.dual_coroots()[s];
        r.case(c.dot(dual.rho_vee()) == 1, || json!({"rho": pj(dual.rho_vee()), "coroot": pj(c)}));
    }
    // the inclusion intertwines the Weyl actions on simple reflections
    for g in 0..d.semisimple_rank() {
        for lam in d.dominant_box(1) {
            let lhs = dual.inc().apply(&d.weyl().reflect(g, &lam));
            let rhs = dual.weyl().reflect(g, &dual.inc().apply(&lam));
            r.case(lhs == rhs, || json!({"generator": g + 1, "lambda": pj(&lam)}));
        }
    }
    let split_semisimple = !d.is_nonreduced() && d.central_characters().is_empty();
    if split_semisimple {
        r.case(dual.is_simply_connected(), || json!({"error": "dual of a semisimple datum is not simply connected"}));
    }
    Ok(())
}

pub(crate) fn cube(rank: usize, n: i64) -> Vec<LatticePoint> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-n..=n).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(LatticePoint::from).collect()
}

fn random_element(h: &HeckeAlgebra, rng: &mut ChaCha8Rng) -> BernsteinElement {
    let mut e = BernsteinElement::zero(h.rank());
    for _ in 0..rng.gen_range(1..=2) {
        let w = rng.gen_range(0..h.weyl().order());
        let lam: Vec<i64> = (0..h.rank()).map(|_| rng.gen_range(-1..=1)).collect();
        e.add_term(w, LatticePoint::from(lam), ParamPoly::int(rng.gen_range(1..=3)));
    }
    e
}

/// The symmetric-θ commutation identity with symbolic `q_j(s)`, and
/// seeded associativity triples under the split specialization.
fn bernstein(r: &mut Report, d: &RootDatum, opts: &Options) -> Res {
    let h = HeckeAlgebra::new(d);
    for lam in cube(d.rank(), opts.box_size) {
        for g in 0..d.semisimple_rank() {
            let res = h.commutation_residual(g, &lam)?;
            r.case(res.is_zero(), || json!({"generator": g + 1, "lambda": pj(&lam), "residual": h.format(&res)}));
        }
    }
    associativity(r, d, opts.seed, opts.samples);
    Ok(())
}

pub(crate) fn associativity(r: &mut Report, d: &RootDatum, seed: u64, samples: usize) {
    let h = HeckeAlgebra::new(d).with_mode(QjMode::Split);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let a = random_element(&h, &mut rng);
        let b = random_element(&h, &mut rng);
        let c = random_element(&h, &mut rng);
        let lhs = h.mul(&h.mul(&a, &b), &c);
        let rhs = h.mul(&a, &h.mul(&b, &c));
        r.case(lhs == rhs, || {
            json!({"sample": i, "a": h.format(&a), "b": h.format(&b), "c": h.format(&c)})
        });
    }
}

/// Kernel and image of the projection to the Whittaker model on a
/// W-stable set of θ's.
fn savin(r: &mut Report, d: &RootDatum, opts: &Options) -> Res {
    let w = d.weyl();
    let mut set = BTreeSet::new();
    for lam in d.dominant_box(opts.box_size) {
        set.extend(w.orbit(&lam));
    }
    let pts: Vec<LatticePoint> = set.into_iter().collect();
    for lam in &pts {
        for x in w.elements() {
            let a = SavinModule::theta(d, lam.clone());
            let b = SavinModule::theta(d, w.act(x, lam)).scale(&LaurentScalar::from_int(w.sign(x)));
            let img = a.sub(&b)?.project_to_whittaker(w)?;
            r.case(img.is_zero(), || json!({"lambda": pj(lam), "w": w.word(x)}));
        }
        if d.strictly_dominant(lam) {
            let img = SavinModule::theta(d, lam.clone()).project_to_whittaker(w)?;
            r.case(img == WhittakerModuleModel::phi(w, lam.clone())?, || json!({"mu": pj(lam)}));
        }
    }

    // rank identity: dim ker + dim im = |set|, with the kernel spanned by
    // the elements θ_λ - (-1)^{ℓ(w)} θ_{wλ}
    let index: BTreeMap<&LatticePoint, usize> = pts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let regular: Vec<LatticePoint> = pts.iter().filter(|p| d.strictly_dominant(p)).cloned().collect();
    let reg_index: BTreeMap<&LatticePoint, usize> = regular.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut proj = vec![vec![Rational::from_integer(0.into()); pts.len()]; regular.len()];
    for (j, p) in pts.iter().enumerate() {
        let img = SavinModule::theta(d, p.clone()).project_to_whittaker(w)?;
        for (mu, c) in img.coords() {
            proj[reg_index[mu]][j] = c.as_rational().expect("constant coefficient");
        }
    }
    let mut kernel = Vec::new();
    for p in &pts {
        for x in w.elements() {
            let mut row = vec![Rational::from_integer(0.into()); pts.len()];
            row[index[p]] += Rational::from_integer(1.into());
            row[index[&w.act(x, p)]] -= Rational::from_integer(w.sign(x).into());
            kernel.push(row);
        }
    }
    let im = linalg::rank(&proj);
    let ker = linalg::rank(&kernel);
    r.case(im == regular.len() && ker + im == pts.len(), || {
        json!({"points": pts.len(), "image": im, "kernel": ker, "regular": regular.len()})
    });
    Ok(())
}

/// `j(φ_μ A_λ) = ch V_λ alt(e^μ)`, and the action coordinates are the
/// tensor-product coefficients, recomputed here from Freudenthal
/// multiplicities.
fn module(r: &mut Report, d: &RootDatum, dual: &DualGroupDatum, opts: &Options) -> Res {
    let w = d.weyl();
    let inc = dual.inc();
    let alts = d
        .strictly_dominant_box(opts.box_size)
        .into_iter()
        .map(|mu| Ok((GroupAlgebraElement::basis(d.cochar_tag().clone(), mu.clone()).alt(w)?, mu)))
        .collect::<Result<Vec<_>, Error>>()?;
    for lam in d.dominant_box(opts.lambda_max) {
        let ch = character_on_cocharacters(dual, &lam, d.cochar_tag())?;
        let weights = freudenthal_multiplicities(dual, &inc.apply(&lam))?;
        for (alt, mu) in &alts {
            let via_savin = SavinModule::theta(d, mu.clone()).act_spherical(dual, &lam)?.project_to_whittaker(w)?;
            let model = phi_action(d, dual, mu, &lam)?;
            let mut oracle: BTreeMap<LatticePoint, i64> = BTreeMap::new();
            for (nu, m) in &weights {
                if let Some((eta, sign)) = dual.weyl().straighten(&(&inc.apply(mu) + nu)) {
                    *oracle.entry(eta).or_insert(0) += sign * m;
                }
            }
            oracle.retain(|_, c| *c != 0);
            let coords_ok = oracle.len() == model.coords().len()
                && oracle.iter().all(|(eta, &c)| {
                    inc.preimage(eta).is_some_and(|e| model.coeff(&e) == LaurentScalar::from_int(c))
                });
            let ok = via_savin == model && model.j(w)? == ch.mul(alt)? && coords_ok;
            r.case(ok, || json!({"lambda": pj(&lam), "mu": pj(mu)}));
        }
    }
    Ok(())
}

/// Evaluates `recursion_residual`, filling in missing entries from `fill`.
fn residual_filling(
    d: &RootDatum,
    dual: &DualGroupDatum,
    lam: &LatticePoint,
    mu: &LatticePoint,
    table: &mut WhittakerTable,
    fill: &dyn Fn(&LatticePoint) -> Result<GroupAlgebraElement, Error>,
) -> Result<GroupAlgebraElement, Error> {
    loop {
        match recursion_residual(d, dual, lam, mu, table) {
            Err(Error::MissingTableEntry(keys)) => {
                for k in keys {
                    let v = fill(&k)?;
                    table.insert(d, k, v)?;
                }
            }
            other => return other,
        }
    }
}

/// The recursion on closed-form tables, and detection of a perturbed entry.
fn recursion(r: &mut Report, d: &RootDatum, dual: &DualGroupDatum, opts: &Options) -> Res {
    let one = GroupAlgebraElement::one(d.cochar_tag().clone(), d.rank());
    let keys = d.strictly_dominant_box(opts.box_size);
    let mut table = WhittakerTable::cs_table(d, &keys, &one)?;
    let fill = |k: &LatticePoint| cs_value(d, k, &one);
    for mu in &keys {
        let pf = cs_value_product_form(d, dual, mu, &one)?;
        r.case(Some(&pf) == table.get(mu), || json!({"mu": pj(mu), "detail": "product form"}));
    }
    for lam in d.dominant_box(opts.lambda_max) {
        for mu in &keys {
            let res = residual_filling(d, dual, &lam, mu, &mut table, &fill)?;
            r.case(res.is_zero(), || json!({"lambda": pj(&lam), "mu": pj(mu)}));
        }
    }
    // a perturbed entry must be detected by some constraint through it
    if let Some(mu) = keys.first() {
        let mut bad = table.clone();
        let slot = bad.get_mut(mu).expect("present");
        *slot = slot.scale(&LaurentScalar::v_pow(1));
        let mut detected = false;
        for lam in d.dominant_box(opts.lambda_max.max(1)) {
            if lam.is_zero() {
                continue;
            }
            let res = residual_filling(d, dual, &lam, mu, &mut bad, &fill)?;
            detected |= !res.is_zero();
        }
        r.case(detected, || json!({"mu": pj(mu), "detail": "perturbation not detected"}));
    }
    Ok(())
}

/// `cs(λ+ρ^∨) / cs(ρ^∨) = δ^{1/2}(λ) ch V_λ` for data with `ρ^∨ ∈ X_*`.
fn ratio(r: &mut Report, d: &RootDatum, dual: &DualGroupDatum, opts: &Options) -> Res {
    let Some(rho) = d.rho_vee() else {
        return Ok(());
    };
    let one = GroupAlgebraElement::one(d.cochar_tag().clone(), d.rank());
    let base = cs_value(d, &rho, &one)?;
    for lam in d.dominant_box(opts.box_size) {
        let q = cs_value(d, &(&lam + &rho), &one)?.exact_divide(&base);
        let want = character_on_cocharacters(dual, &lam, d.cochar_tag())?.scale(&delta_half(d, &lam));
        r.case(q.as_ref() == Ok(&want), || json!({"lambda": pj(&lam)}));
    }
    Ok(())
}

/// Conductor-`O` values, shifted by `ρ^∨`, satisfy the conductor-`p`
/// recursion and differ from the closed form by the constant `W(m_{ρ^∨})`.
fn swap(r: &mut Report, d: &RootDatum, dual: &DualGroupDatum, opts: &Options) -> Res {
    let Some(rho) = d.rho_vee() else {
        return Ok(());
    };
    let one = GroupAlgebraElement::one(d.cochar_tag().clone(), d.rank());
    let o = WhittakerTable::conductor_o_table(d, dual, &d.dominant_box(opts.box_size), &one)?;
    let mut p = conductor_swap(d, &o)?;
    r.case(p.get(&rho) == o.get(&LatticePoint::zero(d.rank())), || json!({"detail": "origin does not move to rho"}));
    let base = cs_value(d, &rho, &one)?;
    for (mu, v) in p.iter() {
        r.case(cs_value(d, mu, &one)? == base.mul(v)?, || json!({"mu": pj(mu), "detail": "closed form"}));
    }
    let fill = |k: &LatticePoint| whittaker_core::whittaker::conductor_o_value(d, dual, &(k - &rho), &one);
    for lam in d.dominant_box(opts.lambda_max) {
        for mu in d.strictly_dominant_box(opts.box_size) {
            let res = residual_filling(d, dual, &lam, &mu, &mut p, &fill)?;
            r.case(res.is_zero(), || json!({"lambda": pj(&lam), "mu": pj(&mu)}));
        }
    }
    Ok(())
}

/// Minimal generators of the monoid of dominant cocharacters: the
/// indecomposable nonzero dominant points. Every one of them has simple
/// pairings bounded by the index of the coroot lattice in the coweights.
pub fn lambda_generators(d: &RootDatum) -> Vec<LatticePoint> {
    let cartan: Vec<Vec<Rational>> =
        d.cartan_matrix().iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
    let det = linalg::determinant(&cartan).to_integer();
    let bound = i64::try_from(det.magnitude()).unwrap_or(1).max(1);
    let simple: Vec<&LatticePoint> = d.simple_roots().collect();
    let weight = |p: &LatticePoint| simple.iter().map(|a| a.dot(p)).sum::<i64>();
    let candidates: Vec<LatticePoint> = d.dominant_box(bound).into_iter().filter(|p| weight(p) > 0).collect();
    let set: BTreeSet<&LatticePoint> = candidates.iter().collect();
    let mut out: Vec<LatticePoint> = candidates
        .iter()
        .filter(|p| !candidates.iter().any(|q| q != *p && weight(q) < weight(p) && set.contains(&(*p - q))))
        .cloned()
        .collect();
    // central directions, which pair to zero with every simple root
    out.extend(d.dominant_box(1).into_iter().filter(|p| !p.is_zero() && weight(p) == 0));
    out
}

fn uniqueness(r: &mut Report, d: &RootDatum, dual: &DualGroupDatum, opts: &Options) -> Res {
    let gens = lambda_generators(d);
    // the box must hold translates by every generator
    let reach = gens.iter().flat_map(|g| d.simple_roots().map(move |a| a.dot(g))).max().unwrap_or(1).max(1);
    let bx = d.strictly_dominant_height_box(opts.box_size.max(2) * reach);
    let rep = uniqueness_rank(d, dual, &bx, &gens)?;
    r.case(rep.rank == 1 && rep.certified, || {
        json!({
            "rank": rep.rank,
            "certified": rep.certified,
            "unknowns": rep.unknowns,
            "constraints_used": rep.constraints_used,
            "constraints_skipped": rep.constraints_skipped.len(),
        })
    });
    Ok(())
}

/// Values of the group computed through its adjoint quotient lie in the
/// image of its own group algebra and satisfy its own recursion.
fn general(r: &mut Report, d: &RootDatum, opts: &Options) -> Res {
    let dec = d.isogeny_decomposition()?;
    let dual = d.dual_datum()?;
    let mut table = WhittakerTable::new(whittaker_core::Conductor::P, d);
    for mu in d.strictly_dominant_box(opts.box_size) {
        match general_cs_value(&dec, &mu, None) {
            Ok(v) => {
                r.case(true, || Value::Null);
                table.insert(d, mu, v.value)?;
            }
            Err(e) => r.case(false, || json!({"mu": pj(&mu), "error": e.to_string()})),
        }
    }
    for lam in d.dominant_box(opts.box_size) {
        let ok = general_cs_o_value(&dec, &lam, None).is_ok();
        r.case(ok, || json!({"lambda": pj(&lam), "detail": "conductor O membership"}));
    }
    let fill = |k: &LatticePoint| general_cs_value(&dec, k, None).map(|v| v.value);
    let keys: Vec<LatticePoint> = table.keys().cloned().collect();
    for lam in d.dominant_box(opts.lambda_max) {
        for mu in &keys {
            let res = residual_filling(d, &dual, &lam, mu, &mut table, &fill)?;
            r.case(res.is_zero(), || json!({"lambda": pj(&lam), "mu": pj(mu)}));
        }
    }
    Ok(())
}

/// `sum_{k=0}^{λ} z^{λ-2k}`, the character of `SL2` written out directly.
pub fn schur_sum(z: &Rational, lam: i64) -> Rational {
    (0..=lam).map(|k| pow(z, lam - 2 * k)).sum()
}

fn pow(x: &Rational, k: i64) -> Rational {
    let mut acc = Rational::from_integer(1.into());
    for _ in 0..k.unsigned_abs() {
        acc *= x;
    }
    if k < 0 {
        acc.recip()
    } else {
        acc
    }
}

fn small_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    Rational::new(rng.gen_range(lo..=hi).into(), rng.gen_range(1..=5i64).into())
}

/// For split rank one with unit parameters: the specialized ratio
/// `cs(λ+ρ^∨)/cs(ρ^∨)` against `v^{-2λ} sum_k z^{λ-2k}` at seeded points
/// `(z, q = t^2)`.
fn split_sanity(r: &mut Report, d: &RootDatum, opts: &Options) -> Res {
    let Some(rho) = d.rho_vee() else {
        return Ok(());
    };
    if d.rank() != 1 || d.semisimple_rank() != 1 || d.mult(d.simple_indices()[0]) != 1 || d.is_nonreduced() {
        return Ok(());
    }
    let one = GroupAlgebraElement::one(d.cochar_tag().clone(), d.rank());
    let base = cs_value(d, &rho, &one)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for i in 0..20 {
        let z = loop {
            let z = small_rational(&mut rng, -9, 9);
            if z != Rational::from_integer(0.into()) {
                break z;
            }
        };
        let t = loop {
            let t = small_rational(&mut rng, 2, 12);
            if t > Rational::from_integer(1.into()) {
                break t;
            }
        };
        let s = SatakeSpecialization::new(vec![z.clone()], &t * &t)?;
        for lam in 0..=opts.box_size {
            let q = cs_value(d, &(&rho + &LatticePoint::from([lam])), &one)?.exact_divide(&base)?;
            let got = specialize(&q, &s)?;
            let want = pow(&t, -2 * lam) * schur_sum(&z, lam);
            r.case(got == want, || {
                json!({
                    "sample": i,
                    "lambda": lam,
                    "z": rational_to_string(&z),
                    "t": rational_to_string(&t),
                    "got": rational_to_string(&got),
                    "want": rational_to_string(&want),
                })
            });
        }
    }
    Ok(())
}

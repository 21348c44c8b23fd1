use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::lattice::LatticePoint;
use crate::root_datum::RootDatum;
use crate::weyl::WeylGroup;

use super::params::{ParamPoly, Symbol};

/// How the Bernstein-relation coefficients `q_j(s)` are treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum QjMode {
    /// Opaque commuting symbols.
    #[default]
    Symbolic,
    /// `q_j(s) = q(s) - 1`.
    Split,
}

/// A finite sum `sum c T_w θ_λ` in normal form (T's to the left).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernsteinElement {
    rank: usize,
    terms: BTreeMap<(usize, LatticePoint), ParamPoly>,
}

impl BernsteinElement {
    pub fn zero(rank: usize) -> Self {
        Self {
            rank,
            terms: BTreeMap::new(),
        }
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

    /// Terms keyed by `(w, λ)`.
    pub fn terms(&self) -> impl Iterator<Item = (&(usize, LatticePoint), &ParamPoly)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, w: usize, lambda: &LatticePoint) -> ParamPoly {
        self.terms.get(&(w, lambda.clone())).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: usize, lambda: LatticePoint, c: ParamPoly) {
        if c.is_zero() {
            return;
        }
        let key = (w, lambda);
        match self.terms.get_mut(&key) {
            Some(slot) => {
                slot.add_assign(&c);
                if slot.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((w, l), c) in &other.terms {
            out.add_term(*w, l.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&ParamPoly::int(-1)))
    }

    pub fn scale(&self, c: &ParamPoly) -> Self {
        let mut out = Self::zero(self.rank);
        for ((w, l), x) in &self.terms {
            out.add_term(*w, l.clone(), x.mul(c));
        }
        out
    }

    /// Drops zero coefficients. Elements are kept normalized, so this is the
    /// identity on anything built through the public API.
    pub fn normalize(&self) -> Self {
        let mut out = Self::zero(self.rank);
        for ((w, l), c) in &self.terms {
            out.add_term(*w, l.clone(), c.clone());
        }
        out
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&ParamPoly) -> ParamPoly) -> Self {
        let mut out = Self::zero(self.rank);
        for ((w, l), c) in &self.terms {
            out.add_term(*w, l.clone(), f(c));
        }
        out
    }
}

/// `T_s θ_λ = θ_{sλ} T_s + sum c_μ θ_μ`: the Bernstein relation read with
/// θ's on the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaCommutation {
    pub generator: usize,
    /// `sλ`, the exponent of the leading `θ_{sλ} T_s`.
    pub leading: LatticePoint,
    pub correction: BTreeMap<LatticePoint, ParamPoly>,
}

impl fmt::Display for ThetaCommutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "th{}*T[s{}]", self.leading, self.generator + 1)?;
        for (mu, c) in self.correction.iter().rev() {
            f.write_str(&term_string(c, None, Some(mu), false))?;
        }
        Ok(())
    }
}

/// The Iwahori-Hecke algebra of a root datum in the Bernstein presentation,
/// restricted to finite Weyl group words times θ's.
#[derive(Clone, Debug)]
pub struct HeckeAlgebra {
    weyl: WeylGroup,
    rank: usize,
    class_rep: Vec<usize>,
    mode: QjMode,
}

impl HeckeAlgebra {
    pub fn new(datum: &RootDatum) -> Self {
        Self::from_weyl(datum.weyl().clone())
    }

    pub fn from_weyl(weyl: WeylGroup) -> Self {
        let class_rep = (0..weyl.num_generators())
            .map(|g| weyl.conjugacy_representative(g))
            .collect();
        Self {
            rank: weyl.rank(),
            weyl,
            class_rep,
            mode: QjMode::Symbolic,
        }
    }

    pub fn with_mode(mut self, mode: QjMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn mode(&self) -> QjMode {
        self.mode
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Parameter symbols are shared by conjugate simple reflections.
    pub fn parameter_class(&self, g: usize) -> usize {
        self.class_rep[g]
    }

    /// `q(s_g)`.
    pub fn q(&self, g: usize) -> ParamPoly {
        ParamPoly::q(self.class_rep[g])
    }

    /// `q_j(s_g)`, or `q(s_g) - 1` under the split specialization.
    pub fn qj(&self, g: usize, j: u32) -> ParamPoly {
        match self.mode {
            QjMode::Symbolic => ParamPoly::qj(self.class_rep[g], j),
            QjMode::Split => self.q(g).sub(&ParamPoly::one()),
        }
    }

    /// Rewrites symbols of non-representative reflections to their class
    /// representative, and applies the split specialization when enabled.
    pub fn canonical_coeff(&self, c: &ParamPoly) -> ParamPoly {
        let mut out = c.clone();
        for g in 0..self.class_rep.len() {
            let r = self.class_rep[g];
            if r != g {
                out = out.substitute(Symbol::Q(g as u16), &ParamPoly::q(r));
            }
        }
        let qjs: Vec<(u16, u32)> = out
            .terms()
            .flat_map(|(m, _)| m.factors().iter().copied())
            .filter_map(|(s, _)| match s {
                Symbol::Qj(g, j) => Some((g, j)),
                _ => None,
            })
            .collect();
        for (g, j) in qjs {
            let target = self.qj(g as usize, j);
            out = out.substitute(Symbol::Qj(g, j), &target);
        }
        out
    }

    fn check_generator(&self, g: usize) -> Result<()> {
        if g < self.weyl.num_generators() {
            Ok(())
        } else {
            Err(Error::NotSimple(g))
        }
    }

    pub fn one(&self) -> BernsteinElement {
        self.theta(LatticePoint::zero(self.rank))
    }

    pub fn theta(&self, lambda: LatticePoint) -> BernsteinElement {
        self.basis(0, lambda)
    }

    /// `T_w θ_λ`.
    pub fn basis(&self, w: usize, lambda: LatticePoint) -> BernsteinElement {
        let mut e = BernsteinElement::zero(self.rank);
        e.add_term(w, lambda, ParamPoly::one());
        e
    }

    pub fn t(&self, g: usize) -> Result<BernsteinElement> {
        self.check_generator(g)?;
        Ok(self.basis(self.weyl.generator(g), LatticePoint::zero(self.rank)))
    }

    /// `T_w` for the element with the given word (any word; the product is
    /// taken in the algebra).
    pub fn t_word(&self, word: &[usize]) -> Result<BernsteinElement> {
        let mut acc = self.one();
        for &g in word {
            self.check_generator(g)?;
            acc = self.right_mul_t(&acc, g);
        }
        Ok(acc)
    }

    /// `θ_λ θ_μ = θ_{λ+μ}`.
    pub fn theta_mul(&self, lambda: &LatticePoint, mu: &LatticePoint) -> BernsteinElement {
        self.theta(lambda + mu)
    }

    /// The pure-θ correction in `T_s θ_λ = θ_{sλ} T_s + corr(λ)`.
    fn correction(&self, g: usize, lambda: &LatticePoint) -> BTreeMap<LatticePoint, ParamPoly> {
        let n = self.weyl.pairing(g, lambda);
        let coroot = self.weyl.vector(g);
        let mut out = BTreeMap::new();
        let (base, count, sign) = if n > 0 {
            (lambda.clone(), n, 1)
        } else {
            (self.weyl.reflect(g, lambda), -n, -1)
        };
        for j in 0..count {
            let mu = &base - &coroot.scale(j);
            let c = self.qj(g, j as u32).mul(&ParamPoly::int(sign));
            if !c.is_zero() {
                out.insert(mu, c);
            }
        }
        out
    }

    /// The Bernstein relation for `T_{s_g} θ_λ`, in θ-first form.
    pub fn ts_theta(&self, g: usize, lambda: &LatticePoint) -> Result<ThetaCommutation> {
        self.check_generator(g)?;
        Ok(ThetaCommutation {
            generator: g,
            leading: self.weyl.reflect(g, lambda),
            correction: self.correction(g, lambda),
        })
    }

    /// `T_x T_{s_g}`.
    fn t_times_generator(&self, x: usize, g: usize) -> Vec<(usize, ParamPoly)> {
        let xs = self.weyl.mul_gen_right(x, g);
        if self.weyl.length(xs) > self.weyl.length(x) {
            alloc::vec![(xs, ParamPoly::one())]
        } else {
            // x = x' s with ℓ(x') < ℓ(x): T_x T_s = (q-1) T_x + q T_{x'}
            let q = self.q(g);
            alloc::vec![(x, q.sub(&ParamPoly::one())), (xs, q)]
        }
    }

    /// `a T_{s_g}`, moving each θ past `T_s` with
    /// `θ_λ T_s = T_s θ_{sλ} - corr(sλ)`.
    pub fn right_mul_t(&self, a: &BernsteinElement, g: usize) -> BernsteinElement {
        let mut out = BernsteinElement::zero(self.rank);
        for ((x, lambda), c) in &a.terms {
            let s_lambda = self.weyl.reflect(g, lambda);
            for (y, d) in self.t_times_generator(*x, g) {
                out.add_term(y, s_lambda.clone(), c.mul(&d));
            }
            for (mu, d) in self.correction(g, &s_lambda) {
                out.add_term(*x, mu, c.mul(&d).neg());
            }
        }
        out
    }

    /// `a θ_μ`.
    pub fn right_mul_theta(&self, a: &BernsteinElement, mu: &LatticePoint) -> BernsteinElement {
        let mut out = BernsteinElement::zero(self.rank);
        for ((x, lambda), c) in &a.terms {
            out.add_term(*x, lambda + mu, c.clone());
        }
        out
    }

    /// The normal form of `a b`.
    pub fn mul(&self, a: &BernsteinElement, b: &BernsteinElement) -> BernsteinElement {
        let mut out = BernsteinElement::zero(self.rank);
        // group b's terms by Weyl element to share the T-word products
        let mut by_w: BTreeMap<usize, Vec<(&LatticePoint, &ParamPoly)>> = BTreeMap::new();
        for ((w, l), c) in &b.terms {
            by_w.entry(*w).or_default().push((l, c));
        }
        for (w, rest) in by_w {
            let mut aw = a.clone();
            for &g in self.weyl.word(w) {
                aw = self.right_mul_t(&aw, g as usize);
            }
            for (l, c) in rest {
                for ((x, lambda), d) in &aw.terms {
                    out.add_term(*x, lambda + l, d.mul(c));
                }
            }
        }
        out
    }

    /// `1_K = sum_w T_w`.
    pub fn one_k(&self) -> BernsteinElement {
        let mut e = BernsteinElement::zero(self.rank);
        for w in self.weyl.elements() {
            e.add_term(w, LatticePoint::zero(self.rank), ParamPoly::one());
        }
        e
    }

    /// `T_s (θ_λ + θ_{sλ}) - (θ_λ + θ_{sλ}) T_s`.
    pub fn commutation_residual(&self, g: usize, lambda: &LatticePoint) -> Result<BernsteinElement> {
        let t = self.t(g)?;
        let sym = self.theta(lambda.clone()).add(&self.theta(self.weyl.reflect(g, lambda)));
        Ok(self.mul(&t, &sym).sub(&self.mul(&sym, &t)))
    }

    /// Renders in the term language, longest `T_w` first.
    pub fn format(&self, e: &BernsteinElement) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        let mut keys: Vec<_> = e.terms.iter().collect();
        keys.sort_by(|a, b| {
            let (wa, la) = a.0;
            let (wb, lb) = b.0;
            self.weyl
                .length(*wb)
                .cmp(&self.weyl.length(*wa))
                .then(wb.cmp(wa))
                .then(lb.cmp(la))
        });
        for (i, ((w, l), c)) in keys.into_iter().enumerate() {
            let word: Option<String> = (*w != 0).then(|| {
                let mut t = String::from("T[");
                for (k, g) in self.weyl.word(*w).iter().enumerate() {
                    if k > 0 {
                        t.push(',');
                    }
                    let _ = write!(t, "s{}", g + 1);
                }
                t.push(']');
                t
            });
            let theta = (!l.is_zero()).then_some(l);
            s.push_str(&term_string(c, word.as_deref(), theta, i == 0));
        }
        s
    }
}

fn term_string(c: &ParamPoly, word: Option<&str>, theta: Option<&LatticePoint>, first: bool) -> String {
    let mut s = String::new();
    let mut factors: Vec<String> = Vec::new();
    if let Some(w) = word {
        factors.push(w.into());
    }
    if let Some(l) = theta {
        let mut t = String::from("th");
        let _ = write!(t, "{l}");
        factors.push(t);
    }
    let (negative, coeff) = match c.as_term() {
        Some((m, r)) if r.is_negative() => (true, ParamPoly::term(m.clone(), -r.clone())),
        _ => (false, c.clone()),
    };
    s.push_str(match (first, negative) {
        (true, true) => "-",
        (true, false) => "",
        (false, true) => " - ",
        (false, false) => " + ",
    });
    let coeff_str = if coeff.as_term().is_some() {
        alloc::format!("{coeff}")
    } else {
        alloc::format!("({coeff})")
    };
    let unit = coeff.as_term().is_some_and(|(m, r)| m.is_one() && r.is_one());
    if factors.is_empty() {
        s.push_str(&coeff_str);
    } else {
        if !unit {
            s.push_str(&coeff_str);
            s.push('*');
        }
        s.push_str(&factors.join("*"));
    }
    s
}

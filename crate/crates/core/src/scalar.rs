//! Exact Laurent polynomials in `v = q^{1/2}` with rational coefficients.

use alloc::collections::BTreeMap;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// An element of `Q[v, v^-1]`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentScalar {
    terms: BTreeMap<i32, Rational>,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl LaurentScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::v_pow(0)
    }

    /// `v^k`.
    pub fn v_pow(k: i32) -> Self {
        Self::monomial(k, Rational::one())
    }

    pub fn monomial(k: i32, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    /// Builds from `(power, coefficient)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(it: I) -> Self {
        let mut s = Self::zero();
        for (k, c) in it {
            s.add_term(k, c);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(One::is_one)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: i32) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `Some((k, c))` when the scalar is the single term `c v^k`.
    pub fn as_monomial(&self) -> Option<(i32, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    /// The rational value if the scalar has no `v` dependence.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, k: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(Rational::zero);
        rat_add_assign(slot, c);
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(*k, c.clone());
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        if (-c).is_one() {
            return -self;
        }
        Self {
            terms: self.terms.iter().map(|(k, x)| (*k, rat_mul(x, c))).collect(),
        }
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn min_pow(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_pow(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Exact quotient in `Q[v, v^-1]`.
    pub fn exact_div(&self, den: &Self) -> Result<Self> {
        let (dlo, dhi) = match (den.min_pow(), den.max_pow()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(Error::DivisionByZero),
        };
        let Some(nlo) = self.min_pow() else {
            return Ok(Self::zero());
        };
        if dlo == dhi {
            return Ok(self.shift(-dlo).scale(&den.terms[&dlo].recip()));
        }
        let dlead = den.terms[&dhi].clone();
        let floor = nlo - dlo;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rhi) = rem.max_pow() {
            let t = rhi - dhi;
            if t < floor {
                return Err(Error::NonDivisible);
            }
            let c = &rem.terms[&rhi] / &dlead;
            for (k, x) in &den.terms {
                rem.add_term(k + t, -(x * &c));
            }
            quot.add_term(t, c);
        }
        Ok(quot)
    }

    /// Value at `v = x`.
    pub fn evaluate(&self, x: &Rational) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (k, c) in &self.terms {
            acc += c * rat_pow(x, *k)?;
        }
        Ok(acc)
    }
}

/// `x^k` for integer `k`, rejecting `0^k` with `k < 0`.
pub fn rat_pow(x: &Rational, k: i32) -> Result<Rational> {
    if k >= 0 {
        Ok(num_traits::pow(x.clone(), k as usize))
    } else if x.is_zero() {
        Err(Error::ZeroSpecialization)
    } else {
        Ok(num_traits::pow(x.recip(), k.unsigned_abs() as usize))
    }
}

/// `x += y`, skipping the gcd normalization for integers.
pub(crate) fn rat_add_assign(x: &mut Rational, y: Rational) {
    if x.is_integer() && y.is_integer() {
        *x = Rational::new_raw(x.numer() + y.numer(), BigInt::one());
    } else {
        *x += y;
    }
}

/// Product that skips the gcd normalization for integers.
pub(crate) fn rat_mul(x: &Rational, y: &Rational) -> Rational {
    if x.is_integer() && y.is_integer() {
        Rational::new_raw(x.numer() * y.numer(), BigInt::one())
    } else {
        x * y
    }
}

impl From<Rational> for LaurentScalar {
    fn from(c: Rational) -> Self {
        Self::from_rational(c)
    }
}

impl<'a> Add<&'a LaurentScalar> for &'a LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Add for LaurentScalar {
    type Output = LaurentScalar;
    fn add(mut self, rhs: LaurentScalar) -> LaurentScalar {
        self.add_assign_ref(&rhs);
        self
    }
}

impl<'a> Sub<&'a LaurentScalar> for &'a LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }
}

impl Sub for LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: LaurentScalar) -> LaurentScalar {
        &self - &rhs
    }
}

impl<'a> Mul<&'a LaurentScalar> for &'a LaurentScalar {
    type Output = LaurentScalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &LaurentScalar) -> LaurentScalar {
        if let Some((k, c)) = rhs.as_monomial() {
            return self.shift(k).scale(c);
        }
        if let Some((k, c)) = self.as_monomial() {
            return rhs.shift(k).scale(c);
        }
        let mut out = LaurentScalar::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a + b, rat_mul(x, y));
            }
        }
        out
    }
}

impl Mul for LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: LaurentScalar) -> LaurentScalar {
        &self * &rhs
    }
}

impl Neg for LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        LaurentScalar {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        -self.clone()
    }
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            match (*k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "v^{k}")?,
                (_, false) => write!(f, "{mag}*v^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn s(pairs: &[(i32, i64)]) -> LaurentScalar {
        LaurentScalar::from_terms(pairs.iter().map(|&(k, c)| (k, rat(c))))
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let a = s(&[(1, 2), (0, 1)]);
        let b = s(&[(1, -2)]);
        assert_eq!((&a + &b), LaurentScalar::one());
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn product_and_division() {
        // (v - v^-1)(v + v^-1) = v^2 - v^-2
        let a = s(&[(1, 1), (-1, -1)]);
        let b = s(&[(1, 1), (-1, 1)]);
        let p = &a * &b;
        assert_eq!(p, s(&[(2, 1), (-2, -1)]));
        assert_eq!(p.exact_div(&a).unwrap(), b);
        assert_eq!(p.exact_div(&b).unwrap(), a);
        assert_eq!(s(&[(0, 1), (1, 1)]).exact_div(&s(&[(1, 1), (-1, 1)])), Err(Error::NonDivisible));
        assert_eq!(a.exact_div(&LaurentScalar::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn evaluation() {
        let a = s(&[(2, 1), (-1, 3)]);
        assert_eq!(a.evaluate(&rat(2)).unwrap(), ratio(11, 2));
        assert_eq!(a.evaluate(&rat(0)), Err(Error::ZeroSpecialization));
    }

    #[test]
    fn display() {
        assert_eq!(s(&[(0, 1), (-2, -3)]).to_string(), "1 - 3*v^-2");
        assert_eq!(LaurentScalar::monomial(1, ratio(-1, 2)).to_string(), "-1/2*v^1");
    }
}

//! Small dense linear algebra over `Z` and `Q`.

#![allow(clippy::needless_range_loop)]

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{rat, Rational};

pub type IntMatrix = Vec<Vec<i64>>;
pub type RatMatrix = Vec<Vec<Rational>>;

pub fn int_identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn rat_identity(n: usize) -> RatMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| rat(i64::from(i == j))).collect())
        .collect()
}

pub fn to_rational(m: &IntMatrix) -> RatMatrix {
    m.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let Some(cols) = m.first().map(Vec::len) else {
        return Vec::new();
    };
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn int_mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|r| {
            (0..cols)
                .map(|j| (0..inner).map(|k| r[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn rat_mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|r| {
            (0..cols)
                .map(|j| {
                    let mut s = Rational::zero();
                    for k in 0..inner {
                        s += &r[k] * &b[k][j];
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn rat_mat_vec(a: &RatMatrix, x: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|r| {
            let mut s = Rational::zero();
            for (c, y) in r.iter().zip(x) {
                s += c * y;
            }
            s
        })
        .collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &RatMatrix) -> usize {
    let mut w = m.clone();
    rref(&mut w).len()
}

pub fn int_rank(m: &IntMatrix) -> usize {
    rank(&to_rational(m))
}

pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return None;
    }
    let mut aug: RatMatrix = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| rat(i64::from(i == j))));
            row
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `a x = b` when `a` has full column rank and the system is consistent.
pub fn solve_unique(a: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.first().map_or(0, Vec::len);
    let mut aug: RatMatrix = a
        .iter()
        .zip(b)
        .map(|(r, y)| {
            let mut row = r.clone();
            row.push(y.clone());
            row
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.contains(&n) || piv.len() != n {
        return None;
    }
    Some((0..n).map(|i| aug[i][n].clone()).collect())
}

/// Basis of the right null space over `Q`.
pub fn kernel(m: &RatMatrix, cols: usize) -> Vec<Vec<Rational>> {
    let mut w = m.clone();
    let piv = rref(&mut w);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (i, &p) in piv.iter().enumerate() {
                v[p] = -w[i][f].clone();
            }
            v
        })
        .collect()
}

pub fn determinant(m: &RatMatrix) -> Rational {
    let n = m.len();
    let mut w = m.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !w[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            w.swap(p, c);
            det = -det;
        }
        det *= &w[c][c];
        let inv = w[c][c].recip();
        for i in c + 1..n {
            if !w[i][c].is_zero() {
                let f = &w[i][c] * &inv;
                for j in c..n {
                    let t = &w[c][j] * &f;
                    w[i][j] -= t;
                }
            }
        }
    }
    det
}

pub fn rational_to_int(x: &Rational) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

pub fn rational_vec_to_int(v: &[Rational]) -> Option<Vec<i64>> {
    v.iter().map(rational_to_int).collect()
}

/// Least common multiple of the denominators.
pub fn common_denominator(v: &[Rational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()))
}

/// Integer row echelon form `u * a = e` with `u` unimodular.
pub fn int_row_echelon(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut e: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..rows)
        .map(|i| (0..rows).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // smallest nonzero |entry| at or below r moves to row r
        while let Some(p) = (r..rows).filter(|&i| e[i][c] != 0).min_by_key(|&i| e[i][c].abs()) {
            e.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if e[i][c] != 0 {
                    let f = e[i][c] / e[r][c];
                    for j in 0..cols {
                        e[i][j] -= f * e[r][j];
                    }
                    for j in 0..rows {
                        u[i][j] -= f * u[r][j];
                    }
                    if e[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if e[r][c] != 0 {
            if e[r][c] < 0 {
                e[r].iter_mut().for_each(|x| *x = -*x);
                u[r].iter_mut().for_each(|x| *x = -*x);
            }
            for i in 0..r {
                let f = e[i][c].div_euclid(e[r][c]);
                if f != 0 {
                    for j in 0..cols {
                        e[i][j] -= f * e[r][j];
                    }
                    for j in 0..rows {
                        u[i][j] -= f * u[r][j];
                    }
                }
            }
            r += 1;
        }
    }
    let narrow = |m: Vec<Vec<i128>>| -> IntMatrix {
        m.into_iter()
            .map(|r| r.into_iter().map(|x| i64::try_from(x).expect("integer overflow")).collect())
            .collect()
    };
    (narrow(e), narrow(u))
}

/// A basis (in Hermite form) of the lattice spanned by `gens`.
pub fn lattice_basis(gens: &[Vec<i64>]) -> IntMatrix {
    let (e, _) = int_row_echelon(&gens.to_vec());
    e.into_iter().filter(|r| r.iter().any(|&x| x != 0)).collect()
}

/// A basis of the saturated lattice `{x in Z^n : m x = 0}`.
pub fn integer_kernel(m: &IntMatrix, n: usize) -> IntMatrix {
    if m.is_empty() {
        return int_identity(n);
    }
    let (e, u) = int_row_echelon(&transpose(m));
    e.iter()
        .zip(u)
        .filter(|(r, _)| r.iter().all(|&x| x == 0))
        .map(|(_, k)| k)
        .collect()
}

/// Basis for the `Z`-span of rational vectors.
pub fn rational_lattice_basis(gens: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let flat: Vec<Rational> = gens.iter().flatten().cloned().collect();
    let d = Rational::from_integer(common_denominator(&flat));
    let ints: IntMatrix = gens
        .iter()
        .map(|g| {
            g.iter()
                .map(|x| rational_to_int(&(x * &d)).expect("integer overflow"))
                .collect()
        })
        .collect();
    lattice_basis(&ints)
        .into_iter()
        .map(|r| r.into_iter().map(|x| rat(x) / &d).collect())
        .collect()
}

pub fn is_unimodular(m: &IntMatrix) -> bool {
    determinant(&to_rational(m)).abs().is_one()
}

#![allow(clippy::needless_range_loop)]

//! Exact rational scalars and the small dense-matrix kernels shared by the
//! lattice code: determinants, inverses, rank.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub type RatMatrix = Vec<Vec<Rational>>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"`, `"-p/q"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let r: Rational = s
        .parse()
        .map_err(|_| Error::Schema(format!("cannot parse rational {s:?}")))?;
    if r.denom().is_zero() {
        return Err(Error::Schema(format!("zero denominator in {s:?}")));
    }
    Ok(r)
}

/// `p/q` in lowest terms, or just `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Nearest integer, ties rounded up (`floor(x + 1/2)`).
pub fn round_nearest(r: &Rational) -> BigInt {
    (r + frac(1, 2)).floor().to_integer()
}

pub fn pow(r: &Rational, e: u32) -> Rational {
    num_traits::pow(r.clone(), e as usize)
}

pub fn identity(n: usize) -> RatMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { int(1) } else { int(0) })
                .collect()
        })
        .collect()
}

pub fn transpose(m: &RatMatrix) -> RatMatrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Rational::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// `x^T g x` for an integer coefficient vector.
pub fn quadratic_form(g: &RatMatrix, x: &[i64]) -> Rational {
    let mut acc = Rational::zero();
    for (i, xi) in x.iter().enumerate() {
        if *xi == 0 {
            continue;
        }
        for (j, xj) in x.iter().enumerate() {
            if *xj == 0 {
                continue;
            }
            acc += &g[i][j] * int(xi * xj);
        }
    }
    acc
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn determinant(m: &RatMatrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &p;
            for c in col..n {
                let sub = &factor * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    det
}

/// Gauss-Jordan inverse; `None` when singular.
pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.len();
    let mut a = m.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot, col);
        inv.swap(pivot, col);
        let p = a[col][col].recip();
        for c in 0..n {
            a[col][c] *= &p;
            inv[col][c] *= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..n {
                let s1 = &factor * &a[col][c];
                a[r][c] -= s1;
                let s2 = &factor * &inv[col][c];
                inv[r][c] -= s2;
            }
        }
    }
    Some(inv)
}

/// Leading principal minors `det(m[..k][..k])`, k = 1..=n.
pub fn leading_minors(m: &RatMatrix) -> Vec<Rational> {
    (1..=m.len())
        .map(|k| {
            let sub: RatMatrix = m[..k].iter().map(|r| r[..k].to_vec()).collect();
            determinant(&sub)
        })
        .collect()
}

/// Incremental row-echelon basis used to test linear independence of
/// integer vectors over the rationals.
#[derive(Debug, Clone, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts `v` if it is independent of the current rows; returns whether
    /// it was inserted.
    pub fn insert(&mut self, v: &[i64]) -> bool {
        let mut w: Vec<Rational> = v.iter().map(|&x| int(x)).collect();
        for (pivot, row) in &self.rows {
            if w[*pivot].is_zero() {
                continue;
            }
            let f = &w[*pivot] / &row[*pivot];
            for (wi, ri) in w.iter_mut().zip(row) {
                *wi -= &f * ri;
            }
        }
        match w.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push((p, w));
                true
            }
            None => false,
        }
    }
}

/// Exact rank of an integer matrix given by rows.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut e = EchelonBasis::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

pub fn big_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.abs().gcd(&b.abs())
}

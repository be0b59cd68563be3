//! Independent oracles and random generators shared by the integration
//! suites. Nothing here calls into the enumeration or reduction code.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use systole_core::rational::{determinant, inverse, RatMatrix, Rational};
use systole_core::{GramMatrix, LatticeBasis};

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_int_matrix(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..dim)
        .map(|_| (0..dim).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect()
}

fn int_det(rows: &[Vec<i64>]) -> Rational {
    determinant(
        &rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| Rational::from_integer(BigInt::from(x)))
                    .collect()
            })
            .collect(),
    )
}

/// Random nonsingular integer basis.
pub fn random_basis(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> LatticeBasis {
    loop {
        let rows = random_int_matrix(rng, dim, bound);
        if !int_det(&rows).is_zero() {
            return LatticeBasis::from_integers(&rows).unwrap();
        }
    }
}

/// Gram matrix scaled to integers: `(g * scale, scale)`.
pub fn integral_form(g: &GramMatrix) -> (Vec<Vec<i128>>, BigInt) {
    let scale = g
        .entries()
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let m = g
        .entries()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    (x * Rational::from_integer(scale.clone()))
                        .to_integer()
                        .to_i128()
                        .unwrap()
                })
                .collect()
        })
        .collect();
    (m, scale)
}

fn isqrt_floor(x: &Rational) -> i64 {
    let mut b = x.to_f64().unwrap().sqrt().floor() as i64;
    while Rational::from_integer(BigInt::from((b + 1) * (b + 1))) <= *x {
        b += 1;
    }
    while b > 0 && Rational::from_integer(BigInt::from(b * b)) > *x {
        b -= 1;
    }
    b
}

/// Per-coordinate box bound for vectors of squared length `<= radius`:
/// `|c_i| <= sqrt(radius * (g^{-1})_ii)`.
pub fn box_bounds(g: &GramMatrix, radius: &Rational) -> Vec<i64> {
    let inv = inverse(g.entries()).unwrap();
    (0..g.dim())
        .map(|i| isqrt_floor(&(radius * &inv[i][i])))
        .collect()
}

pub fn box_volume(bounds: &[i64]) -> u64 {
    bounds.iter().map(|&b| (2 * b + 1) as u64).product()
}

fn independent(chosen: &[Vec<i64>], v: &[i64]) -> bool {
    let rows: RatMatrix = chosen
        .iter()
        .chain(std::iter::once(&v.to_vec()))
        .map(|r| {
            r.iter()
                .map(|&x| Rational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    // rank check via Gram determinant of the integer rows
    let gram: RatMatrix = rows
        .iter()
        .map(|a| {
            rows.iter()
                .map(|b| {
                    a.iter()
                        .zip(b)
                        .fold(Rational::zero(), |s, (x, y)| s + x * y)
                })
                .collect()
        })
        .collect();
    !determinant(&gram).is_zero()
}

/// Brute-force successive minima: every coefficient vector in the box that
/// covers the ball of radius `k`-th smallest diagonal entry of `g` (the first
/// `k` basis vectors by length are independent, so that radius suffices).
pub fn brute_minima(g: &GramMatrix, k: usize) -> Vec<Rational> {
    let mut diag: Vec<Rational> = (0..g.dim()).map(|i| g.entries()[i][i].clone()).collect();
    diag.sort();
    let radius = diag[k - 1].clone();
    let bounds = box_bounds(g, &radius);
    let (m, scale) = integral_form(g);
    let limit = (&radius * Rational::from_integer(scale.clone()))
        .to_integer()
        .to_i128()
        .unwrap();
    let n = g.dim();
    let mut found: Vec<(i128, Vec<i64>)> = Vec::new();
    let mut x: Vec<i64> = bounds.iter().map(|b| -b).collect();
    loop {
        if x.iter().any(|&c| c != 0) {
            let mut q: i128 = 0;
            for i in 0..n {
                for j in 0..n {
                    q += m[i][j] * i128::from(x[i]) * i128::from(x[j]);
                }
            }
            if q <= limit {
                found.push((q, x.clone()));
            }
        }
        let mut i = 0;
        while i < n && x[i] == bounds[i] {
            x[i] = -bounds[i];
            i += 1;
        }
        if i == n {
            break;
        }
        x[i] += 1;
    }
    found.sort();
    let mut chosen: Vec<Vec<i64>> = Vec::new();
    let mut out = Vec::new();
    for (q, v) in found {
        if independent(&chosen, &v) {
            chosen.push(v);
            out.push(Rational::new(BigInt::from(q), scale.clone()));
            if out.len() == k {
                break;
            }
        }
    }
    out
}

/// Box volume the brute-force oracle would scan for `k = dim`.
pub fn brute_cost(g: &GramMatrix) -> u64 {
    let radius = (0..g.dim())
        .map(|i| g.entries()[i][i].clone())
        .max()
        .unwrap();
    box_volume(&box_bounds(g, &radius))
}

/// Random Gram matrix of an integer basis with entries in `[-bound, bound]`
/// whose brute-force scan stays below `max_cost` points, for both `g` and
/// its dual.
pub fn random_gram(rng: &mut ChaCha8Rng, dim: usize, bound: i64, max_cost: u64) -> GramMatrix {
    loop {
        let b = random_basis(rng, dim, bound);
        let g = systole_core::lattice::gram(&b);
        if brute_cost(&g) <= max_cost && brute_cost(&g.dual()) <= max_cost {
            return g;
        }
    }
}

pub fn random_positive_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(
        BigInt::from(rng.gen_range(1..=40)),
        BigInt::from(rng.gen_range(1..=40)),
    )
}

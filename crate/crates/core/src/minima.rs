//! Successive minima by exact enumeration, Hermite and Berge-Martinet
//! invariants, and criticality against the catalog of known constants.

use num_traits::Zero;

use crate::catalog::{self, ConstantCatalogEntry};
use crate::error::{Error, Result};
use crate::lattice::{covolume_squared, gram_schmidt, lll_reduce_gram, GramMatrix};
use crate::rational::{self, frac, to_f64, EchelonBasis, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct MinimaReport {
    pub dim: usize,
    /// `lambda_1^2 <= ... <= lambda_k^2`.
    pub lambda_sq: Vec<Rational>,
    /// Integer coefficient vectors in the input basis realizing `lambda_sq`.
    pub witnesses: Vec<Vec<i64>>,
}

/// A nonzero lattice vector and its exact squared length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortVector {
    pub norm_sq: Rational,
    pub coords: Vec<i64>,
}

fn sign_normalized(x: &[i64]) -> bool {
    x.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
}

struct Enumerator<'a> {
    mu: &'a [Vec<Rational>],
    bstar: &'a [Rational],
    bound: &'a Rational,
    y: Vec<i64>,
    found: Vec<(Rational, Vec<i64>)>,
}

impl Enumerator<'_> {
    fn walk(&mut self, level: usize, partial: Rational) {
        let n = self.y.len();
        let mut center = Rational::zero();
        for j in level + 1..n {
            if self.y[j] != 0 {
                center += &self.mu[j][level] * rational::int(self.y[j]);
            }
        }
        let rem = self.bound - &partial;
        let radius = (to_f64(&rem) / to_f64(&self.bstar[level])).max(0.0).sqrt();
        let c = to_f64(&center);
        let lo = (-c - radius).floor() as i64 - 1;
        let hi = (-c + radius).ceil() as i64 + 1;
        for v in lo..=hi {
            let shifted = rational::int(v) + &center;
            let term = &self.bstar[level] * &shifted * &shifted;
            if term > rem {
                continue;
            }
            self.y[level] = v;
            let next = &partial + term;
            if level == 0 {
                if self.y.iter().any(|&c| c != 0) {
                    self.found.push((next, self.y.clone()));
                }
            } else {
                self.walk(level - 1, next);
            }
        }
        self.y[level] = 0;
    }
}

/// All nonzero lattice vectors with `x^T g x <= bound`, one per `+-` pair
/// (first nonzero coefficient positive), sorted by squared length then
/// lexicographically by coefficients.
///
/// Fincke-Pohst enumeration on the LLL-reduced Gram matrix; all comparisons
/// are exact, floating point only widens the per-level search ranges.
pub fn short_vectors(g: &GramMatrix, bound: &Rational) -> Vec<ShortVector> {
    let red = lll_reduce_gram(g, &frac(3, 4)).expect("3/4 is a valid delta");
    let (mu, bstar) = gram_schmidt(red.gram.entries());
    let n = g.dim();
    let mut e = Enumerator {
        mu: &mu,
        bstar: &bstar,
        bound,
        y: vec![0; n],
        found: Vec::new(),
    };
    e.walk(n - 1, Rational::zero());
    let mut out: Vec<ShortVector> = e
        .found
        .into_iter()
        .map(|(norm_sq, y)| {
            let coords = (0..n)
                .map(|j| (0..n).map(|i| y[i] * red.transform[i][j]).sum())
                .collect();
            ShortVector { norm_sq, coords }
        })
        .filter(|v| sign_normalized(&v.coords))
        .collect();
    out.sort_by(|a, b| {
        a.norm_sq
            .cmp(&b.norm_sq)
            .then_with(|| a.coords.cmp(&b.coords))
    });
    out
}

/// First `k` successive minima of the lattice with Gram matrix `g`.
///
/// The search radius is the k-th smallest diagonal entry of the LLL-reduced
/// Gram matrix: those k basis vectors are independent, so `lambda_k^2` can
/// not exceed it. Independent vectors are then picked greedily in order of
/// increasing length, which realizes the successive minima.
pub fn successive_minima(g: &GramMatrix, k: usize) -> Result<MinimaReport> {
    let n = g.dim();
    if k == 0 || k > n {
        return Err(Error::InvalidK { k, dim: n });
    }
    covolume_squared(g)?;
    let red = lll_reduce_gram(g, &frac(3, 4))?;
    let mut diag: Vec<Rational> = (0..n).map(|i| red.gram.entries()[i][i].clone()).collect();
    diag.sort();
    let bound = diag[k - 1].clone();

    let mut echelon = EchelonBasis::new();
    let mut lambda_sq = Vec::with_capacity(k);
    let mut witnesses = Vec::with_capacity(k);
    for v in short_vectors(g, &bound) {
        if echelon.insert(&v.coords) {
            lambda_sq.push(v.norm_sq);
            witnesses.push(v.coords);
            if lambda_sq.len() == k {
                break;
            }
        }
    }
    debug_assert_eq!(lambda_sq.len(), k);
    Ok(MinimaReport {
        dim: n,
        lambda_sq,
        witnesses,
    })
}

pub fn lambda1_sq(g: &GramMatrix) -> Result<Rational> {
    Ok(successive_minima(g, 1)?.lambda_sq.remove(0))
}

/// Hermite invariant `gamma(L) = lambda_1^2 / det^{1/b}`, carried exactly as
/// its b-th power `lambda_1^{2b} / det`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteInvariant {
    pub dim: usize,
    pub lambda1_sq: Rational,
    pub det: Rational,
    /// `gamma(L)^b`.
    pub power_value: Rational,
    pub gamma_approx: f64,
}

pub fn hermite_invariant_sq(g: &GramMatrix) -> Result<HermiteInvariant> {
    let det = covolume_squared(g)?;
    let lambda1_sq = lambda1_sq(g)?;
    let b = g.dim() as u32;
    let power_value = rational::pow(&lambda1_sq, b) / &det;
    let gamma_approx = to_f64(&power_value).powf(1.0 / f64::from(b));
    Ok(HermiteInvariant {
        dim: g.dim(),
        lambda1_sq,
        det,
        power_value,
        gamma_approx,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BergeMartinetInvariant {
    pub lambda1_sq: Rational,
    pub dual_lambda1_sq: Rational,
    /// `lambda_1(L)^2 lambda_1(L*)^2`.
    pub value_sq: Rational,
    pub approx: f64,
}

pub fn berge_martinet_invariant_sq(g: &GramMatrix) -> Result<BergeMartinetInvariant> {
    covolume_squared(g)?;
    let lambda1_sq = lambda1_sq(g)?;
    let dual_lambda1_sq = lambda1_sq_of_dual(g)?;
    let value_sq = &lambda1_sq * &dual_lambda1_sq;
    Ok(BergeMartinetInvariant {
        approx: to_f64(&value_sq).sqrt(),
        lambda1_sq,
        dual_lambda1_sq,
        value_sq,
    })
}

fn lambda1_sq_of_dual(g: &GramMatrix) -> Result<Rational> {
    lambda1_sq(&g.dual())
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalityReport {
    pub dim: usize,
    pub hermite: HermiteInvariant,
    /// `gamma_b^b`.
    pub constant_power: Rational,
    pub critical: bool,
    /// `gamma_b^b - gamma(L)^b`, never negative.
    pub gap_to_constant: Rational,
    /// Relative gap `1 - gamma(L)/gamma_b` in binary64 is within `tol`.
    pub near_critical: bool,
    pub berge_martinet: BergeMartinetInvariant,
    pub dual_constant_sq: Rational,
    pub dual_critical: bool,
    pub dual_gap_to_constant: Rational,
    /// The dual constant is not stated as ground truth for this dimension.
    pub dual_constant_derived: bool,
}

pub fn is_critical(g: &GramMatrix, tol: f64) -> Result<CriticalityReport> {
    let entry: &ConstantCatalogEntry =
        catalog::entry(g.dim()).ok_or(Error::UnknownConstant(g.dim()))?;
    let hermite = hermite_invariant_sq(g)?;
    let bm = berge_martinet_invariant_sq(g)?;
    let constant_power = entry.gamma_power.clone();
    let gap = &constant_power - &hermite.power_value;
    let gamma_b = to_f64(&constant_power).powf(1.0 / g.dim() as f64);
    let near_critical = (1.0 - hermite.gamma_approx / gamma_b).abs() <= tol;
    let dual_gap = &entry.gamma_prime_sq - &bm.value_sq;
    Ok(CriticalityReport {
        dim: g.dim(),
        critical: gap.is_zero(),
        gap_to_constant: gap,
        near_critical,
        constant_power,
        hermite,
        dual_critical: dual_gap.is_zero(),
        dual_gap_to_constant: dual_gap,
        dual_constant_sq: entry.gamma_prime_sq.clone(),
        dual_constant_derived: entry.gamma_prime_derived,
        berge_martinet: bm,
    })
}

/// Maximum of `lambda_1(L)^2 lambda_1(L*)^2` over the rank-2 lattices with
/// Gram `[[1, x], [x, r]]`, `x = i/(2 steps)` in `[0, 1/2]` and
/// `r = 1 + j/steps` in `[1, 2]`: a grid over the closed fundamental domain
/// including its corner `e^{i pi/3}`.
pub fn berge_martinet_dim2_dense_search(steps: u32) -> Result<Rational> {
    let steps = i64::from(steps.max(1));
    let mut best = Rational::zero();
    for i in 0..=steps {
        let x = frac(i, 2 * steps);
        for j in 0..=steps {
            let r = rational::int(1) + frac(j, steps);
            let g = GramMatrix::new(vec![vec![rational::int(1), x.clone()], vec![x.clone(), r]])?;
            let v = berge_martinet_invariant_sq(&g)?.value_sq;
            if v > best {
                best = v;
            }
        }
    }
    Ok(best)
}

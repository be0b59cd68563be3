#![allow(clippy::needless_range_loop)]

//! Exact lattice representations: bases, Gram matrices, covolume and duality.
//!
//! A lattice of rank `b` is handled either through a basis (rows are the
//! basis vectors) or directly through its Gram matrix. Everything downstream
//! consumes the Gram form, so lattices with irrational coordinates such as the
//! hexagonal one enter as exact Gram matrices.

mod lll;
mod tau;

pub(crate) use lll::gram_schmidt;
pub use lll::{lll_reduce, lll_reduce_gram, GramReduction, LllReduction};
pub use tau::{reduce_rank2, ReducedTau, Tau};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, int, RatMatrix, Rational};

pub const MAX_DIM: usize = 8;

fn check_square(rows: &RatMatrix) -> Result<usize> {
    let n = rows.len();
    if n == 0 || n > MAX_DIM {
        return Err(Error::Dimension(n));
    }
    for (i, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NotSquare {
                row: i,
                expected: n,
                found: r.len(),
            });
        }
    }
    Ok(n)
}

/// Basis of a full-rank lattice in `Q^b`; rows are the basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    vectors: RatMatrix,
}

impl LatticeBasis {
    pub fn new(vectors: RatMatrix) -> Result<Self> {
        check_square(&vectors)?;
        if rational::determinant(&vectors).is_zero() {
            return Err(Error::SingularBasis);
        }
        Ok(Self { vectors })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    pub fn identity(dim: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::Dimension(dim));
        }
        Ok(Self {
            vectors: rational::identity(dim),
        })
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &RatMatrix {
        &self.vectors
    }

    /// Applies an integer change of basis: row `i` of the result is
    /// `sum_j transform[i][j] * x_j`.
    pub fn transformed(&self, transform: &[Vec<i64>]) -> Result<Self> {
        let t: RatMatrix = transform
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        Self::new(rational::mat_mul(&t, &self.vectors))
    }
}

/// Symmetric positive definite matrix of inner products `<x_i, x_j>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    entries: RatMatrix,
}

impl GramMatrix {
    pub fn new(entries: RatMatrix) -> Result<Self> {
        let n = check_square(&entries)?;
        for i in 0..n {
            for j in i + 1..n {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        for (k, minor) in rational::leading_minors(&entries).iter().enumerate() {
            if !minor.is_positive() {
                return Err(Error::NotPositiveDefinite(k + 1));
            }
        }
        Ok(Self { entries })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::new(rational::identity(dim))
    }

    /// Gram matrix of `{1, e^{i pi/3}}`.
    pub fn hexagonal() -> Self {
        Self {
            entries: vec![
                vec![int(1), rational::frac(1, 2)],
                vec![rational::frac(1, 2), int(1)],
            ],
        }
    }

    /// Face-centered cubic lattice, basis (1,1,0), (1,0,1), (0,1,1).
    pub fn fcc() -> Self {
        Self {
            entries: vec![
                vec![int(2), int(1), int(1)],
                vec![int(1), int(2), int(1)],
                vec![int(1), int(1), int(2)],
            ],
        }
    }

    /// Root lattice D4.
    pub fn d4() -> Self {
        let rows: [[i64; 4]; 4] = [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]];
        Self {
            entries: rows
                .iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &RatMatrix {
        &self.entries
    }

    pub fn determinant(&self) -> Rational {
        rational::determinant(&self.entries)
    }

    /// Gram matrix of the dual lattice, `g^{-1}`.
    pub fn dual(&self) -> Self {
        let inv = rational::inverse(&self.entries).expect("positive definite gram is invertible");
        Self { entries: inv }
    }

    /// Gram matrix of the lattice scaled by `sqrt(c)`.
    pub fn scaled(&self, c: &Rational) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::InvalidParameters(format!(
                "scale factor {} must be positive",
                rational::format_rational(c)
            )));
        }
        Ok(Self {
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|x| x * c).collect())
                .collect(),
        })
    }

    /// `U g U^T` for an integer matrix `U` with rows in original coordinates.
    pub fn transformed(&self, transform: &[Vec<i64>]) -> Result<Self> {
        let t: RatMatrix = transform
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        let tg = rational::mat_mul(&t, &self.entries);
        Self::new(rational::mat_mul(&tg, &rational::transpose(&t)))
    }

    /// Squared length of the lattice vector with integer coefficients `x`.
    pub fn norm_sq(&self, x: &[i64]) -> Rational {
        rational::quadratic_form(&self.entries, x)
    }
}

pub fn gram(basis: &LatticeBasis) -> GramMatrix {
    let v = basis.vectors();
    let entries = v
        .iter()
        .map(|a| v.iter().map(|b| rational::dot(a, b)).collect())
        .collect();
    GramMatrix { entries }
}

/// `det(g)`, the square of the covolume.
pub fn covolume_squared(g: &GramMatrix) -> Result<Rational> {
    for (k, minor) in rational::leading_minors(g.entries()).iter().enumerate() {
        if !minor.is_positive() {
            return Err(Error::NotPositiveDefinite(k + 1));
        }
    }
    Ok(g.determinant())
}

/// Dual basis `y_j` with `<x_i, y_j> = delta_ij`: the inverse-transpose.
pub fn dual_basis(basis: &LatticeBasis) -> Result<LatticeBasis> {
    let inv = rational::inverse(basis.vectors()).ok_or(Error::SingularBasis)?;
    LatticeBasis::new(rational::transpose(&inv))
}

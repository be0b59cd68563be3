use serde::Serialize;

use super::GramMatrix;
use crate::error::{Error, Result};
use crate::rational::to_f64;

const BOUNDARY_EPS: f64 = 1e-12;

/// Modulus of the rank-2 lattice `Z tau + Z 1` (normalized so one basis
/// vector is 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tau {
    pub re: f64,
    pub im: f64,
}

impl Tau {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if im.is_nan() || im <= 0.0 || !re.is_finite() || !im.is_finite() {
            return Err(Error::NonPositiveImaginaryPart(im));
        }
        Ok(Self { re, im })
    }

    /// Modulus of a rank-2 Gram matrix after rotating and scaling the first
    /// basis vector to 1.
    pub fn from_gram(g: &GramMatrix) -> Result<Self> {
        if g.dim() != 2 {
            return Err(Error::WrongDimension {
                expected: "2".into(),
                found: g.dim(),
            });
        }
        let e = g.entries();
        let a = to_f64(&e[0][0]);
        let b = to_f64(&e[0][1]);
        let det = to_f64(&g.determinant());
        Self::new(b / a, det.sqrt() / a)
    }

    pub fn norm_sq(&self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    /// Applies the Moebius map `(a tau + b) / (c tau + d)`.
    pub fn apply(&self, m: &[[i64; 2]; 2]) -> Self {
        let (a, b, c, d) = (
            m[0][0] as f64,
            m[0][1] as f64,
            m[1][0] as f64,
            m[1][1] as f64,
        );
        // (a tau + b)(c conj(tau) + d) / |c tau + d|^2
        let nr = a * self.re + b;
        let ni = a * self.im;
        let dr = c * self.re + d;
        let di = c * self.im;
        let den = dr * dr + di * di;
        Self {
            re: (nr * dr + ni * di) / den,
            im: (ni * dr - nr * di) / den,
        }
    }

    pub fn in_closed_fundamental_domain(&self) -> bool {
        self.re.abs() <= 0.5 + BOUNDARY_EPS && self.norm_sq() >= 1.0 - BOUNDARY_EPS
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReducedTau {
    pub tau: Tau,
    /// `[[a, b], [c, d]]`, determinant 1, with `tau' = (a tau + b)/(c tau + d)`.
    /// Equivalently `(a tau + b, c tau + d)` is a basis of `Z tau + Z 1`.
    pub transform: [[i64; 2]; 2],
}

fn compose(left: [[i64; 2]; 2], right: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = left[i][0] * right[0][j] + left[i][1] * right[1][j];
        }
    }
    out
}

const INVERSION: [[i64; 2]; 2] = [[0, -1], [1, 0]];

fn translation(k: i64) -> [[i64; 2]; 2] {
    [[1, k], [0, 1]]
}

/// Moves `tau` into the closure of the standard fundamental domain
/// `|Re| <= 1/2, |tau| >= 1` by translations and `tau -> -1/tau`.
///
/// On the boundary the representative with `Re >= 0` is returned.
pub fn reduce_rank2(t: Tau) -> Result<ReducedTau> {
    let mut tau = Tau::new(t.re, t.im)?;
    let mut m = [[1, 0], [0, 1]];
    loop {
        let k = -tau.re.round() as i64;
        if k != 0 {
            tau = tau.apply(&translation(k));
            m = compose(translation(k), m);
        }
        if tau.norm_sq() < 1.0 - BOUNDARY_EPS {
            tau = tau.apply(&INVERSION);
            m = compose(INVERSION, m);
        } else {
            break;
        }
    }
    if (tau.re + 0.5).abs() <= BOUNDARY_EPS {
        tau = tau.apply(&translation(1));
        m = compose(translation(1), m);
    }
    if (tau.norm_sq() - 1.0).abs() <= BOUNDARY_EPS && tau.re < -BOUNDARY_EPS {
        tau = tau.apply(&INVERSION);
        m = compose(INVERSION, m);
    }
    Ok(ReducedTau { tau, transform: m })
}

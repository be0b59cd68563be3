//! Systolic invariants of flat tori `R^n / L` and verifiers for the optimal
//! systolic inequalities they satisfy.
//!
//! On a flat torus the stable norm is the Euclidean norm of the deck lattice,
//! so the homotopy and stable 1-systoles are both `lambda_1(L)`. Harmonic
//! 1-forms are constant, which gives `confsys_1 = lambda_1(L) / vol^{1/n}`.
//! A minimal nontrivial codimension-one cycle is a flat subtorus spanned by
//! `L ∩ w^⊥` for a primitive dual vector `w`, whose covolume is
//! `covol(L) |w|`, hence `sys_{n-1} = covol(L) lambda_1(L*)`.
//!
//! Every inequality is squared until both sides are rational, then compared
//! exactly.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::catalog;
use crate::error::{Error, Result};
use crate::lattice::{covolume_squared, GramMatrix};
use crate::minima::lambda1_sq;
use crate::rational::{self, frac, to_f64, Rational};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct FlatTorus {
    gram: GramMatrix,
}

impl FlatTorus {
    pub fn new(gram: GramMatrix) -> Self {
        Self { gram }
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.dim()
    }

    fn det(&self) -> Result<Rational> {
        covolume_squared(&self.gram)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InequalityKind {
    Loewner,
    GromovTorus,
    #[serde(rename = "conformal_52")]
    Conformal52,
    PuRound,
    /// `sys <= 6 fillrad` for essential spaces.
    SystoleFillingRadius,
}

impl InequalityKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Loewner => "loewner",
            Self::GromovTorus => "gromov_torus",
            Self::Conformal52 => "conformal_52",
            Self::PuRound => "pu_round",
            Self::SystoleFillingRadius => "systole_fillrad",
        }
    }
}

/// One instance of an inequality `lhs <= rhs`.
///
/// When `exact` is set, `lhs_power` and `rhs_power` are `lhs^power` and
/// `rhs^power` as exact rationals and every verdict comes from comparing
/// them; `lhs`, `rhs` and `tightness` are binary64 renderings.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityReport {
    pub kind: InequalityKind,
    pub lhs_power: Option<Rational>,
    pub rhs_power: Option<Rational>,
    pub power: u32,
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
    pub equality: bool,
    /// `lhs / rhs` of the original (unpowered) inequality.
    pub tightness: f64,
    /// `lhs_power / rhs_power`, i.e. `tightness^power`, when exact.
    pub tightness_power: Option<Rational>,
    pub exact: bool,
    pub constants_derived: bool,
    /// Sides of the inequality before simplification, when it was reduced to
    /// a simpler equivalent form.
    pub unreduced: Option<(f64, f64)>,
}

impl InequalityReport {
    pub(crate) fn exact(
        kind: InequalityKind,
        lhs_power: Rational,
        rhs_power: Rational,
        power: u32,
        constants_derived: bool,
    ) -> Self {
        let root = |r: &Rational| to_f64(r).powf(1.0 / f64::from(power));
        let ratio = &lhs_power / &rhs_power;
        Self {
            kind,
            lhs: root(&lhs_power),
            rhs: root(&rhs_power),
            satisfied: lhs_power <= rhs_power,
            equality: lhs_power == rhs_power,
            tightness: root(&ratio),
            tightness_power: Some(ratio),
            lhs_power: Some(lhs_power),
            rhs_power: Some(rhs_power),
            power,
            exact: true,
            constants_derived,
            unreduced: None,
        }
    }

    /// Floating verdicts with relative tolerance `tol`.
    pub(crate) fn approximate(kind: InequalityKind, lhs: f64, rhs: f64, tol: f64) -> Self {
        let scale = lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE);
        let equality = (lhs - rhs).abs() <= tol * scale;
        Self {
            kind,
            lhs_power: None,
            rhs_power: None,
            power: 1,
            lhs,
            rhs,
            satisfied: lhs <= rhs || equality,
            equality,
            tightness: lhs / rhs,
            tightness_power: None,
            exact: false,
            constants_derived: false,
            unreduced: None,
        }
    }
}

/// `lambda_1(L)^2`: homotopy and stable 1-systole squared.
pub fn torus_systole_sq(t: &FlatTorus) -> Result<Rational> {
    lambda1_sq(t.gram())
}

/// Squared minimal volume of a nontrivial flat `(n-1)`-subtorus,
/// `det(g) lambda_1(L*)^2`.
pub fn torus_codim1_systole_sq(t: &FlatTorus) -> Result<Rational> {
    if t.dim() < 2 {
        return Err(Error::DimensionTooSmall(t.dim()));
    }
    Ok(t.det()? * lambda1_sq(&t.gram().dual())?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConformalSystole {
    pub dim: usize,
    pub lambda1_sq: Rational,
    pub det: Rational,
    /// `lambda_1 / vol^{1/n}` with `vol = sqrt(det)`.
    pub value: f64,
}

impl ConformalSystole {
    /// `confsys_1^{2n} = lambda_1^{2n} / det`.
    pub fn power_value(&self) -> Rational {
        rational::pow(&self.lambda1_sq, self.dim as u32) / &self.det
    }
}

pub fn conformal_systole(t: &FlatTorus) -> Result<ConformalSystole> {
    let det = t.det()?;
    let lambda1_sq = torus_systole_sq(t)?;
    let n = t.dim() as f64;
    let value = to_f64(&lambda1_sq).sqrt() / to_f64(&det).powf(1.0 / (2.0 * n));
    Ok(ConformalSystole {
        dim: t.dim(),
        lambda1_sq,
        det,
        value,
    })
}

/// Loewner: `sys^2 <= gamma_2 area`, compared as `lambda_1^4 <= (4/3) det`.
pub fn verify_loewner(t: &FlatTorus) -> Result<InequalityReport> {
    if t.dim() != 2 {
        return Err(Error::WrongDimension {
            expected: "2".into(),
            found: t.dim(),
        });
    }
    let l = torus_systole_sq(t)?;
    Ok(InequalityReport::exact(
        InequalityKind::Loewner,
        &l * &l,
        frac(4, 3) * t.det()?,
        2,
        false,
    ))
}

/// `stsys_1^n <= gamma_n^{n/2} vol` for the flat torus (Abel-Jacobi degree
/// one), compared as `lambda_1^{2n} <= gamma_n^n det`.
pub fn verify_gromov_torus(t: &FlatTorus) -> Result<InequalityReport> {
    let n = t.dim();
    if n < 2 {
        return Err(Error::WrongDimension {
            expected: "2..=4".into(),
            found: n,
        });
    }
    let entry = catalog::entry(n).ok_or(Error::UnknownConstant(n))?;
    let l = torus_systole_sq(t)?;
    Ok(InequalityReport::exact(
        InequalityKind::GromovTorus,
        rational::pow(&l, n as u32),
        &entry.gamma_power * t.det()?,
        2,
        false,
    ))
}

/// `confsys_1 sys_{n-1} <= gamma'_n vol^{(n-1)/n}`.
///
/// On a flat torus the left side is `lambda_1(L) lambda_1(L*) vol^{(n-1)/n}`,
/// so the inequality reduces to `lambda_1(L)^2 lambda_1(L*)^2 <= gamma'_n^2`.
/// Equality then holds exactly when `L` is dual-critical.
pub fn verify_conformal_52(t: &FlatTorus) -> Result<InequalityReport> {
    let n = t.dim();
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let entry = catalog::entry(n).ok_or(Error::UnknownConstant(n))?;
    let det = t.det()?;
    let l = torus_systole_sq(t)?;
    let dual_l = lambda1_sq(&t.gram().dual())?;
    let mut report = InequalityReport::exact(
        InequalityKind::Conformal52,
        &l * &dual_l,
        entry.gamma_prime_sq.clone(),
        2,
        entry.gamma_prime_derived,
    );
    let conf = conformal_systole(t)?;
    let codim1 = to_f64(&(&det * &dual_l)).sqrt();
    let vol = to_f64(&det).sqrt();
    let exponent = (n as f64 - 1.0) / n as f64;
    report.unreduced = Some((
        conf.value * codim1,
        to_f64(&entry.gamma_prime_sq).sqrt() * vol.powf(exponent),
    ));
    Ok(report)
}

/// Round `RP^2` of curvature `K`: systole `pi/sqrt(K)`, area `2 pi/K`,
/// compared as `sys^2 <= (pi/2) area`, which is an equality.
pub fn pu_round_check(curvature: f64, tol: f64) -> Result<InequalityReport> {
    if curvature.is_nan() || curvature <= 0.0 || !curvature.is_finite() {
        return Err(Error::NonPositiveCurvature(curvature));
    }
    let pi = std::f64::consts::PI;
    let sys = pi / curvature.sqrt();
    let area = 2.0 * pi / curvature;
    Ok(InequalityReport::approximate(
        InequalityKind::PuRound,
        sys * sys,
        pi / 2.0 * area,
        tol,
    ))
}

/// `sys^2 / area` for the round projective plane of curvature `K`.
pub fn pu_ratio(curvature: f64) -> Result<f64> {
    let r = pu_round_check(curvature, DEFAULT_TOLERANCE)?;
    Ok(r.lhs / (r.rhs / (std::f64::consts::PI / 2.0)))
}

/// Squared covolume of `L ∩ w^⊥` for a primitive dual coefficient vector `w`
/// (the vector `sum w_i y_i` in the dual basis), computed from an explicit
/// basis of the sublattice. Independent of the closed form in
/// [`torus_codim1_systole_sq`].
pub fn sublattice_covolume_sq(g: &GramMatrix, w: &[i64]) -> Result<Rational> {
    if w.len() != g.dim() || !is_primitive(w) {
        return Err(Error::InvalidParameters(
            "dual vector must be primitive".into(),
        ));
    }
    let n = g.dim();
    // L ∩ w^⊥ = { x in Z^n : w . x = 0 }; kernel basis via column reduction.
    let kernel = integer_kernel(w);
    debug_assert_eq!(kernel.len(), n - 1);
    let sub = g.transformed(&kernel)?;
    Ok(sub.determinant())
}

/// Basis of `{ x in Z^n : w . x = 0 }` for primitive `w != 0`.
fn integer_kernel(w: &[i64]) -> Vec<Vec<i64>> {
    let n = w.len();
    // Track unimodular column operations V with w V = (0, ..., 0, g).
    let mut row = w.to_vec();
    let mut v: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    loop {
        let nz: Vec<usize> = (0..n).filter(|&i| row[i] != 0).collect();
        if nz.len() <= 1 {
            break;
        }
        let p = *nz.iter().min_by_key(|&&i| row[i].abs()).expect("nonempty");
        for &i in &nz {
            if i == p {
                continue;
            }
            let q = row[i].div_euclid(row[p]);
            row[i] -= q * row[p];
            for r in v.iter_mut() {
                r[i] -= q * r[p];
            }
        }
    }
    let last = (0..n).find(|&i| row[i] != 0).expect("w is nonzero");
    (0..n)
        .filter(|&c| c != last)
        .map(|c| v.iter().map(|r| r[c]).collect())
        .collect()
}

/// Nonzero with coprime entries.
pub fn is_primitive(w: &[i64]) -> bool {
    w.iter()
        .fold(BigInt::zero(), |g, &x| {
            rational::big_gcd(&g, &BigInt::from(x))
        })
        .is_one()
}

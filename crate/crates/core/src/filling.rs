//! Filling radius: closed forms for round model spaces, extremal diameters
//! of the circle, and a subset-search upper bound on finite metric spaces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::systolic::{InequalityKind, InequalityReport, DEFAULT_TOLERANCE};

pub const TRIANGLE_TOLERANCE: f64 = 1e-12;
pub const EXHAUSTIVE_BUDGET: u64 = 10_000_000;
pub const GREEDY_RESTARTS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CatalogSpace {
    Circle { length: f64 },
    Sphere { n: u32, curvature: f64 },
    RealProjective { n: u32, curvature: f64 },
    ComplexProjective2 { curvature: f64 },
    ComplexProjective3 { curvature: f64 },
}

impl CatalogSpace {
    fn validate(&self) -> Result<()> {
        let positive = |x: f64| x > 0.0 && x.is_finite();
        let ok = match *self {
            Self::Circle { length } => positive(length),
            Self::Sphere { n, curvature } | Self::RealProjective { n, curvature } => {
                n >= 1 && positive(curvature)
            }
            Self::ComplexProjective2 { curvature } | Self::ComplexProjective3 { curvature } => {
                positive(curvature)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameters(format!("{self:?}")))
        }
    }

    pub fn name(&self) -> String {
        match self {
            Self::Circle { .. } => "S^1".into(),
            Self::Sphere { n, .. } => format!("S^{n}"),
            Self::RealProjective { n, .. } => format!("RP^{n}"),
            Self::ComplexProjective2 { .. } => "CP^2".into(),
            Self::ComplexProjective3 { .. } => "CP^3".into(),
        }
    }

    /// First extremal value `d_1` of the diameter functional.
    pub fn first_extremal_diameter(&self) -> Result<f64> {
        self.validate()?;
        let scale = |k: f64| 1.0 / k.sqrt();
        Ok(match *self {
            Self::Circle { length } => length / 3.0,
            Self::Sphere { n, curvature } => (-1.0 / f64::from(n + 1)).acos() * scale(curvature),
            Self::RealProjective { curvature, .. } => {
                std::f64::consts::FRAC_PI_3 * scale(curvature)
            }
            Self::ComplexProjective2 { curvature } | Self::ComplexProjective3 { curvature } => {
                (-1.0f64 / 3.0).acos() * scale(curvature)
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FillradValue {
    pub value: f64,
    /// `value` is the filling radius itself.
    pub exact: bool,
    /// The filling radius is strictly larger than `value`.
    pub strict_lower_bound: bool,
}

/// Filling radius of a catalog space: `L/6` for the circle and half the first
/// extremal diameter for the two-point homogeneous spaces. For `CP^3` only
/// the strict lower bound `d_1/2` is known.
pub fn fillrad_catalog(s: &CatalogSpace) -> Result<FillradValue> {
    s.validate()?;
    if let CatalogSpace::Circle { length } = *s {
        return Ok(FillradValue {
            value: length / 6.0,
            exact: true,
            strict_lower_bound: false,
        });
    }
    let value = s.first_extremal_diameter()? / 2.0;
    let strict = matches!(s, CatalogSpace::ComplexProjective3 { .. });
    Ok(FillradValue {
        value,
        exact: !strict,
        strict_lower_bound: strict,
    })
}

/// `d_i(S^1) = i L / (2i + 1)`, the diameter of the inscribed regular
/// `(2i+1)`-gon; `d_0 = 0`.
pub fn diameter_extrema_circle(i: u32, length: f64) -> Result<f64> {
    if !(length > 0.0 && length.is_finite()) {
        return Err(Error::InvalidParameters(format!("length {length}")));
    }
    let i = f64::from(i);
    Ok(i * length / (2.0 * i + 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HomotopyWindow {
    pub lower: f64,
    pub upper: f64,
    /// The neighborhood `U_eps S^1` is homotopy equivalent to `S^sphere_dim`
    /// for `lower < eps < upper`.
    pub sphere_dim: u32,
}

/// The first two windows `(d_k/2, d_{k+1}/2)` for the neighborhoods of the
/// circle in `L^infinity`: `S^1` below `d_1/2`, `S^3` between `d_1/2` and
/// `d_2/2`. Other windows are not provided.
pub fn circle_homotopy_window(k: u32, length: f64) -> Result<Option<HomotopyWindow>> {
    if k > 1 {
        diameter_extrema_circle(k, length)?;
        return Ok(None);
    }
    Ok(Some(HomotopyWindow {
        lower: diameter_extrema_circle(k, length)? / 2.0,
        upper: diameter_extrema_circle(k + 1, length)? / 2.0,
        sphere_dim: 2 * k + 1,
    }))
}

/// Systole against six times the filling radius, for essential catalog
/// spaces (circles and real projective spaces).
pub fn check_91b(s: &CatalogSpace) -> Result<InequalityReport> {
    s.validate()?;
    let sys = match *s {
        CatalogSpace::Circle { length } => length,
        CatalogSpace::Sphere { n: 1, curvature } => 2.0 * std::f64::consts::PI / curvature.sqrt(),
        CatalogSpace::RealProjective { curvature, .. } => std::f64::consts::PI / curvature.sqrt(),
        _ => return Err(Error::NotEssential(s.name())),
    };
    let fill = fillrad_catalog(s)?;
    Ok(InequalityReport::approximate(
        InequalityKind::SystoleFillingRadius,
        sys,
        6.0 * fill.value,
        DEFAULT_TOLERANCE,
    ))
}

/// Finite metric space given by its distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    dist: Vec<Vec<f64>>,
}

impl FiniteMetricSpace {
    pub fn new(dist: Vec<Vec<f64>>) -> Result<Self> {
        let n = dist.len();
        if n == 0 {
            return Err(Error::InvalidMetric("empty space".into()));
        }
        for (i, row) in dist.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMetric(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if row[i] != 0.0 {
                return Err(Error::InvalidMetric(format!("nonzero diagonal at {i}")));
            }
            for (j, &d) in row.iter().enumerate() {
                if !d.is_finite() || d < 0.0 {
                    return Err(Error::InvalidMetric(format!(
                        "bad distance {d} at ({i}, {j})"
                    )));
                }
                if d != dist[j][i] {
                    return Err(Error::InvalidMetric(format!("asymmetric at ({i}, {j})")));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if dist[i][k] > dist[i][j] + dist[j][k] + TRIANGLE_TOLERANCE {
                        return Err(Error::InvalidMetric(format!(
                            "triangle inequality fails for ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(Self { dist })
    }

    /// `n` equally spaced points on a circle of circumference `length` with
    /// the arc-length metric.
    pub fn discretized_circle(n: usize, length: f64) -> Result<Self> {
        if n == 0 || !(length > 0.0 && length.is_finite()) {
            return Err(Error::InvalidParameters(format!(
                "circle with {n} points, length {length}"
            )));
        }
        let step = length / n as f64;
        let dist = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let k = i.abs_diff(j);
                        k.min(n - k) as f64 * step
                    })
                    .collect()
            })
            .collect();
        Self::new(dist)
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[i][j]
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.dist
    }

    pub fn diameter_of(&self, subset: &[usize]) -> f64 {
        let mut d = 0.0f64;
        for (a, &i) in subset.iter().enumerate() {
            for &j in &subset[a + 1..] {
                d = d.max(self.dist[i][j]);
            }
        }
        d
    }

    /// `max_x d(x, Y)`.
    pub fn covering_radius_of(&self, subset: &[usize]) -> f64 {
        (0..self.len())
            .map(|x| {
                subset
                    .iter()
                    .map(|&y| self.dist[x][y])
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }

    /// Smallest `R` certified by `Y`: `max(diam Y, max_x d(x, Y)) / 2`.
    pub fn certificate_radius(&self, subset: &[usize]) -> f64 {
        self.diameter_of(subset)
            .max(self.covering_radius_of(subset))
            / 2.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    Greedy,
}

impl SearchMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Exhaustive => "exhaustive",
            Self::Greedy => "greedy",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FillradBound {
    #[serde(rename = "R")]
    pub r: f64,
    pub witness: Vec<usize>,
    pub mode: SearchMode,
}

fn binomial(n: usize, k: usize) -> u64 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    acc as u64
}

struct SubsetSearch<'a> {
    space: &'a FiniteMetricSpace,
    max_size: usize,
    chosen: Vec<usize>,
    best: f64,
    best_subset: Vec<usize>,
}

impl SubsetSearch<'_> {
    /// Extends `chosen` with indices `>= start`. `cover[x] = d(x, chosen)`.
    fn walk(&mut self, start: usize, diam: f64, cover: &[f64]) {
        let n = self.space.len();
        for p in start..n {
            let new_diam = self
                .chosen
                .iter()
                .map(|&q| self.space.dist[p][q])
                .fold(diam, f64::max);
            // diameter only grows as points are added
            if new_diam / 2.0 >= self.best {
                continue;
            }
            let new_cover: Vec<f64> = cover
                .iter()
                .enumerate()
                .map(|(x, &c)| c.min(self.space.dist[x][p]))
                .collect();
            let radius = new_cover.iter().copied().fold(0.0, f64::max);
            self.chosen.push(p);
            let value = new_diam.max(radius) / 2.0;
            if value < self.best {
                self.best = value;
                self.best_subset = self.chosen.clone();
            }
            if self.chosen.len() < self.max_size {
                self.walk(p + 1, new_diam, &new_cover);
            }
            self.chosen.pop();
        }
    }
}

fn exhaustive(space: &FiniteMetricSpace, max_subset: usize) -> FillradBound {
    let mut search = SubsetSearch {
        space,
        max_size: max_subset,
        chosen: Vec::with_capacity(max_subset),
        best: f64::INFINITY,
        best_subset: Vec::new(),
    };
    let cover = vec![f64::INFINITY; space.len()];
    search.walk(0, 0.0, &cover);
    FillradBound {
        r: search.best,
        witness: search.best_subset,
        mode: SearchMode::Exhaustive,
    }
}

fn greedy_from(space: &FiniteMetricSpace, first: usize, max_subset: usize) -> (f64, Vec<usize>) {
    let n = space.len();
    let mut chosen = vec![first];
    let mut cover: Vec<f64> = (0..n).map(|x| space.dist[x][first]).collect();
    let mut diam = 0.0f64;
    let mut best = (
        cover.iter().copied().fold(0.0, f64::max) / 2.0,
        chosen.clone(),
    );
    while chosen.len() < max_subset {
        let mut pick: Option<(f64, usize)> = None;
        for p in (0..n).filter(|p| !chosen.contains(p)) {
            let radius = (0..n)
                .map(|x| cover[x].min(space.dist[x][p]))
                .fold(0.0, f64::max);
            if pick.is_none_or(|(r, _)| radius < r) {
                pick = Some((radius, p));
            }
        }
        let Some((radius, p)) = pick else { break };
        diam = chosen
            .iter()
            .map(|&q| space.dist[p][q])
            .fold(diam, f64::max);
        for (x, c) in cover.iter_mut().enumerate() {
            *c = c.min(space.dist[x][p]);
        }
        chosen.push(p);
        let value = diam.max(radius) / 2.0;
        if value < best.0 {
            best = (value, chosen.clone());
        }
    }
    best
}

fn greedy(space: &FiniteMetricSpace, max_subset: usize, seed: u64) -> FillradBound {
    let n = space.len();
    let center = (0..n)
        .min_by(|&a, &b| {
            let ea = space.covering_radius_of(&[a]);
            let eb = space.covering_radius_of(&[b]);
            ea.total_cmp(&eb)
        })
        .expect("space is nonempty");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = greedy_from(space, center, max_subset);
    for _ in 1..GREEDY_RESTARTS {
        let start = rng.gen_range(0..n);
        let cand = greedy_from(space, start, max_subset);
        if cand.0 < best.0 {
            best = cand;
        }
    }
    let mut witness = best.1;
    witness.sort_unstable();
    FillradBound {
        r: best.0,
        witness,
        mode: SearchMode::Greedy,
    }
}

/// Minimum over nonempty `Y` with `|Y| <= max_subset` of
/// `max(diam Y, max_x d(x, Y)) / 2`. Any such `Y` certifies that the filling
/// radius of a length space approximated by `m` is at most the returned `R`.
///
/// Exhaustive mode returns the first minimizer in (size, lexicographic)
/// order. Greedy mode uses a fixed seed, see [`fillrad_upper_bound_seeded`].
pub fn fillrad_upper_bound(
    m: &FiniteMetricSpace,
    max_subset: usize,
    mode: SearchMode,
) -> Result<FillradBound> {
    fillrad_upper_bound_seeded(m, max_subset, mode, 0)
}

pub fn fillrad_upper_bound_seeded(
    m: &FiniteMetricSpace,
    max_subset: usize,
    mode: SearchMode,
    seed: u64,
) -> Result<FillradBound> {
    let n = m.len();
    if max_subset == 0 || max_subset > n {
        return Err(Error::InvalidSubsetSize {
            size: max_subset,
            n,
        });
    }
    match mode {
        SearchMode::Exhaustive => {
            if binomial(n, max_subset) > EXHAUSTIVE_BUDGET {
                return Err(Error::SubsetBudgetExceeded {
                    n,
                    size: max_subset,
                    budget: EXHAUSTIVE_BUDGET,
                });
            }
            Ok(exhaustive(m, max_subset))
        }
        SearchMode::Greedy => Ok(greedy(m, max_subset, seed)),
    }
}

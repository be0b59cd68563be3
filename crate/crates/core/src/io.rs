//! JSON formats: the shared lattice schema, finite metric spaces, and the
//! report objects printed by the command-line tool.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::bundle::BundleInvariants;
use crate::error::{Error, Result};
use crate::filling::{FillradBound, FiniteMetricSpace};
use crate::lattice::{self, GramMatrix, LatticeBasis};
use crate::minima::{BergeMartinetInvariant, CriticalityReport, HermiteInvariant, MinimaReport};
use crate::rational::{format_rational, parse_rational, RatMatrix, Rational};
use crate::systolic::InequalityReport;

/// A lattice given either by a basis or by its Gram matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum LatticeInput {
    Basis(LatticeBasis),
    Gram(GramMatrix),
}

impl LatticeInput {
    pub fn gram(&self) -> GramMatrix {
        match self {
            Self::Basis(b) => lattice::gram(b),
            Self::Gram(g) => g.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Basis(b) => b.dim(),
            Self::Gram(g) => g.dim(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLattice {
    dim: usize,
    basis: Option<Vec<Vec<Value>>>,
    gram: Option<Vec<Vec<Value>>>,
}

fn parse_entry(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => parse_rational(&n.to_string()),
        other => Err(Error::Schema(format!(
            "rational entries must be \"p/q\" strings or integers, got {other}"
        ))),
    }
}

fn parse_matrix(rows: &[Vec<Value>], dim: usize) -> Result<RatMatrix> {
    if rows.len() != dim {
        return Err(Error::Schema(format!(
            "expected {dim} rows, found {}",
            rows.len()
        )));
    }
    rows.iter()
        .map(|r| {
            if r.len() != dim {
                return Err(Error::Schema(format!(
                    "expected {dim} columns, found {}",
                    r.len()
                )));
            }
            r.iter().map(parse_entry).collect()
        })
        .collect()
}

pub fn parse_lattice(text: &str) -> Result<LatticeInput> {
    let raw: RawLattice = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    match (raw.basis, raw.gram) {
        (Some(b), None) => Ok(LatticeInput::Basis(LatticeBasis::new(parse_matrix(
            &b, raw.dim,
        )?)?)),
        (None, Some(g)) => Ok(LatticeInput::Gram(GramMatrix::new(parse_matrix(
            &g, raw.dim,
        )?)?)),
        _ => Err(Error::Schema(
            "exactly one of \"basis\" or \"gram\" is required".into(),
        )),
    }
}

fn matrix_json(m: &RatMatrix) -> Value {
    Value::Array(
        m.iter()
            .map(|r| {
                Value::Array(
                    r.iter()
                        .map(|x| Value::String(format_rational(x)))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn rational_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn basis_json(b: &LatticeBasis) -> Value {
    json!({ "dim": b.dim(), "basis": matrix_json(b.vectors()) })
}

pub fn gram_json(g: &GramMatrix) -> Value {
    json!({ "dim": g.dim(), "gram": matrix_json(g.entries()) })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMetric {
    n: usize,
    dist: Vec<Vec<f64>>,
}

pub fn parse_metric_space(text: &str) -> Result<FiniteMetricSpace> {
    let raw: RawMetric = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    if raw.dist.len() != raw.n {
        return Err(Error::Schema(format!(
            "\"n\" is {} but \"dist\" has {} rows",
            raw.n,
            raw.dist.len()
        )));
    }
    FiniteMetricSpace::new(raw.dist)
}

pub fn metric_space_json(m: &FiniteMetricSpace) -> Value {
    json!({ "n": m.len(), "dist": m.matrix() })
}

pub fn minima_json(r: &MinimaReport, gamma_approx: f64) -> Value {
    json!({
        "lambda_sq": r.lambda_sq.iter().map(rational_json).collect::<Vec<_>>(),
        "witnesses": r.witnesses,
        "gamma_approx": gamma_approx,
    })
}

pub fn hermite_json(h: &HermiteInvariant) -> Value {
    json!({
        "dim": h.dim,
        "lambda1_sq": rational_json(&h.lambda1_sq),
        "det": rational_json(&h.det),
        "gamma_power": rational_json(&h.power_value),
        "gamma_approx": h.gamma_approx,
    })
}

pub fn berge_martinet_json(b: &BergeMartinetInvariant) -> Value {
    json!({
        "lambda1_sq": rational_json(&b.lambda1_sq),
        "dual_lambda1_sq": rational_json(&b.dual_lambda1_sq),
        "value_sq": rational_json(&b.value_sq),
        "approx": b.approx,
    })
}

pub fn criticality_json(c: &CriticalityReport) -> Value {
    json!({
        "dim": c.dim,
        "gamma_power": rational_json(&c.hermite.power_value),
        "gamma_approx": c.hermite.gamma_approx,
        "constant_power": rational_json(&c.constant_power),
        "critical": c.critical,
        "gap_to_constant": rational_json(&c.gap_to_constant),
        "near_critical": c.near_critical,
        "berge_martinet_sq": rational_json(&c.berge_martinet.value_sq),
        "dual_constant_sq": rational_json(&c.dual_constant_sq),
        "dual_critical": c.dual_critical,
        "dual_gap_to_constant": rational_json(&c.dual_gap_to_constant),
        "dual_constant_derived": c.dual_constant_derived,
    })
}

pub fn inequality_json(r: &InequalityReport) -> Value {
    let mut v = json!({
        "name": r.kind.as_str(),
        "satisfied": r.satisfied,
        "equality": r.equality,
        "tightness": r.tightness,
        "lhs_power": r.lhs_power.as_ref().map(rational_json),
        "rhs_power": r.rhs_power.as_ref().map(rational_json),
        "power": r.power,
        "constants_derived": r.constants_derived,
        "exact": r.exact,
        "lhs": r.lhs,
        "rhs": r.rhs,
    });
    if let Some(t) = &r.tightness_power {
        v["tightness_power"] = rational_json(t);
    }
    if let Some((l, rh)) = r.unreduced {
        v["unreduced"] = json!({ "lhs": l, "rhs": rh });
    }
    v
}

pub fn fillrad_bound_json(b: &FillradBound) -> Value {
    json!({ "R": b.r, "witness": b.witness, "mode": b.mode.as_str() })
}

pub fn bundle_json(b: &BundleInvariants) -> Value {
    json!({
        "e": b.euler,
        "h1": { "free_rank": b.h1.free_rank, "torsion": b.h1.torsion_orders },
        "cover_h1_rank": b.cover.rank,
        "cover_h1_torsion": b.cover.torsion_orders,
        "cover_h1_generators": b.cover.generators,
        "linking": {
            "magnitude": rational_json(&b.linking.magnitude),
            "signed": rational_json(&b.linking.signed),
            "convention": b.linking.convention,
        },
        "lambda": rational_json(&b.casson_lambda),
        "corollary93": b.corollary93.applicable,
        "corollary93_statement": {
            "inequality": b.corollary93.statement,
            "constant_sq": rational_json(&b.corollary93.constant_sq),
            "constant": b.corollary93.constant,
            "b1": b.corollary93.b1,
            "holds_for_every_metric": b.corollary93.holds_for_every_metric,
        },
    })
}

//! Finitely presented modules over Laurent polynomial rings
//! `Z[t_1^{+-1}, ..., t_k^{+-1}]`, with just the two reductions needed for
//! covers of circle bundles: eliminating a generator through a relation with
//! a unit coefficient, and the augmentation quotient by the ideal
//! `(t_1 - 1, ..., t_k - 1)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::snf::IntMatrix;
use super::AbelianGroupDecomposition;
use crate::error::{Error, Result};

/// Integer Laurent polynomial; keys are exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPolynomial {
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coeff: impl Into<BigInt>, exponents: Vec<i64>) -> Self {
        let mut p = Self::zero();
        p.add_term(exponents, coeff.into());
        p
    }

    pub fn constant(c: impl Into<BigInt>, nvars: usize) -> Self {
        Self::monomial(c, vec![0; nvars])
    }

    /// `t_var - 1`.
    pub fn variable_minus_one(var: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        Self::monomial(1, e).add(&Self::constant(-1, nvars))
    }

    fn add_term(&mut self, exps: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Inverse when the polynomial is a unit `+- t^a`.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        if !c.abs().is_one() {
            return None;
        }
        Some(Self::monomial(c.clone(), e.iter().map(|x| -x).collect()))
    }

    /// Image under the augmentation map `t_i -> 1`.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(i, &x)| {
                        if x == 1 {
                            format!("t{i}")
                        } else {
                            format!("t{i}^{x}")
                        }
                    })
                    .collect();
                if mono.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Module with named generators and relations given as coefficient rows
/// (one Laurent polynomial per generator).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentModulePresentation {
    pub variables: Vec<String>,
    pub generators: Vec<String>,
    pub relations: Vec<Vec<LaurentPolynomial>>,
}

impl LaurentModulePresentation {
    pub fn new(
        variables: Vec<String>,
        generators: Vec<String>,
        relations: Vec<Vec<LaurentPolynomial>>,
    ) -> Result<Self> {
        let nvars = variables.len();
        for (i, r) in relations.iter().enumerate() {
            if r.len() != generators.len() {
                return Err(Error::UnsupportedPresentation(format!(
                    "relation {i} has {} coefficients for {} generators",
                    r.len(),
                    generators.len()
                )));
            }
            if r.iter()
                .flat_map(|p| p.terms.keys())
                .any(|e| e.len() != nvars)
            {
                return Err(Error::UnsupportedPresentation(format!(
                    "relation {i} uses undeclared variables"
                )));
            }
        }
        Ok(Self {
            variables,
            generators,
            relations,
        })
    }

    fn generator_index(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::UnsupportedPresentation(format!("unknown generator {name}")))
    }

    /// Removes `generator` using a relation whose coefficient on it is a unit.
    pub fn eliminate(&self, generator: &str) -> Result<Self> {
        let g = self.generator_index(generator)?;
        let (ri, inv) = self
            .relations
            .iter()
            .enumerate()
            .find_map(|(i, r)| r[g].unit_inverse().map(|inv| (i, inv)))
            .ok_or_else(|| Error::NoUnitPivot(generator.to_string()))?;
        let pivot = &self.relations[ri];
        let relations = self
            .relations
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != ri)
            .map(|(_, s)| {
                let factor = s[g].mul(&inv);
                s.iter()
                    .zip(pivot)
                    .enumerate()
                    .filter(|&(j, _)| j != g)
                    .map(|(_, (sj, pj))| sj.add(&factor.mul(pj).neg()))
                    .collect()
            })
            .filter(|r: &Vec<LaurentPolynomial>| r.iter().any(|p| !p.is_zero()))
            .collect();
        let generators = self
            .generators
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != g)
            .map(|(_, n)| n.clone())
            .collect();
        Self::new(self.variables.clone(), generators, relations)
    }

    /// When every generator `e` is killed by each `t_i - 1` (the relations
    /// `(t_i - 1) e` are present), the module is `Z^m / aug(relations)`;
    /// returns that abelian group.
    pub fn augmentation_quotient(&self) -> Result<AbelianGroupDecomposition> {
        let nvars = self.variables.len();
        for (g, name) in self.generators.iter().enumerate() {
            for var in 0..nvars {
                let target = LaurentPolynomial::variable_minus_one(var, nvars);
                let present = self.relations.iter().any(|r| {
                    r.iter().enumerate().all(|(j, p)| {
                        if j == g {
                            *p == target || p.neg() == target
                        } else {
                            p.is_zero()
                        }
                    })
                });
                if !present {
                    return Err(Error::UnsupportedPresentation(format!(
                        "generator {name} is not annihilated by {} - 1",
                        self.variables[var]
                    )));
                }
            }
        }
        let matrix: IntMatrix = self
            .relations
            .iter()
            .map(|r| r.iter().map(LaurentPolynomial::augmentation).collect())
            .collect();
        Ok(AbelianGroupDecomposition::from_relations(
            &matrix,
            self.generators.len(),
        ))
    }
}

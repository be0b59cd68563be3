//! Invariants of the circle bundles `N_e -> T^2` with Euler number `e != 0`.
//!
//! `N_e` is glued from `S^1 x (T^2 minus a disk)` and a solid torus
//! `S^1 x D`; the gluing map on `S^1 x boundary(D)` is `(u, v) -> (u v^e, v)`.
//! That orientation convention fixes every signed output below; magnitudes
//! do not depend on it.

mod laurent;
mod snf;

pub use laurent::{LaurentModulePresentation, LaurentPolynomial};
pub use snf::{
    int_determinant, int_mat_mul, int_matrix, smith_normal_form, IntMatrix, SmithDecomposition,
};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{frac, Rational};

pub const SIGN_CONVENTION: &str = "uv^{+e}";

/// Finitely generated abelian group `Z^free_rank + sum Z/d_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroupDecomposition {
    pub free_rank: usize,
    /// Invariant factors `>= 2`, each dividing the next.
    pub torsion_orders: Vec<u64>,
}

impl AbelianGroupDecomposition {
    /// Cokernel of the relation matrix (rows are relations, columns
    /// generators).
    pub fn from_relations(relations: &IntMatrix, generators: usize) -> Self {
        if relations.is_empty() {
            return Self {
                free_rank: generators,
                torsion_orders: Vec::new(),
            };
        }
        let s = smith_normal_form(relations);
        let factors = s.invariant_factors();
        let rank = factors.iter().filter(|d| !d.is_zero()).count();
        let torsion_orders = factors
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .map(|d| d.to_u64().expect("torsion order fits in u64"))
            .collect();
        Self {
            free_rank: generators - rank,
            torsion_orders,
        }
    }

    /// Cardinality of the torsion subgroup.
    pub fn torsion_size(&self) -> u64 {
        self.torsion_orders.iter().product()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircleBundle {
    euler: i64,
}

impl CircleBundle {
    pub fn new(euler: i64) -> Result<Self> {
        if euler == 0 {
            return Err(Error::TrivialBundle);
        }
        Ok(Self { euler })
    }

    pub fn euler(&self) -> i64 {
        self.euler
    }

    /// Abelianized presentation of `pi_1(N_e)` on generators
    /// `[s(x)], [s(y)], [F], [s(dD)]`: the boundary of the punctured torus is
    /// a commutator, and the meridian disk of the solid torus kills
    /// `[s(dD)] + e [F]`.
    pub fn h1_presentation(&self) -> IntMatrix {
        int_matrix(&[vec![0, 0, 0, 1], vec![0, 0, self.euler, 1]])
    }

    /// `H_1` of the maximal free abelian cover as a module over
    /// `Z[t_x^{+-1}, t_y^{+-1}]`, generated by the lifted fiber and the lifted
    /// disk boundary.
    pub fn cover_presentation(&self) -> LaurentModulePresentation {
        let p = LaurentPolynomial::zero;
        LaurentModulePresentation::new(
            vec!["t_x".into(), "t_y".into()],
            vec!["[F]".into(), "[dD]".into()],
            vec![
                vec![LaurentPolynomial::variable_minus_one(0, 2), p()],
                vec![LaurentPolynomial::variable_minus_one(1, 2), p()],
                vec![
                    LaurentPolynomial::constant(self.euler, 2),
                    LaurentPolynomial::constant(1, 2),
                ],
            ],
        )
        .expect("well-formed presentation")
    }
}

pub fn bundle_h1(b: &CircleBundle) -> AbelianGroupDecomposition {
    AbelianGroupDecomposition::from_relations(&b.h1_presentation(), 4)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverHomology {
    pub rank: usize,
    pub torsion_orders: Vec<u64>,
    pub generators: Vec<String>,
}

/// Eliminates the disk boundary through its unit-coefficient relation, then
/// takes the augmentation quotient.
pub fn cover_h1(b: &CircleBundle) -> Result<CoverHomology> {
    let reduced = b.cover_presentation().eliminate("[dD]")?;
    let group = reduced.augmentation_quotient()?;
    Ok(CoverHomology {
        rank: group.free_rank,
        torsion_orders: group.torsion_orders,
        generators: reduced.generators,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberLinking {
    pub magnitude: Rational,
    pub signed: Rational,
    pub convention: &'static str,
}

/// Linking number of two fibers: `|e| F` bounds a surface pierced once by
/// the other fiber.
pub fn fiber_linking(b: &CircleBundle) -> FiberLinking {
    FiberLinking {
        magnitude: frac(1, b.euler.abs()),
        signed: frac(1, b.euler),
        convention: SIGN_CONVENTION,
    }
}

/// `lambda = -lk(F, F') |Torsion H_1|`.
pub fn casson_lambda(b: &CircleBundle) -> Rational {
    let torsion = bundle_h1(b).torsion_size();
    -fiber_linking(b).signed * Rational::from_integer(BigInt::from(torsion))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Corollary93 {
    pub applicable: bool,
    pub b1: usize,
    pub statement: &'static str,
    /// Square of the constant `gamma_2 = 2/sqrt(3)`.
    pub constant_sq: Rational,
    pub constant: f64,
    pub holds_for_every_metric: bool,
}

/// Whether the systolic inequality for 3-manifolds with `b_1 = 2` and
/// nonvanishing lambda applies to `N_e`. No metric is checked.
pub fn corollary93_applicability(b: &CircleBundle) -> Corollary93 {
    let lambda = casson_lambda(b);
    let b1 = bundle_h1(b).free_rank;
    let applicable = !lambda.is_zero() && b1 == 2;
    Corollary93 {
        applicable,
        b1,
        statement: "stsys_1(g)^2 * sys_1(g) <= gamma_2 * vol(g)",
        constant_sq: frac(4, 3),
        constant: 2.0 / 3f64.sqrt(),
        holds_for_every_metric: applicable,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BundleInvariants {
    pub euler: i64,
    pub h1: AbelianGroupDecomposition,
    pub cover: CoverHomology,
    pub linking: FiberLinking,
    pub casson_lambda: Rational,
    pub corollary93: Corollary93,
}

pub fn bundle_invariants(b: &CircleBundle) -> Result<BundleInvariants> {
    Ok(BundleInvariants {
        euler: b.euler,
        h1: bundle_h1(b),
        cover: cover_h1(b)?,
        linking: fiber_linking(b),
        casson_lambda: casson_lambda(b),
        corollary93: corollary93_applicability(b),
    })
}

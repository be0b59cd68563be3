#![allow(clippy::needless_range_loop)]

use num_traits::{ToPrimitive, Zero};

use super::{GramMatrix, LatticeBasis};
use crate::error::{Error, Result};
use crate::rational::{self, frac, RatMatrix, Rational};

/// LLL output in Gram form: `gram = transform * input * transform^T`.
#[derive(Debug, Clone)]
pub struct GramReduction {
    pub gram: GramMatrix,
    /// Rows are the reduced basis vectors in input coordinates; determinant +-1.
    pub transform: Vec<Vec<i64>>,
}

#[derive(Debug, Clone)]
pub struct LllReduction {
    pub basis: LatticeBasis,
    pub transform: Vec<Vec<i64>>,
}

/// Gram-Schmidt data from a Gram matrix: `mu[i][j]` (j < i) and `|b*_i|^2`.
pub(crate) fn gram_schmidt(g: &RatMatrix) -> (RatMatrix, Vec<Rational>) {
    let n = g.len();
    let mut mu = vec![vec![Rational::zero(); n]; n];
    let mut bstar = vec![Rational::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut s = g[i][j].clone();
            for l in 0..j {
                s -= &mu[j][l] * &mu[i][l] * &bstar[l];
            }
            mu[i][j] = s / &bstar[j];
        }
        let mut s = g[i][i].clone();
        for l in 0..i {
            s -= &mu[i][l] * &mu[i][l] * &bstar[l];
        }
        bstar[i] = s;
    }
    (mu, bstar)
}

fn check_delta(delta: &Rational) -> Result<()> {
    if *delta <= frac(1, 4) || *delta >= frac(1, 1) {
        return Err(Error::InvalidDelta(rational::format_rational(delta)));
    }
    Ok(())
}

/// Exact LLL reduction working on the Gram matrix only.
pub fn lll_reduce_gram(g: &GramMatrix, delta: &Rational) -> Result<GramReduction> {
    check_delta(delta)?;
    let n = g.dim();
    let mut a = g.entries().clone();
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();

    let mut k = 1;
    while k < n {
        // size reduction of b_k against b_{k-1}, ..., b_0
        for j in (0..k).rev() {
            let (mu, _) = gram_schmidt(&a);
            let q = rational::round_nearest(&mu[k][j]);
            if q.is_zero() {
                continue;
            }
            let qi = q.to_i64().expect("LLL multiplier fits in i64");
            let qr = Rational::from_integer(q);
            for c in 0..n {
                let s = &qr * &a[j][c];
                a[k][c] -= s;
            }
            for r in 0..n {
                let s = &qr * &a[r][j];
                a[r][k] -= s;
            }
            for c in 0..n {
                u[k][c] -= qi * u[j][c];
            }
        }
        let (mu, bstar) = gram_schmidt(&a);
        let lhs = &bstar[k];
        let rhs = (delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bstar[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            a.swap(k, k - 1);
            for row in a.iter_mut() {
                row.swap(k, k - 1);
            }
            u.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    Ok(GramReduction {
        gram: GramMatrix::new(a)?,
        transform: u,
    })
}

/// LLL on an explicit basis; the reduced basis generates the same lattice.
pub fn lll_reduce(basis: &LatticeBasis, delta: &Rational) -> Result<LllReduction> {
    let red = lll_reduce_gram(&super::gram(basis), delta)?;
    Ok(LllReduction {
        basis: basis.transformed(&red.transform)?,
        transform: red.transform,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{covolume_squared, gram};
    use crate::rational::int;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn int_det(m: &[Vec<i64>]) -> Rational {
        rational::determinant(
            &m.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    fn assert_reduced(g: &GramMatrix, delta: &Rational) {
        let (mu, bstar) = gram_schmidt(g.entries());
        for i in 0..g.dim() {
            for j in 0..i {
                assert!(mu[i][j].abs() <= frac(1, 2), "size condition at ({i},{j})");
            }
            if i > 0 {
                let rhs = (delta - &mu[i][i - 1] * &mu[i][i - 1]) * &bstar[i - 1];
                assert!(bstar[i] >= rhs, "Lovasz condition at {i}");
            }
        }
    }

    #[test]
    fn identity_unchanged() {
        let z = LatticeBasis::identity(3).unwrap();
        let r = lll_reduce(&z, &frac(3, 4)).unwrap();
        assert_eq!(r.basis, z);
    }

    #[test]
    fn skewed_z2() {
        let b = LatticeBasis::from_integers(&[vec![1, 0], vec![100, 1]]).unwrap();
        let r = lll_reduce(&b, &frac(3, 4)).unwrap();
        let g = gram(&r.basis);
        assert!(g.entries()[0][0] <= int(2) && g.entries()[1][1] <= int(2));
        assert_eq!(covolume_squared(&g).unwrap(), int(1));
        assert_eq!(int_det(&r.transform).abs(), int(1));
    }

    #[test]
    fn fcc_determinant_preserved() {
        let b =
            LatticeBasis::from_integers(&[vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let r = lll_reduce(&b, &frac(3, 4)).unwrap();
        assert_eq!(covolume_squared(&gram(&r.basis)).unwrap(), int(4));
    }

    #[test]
    fn delta_range() {
        let g = GramMatrix::identity(2).unwrap();
        assert!(lll_reduce_gram(&g, &frac(1, 4)).is_err());
        assert!(lll_reduce_gram(&g, &int(1)).is_err());
        assert!(lll_reduce_gram(&g, &frac(99, 100)).is_ok());
    }

    proptest! {
        #[test]
        fn preserves_covolume_and_is_unimodular(
            dim in 2usize..=5,
            seed in proptest::collection::vec(-9i64..=9, 25),
        ) {
            let rows: Vec<Vec<i64>> = (0..dim).map(|i| seed[i * 5..i * 5 + dim].to_vec()).collect();
            prop_assume!(!int_det(&rows).is_zero());
            let b = LatticeBasis::from_integers(&rows).unwrap();
            let delta = frac(3, 4);
            let r = lll_reduce(&b, &delta).unwrap();
            let g0 = gram(&b);
            let g1 = gram(&r.basis);
            prop_assert_eq!(g0.determinant(), g1.determinant());
            prop_assert_eq!(int_det(&r.transform).abs(), int(1));
            prop_assert_eq!(g0.transformed(&r.transform).unwrap(), g1.clone());
            assert_reduced(&g1, &delta);
        }
    }
}

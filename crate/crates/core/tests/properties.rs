mod common;

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

use systole_core::bundle::{
    bundle_h1, casson_lambda, cover_h1, fiber_linking, int_determinant, int_mat_mul, int_matrix,
    smith_normal_form, AbelianGroupDecomposition, CircleBundle,
};
use systole_core::filling::{
    diameter_extrema_circle, fillrad_upper_bound, fillrad_upper_bound_seeded, FiniteMetricSpace,
    SearchMode,
};
use systole_core::lattice::{covolume_squared, dual_basis, gram, reduce_rank2, Tau};
use systole_core::minima::{
    berge_martinet_invariant_sq, hermite_invariant_sq, is_critical, successive_minima,
};
use systole_core::rational::{frac, int, pow};
use systole_core::systolic::{
    conformal_systole, is_primitive, sublattice_covolume_sq, torus_codim1_systole_sq,
    torus_systole_sq, verify_conformal_52, verify_loewner, FlatTorus,
};
use systole_core::GramMatrix;

#[test]
fn dual_involution_and_covolume_duality() {
    let mut rng = common::rng(11);
    for i in 0..200 {
        let dim = 2 + i % 4;
        let b = common::random_basis(&mut rng, dim, 9);
        let d = dual_basis(&b).unwrap();
        assert_eq!(gram(&dual_basis(&d).unwrap()), gram(&b));
        let product = covolume_squared(&gram(&b)).unwrap() * covolume_squared(&gram(&d)).unwrap();
        assert_eq!(product, int(1));
        assert_eq!(gram(&d), gram(&b).dual());
    }
}

type Word = Vec<u8>;

fn apply_word(t: Tau, w: &Word) -> Tau {
    w.iter().fold(t, |acc, g| match g {
        0 => Tau {
            re: acc.re + 1.0,
            im: acc.im,
        },
        1 => Tau {
            re: acc.re - 1.0,
            im: acc.im,
        },
        _ => acc.apply(&[[0, -1], [1, 0]]),
    })
}

/// Every word of length <= 10 in `tau + 1`, `tau - 1`, `-1/tau`; returns the
/// images landing in the closed fundamental domain.
fn word_search(t: Tau) -> Vec<Tau> {
    let mut hits = Vec::new();
    let mut frontier: Vec<Word> = vec![Vec::new()];
    for _ in 0..=10 {
        let mut next = Vec::new();
        for w in &frontier {
            let img = apply_word(t, w);
            if img.re.abs() <= 0.5 + 1e-9 && img.norm_sq() >= 1.0 - 1e-9 {
                hits.push(img);
            }
            for g in 0..3u8 {
                // skip immediate cancellations
                if let Some(&last) = w.last() {
                    if (last, g) == (0, 1) || (last, g) == (1, 0) || (last, g) == (2, 2) {
                        continue;
                    }
                }
                let mut v = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        frontier = next;
    }
    hits
}

#[test]
fn reduce_rank2_matches_word_search() {
    let t = Tau::new(0.3, 0.4).unwrap();
    let hits = word_search(t);
    assert!(!hits.is_empty());
    let canonical: Vec<&Tau> = hits.iter().filter(|h| h.re >= -1e-9).collect();
    let r = reduce_rank2(t).unwrap();
    for h in &canonical {
        assert!((h.re - r.tau.re).abs() < 1e-9 && (h.im - r.tau.im).abs() < 1e-9);
    }
    assert!((r.tau.re + 0.2).abs() < 1e-12 && (r.tau.im - 1.6).abs() < 1e-12);
}

proptest! {
    #[test]
    fn reduce_rank2_lands_in_domain(re in -20.0f64..20.0, im in 0.01f64..5.0) {
        let t = Tau::new(re, im).unwrap();
        let r = reduce_rank2(t).unwrap();
        let m = r.transform;
        prop_assert_eq!(m[0][0] * m[1][1] - m[0][1] * m[1][0], 1);
        prop_assert!(r.tau.re.abs() <= 0.5 + 1e-12);
        prop_assert!(r.tau.norm_sq() >= 1.0 - 1e-12);
        let back = t.apply(&m);
        prop_assert!((back.re - r.tau.re).abs() < 1e-6 && (back.im - r.tau.im).abs() < 1e-6);
    }

    #[test]
    fn hermite_is_scale_invariant(
        entries in proptest::collection::vec(-6i64..=6, 9),
        p in 1i64..30,
        q in 1i64..30,
    ) {
        let rows: Vec<Vec<i64>> = entries.chunks(3).map(<[i64]>::to_vec).collect();
        let basis = systole_core::LatticeBasis::from_integers(&rows);
        prop_assume!(basis.is_ok());
        let g = gram(&basis.unwrap());
        let c = frac(p, q);
        let a = hermite_invariant_sq(&g).unwrap();
        let b = hermite_invariant_sq(&g.scaled(&c).unwrap()).unwrap();
        prop_assert_eq!(a.power_value, b.power_value);
    }

    #[test]
    fn snf_of_random_matrix(
        rows in 1usize..=6,
        cols in 1usize..=6,
        seed in proptest::collection::vec(-20i64..=20, 36),
    ) {
        let m: Vec<Vec<i64>> = (0..rows).map(|i| seed[i * 6..i * 6 + cols].to_vec()).collect();
        let m = int_matrix(&m);
        let s = smith_normal_form(&m);
        prop_assert_eq!(int_mat_mul(&int_mat_mul(&s.u, &m), &s.v), s.d.clone());
        prop_assert!(int_determinant(&s.u).abs().is_one());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            prop_assert!(w[1].is_zero() || (&w[1] % &w[0]).is_zero());
        }
    }
}

#[test]
fn minima_witnesses_reproduce_lengths() {
    let mut rng = common::rng(5);
    for i in 0..100 {
        let g = common::random_gram(&mut rng, 2 + i % 3, 5, 50_000);
        let r = successive_minima(&g, g.dim()).unwrap();
        for (w, l) in r.witnesses.iter().zip(&r.lambda_sq) {
            assert_eq!(&g.norm_sq(w), l);
        }
        assert!(r.lambda_sq.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(systole_core::rational::integer_rank(&r.witnesses), g.dim());
    }
}

#[test]
fn berge_martinet_is_symmetric_under_duality() {
    let mut rng = common::rng(6);
    for i in 0..100 {
        let g = common::random_gram(&mut rng, 2 + i % 3, 5, 50_000);
        assert_eq!(
            berge_martinet_invariant_sq(&g).unwrap().value_sq,
            berge_martinet_invariant_sq(&g.dual()).unwrap().value_sq
        );
    }
}

#[test]
fn no_rank2_lattice_beats_hexagonal() {
    let mut rng = common::rng(7);
    for _ in 0..300 {
        let g = common::random_gram(&mut rng, 2, 9, u64::MAX);
        let c = is_critical(&g, 1e-9).unwrap();
        assert!(c.hermite.power_value <= frac(4, 3));
        assert_eq!(c.hermite.power_value == frac(4, 3), c.critical);
    }
    // hexagonal in other coordinates
    let g = GramMatrix::from_integers(&[vec![2, 1], vec![1, 2]]).unwrap();
    assert!(is_critical(&g, 1e-9).unwrap().critical);
}

#[test]
fn flat_equality_chain() {
    let mut rng = common::rng(8);
    for i in 0..100 {
        let t = FlatTorus::new(common::random_gram(&mut rng, 2 + i % 3, 6, 50_000));
        let c = conformal_systole(&t).unwrap();
        // (confsys * vol^{1/n})^{2n} = confsys^{2n} det = lambda_1^{2n}
        let n = t.dim() as u32;
        assert_eq!(
            c.power_value() * &c.det,
            pow(&torus_systole_sq(&t).unwrap(), n)
        );
        let vol = systole_core::rational::to_f64(&c.det).sqrt();
        let sys = systole_core::rational::to_f64(&c.lambda1_sq).sqrt();
        assert!((c.value * vol.powf(1.0 / f64::from(n)) - sys).abs() <= 1e-9 * sys);
    }
}

#[test]
fn codim1_systole_matches_sublattice_oracle() {
    let mut rng = common::rng(9);
    for i in 0..60 {
        let dim = 2 + i % 2;
        let g = common::random_gram(&mut rng, dim, 4, 20_000);
        let closed = torus_codim1_systole_sq(&FlatTorus::new(g.clone())).unwrap();
        let mut best: Option<systole_core::Rational> = None;
        let mut w = vec![-5i64; dim];
        loop {
            if is_primitive(&w) {
                let v = sublattice_covolume_sq(&g, &w).unwrap();
                if best.as_ref().is_none_or(|b| v < *b) {
                    best = Some(v);
                }
            }
            let mut k = 0;
            while k < dim && w[k] == 5 {
                w[k] = -5;
                k += 1;
            }
            if k == dim {
                break;
            }
            w[k] += 1;
        }
        assert_eq!(best.unwrap(), closed, "gram {:?}", g);
    }
}

#[test]
fn loewner_equality_only_when_critical() {
    let mut rng = common::rng(10);
    for _ in 0..200 {
        let g = common::random_gram(&mut rng, 2, 9, u64::MAX);
        let r = verify_loewner(&FlatTorus::new(g.clone())).unwrap();
        assert!(r.satisfied);
        assert_eq!(r.equality, is_critical(&g, 1e-9).unwrap().critical);
    }
}

#[test]
fn conformal_52_matches_berge_martinet() {
    let mut rng = common::rng(12);
    for _ in 0..60 {
        let g = common::random_gram(&mut rng, 3, 5, 50_000);
        let r = verify_conformal_52(&FlatTorus::new(g.clone())).unwrap();
        let bm = berge_martinet_invariant_sq(&g).unwrap().value_sq;
        assert_eq!(r.satisfied, bm <= frac(3, 2));
        assert_eq!(r.lhs_power, Some(bm));
    }
}

#[test]
fn bundle_family() {
    for e in (-10i64..=10).filter(|&e| e != 0) {
        let b = CircleBundle::new(e).unwrap();
        let direct = AbelianGroupDecomposition::from_relations(&int_matrix(&[vec![e]]), 1);
        let h = bundle_h1(&b);
        assert_eq!(h.free_rank, 2);
        assert_eq!(h.torsion_orders, direct.torsion_orders);
        let c = cover_h1(&b).unwrap();
        assert_eq!((c.rank, c.torsion_orders.len()), (1, 0));
        let l = fiber_linking(&b);
        assert_eq!(-casson_lambda(&b) / int(e.abs()), l.signed);
        // nonzero linking together with a nonzero fiber class in the cover
        assert!(!l.magnitude.is_zero() && c.rank == 1);
        assert!(casson_lambda(&b).abs().is_one());
    }
}

#[test]
fn filling_bound_convergence_on_circles() {
    let length = 6.0;
    let mut last = f64::INFINITY;
    for n in [12, 24, 48, 96] {
        let m = FiniteMetricSpace::discretized_circle(n, length).unwrap();
        let b = fillrad_upper_bound(&m, 3, SearchMode::Exhaustive).unwrap();
        let err = (b.r - length / 6.0).abs();
        assert!(err <= length / (2.0 * n as f64) + 1e-12, "n = {n}: {err}");
        assert!(err <= last + 1e-12);
        last = err;
    }
}

#[test]
fn filling_bound_monotone_and_greedy_dominates() {
    let mut rng = common::rng(13);
    for trial in 0..20 {
        // random points on a circle of length 5 with the arc metric
        let n = 9 + trial % 5;
        let mut pos: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..5.0)).collect();
        pos.sort_by(f64::total_cmp);
        let dist = pos
            .iter()
            .map(|a| {
                pos.iter()
                    .map(|b| {
                        let d = (a - b).abs();
                        d.min(5.0 - d)
                    })
                    .collect()
            })
            .collect();
        let m = FiniteMetricSpace::new(dist).unwrap();
        let mut prev = f64::INFINITY;
        for k in 1..=4 {
            let ex = fillrad_upper_bound(&m, k, SearchMode::Exhaustive).unwrap();
            let gr = fillrad_upper_bound_seeded(&m, k, SearchMode::Greedy, trial as u64).unwrap();
            assert!(ex.r <= prev);
            assert!(gr.r >= ex.r - 1e-15);
            assert!((m.certificate_radius(&gr.witness) - gr.r).abs() < 1e-12);
            prev = ex.r;
        }
    }
}

#[test]
fn extremal_diameters_increase_to_half_length() {
    let mut prev = diameter_extrema_circle(0, 3.0).unwrap();
    assert_eq!(prev, 0.0);
    for i in 1..=500 {
        let d = diameter_extrema_circle(i, 3.0).unwrap();
        assert!(d > prev && d < 1.5);
        prev = d;
    }
}

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twobridge::dilog::{bloch_wigner, v3};
use twobridge::knotparams::{cf_positive, equivalent_params, lackenby_bounds};
use twobridge::polyseq::{riley_poly, RileyEvaluator};
use twobridge::roots::{find_roots, find_roots_with, RootOptions};
use twobridge::volume::{cross_ratio, mobius_prefix_check, z_sequence, ProjectivePoint};
use twobridge::{make_params, volume, BridgeParams};

fn valid(pmax: i64) -> Vec<BridgeParams> {
    (3..=pmax)
        .step_by(2)
        .flat_map(|p| (1..p).step_by(2).map(move |q| (p, q)))
        .filter_map(|(p, q)| make_params(p, q).ok())
        .collect()
}

fn off_axis() -> impl Strategy<Value = Complex64> {
    (-4.0f64..4.0, 0.01f64..4.0, any::<bool>())
        .prop_map(|(re, im, flip)| Complex64::new(re, if flip { -im } else { im }))
}

proptest! {
    #[test]
    fn bloch_wigner_six_fold_symmetry(z in off_axis()) {
        let d = bloch_wigner(z);
        let one = Complex64::new(1.0, 0.0);
        prop_assert!((bloch_wigner(z.inv()) + d).abs() < 1e-12);
        prop_assert!((bloch_wigner(one - z) + d).abs() < 1e-12);
        prop_assert!((bloch_wigner(one - z.inv()) - d).abs() < 1e-12);
        prop_assert!((bloch_wigner(z.conj()) + d).abs() < 1e-12);
    }

    #[test]
    fn bloch_wigner_is_bounded_by_v3(z in off_axis()) {
        prop_assert!(bloch_wigner(z).abs() <= v3() + 1e-14);
    }

    #[test]
    fn transposing_a_cross_ratio_negates_its_volume(a in off_axis(), b in off_axis(), c in off_axis(), d in off_axis()) {
        let pts: Vec<_> = [a, b, c, d].into_iter().map(ProjectivePoint::finite).collect();
        let (Some(x), Some(y)) = (
            cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]).value(),
            cross_ratio(&pts[1], &pts[0], &pts[2], &pts[3]).value(),
        ) else {
            return Ok(());
        };
        prop_assert!((bloch_wigner(x) + bloch_wigner(y)).abs() < 1e-9);
    }
}

#[test]
fn five_term_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let x = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let y = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let one = Complex64::new(1.0, 0.0);
        let sum = bloch_wigner(x) - bloch_wigner(y) + bloch_wigner(y / x)
            - bloch_wigner((one - y) / (one - x))
            + bloch_wigner((one - y.inv()) / (one - x.inv()));
        assert!(sum.abs() < 1e-10, "x = {x}, y = {y}: {sum:e}");
    }
}

#[test]
fn torus_knot_roots_are_known() {
    // P_8 for K(9,1) has roots 2i cos(pi j / 9), j = 1..8
    let roots = find_roots(&riley_poly(&make_params(9, 1).unwrap())).unwrap();
    for j in 1..=8 {
        let expected = Complex64::new(0.0, 2.0 * (PI * j as f64 / 9.0).cos());
        let nearest = roots
            .roots
            .iter()
            .map(|r| (r - expected).norm())
            .fold(f64::INFINITY, f64::min);
        assert!(nearest < 1e-12, "j = {j}: {nearest:e}");
    }
}

#[test]
fn root_set_invariants() {
    let opts = RootOptions::default();
    for prm in valid(49) {
        let poly = riley_poly(&prm);
        let roots = find_roots_with(&RileyEvaluator::new(&prm), &opts).unwrap();
        assert_eq!(roots.roots.len(), poly.degree().unwrap());
        assert!(roots.worst_residual() <= 1e-11, "{prm}");
        assert!(roots.conjugation_defect() <= 1e-9, "{prm}");
        assert!(roots.negation_defect() <= 1e-9, "{prm}");
    }
}

#[test]
fn monic_reconstruction_up_to_p_99() {
    for prm in valid(99)
        .into_iter()
        .filter(|prm| prm.p() % 8 == 3 || prm.p() > 95)
    {
        let poly = riley_poly(&prm);
        let roots = find_roots_with(&RileyEvaluator::new(&prm), &RootOptions::default()).unwrap();
        let lead = poly.leading().unwrap().to_f64().unwrap();
        let scale = poly.max_abs_coeff();
        let rebuilt = roots.monic_coefficients();
        for (k, c) in poly.to_f64().into_iter().enumerate() {
            let err = (rebuilt[k] - c / lead).norm() / scale;
            assert!(err <= 1e-8, "{prm} coefficient {k}: {err:e}");
        }
    }
}

#[test]
fn volume_invariants_below_fifty() {
    for prm in valid(49) {
        let result = volume(&prm).unwrap();
        assert!(
            result.dual_path_gap() <= 1e-9,
            "{prm}: gap {:e}",
            result.dual_path_gap()
        );
        if prm.is_torus() {
            assert!(result.volume.abs() <= 1e-8, "{prm}: {}", result.volume);
            continue;
        }
        let (lo, hi) = lackenby_bounds(&cf_positive(prm.p() as i64, prm.q() as i64).unwrap());
        assert!(
            lo <= result.volume && result.volume <= hi,
            "{prm}: {}",
            result.volume
        );

        for (p, q) in equivalent_params(&prm) {
            let other = volume(&make_params(p as i64, q as i64).unwrap()).unwrap();
            assert!(
                (other.volume - result.volume).abs() <= 1e-8,
                "{prm} vs ({p},{q})"
            );
        }

        let p = prm.p() as usize;
        for rv in &result.per_root {
            let zs = z_sequence(&prm, rv.root).unwrap();
            assert!(zs.get(p - 1).distance(&ProjectivePoint::zero()) <= 1e-9);
            let minus_inv = ProjectivePoint::finite(-rv.root.inv());
            assert!(zs.get(2 * p - 2).distance(&minus_inv) <= 1e-9);
            assert!(mobius_prefix_check(&prm, rv.root).unwrap() <= 1e-9);
        }
    }
}

#[test]
fn conjugate_roots_give_opposite_volumes() {
    for prm in valid(25) {
        let result = volume(&prm).unwrap();
        for rv in &result.per_root {
            let partner = result
                .per_root
                .iter()
                .min_by(|a, b| {
                    let da = (a.root - rv.root.conj()).norm();
                    let db = (b.root - rv.root.conj()).norm();
                    da.total_cmp(&db)
                })
                .unwrap();
            assert!((partner.v_cross + rv.v_cross).abs() <= 1e-12, "{prm}");
        }
    }
}

#[test]
fn small_census() {
    let table = [
        ((5, 3), 2.029883212819307),
        ((7, 3), 2.828122088330783),
        ((7, 5), 2.828122088330783),
        ((9, 5), 3.163963228883144),
        ((9, 7), 3.163963228883144),
        ((11, 3), 4.400832516123046),
    ];
    for ((p, q), expected) in table {
        let v = volume(&make_params(p, q).unwrap()).unwrap().volume;
        assert!((v - expected).abs() < 1e-10, "K({p},{q}) = {v}");
    }
}

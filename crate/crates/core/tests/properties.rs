mod common;

use bdris::linalg::{self, symmetry_defect, unitarity_defect};
use bdris::solvers::{self, cascaded_channel, theta_from_takagi};
use bdris::takagi::{rotate_noise_subspace, takagi_factorize};
use bdris::{ComplexMatrix, ComplexVector, LinkChannels, C64};
use common::*;
use nalgebra::DMatrix;
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn svd_invariants(seed in any::<u64>(), rows in 1usize..20, cols in 1usize..20, scale in 1e-3f64..1e3) {
        let mut r = rng(seed);
        let a = cn_matrix(&mut r, rows, cols).scale(C64::new(scale / (rows * cols) as f64, 0.0));
        let f = linalg::svd(&a).unwrap();
        prop_assert!(f.relative_residual(&a) <= 1e-10);
        prop_assert!(unitarity_defect(&f.left).unwrap() <= 1e-10);
        prop_assert!(unitarity_defect(&f.right).unwrap() <= 1e-10);
        prop_assert!(f.singular_values.windows(2).all(|w| w[0] >= w[1]));

        let fro2 = a.frobenius_norm().powi(2);
        let s2: f64 = f.singular_values.iter().map(|s| s * s).sum();
        prop_assert!(rel_err(s2, fro2) <= 1e-9);

        let oracle = oracle_singular_values(&a);
        let s1 = f.singular_values[0];
        for (x, y) in f.singular_values.iter().zip(&oracle) {
            prop_assert!((x - y).abs() <= 1e-10 * s1.max(1.0));
        }
    }

    #[test]
    fn svd_of_transpose_has_same_values(seed in any::<u64>(), n in 1usize..24) {
        let mut r = rng(seed);
        let a = cn_matrix(&mut r, n, n);
        let s = linalg::svd(&a).unwrap().singular_values;
        let st = linalg::svd(&a.transpose()).unwrap().singular_values;
        for (x, y) in s.iter().zip(&st) {
            prop_assert!((x - y).abs() <= 1e-10);
        }
    }

    #[test]
    fn takagi_round_trip(seed in any::<u64>(), n in prop::sample::select(vec![2usize, 3, 4, 8, 16])) {
        let mut r = rng(seed);
        let a = random_symmetric(&mut r, n);
        let f = takagi_factorize(&a).unwrap();
        prop_assert!(f.residual(&a).unwrap() <= 1e-10);
        prop_assert!(unitarity_defect(&f.q).unwrap() <= 1e-10);
        let s = linalg::svd(&a).unwrap().singular_values;
        for (x, y) in f.takagi_values.iter().zip(&s) {
            prop_assert!((x - y).abs() <= 1e-10);
        }
    }

    #[test]
    fn takagi_values_scale_with_modulus(seed in any::<u64>(), n in 2usize..10, re in -5.0f64..5.0, im in -5.0f64..5.0) {
        prop_assume!(re.hypot(im) > 1e-3);
        let mut r = rng(seed);
        let a = random_symmetric(&mut r, n);
        let c = C64::new(re, im);
        let base = takagi_factorize(&a).unwrap().takagi_values;
        let scaled = takagi_factorize(&a.scale(c)).unwrap().takagi_values;
        for (x, y) in scaled.iter().zip(&base) {
            prop_assert!((x - c.norm() * y).abs() <= 1e-10 * c.norm() * base[0]);
        }
    }

    #[test]
    fn real_symmetric_matches_eigenvalue_moduli(seed in any::<u64>(), n in 2usize..8) {
        let mut r = rng(seed);
        let real = DMatrix::<f64>::from_fn(n, n, |_, _| uniform(&mut r) - 0.5);
        let real = &real + real.transpose();
        let mut oracle: Vec<f64> = real.clone().symmetric_eigen().eigenvalues.iter().map(|x| x.abs()).collect();
        oracle.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let a = ComplexMatrix::from_fn(n, n, |i, j| C64::new(real[(i, j)], 0.0));
        let f = takagi_factorize(&a).unwrap();
        prop_assert!(f.residual(&a).unwrap() <= 1e-10);
        for (x, y) in f.takagi_values.iter().zip(&oracle) {
            prop_assert!((x - y).abs() <= 1e-10);
        }
    }

    #[test]
    fn siso_design_is_feasible_optimal_and_real(seed in any::<u64>(), m in 1usize..40) {
        let mut r = rng(seed);
        let ch = rayleigh_siso(&mut r, m);
        let out = solvers::max_snr_siso(&ch).unwrap();
        out.ris.validate().unwrap();
        let bound = (ch.h_r.norm() * ch.h_t_vector().norm()).powi(2);
        prop_assert!(rel_err(out.achieved_power, bound) <= 1e-9);
        let h = out.equivalent_channel.scalar().unwrap();
        prop_assert!(h.im.abs() <= 1e-9 * h.norm());
        prop_assert!(h.re >= 0.0);
        prop_assert!((out.achieved_power - out.equivalent_channel.power()).abs() <= 1e-12 * out.achieved_power);
    }

    #[test]
    fn no_feasible_design_beats_the_bound(seed in any::<u64>(), m in 2usize..12) {
        let mut r = rng(seed);
        let ch = rayleigh_siso(&mut r, m);
        let bound = (ch.h_r.norm() * ch.h_t_vector().norm()).powi(2);
        // Θ = Q Qᵀ for any unitary Q is unitary and symmetric.
        let q = random_unitary(&mut r, m);
        let theta = theta_from_takagi(&q);
        prop_assert!(unitarity_defect(&theta).unwrap() <= 1e-9);
        let p = cascaded_channel(&ch.h_r, &theta, &ch.h_t_vector()).unwrap().norm_sqr();
        prop_assert!(p <= bound * (1.0 + 1e-9));
    }

    #[test]
    fn architectures_are_ordered(seed in any::<u64>(), groups in 1usize..5) {
        let m = 8 * groups;
        let mut r = rng(seed);
        let ch = rayleigh_siso(&mut r, m);
        let mut powers = vec![solvers::diagonal_optimal(&ch).unwrap().achieved_power];
        for g in [2, 4, 8] {
            powers.push(solvers::max_snr_group(&ch, g).unwrap().achieved_power);
        }
        powers.push(solvers::max_snr_siso(&ch).unwrap().achieved_power);
        for w in powers.windows(2) {
            prop_assert!(w[0] <= w[1] * (1.0 + 1e-9));
        }
    }

    #[test]
    fn noise_rotations_preserve_power(seed in any::<u64>(), m in 3usize..12) {
        let mut r = rng(seed);
        let ch = rayleigh_siso(&mut r, m);
        let out = solvers::max_snr_siso(&ch).unwrap();
        let f = out.takagi.unwrap();
        let t = random_unitary(&mut r, m - 2);
        let g = rotate_noise_subspace(&f, 2, Some(&t)).unwrap();
        let theta = theta_from_takagi(&g.q);
        prop_assert!(unitarity_defect(&theta).unwrap() <= 1e-9);
        prop_assert!(symmetry_defect(&theta).unwrap() <= 1e-9);
        let p = cascaded_channel(&ch.h_r, &theta, &ch.h_t_vector()).unwrap().norm_sqr();
        prop_assert!(rel_err(p, out.achieved_power) <= 1e-9);
    }

    #[test]
    fn mac_rate_matches_principal_gain(seed in any::<u64>(), users in 1usize..4, noise in 1e-3f64..10.0) {
        let m = 8;
        let mut r = rng(seed);
        let h_t = cn_matrix(&mut r, m, users);
        let h_r = cn_vector(&mut r, m);
        let powers: Vec<f64> = (0..users).map(|_| 0.1 + uniform(&mut r)).collect();
        let ch = LinkChannels::new(h_t, h_r.clone(), None).unwrap();
        let scaled = ch.scale_columns(&powers).unwrap();
        let bd = solvers::max_snr_miso(&scaled).unwrap();
        let rate = solvers::mac_sum_rate(&ch, &bd.ris, &powers, noise).unwrap();
        let lambda = oracle_singular_values(&scaled.h_t)[0];
        let expected = (1.0 + lambda * lambda * h_r.norm().powi(2) / noise).log2();
        prop_assert!((rate - expected).abs() <= 1e-9);
    }
}

#[test]
fn takagi_round_trip_at_64() {
    let mut r = rng(64);
    for _ in 0..4 {
        let a = random_symmetric(&mut r, 64);
        let f = takagi_factorize(&a).unwrap();
        assert!(f.residual(&a).unwrap() <= 1e-10);
        assert!(unitarity_defect(&f.q).unwrap() <= 1e-10);
    }
}

#[test]
fn svd_unitarity_at_64() {
    let mut r = rng(65);
    let a = cn_matrix(&mut r, 64, 64);
    let f = linalg::svd(&a).unwrap();
    assert!(unitarity_defect(&f.left).unwrap() <= 1e-10);
    assert!(unitarity_defect(&f.right).unwrap() <= 1e-10);
}

#[test]
fn random_phases_lose_to_cophasing_on_average() {
    let mut r = rng(100);
    let m = 64;
    let mut ratio = 0.0;
    for _ in 0..100 {
        let ch = rayleigh_siso(&mut r, m);
        let opt = solvers::diagonal_optimal(&ch).unwrap().achieved_power;
        let ris = solvers::diagonal_random(m, &mut r).unwrap();
        let p = cascaded_channel(&ch.h_r, &ris.theta, &ch.h_t_vector()).unwrap().norm_sqr();
        ratio += p / opt;
    }
    assert!(ratio / 100.0 < 1.0);
}

#[test]
fn diagonal_never_beats_fully_connected() {
    let mut r = rng(101);
    for m in [2, 5, 16, 33] {
        for _ in 0..20 {
            let ch = rayleigh_siso(&mut r, m);
            let d = solvers::diagonal_optimal(&ch).unwrap().achieved_power;
            let f = solvers::max_snr_siso(&ch).unwrap().achieved_power;
            assert!(d <= f * (1.0 + 1e-9));
        }
    }
}

#[test]
fn group_closed_form() {
    let mut r = rng(102);
    for (m, g) in [(12, 3), (16, 4), (32, 8)] {
        let ch = rayleigh_siso(&mut r, m);
        let out = solvers::max_snr_group(&ch, g).unwrap();
        out.ris.validate().unwrap();
        let h_t = ch.h_t_vector();
        let closed: f64 = (0..m / g)
            .map(|k| h_t.segment(k * g, g).unwrap().norm() * ch.h_r.segment(k * g, g).unwrap().norm())
            .sum();
        assert!(rel_err(out.achieved_power, closed * closed) <= 1e-9);
    }
}

#[test]
fn miso_and_simo_reach_the_principal_gain() {
    let mut r = rng(103);
    let h_t = cn_matrix(&mut r, 8, 3);
    let h_r = cn_vector(&mut r, 8);
    let out = solvers::max_snr_miso(&LinkChannels::new(h_t.clone(), h_r.clone(), None).unwrap()).unwrap();
    let lambda = oracle_singular_values(&h_t)[0];
    assert!(rel_err(out.achieved_power, lambda * lambda * h_r.norm().powi(2)) <= 1e-9);
    // MRT on h_eq reaches ‖h_eq‖
    let w = out.beamformer.unwrap();
    let bf = match &out.equivalent_channel {
        solvers::EquivalentChannel::Vector(v) => v.iter().zip(w.iter()).map(|(a, b)| a * b).sum::<C64>(),
        _ => unreachable!(),
    };
    assert!(rel_err(bf.norm_sqr(), out.achieved_power) <= 1e-9);

    let h_tx = cn_vector(&mut r, 8);
    let h_rx = cn_matrix(&mut r, 8, 2);
    let simo = solvers::max_snr_simo(&h_tx, &h_rx).unwrap();
    let lambda_r = oracle_singular_values(&h_rx)[0];
    assert!(rel_err(simo.achieved_power, lambda_r * lambda_r * h_tx.norm().powi(2)) <= 1e-9);
    simo.ris.validate().unwrap();
}

#[test]
fn orthogonal_unit_pair_takagi() {
    // uᵀv = 0 gives σ₁ = σ₂ = 1 for u vᴴ + (u vᴴ)ᵀ
    let mut r = rng(104);
    for m in [2, 3, 8, 32] {
        let u = cn_vector(&mut r, m).normalized().unwrap();
        let w = cn_vector(&mut r, m);
        let ub = u.conj();
        let proj = ub.dot(&w).unwrap();
        let v = ComplexVector::new(w.iter().zip(ub.iter()).map(|(a, b)| a - b * proj).collect())
            .unwrap()
            .normalized()
            .unwrap();
        let a = solvers::siso_symmetric_matrix(&u, &v).unwrap();
        let f = takagi_factorize(&a).unwrap();
        assert!((f.takagi_values[0] - 1.0).abs() < 1e-12);
        assert!((f.takagi_values[1] - 1.0).abs() < 1e-12);
        assert!(f.residual(&a).unwrap() <= 1e-10);
    }
}

mod common;

use common::{desc, jacobi_eigenvalues, jacobi_singular_values};
use heavycov::diagnostics::{approx_errors, localization, offdiag_ratio, perturbation_certificate, row_sums};
use heavycov::matgen::generate_matrix;
use heavycov::spectra::{eigh_sym, gram_eigs, singular_values, weyl_gap};
use heavycov::{CounterRng, EnsembleConfig, GrowthRule, TailModel};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

fn random_symmetric(n: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = CounterRng::new(seed);
    let a = DMatrix::from_fn(n, n, |_, _| 2.0 * rng.uniform() - 1.0);
    (&a + a.transpose()) * 0.5
}

fn heavy(p: usize, n: usize, alpha: f64, seed: u64) -> DMatrix<f64> {
    let d = TailModel::paper(alpha).unwrap();
    let mut rng = CounterRng::new(seed);
    DMatrix::from_fn(p, n, |_, _| d.sample(&mut rng))
}

fn ensemble(n: usize, alpha: f64, beta: f64, seed: u64) -> EnsembleConfig {
    EnsembleConfig::new(
        n,
        GrowthRule::new(beta, 0.2).unwrap(),
        TailModel::paper(alpha).unwrap(),
        seed,
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigh_is_orthonormal_and_reconstructs(n in 1usize..=64, seed in any::<u64>()) {
        let m = random_symmetric(n, seed);
        let eig = eigh_sym(&m).unwrap();
        let v = eig.vectors.as_ref().unwrap();
        let id = v.transpose() * v;
        prop_assert!((id - DMatrix::identity(n, n)).amax() <= 1e-8);
        let rebuilt = v * DMatrix::from_diagonal(&DVector::from_vec(eig.values.clone())) * v.transpose();
        let scale = m.amax().max(1e-300);
        prop_assert!((rebuilt - &m).amax() <= 1e-8 * scale);
        prop_assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
        let trace: f64 = m.diagonal().sum();
        let total: f64 = eig.values.iter().sum();
        let norm = eig.values.iter().map(|x| x.abs()).sum::<f64>().max(1e-300);
        prop_assert!((trace - total).abs() <= 1e-10 * norm);
        // sign convention: largest-magnitude component positive
        for j in 0..n {
            let col = v.column(j);
            let big = col.iter().copied().fold(0.0f64, |a, x| if x.abs() > a.abs() { x } else { a });
            prop_assert!(big > 0.0);
        }
    }

    #[test]
    fn eigh_agrees_with_jacobi(n in 1usize..=24, seed in any::<u64>()) {
        let m = random_symmetric(n, seed);
        let ours = eigh_sym(&m).unwrap().values;
        let oracle = jacobi_eigenvalues(&m);
        for (a, b) in ours.iter().zip(&oracle) {
            prop_assert!((a - b).abs() <= 1e-10 * m.amax().max(1.0));
        }
    }

    #[test]
    fn gram_sides_share_nonzero_spectrum(seed in any::<u64>(), alpha in 0.5f64..3.5) {
        let z = heavy(20, 35, alpha, seed);
        let wide = gram_eigs(&z, false).unwrap().values;
        let tall = gram_eigs(&z.transpose(), false).unwrap().values;
        prop_assert_eq!(tall.len(), 35);
        for i in 0..20 {
            prop_assert!((wide[i] - tall[i]).abs() <= 1e-8 * wide[0]);
        }
        prop_assert!(tall[20..].iter().all(|x| x.abs() <= 1e-8 * wide[0]));
    }

    #[test]
    fn tall_gram_vectors_are_eigenvectors(seed in any::<u64>()) {
        let z = heavy(12, 7, 1.6, seed);
        let eig = gram_eigs(&z, true).unwrap();
        let v = eig.vectors.as_ref().unwrap();
        prop_assert!((v.transpose() * v - DMatrix::identity(12, 12)).amax() <= 1e-8);
        let g = &z * z.transpose();
        for j in 0..7 {
            let r = &g * v.column(j) - v.column(j) * eig.values[j];
            prop_assert!(r.amax() <= 1e-8 * eig.values[0]);
        }
    }
}

#[test]
fn singular_values_match_jacobi() {
    let a = heavy(6, 9, 1.6, 3);
    let ours = singular_values(&a).unwrap();
    let oracle = jacobi_singular_values(&a);
    for (x, y) in ours.iter().zip(&oracle) {
        assert!((x - y).abs() <= 1e-10 * oracle[0]);
    }
}

#[test]
fn weyl_example() {
    let a = DMatrix::from_row_slice(2, 2, &[5.0, 0.0, 0.0, 1.0]);
    let b = DMatrix::from_row_slice(2, 2, &[0.0, 0.1, 0.1, 0.0]);
    let w = weyl_gap(&a, &b).unwrap();
    assert!(w.max_shift <= 0.1 && w.holds());
    assert!((w.bound - 0.1).abs() < 1e-15);
}

#[test]
fn err_row_matches_brute_force() {
    for seed in 0..20 {
        let z = heavy(5, 8, 1.6, seed);
        let a_sq = TailModel::paper(1.6).unwrap().norming_constant(40).unwrap().powi(2);
        let ours = approx_errors(&z, a_sq, &gram_eigs(&z, false).unwrap()).unwrap();

        let lam = jacobi_eigenvalues(&(&z * z.transpose()));
        let rows = desc((0..5).map(|i| (0..8).map(|t| z[(i, t)].powi(2)).sum()).collect());
        let brute = (0..5).map(|i| (lam[i] - rows[i]).abs()).fold(0.0, f64::max) / a_sq;
        assert!((ours.err_row - brute).abs() <= 1e-12 * brute.max(1.0), "{} vs {brute}", ours.err_row);

        let cols = desc((0..8).map(|t| (0..5).map(|i| z[(i, t)].powi(2)).sum()).collect());
        let brute_col = (0..8)
            .map(|i| (lam.get(i).copied().unwrap_or(0.0) - cols[i]).abs())
            .fold(0.0, f64::max)
            / a_sq;
        assert!((ours.err_col - brute_col).abs() <= 1e-12 * brute_col.max(1.0));

        let sq = desc(z.iter().map(|x| x * x).collect());
        let brute_ord = (0..5).map(|i| (lam[i] - sq[i]).abs()).fold(0.0, f64::max) / a_sq;
        assert!((ours.err_order - brute_ord).abs() <= 1e-12 * brute_ord.max(1.0));
    }
}

#[test]
fn generated_samples_satisfy_exact_identities() {
    for (n, beta) in [(120, 1.0), (60, 1.4), (200, 0.7)] {
        let cfg = ensemble(n, 1.6, beta, 11);
        let a_sq = cfg.a_np_sq();
        for rep in 0..5 {
            let z = generate_matrix(&cfg, rep);
            let spec = gram_eigs(&z, false).unwrap();
            let e = approx_errors(&z, a_sq, &spec).unwrap();

            // diagonal-matrix spectrum is the sorted row sums
            let g = &z * z.transpose();
            let d = DMatrix::from_diagonal(&g.diagonal());
            let diag_spec = eigh_sym(&d).unwrap().values;
            let diag_err = spec
                .values
                .iter()
                .zip(&diag_spec)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max)
                / a_sq;
            assert!((e.err_row - diag_err).abs() <= 1e-12 * diag_err.max(1.0));

            // interlacing of the top eigenvalue
            assert!(e.top_gap_row >= -1e-8 && e.top_gap_order >= -1e-8);

            // Weyl on G = diag(G) + offdiag
            let off = &g - &d;
            let w = weyl_gap(&d, &off).unwrap();
            assert!(w.bound - w.max_shift >= -1e-8 * w.bound);

            if z.nrows() <= z.ncols() {
                assert!(e.err_row <= e.offdiag_ratio + 1e-8);
            } else {
                assert!(e.err_col <= e.offdiag_ratio + 1e-8);
            }
            assert_eq!(e.offdiag_ratio, offdiag_ratio(&z, a_sq).unwrap());
        }
    }
}

#[test]
fn localization_invariants() {
    let cfg = EnsembleConfig::new(
        300,
        GrowthRule::new(1.0, 0.2).unwrap(),
        TailModel::positive_pareto(0.8, 1.0).unwrap(),
        5,
    )
    .unwrap();
    for rep in 0..5 {
        let z = generate_matrix(&cfg, rep);
        let spec = gram_eigs(&z, true).unwrap();
        for k in 1..=3 {
            let r = localization(&z, &spec, k).unwrap();
            assert!((0.0..=2f64.sqrt() + 1e-12).contains(&r.distance));
            assert!((0.0..=1.0 + 1e-12).contains(&r.mass_top));
            assert!(r.l_k < z.nrows());
            let rows = row_sums(&z);
            let mut sorted = rows.clone();
            sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
            assert_eq!(rows[r.l_k], sorted[k - 1]);
        }
    }
}

#[test]
fn certificate_bounds_true_distance() {
    let delta = 0.01;
    let h = DMatrix::from_row_slice(2, 2, &[3.0, delta, delta, 1.0]);
    let e1 = DVector::from_vec(vec![1.0, 0.0]);
    let bound = perturbation_certificate(&h, &e1, 3.0, 2.0).unwrap();
    let v = eigh_sym(&h).unwrap().vector(0).unwrap();
    let dist = (&v - &e1).norm().min((&v + &e1).norm());
    assert!(dist <= bound, "{dist} > {bound}");
}

//! Property tests for the linear algebra and the oracle on random operators.

use nalgebra::{DMatrix, SymmetricEigen};
use proptest::prelude::*;
use qdetect_core::channels::{target_pair_bipartite, target_pair_single_mode, HypothesisPair};
use qdetect_core::fock::{
    coherent_ket, matrix_power, partial_trace, random_density_operator, spdc_ket, tensor,
    trace_norm, Complex64, DensityOperator, Truncation,
};
use qdetect_core::oracle::{
    bhattacharyya_lower, chernoff_minimum, helstrom_error, log_overlap_convexity, q_s,
    MinimizerConfig,
};
use qdetect_core::NoiseSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SLACK: f64 = 1e-9;

fn random_rho(seed: u64, d: usize) -> DensityOperator {
    random_density_operator(&mut ChaCha8Rng::seed_from_u64(seed), d).unwrap()
}

fn random_pair(seed: u64) -> HypothesisPair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_density_operator(&mut rng, 4).unwrap();
    let b = random_density_operator(&mut rng, 4).unwrap();
    HypothesisPair::custom(a, b).unwrap()
}

fn random_hermitian(rng: &mut ChaCha8Rng, d: usize) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(d, d, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    (&g + g.adjoint()) * Complex64::new(0.5, 0.0)
}

fn sorted_eigenvalues(m: DMatrix<Complex64>) -> Vec<f64> {
    let mut v: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_trace_undoes_tensor(seed in any::<u64>(), da in 2usize..4, db in 2usize..4) {
        let a = random_rho(seed, da);
        let b = random_rho(seed.wrapping_add(1), db);
        let back = partial_trace(&tensor(&a, &b).unwrap(), 0).unwrap();
        prop_assert!(back.max_abs_difference(&a).unwrap() < 1e-12);
        let other = partial_trace(&tensor(&a, &b).unwrap(), 1).unwrap();
        prop_assert!(other.max_abs_difference(&b).unwrap() < 1e-12);
    }

    #[test]
    fn matrix_power_raises_eigenvalues(seed in any::<u64>(), s in 0.0..=1.0f64) {
        let rho = random_rho(seed, 4);
        let expected: Vec<f64> = {
            let mut v: Vec<f64> = sorted_eigenvalues(rho.to_matrix().unwrap())
                .into_iter()
                .map(|l| l.powf(s))
                .collect();
            v.sort_by(|a, b| a.partial_cmp(b).unwrap());
            v
        };
        let got = sorted_eigenvalues(matrix_power(&rho, s).unwrap());
        for (g, e) in got.iter().zip(&expected) {
            prop_assert!((g - e).abs() < 1e-12, "{g} vs {e}");
        }
    }

    #[test]
    fn trace_norm_is_a_norm(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_hermitian(&mut rng, 4);
        let b = random_hermitian(&mut rng, 4);
        let c = random_hermitian(&mut rng, 4);
        let na = trace_norm(&a).unwrap();
        prop_assert!(na >= 0.0);
        let ab = trace_norm(&(&a - &b)).unwrap();
        let bc = trace_norm(&(&b - &c)).unwrap();
        let ac = trace_norm(&(&a - &c)).unwrap();
        prop_assert!(ac <= ab + bc + 1e-12);
        prop_assert!(trace_norm(&(&a - &a)).unwrap() < 1e-12);
        let scaled = trace_norm(&(&a * Complex64::new(-2.5, 0.0))).unwrap();
        prop_assert!((scaled - 2.5 * na).abs() < 1e-12 * (1.0 + na));
    }

    #[test]
    fn density_operators_have_unit_trace_norm(seed in any::<u64>(), d in 2usize..6) {
        let rho = random_rho(seed, d);
        prop_assert!((trace_norm(&rho.to_matrix().unwrap()).unwrap() - 1.0).abs() < 1e-12);
        prop_assert!(rho.check_invariants(1e-12).is_ok());
    }

    #[test]
    fn sandwich_on_random_pairs(seed in any::<u64>()) {
        let pair = random_pair(seed);
        let minimum = chernoff_minimum(&pair, &MinimizerConfig::default()).unwrap();
        for m in [1u32, 2] {
            let lower = bhattacharyya_lower(&pair, m).unwrap().value();
            let exact = helstrom_error(&pair, m).unwrap().value();
            let upper = minimum.bound(m).unwrap().value();
            prop_assert!(lower <= exact + SLACK, "{lower} > {exact}");
            prop_assert!(exact <= upper + SLACK, "{exact} > {upper}");
            let bhattacharyya = 0.5 * q_s(&pair, 0.5).unwrap().powi(m as i32);
            prop_assert!(upper <= bhattacharyya + SLACK);
        }
    }

    #[test]
    fn errors_do_not_grow_with_copies(seed in any::<u64>()) {
        let pair = random_pair(seed);
        let minimum = chernoff_minimum(&pair, &MinimizerConfig::default()).unwrap();
        let mut last_exact = f64::INFINITY;
        let mut last_upper = f64::INFINITY;
        for m in 1u32..=3 {
            let exact = helstrom_error(&pair, m).unwrap().value();
            let upper = minimum.bound(m).unwrap().value();
            prop_assert!(exact <= last_exact + SLACK);
            prop_assert!(upper <= last_upper + SLACK);
            last_exact = exact;
            last_upper = upper;
        }
    }

    #[test]
    fn chernoff_is_log_linear_in_copies(seed in any::<u64>(), m in 1u32..2000) {
        let pair = random_pair(seed);
        let minimum = chernoff_minimum(&pair, &MinimizerConfig::default()).unwrap();
        let one = minimum.bound(1).unwrap().probability.ln() + std::f64::consts::LN_2;
        let many = minimum.bound(m).unwrap().probability.ln() + std::f64::consts::LN_2;
        prop_assert!((many - m as f64 * one).abs() <= 1e-12 * (1.0 + many.abs()));
        let s = minimum.s_star;
        prop_assert!((0.0..=1.0).contains(&s));
    }

    #[test]
    fn log_overlap_is_convex(seed in any::<u64>()) {
        let pair = random_pair(seed);
        prop_assert!(log_overlap_convexity(&pair, 201).unwrap() <= SLACK);
    }
}

#[test]
fn constructed_pairs_have_convex_log_overlap() {
    let noise = NoiseSpec::from_mean_photons(1.0).unwrap();
    let coherent = coherent_ket(0.7, Truncation::default()).unwrap();
    let spdc = spdc_ket(0.5, Truncation::default()).unwrap();
    let pairs = [
        target_pair_single_mode(&coherent, noise, None, 1e-12).unwrap(),
        target_pair_bipartite(&spdc, noise, None, 1e-12).unwrap(),
    ];
    for pair in &pairs {
        assert!(log_overlap_convexity(pair, 201).unwrap() <= SLACK);
    }
}

#[test]
fn doubling_the_cutoff_leaves_overlaps_unchanged() {
    let tail_eps = 1e-12;
    let noise = NoiseSpec::from_mean_photons(0.5).unwrap();
    let coherent = coherent_ket(1.0, Truncation::auto(tail_eps)).unwrap();
    let spdc = spdc_ket(0.5, Truncation::auto(tail_eps)).unwrap();
    type Build<'a> = dyn Fn(Option<usize>) -> HypothesisPair + 'a;
    let builders: [(&str, Box<Build>); 2] = [
        (
            "coherent",
            Box::new(|k| target_pair_single_mode(&coherent, noise, k, tail_eps).unwrap()),
        ),
        (
            "spdc",
            Box::new(|k| target_pair_bipartite(&spdc, noise, k, tail_eps).unwrap()),
        ),
    ];
    for (name, build) in builders {
        let base = build(None);
        let doubled = build(Some(2 * base.cutoffs()[0]));
        for s in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let a = q_s(&base, s).unwrap();
            let b = q_s(&doubled, s).unwrap();
            assert!(
                (a - b).abs() < 10.0 * tail_eps,
                "{name} at s = {s}: {a} vs {b}"
            );
        }
    }
}

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::density::{DensityOperator, Repr};
use super::ket::{geometric_cutoff, maximally_entangled_qudit};
use crate::error::{domain, Result};
use crate::NoiseSpec;

/// Smallest cutoff `K` whose thermal tail `(N_B/(N_B+1))^(K+1)` is below
/// `tail_eps`.
pub fn thermal_cutoff(noise: NoiseSpec, tail_eps: f64) -> Result<usize> {
    let noise = noise.validated()?;
    if !(tail_eps > 0.0) {
        return Err(domain("tail_eps", tail_eps, "> 0"));
    }
    Ok(geometric_cutoff(noise.ln_ratio(), tail_eps))
}

/// Thermal state `Σ_k N_B^k/(N_B+1)^(k+1) |k><k|` for `k = 0..=cutoff`.
pub fn thermal_state(noise: NoiseSpec, cutoff: usize) -> Result<DensityOperator> {
    let noise = noise.validated()?;
    let populations: Vec<f64> = (0..=cutoff as u64)
        .map(|k| noise.ln_population(k).exp())
        .collect();
    let deficit = ((cutoff + 1) as f64 * noise.ln_ratio()).exp();
    Ok(DensityOperator::from_parts(
        Repr::Diagonal(populations),
        vec![cutoff + 1],
        deficit,
    ))
}

/// `I / d`.
pub fn maximally_mixed(d: usize) -> Result<DensityOperator> {
    if d == 0 {
        return Err(domain("d", 0.0, ">= 1"));
    }
    Ok(DensityOperator::from_parts(
        Repr::Diagonal(vec![1.0 / d as f64; d]),
        vec![d],
        0.0,
    ))
}

/// Werner state `(1-x)/d² I⊗I + x |Psi><Psi|` on two qudits.
pub fn werner_state(d: usize, x: f64) -> Result<DensityOperator> {
    if !(0.0..=1.0).contains(&x) {
        return Err(domain("x", x, "in [0, 1]"));
    }
    let psi = maximally_entangled_qudit(d)?;
    let dim = d * d;
    let mut m = psi.projector().to_matrix()? * Complex64::new(x, 0.0);
    let floor = (1.0 - x) / dim as f64;
    for i in 0..dim {
        m[(i, i)] += floor;
    }
    Ok(DensityOperator::from_parts(Repr::Dense(m), vec![d, d], 0.0))
}

/// Whether the Werner state of weight `x` is entangled (`x > 1/(d+1)`).
pub fn werner_is_entangled(d: usize, x: f64) -> bool {
    x > 1.0 / (d as f64 + 1.0)
}

/// Random full-rank density operator `G G† / Tr[G G†]` with `G` drawn from
/// the complex Ginibre ensemble.
pub fn random_density_operator<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Result<DensityOperator> {
    if d == 0 {
        return Err(domain("d", 0.0, ">= 1"));
    }
    let g = DMatrix::from_fn(d, d, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let mut m = &g * g.adjoint();
    let trace: f64 = m.diagonal().iter().map(|z| z.re).sum();
    m /= Complex64::new(trace, 0.0);
    // restore exact Hermiticity lost to rounding
    let m = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    DensityOperator::from_matrix(m, vec![d])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::partial_trace;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_temperature_is_vacuum() {
        let rho = thermal_state(NoiseSpec::MeanPhotons(0.0), 5).unwrap();
        assert_eq!(rho.diagonal(), Some(vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0]));
        assert_eq!(rho.trace_deficit(), 0.0);
    }

    #[test]
    fn one_photon_two_levels() {
        let rho = thermal_state(NoiseSpec::MeanPhotons(1.0), 1).unwrap();
        assert_eq!(rho.diagonal(), Some(vec![0.5, 0.25]));
        assert_eq!(rho.trace_deficit(), 0.25);
    }

    #[test]
    fn beta_parameterization() {
        let noise = NoiseSpec::Beta(0.05);
        assert!((noise.mean_photons() - 19.50).abs() < 0.01);
        let k = thermal_cutoff(noise, 1e-12).unwrap();
        let rho = thermal_state(noise, k).unwrap();
        assert!(rho.trace_deficit() < 1e-12);
        assert!((rho.trace() + rho.trace_deficit() - 1.0).abs() < 1e-13);
        rho.check_invariants(1e-12)
            .unwrap_or_else(|e| panic!("{e}"));
    }

    #[test]
    fn thermal_rejects_negative() {
        assert!(thermal_state(NoiseSpec::MeanPhotons(-1.0), 3).is_err());
        assert!(thermal_state(NoiseSpec::Beta(0.0), 3).is_err());
    }

    #[test]
    fn werner_endpoints() {
        let mixed = werner_state(3, 0.0).unwrap();
        assert_eq!(mixed.diagonal(), Some(vec![1.0 / 9.0; 9]));
        let pure = werner_state(3, 1.0).unwrap();
        let psi = maximally_entangled_qudit(3).unwrap().projector();
        assert!(pure.max_abs_difference(&psi).unwrap() < 1e-16);
        assert!(werner_state(3, 1.2).is_err());
        for x in [0.0, 0.3, 0.8, 1.0] {
            let rho = werner_state(4, x).unwrap();
            assert!((rho.trace() - 1.0).abs() < 1e-15);
            rho.check_invariants(1e-12).unwrap();
            let red = partial_trace(&rho, 1).unwrap();
            assert!(
                red.max_abs_difference(&maximally_mixed(4).unwrap())
                    .unwrap()
                    < 1e-15
            );
        }
    }

    #[test]
    fn werner_entanglement_threshold() {
        assert!(!werner_is_entangled(2, 1.0 / 3.0));
        assert!(werner_is_entangled(2, 0.34));
    }

    #[test]
    fn random_states_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let rho = random_density_operator(&mut rng, 4).unwrap();
            rho.check_invariants(1e-12).unwrap();
        }
    }
}

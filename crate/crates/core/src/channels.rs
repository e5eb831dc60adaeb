//! Hypothesis pairs `(rho0, rho1)` for the channel-discrimination scenarios.
//!
//! Channel 0 is the depolarizing or thermal channel ("object not there"),
//! channel 1 the identity ("object there"). For bipartite inputs the channel
//! acts on the first subsystem only and the second is retained.

use crate::error::{Error, Result};
use crate::fock::{
    maximally_mixed, partial_trace, tensor, thermal_cutoff, thermal_state, DensityOperator,
    FockKet, KetKind,
};
use crate::tolerance::UNIT_NORM;
use crate::NoiseSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    DepolarizingSingle,
    DepolarizingBipartite,
    TargetSingleMode,
    TargetBipartite,
}

/// What went into a pair, for reports.
#[derive(Debug, Clone, PartialEq)]
pub struct PairParams {
    /// The input ket's family, or `None` for a mixed input.
    pub input: Option<KetKind>,
    pub noise: Option<NoiseSpec>,
    /// Per-subsystem maximum occupation of the common basis.
    pub cutoffs: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisPair {
    rho0: DensityOperator,
    rho1: DensityOperator,
    scenario: Scenario,
    params: PairParams,
}

impl HypothesisPair {
    pub fn new(
        rho0: DensityOperator,
        rho1: DensityOperator,
        scenario: Scenario,
        params: PairParams,
    ) -> Result<Self> {
        if rho0.dims() != rho1.dims() {
            return Err(Error::DimensionMismatch(format!(
                "rho0 has dims {:?}, rho1 has dims {:?}",
                rho0.dims(),
                rho1.dims()
            )));
        }
        Ok(HypothesisPair {
            rho0,
            rho1,
            scenario,
            params,
        })
    }

    /// Pair of arbitrary operators, e.g. for property tests.
    pub fn custom(rho0: DensityOperator, rho1: DensityOperator) -> Result<Self> {
        let cutoffs = rho0.dims().iter().map(|d| d - 1).collect();
        HypothesisPair::new(
            rho0,
            rho1,
            Scenario::DepolarizingSingle,
            PairParams {
                input: None,
                noise: None,
                cutoffs,
            },
        )
    }

    pub fn rho0(&self) -> &DensityOperator {
        &self.rho0
    }

    pub fn rho1(&self) -> &DensityOperator {
        &self.rho1
    }

    pub fn scenario(&self) -> Scenario {
        self.scenario
    }

    pub fn params(&self) -> &PairParams {
        &self.params
    }

    pub fn dims(&self) -> &[usize] {
        self.rho0.dims()
    }

    pub fn cutoffs(&self) -> Vec<usize> {
        self.rho0.dims().iter().map(|d| d - 1).collect()
    }
}

fn require_unit(input: &FockKet) -> Result<()> {
    let norm_sqr = input.norm_sqr();
    if (norm_sqr - 1.0).abs() > UNIT_NORM {
        return Err(Error::InvalidState(format!(
            "depolarizing input must be a unit ket (squared norm {norm_sqr})"
        )));
    }
    Ok(())
}

/// Completely depolarizing channel vs identity on a pure input.
///
/// Single-party: `(I/d, |psi><psi|)`. Bipartite: the channel acts on the
/// first qudit, giving `(I/d ⊗ Tr_A|Psi><Psi|, |Psi><Psi|)`.
pub fn depolarizing_pair(input: &FockKet, bipartite: bool) -> Result<HypothesisPair> {
    require_unit(input)?;
    let rho1 = input.projector();
    let (rho0, scenario) = match (bipartite, input.dims()) {
        (false, [d]) => (maximally_mixed(*d)?, Scenario::DepolarizingSingle),
        (true, [d_a, _]) => (
            tensor(&maximally_mixed(*d_a)?, &partial_trace(&rho1, 1)?)?,
            Scenario::DepolarizingBipartite,
        ),
        (_, dims) => {
            return Err(Error::DimensionMismatch(format!(
                "{} input with dims {:?}",
                if bipartite {
                    "bipartite"
                } else {
                    "single-party"
                },
                dims
            )))
        }
    };
    let cutoffs = input.cutoffs();
    HypothesisPair::new(
        rho0,
        rho1,
        scenario,
        PairParams {
            input: Some(input.kind()),
            noise: None,
            cutoffs,
        },
    )
}

/// Depolarizing-vs-identity on the first half of a mixed bipartite input
/// (e.g. a Werner state): `(I/d ⊗ Tr_A rho, rho)`.
pub fn depolarizing_pair_mixed(rho: &DensityOperator) -> Result<HypothesisPair> {
    let [d_a, _] = rho.dims() else {
        return Err(Error::DimensionMismatch(format!(
            "bipartite input expected, got dims {:?}",
            rho.dims()
        )));
    };
    let rho0 = tensor(&maximally_mixed(*d_a)?, &partial_trace(rho, 1)?)?;
    let cutoffs = rho.dims().iter().map(|d| d - 1).collect();
    HypothesisPair::new(
        rho0,
        rho.clone(),
        Scenario::DepolarizingBipartite,
        PairParams {
            input: None,
            noise: None,
            cutoffs,
        },
    )
}

/// Signal cutoff shared by the thermal state and the input ket: explicit, or
/// the larger of the thermal tail cutoff and the ket's own cutoff.
fn common_signal_cutoff(
    input: &FockKet,
    noise: NoiseSpec,
    cutoff: Option<usize>,
    tail_eps: f64,
) -> Result<usize> {
    let support = input.max_occupied(0).unwrap_or(0);
    match cutoff {
        Some(k) if k < support => Err(Error::DimensionMismatch(format!(
            "cutoff {k} is below the input's occupied level {support}"
        ))),
        Some(k) => Ok(k),
        None => Ok(thermal_cutoff(noise, tail_eps)?.max(input.cutoffs()[0])),
    }
}

/// Thermal channel vs identity on a single-mode input: `(rho_th(N_B), |in><in|)`
/// in a common truncated basis.
pub fn target_pair_single_mode(
    input: &FockKet,
    noise: NoiseSpec,
    cutoff: Option<usize>,
    tail_eps: f64,
) -> Result<HypothesisPair> {
    if input.dims().len() != 1 {
        return Err(Error::DimensionMismatch(format!(
            "single-mode input expected, got dims {:?}",
            input.dims()
        )));
    }
    let k = common_signal_cutoff(input, noise, cutoff, tail_eps)?;
    let rho0 = thermal_state(noise, k)?;
    let rho1 = input.resized(&[k + 1])?.projector();
    HypothesisPair::new(
        rho0,
        rho1,
        Scenario::TargetSingleMode,
        PairParams {
            input: Some(input.kind()),
            noise: Some(noise),
            cutoffs: vec![k],
        },
    )
}

/// Thermal channel vs identity on the signal mode of a signal-idler ket:
/// `(rho_th(N_B) ⊗ Tr_S|Psi><Psi|, |Psi><Psi|)`.
pub fn target_pair_bipartite(
    input: &FockKet,
    noise: NoiseSpec,
    signal_cutoff: Option<usize>,
    tail_eps: f64,
) -> Result<HypothesisPair> {
    let [_, d_idler] = input.dims() else {
        return Err(Error::DimensionMismatch(format!(
            "signal-idler input expected, got dims {:?}",
            input.dims()
        )));
    };
    let k = common_signal_cutoff(input, noise, signal_cutoff, tail_eps)?;
    let ket = input.resized(&[k + 1, *d_idler])?;
    let rho1 = ket.projector();
    let idler = partial_trace(&rho1, 1)?;
    let rho0 = tensor(&thermal_state(noise, k)?, &idler)?;
    HypothesisPair::new(
        rho0,
        rho1,
        Scenario::TargetBipartite,
        PairParams {
            input: Some(input.kind()),
            noise: Some(noise),
            cutoffs: vec![k, d_idler - 1],
        },
    )
}

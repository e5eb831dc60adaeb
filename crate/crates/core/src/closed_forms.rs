//! Analytic error probabilities and bounds for each discrimination scenario.
//!
//! Every function returns a [`Probability`] built from the logarithm of its
//! per-copy factor, so values for `M` in the thousands stay representable in
//! log space even after they underflow as plain doubles.

use std::f64::consts::LN_2;

use crate::error::{domain, Error, Result};
use crate::tolerance::OVERLAP_CLAMP_LOG;
use crate::{NoiseSpec, Probability};

/// Scalar parameters of one scenario. Fields that do not apply are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ScenarioParams {
    pub d: Option<usize>,
    pub x: Option<f64>,
    pub n: Option<u32>,
    pub noise: Option<NoiseSpec>,
    pub n_s: Option<f64>,
    pub copies: Option<u32>,
}

impl ScenarioParams {
    pub fn validate(&self) -> Result<()> {
        if let Some(d) = self.d {
            check_dimension(d)?;
        }
        if let Some(x) = self.x {
            check_weight(x)?;
        }
        if let Some(noise) = self.noise {
            noise.validated()?;
        }
        if let Some(n_s) = self.n_s {
            check_signal(n_s)?;
        }
        if let Some(m) = self.copies {
            check_copies(m)?;
        }
        Ok(())
    }

    /// Compact `key=value` list joined by `;`, e.g. `n=20;beta=0.05`.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if let Some(d) = self.d {
            parts.push(format!("d={d}"));
        }
        if let Some(x) = self.x {
            parts.push(format!("x={x}"));
        }
        if let Some(n) = self.n {
            parts.push(format!("n={n}"));
        }
        match self.noise {
            Some(NoiseSpec::Beta(b)) => parts.push(format!("beta={b}")),
            Some(NoiseSpec::MeanPhotons(n_b)) => parts.push(format!("n_b={n_b}")),
            None => {}
        }
        if let Some(n_s) = self.n_s {
            parts.push(format!("n_s={n_s}"));
        }
        if let Some(m) = self.copies {
            parts.push(format!("m={m}"));
        }
        parts.join(";")
    }
}

fn check_copies(copies: u32) -> Result<()> {
    if copies == 0 {
        return Err(domain("M", 0.0, ">= 1"));
    }
    Ok(())
}

fn check_dimension(d: usize) -> Result<()> {
    if d < 2 {
        return Err(domain("d", d as f64, ">= 2"));
    }
    Ok(())
}

fn check_weight(x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(domain("x", x, "in [0, 1]"));
    }
    Ok(())
}

fn check_signal(n_s: f64) -> Result<()> {
    if !(n_s >= 0.0 && n_s.is_finite()) {
        return Err(domain("N_S", n_s, "finite and >= 0"));
    }
    Ok(())
}

fn check_photons(n: u32) -> Result<()> {
    if n == 0 {
        return Err(domain("n", 0.0, ">= 1"));
    }
    Ok(())
}

/// Clamp a logarithmic overlap at zero (overlap one), logging the clamp when
/// the excess is beyond rounding.
fn clamp_ln_overlap(name: &str, ln: f64) -> f64 {
    if ln > OVERLAP_CLAMP_LOG {
        log::warn!("{name} overlap e^{ln} exceeds one; clamped");
    }
    ln.min(0.0)
}

/// Input to the completely depolarizing channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DepolarizingInput {
    Pure,
    MaxEntangled,
    Werner(f64),
}

/// Single-copy error for depolarizing vs identity channel on a qudit of
/// dimension `d`: `1/(2d)`, `1/(2d²)`, or `(d² - x(d² - 1))/(2d²)`.
pub fn depolarizing_error(d: usize, input: DepolarizingInput) -> Result<Probability> {
    check_dimension(d)?;
    let d2 = (d * d) as f64;
    let value = match input {
        DepolarizingInput::Pure => 0.5 / d as f64,
        DepolarizingInput::MaxEntangled => 0.5 / d2,
        DepolarizingInput::Werner(x) => {
            check_weight(x)?;
            (d2 - x * (d2 - 1.0)) / (2.0 * d2)
        }
    };
    Ok(Probability::new(value))
}

/// Werner weight above which the bipartite input beats a single-party pure
/// state: `d/(d+1)`.
pub fn werner_advantage_threshold(d: usize) -> Result<f64> {
    check_dimension(d)?;
    Ok(d as f64 / (d as f64 + 1.0))
}

/// Exact error for a number state `|n>` against thermal noise:
/// `½ [N_B^n / (1 + N_B)^(n+1)]^M`.
pub fn number_state_error(n: u32, noise: NoiseSpec, copies: u32) -> Result<Probability> {
    let noise = noise.validated()?;
    check_copies(copies)?;
    Ok(Probability::half_power(
        noise.ln_population(n as u64),
        copies,
    ))
}

/// The number-state error evaluated separately through `N_B` and through
/// `beta`: `(½ [N_B^n/(1+N_B)^(n+1)]^M, ½ (1-e^-beta)^M e^(-M n beta))`.
pub fn number_state_error_forms(
    n: u32,
    noise: NoiseSpec,
    copies: u32,
) -> Result<(Probability, Probability)> {
    let noise = noise.validated()?;
    check_copies(copies)?;
    let n_b = noise.mean_photons();
    let beta = noise.beta();
    let n = n as f64;
    let via_mean = if n == 0.0 {
        -n_b.ln_1p()
    } else {
        n * n_b.ln() - (n + 1.0) * n_b.ln_1p()
    };
    let via_beta = if n == 0.0 {
        (-(-beta).exp_m1()).ln()
    } else {
        (-(-beta).exp_m1()).ln() - n * beta
    };
    Ok((
        Probability::half_power(via_mean, copies),
        Probability::half_power(via_beta, copies),
    ))
}

/// `ln` of the per-copy Chernoff factor for N00N inputs,
/// `(1 - e^-beta) e^(-n beta) cosh(n beta) / 2 = (1 - r)(1 + r^(2n)) / 4`.
fn ln_noon_qcb_factor(n: u32, noise: NoiseSpec) -> f64 {
    let r_2n = (2.0 * n as f64 * noise.ln_ratio()).exp();
    noise.ln_one_minus_ratio() + r_2n.ln_1p() - 2.0 * LN_2
}

/// Chernoff bound for a N00N input of `n` photons per mode.
pub fn noon_qcb(n: u32, noise: NoiseSpec, copies: u32) -> Result<Probability> {
    let noise = noise.validated()?;
    check_photons(n)?;
    check_copies(copies)?;
    Ok(Probability::half_power(
        ln_noon_qcb_factor(n, noise),
        copies,
    ))
}

/// Bhattacharyya overlap for N00N inputs,
/// `σ = √(e^(-n beta) (1 - e^-beta) / 2) cosh(n beta / 2) = √((1-r)/2) (1 + r^n) / 2`.
pub fn noon_overlap(n: u32, noise: NoiseSpec) -> Result<f64> {
    let noise = noise.validated()?;
    check_photons(n)?;
    Ok(ln_noon_overlap(n, noise).exp())
}

fn ln_noon_overlap(n: u32, noise: NoiseSpec) -> f64 {
    let r_n = (n as f64 * noise.ln_ratio()).exp();
    0.5 * (noise.ln_one_minus_ratio() - LN_2) + r_n.ln_1p() - LN_2
}

/// Lower bound `½(1 - √(1 - σ^(2M)))` for N00N inputs.
pub fn noon_lower(n: u32, noise: NoiseSpec, copies: u32) -> Result<Probability> {
    let noise = noise.validated()?;
    check_photons(n)?;
    check_copies(copies)?;
    let ln_sigma = ln_noon_overlap(n, noise);
    if ln_sigma > 0.0 {
        return Err(Error::InvalidState(format!(
            "N00N overlap {} exceeds one",
            ln_sigma.exp()
        )));
    }
    Ok(Probability::half_one_minus_sqrt(
        2.0 * copies as f64 * ln_sigma,
    ))
}

/// Photon number below which N00N inputs beat number states at the Chernoff
/// level: the root of `cosh(n beta) = 2`, i.e. `ln(2 + √3) / beta`.
pub fn noon_threshold(noise: NoiseSpec) -> Result<f64> {
    let noise = noise.validated()?;
    Ok(2f64.acosh() / noise.beta())
}

/// Chernoff bound (exact error) for coherent light,
/// `½ e^(-M N_S/(N_B+1)) / (N_B+1)^M`.
pub fn coherent_qcb(n_s: f64, noise: NoiseSpec, copies: u32) -> Result<Probability> {
    let noise = noise.validated()?;
    check_signal(n_s)?;
    check_copies(copies)?;
    let one_minus_r = noise.one_minus_ratio();
    Ok(Probability::half_power(
        -n_s * one_minus_r + noise.ln_one_minus_ratio(),
        copies,
    ))
}

/// `τ = <α|ρ_th^½|α> = e^(-N_S (1 - √(N_B/(N_B+1)))) / √(N_B+1)`.
pub fn coherent_overlap(n_s: f64, noise: NoiseSpec) -> Result<f64> {
    let noise = noise.validated()?;
    check_signal(n_s)?;
    Ok(ln_coherent_overlap(n_s, noise).exp())
}

fn ln_coherent_overlap(n_s: f64, noise: NoiseSpec) -> f64 {
    // 1 - √r, accurate when r is close to one
    let one_minus_sqrt_r = -(0.5 * noise.ln_ratio()).exp_m1();
    -n_s * one_minus_sqrt_r + 0.5 * noise.ln_one_minus_ratio()
}

/// Lower bound `½(1 - √(1 - τ^(2M)))` for coherent light.
pub fn coherent_lower(n_s: f64, noise: NoiseSpec, copies: u32) -> Result<Probability> {
    let noise = noise.validated()?;
    check_signal(n_s)?;
    check_copies(copies)?;
    let ln_tau = clamp_ln_overlap("coherent", ln_coherent_overlap(n_s, noise));
    Ok(Probability::half_one_minus_sqrt(
        2.0 * copies as f64 * ln_tau,
    ))
}

/// `(N_S+1)²(N_B+1) - N_S² N_B`, written as a sum of non-negative terms.
fn spdc_denominator(n_s: f64, n_b: f64) -> f64 {
    (n_s + 1.0).powi(2) + n_b * (2.0 * n_s + 1.0)
}

/// Chernoff bound for SPDC (two-mode squeezed vacuum) inputs,
/// `½ [(N_S+1)²(N_B+1) - N_S² N_B]^(-M)`.
pub fn spdc_qcb(n_s: f64, noise: NoiseSpec, copies: u32) -> Result<Probability> {
    let noise = noise.validated()?;
    check_signal(n_s)?;
    check_copies(copies)?;
    let denominator = spdc_denominator(n_s, noise.mean_photons());
    if !(denominator >= 1.0) {
        return Err(Error::InvalidState(format!(
            "SPDC Chernoff denominator {denominator} is below one"
        )));
    }
    Ok(Probability::half_power(-denominator.ln(), copies))
}

/// `υ = [√((N_S+1)³(N_B+1)) - √(N_S³ N_B)]^(-1)`.
pub fn spdc_overlap(n_s: f64, noise: NoiseSpec) -> Result<f64> {
    let noise = noise.validated()?;
    check_signal(n_s)?;
    Ok(ln_spdc_overlap(n_s, noise.mean_photons()).exp())
}

fn ln_spdc_overlap(n_s: f64, n_b: f64) -> f64 {
    let a = (1.5 * n_s.ln_1p() + 0.5 * n_b.ln_1p()).exp();
    let b = (n_s.powi(3) * n_b).sqrt();
    // a - b = (a² - b²) / (a + b) with the difference of squares expanded
    let difference_of_squares = (n_s + 1.0).powi(3) + n_b * (3.0 * n_s * n_s + 3.0 * n_s + 1.0);
    (a + b).ln() - difference_of_squares.ln()
}

/// Lower bound `½(1 - √(1 - υ^(2M)))` for SPDC inputs.
pub fn spdc_lower(n_s: f64, noise: NoiseSpec, copies: u32) -> Result<Probability> {
    let noise = noise.validated()?;
    check_signal(n_s)?;
    check_copies(copies)?;
    let ln_upsilon = clamp_ln_overlap("SPDC", ln_spdc_overlap(n_s, noise.mean_photons()));
    Ok(Probability::half_one_minus_sqrt(
        2.0 * copies as f64 * ln_upsilon,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseRegime {
    /// Leading behaviour for `N_B → ∞` at the given large `N_B`.
    BrightNoise(f64),
    /// `N_B → 0`: the thermal channel outputs vacuum.
    WeakNoise,
}

/// Limiting values of the coherent and SPDC quantities.
///
/// Bright noise: `coherent` is `½ N_B^-M`. Weak noise: `coherent` is
/// `½(1 - √(1 - e^(-2 M N_S)))`, the value the weak-noise comparison against
/// SPDC is drawn with. Since `Tr[rho0^½ rho1^½] = |<0|α>|²` for the vacuum
/// output, that expression coincides with the coherent lower bound at
/// `N_B = 0`. The Helstrom error of the vacuum-vs-coherent pair,
/// `½(1 - √(1 - e^(-M N_S)))`, is reported as `coherent_helstrom`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticLimits {
    pub coherent: Probability,
    pub coherent_helstrom: Option<Probability>,
    pub spdc_qcb: Probability,
    pub spdc_lower: Option<Probability>,
}

pub fn asymptotic_limits(n_s: f64, copies: u32, regime: NoiseRegime) -> Result<AsymptoticLimits> {
    check_signal(n_s)?;
    check_copies(copies)?;
    let m = copies as f64;
    match regime {
        NoiseRegime::BrightNoise(n_b) => {
            if !(n_b > 0.0 && n_b.is_finite()) {
                return Err(domain("N_B", n_b, "finite and > 0"));
            }
            Ok(AsymptoticLimits {
                coherent: Probability::half_power(-n_b.ln(), copies),
                coherent_helstrom: None,
                spdc_qcb: Probability::half_power(-n_b.ln() - (2.0 * n_s).ln_1p(), copies),
                spdc_lower: None,
            })
        }
        NoiseRegime::WeakNoise => Ok(AsymptoticLimits {
            coherent: Probability::half_one_minus_sqrt(-2.0 * m * n_s),
            coherent_helstrom: Some(Probability::half_one_minus_sqrt(-m * n_s)),
            spdc_qcb: Probability::half_power(-2.0 * n_s.ln_1p(), copies),
            spdc_lower: Some(Probability::half_one_minus_sqrt(-3.0 * m * n_s.ln_1p())),
        }),
    }
}

/// Exponent `k` in `2 N_B^M spdc_qcb = (2 N_S + 1)^(-k)`, evaluated from the
/// exact SPDC Chernoff bound at a finite (large) `N_B`. Tends to `M` as
/// `N_B → ∞`.
pub fn spdc_bright_exponent(n_s: f64, n_b: f64, copies: u32) -> Result<f64> {
    if !(n_s > 0.0 && n_s.is_finite()) {
        return Err(domain("N_S", n_s, "finite and > 0"));
    }
    let noise = NoiseSpec::from_mean_photons(n_b)?;
    if n_b == 0.0 {
        return Err(domain("N_B", n_b, "> 0"));
    }
    let qcb = spdc_qcb(n_s, noise, copies)?;
    let scaled = qcb.ln() + LN_2 + copies as f64 * n_b.ln();
    Ok(-scaled / (2.0 * n_s).ln_1p())
}

/// Signal strength above which the weak-noise SPDC lower bound exceeds the
/// weak-noise coherent value `½(1 - √(1 - e^(-2 N_S)))`: the root of
/// `2 N_S = 3 ln(1 + N_S)`, found by
/// bisection on `[lo, hi]` to width `tol`. The root is independent of `M`.
pub fn weak_noise_crossover(lo: f64, hi: f64, tol: f64) -> Result<f64> {
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(domain("hi", hi, "finite and > lo > 0"));
    }
    if !(tol > 0.0) {
        return Err(domain("tol", tol, "> 0"));
    }
    // positive where the SPDC bound is above the coherent error
    let gap = |n_s: f64| 2.0 * n_s - 3.0 * n_s.ln_1p();
    let (mut a, mut b) = (lo, hi);
    let (ga, gb) = (gap(a), gap(b));
    if ga.signum() == gb.signum() {
        return Err(Error::InvalidState(format!(
            "no crossover in [{lo}, {hi}] (gaps {ga:e}, {gb:e})"
        )));
    }
    let mut iterations = 0;
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if gap(mid).signum() == ga.signum() {
            a = mid;
        } else {
            b = mid;
        }
        iterations += 1;
        if iterations > 200 {
            return Err(Error::Convergence {
                iterations,
                width: b - a,
            });
        }
    }
    Ok(0.5 * (a + b))
}

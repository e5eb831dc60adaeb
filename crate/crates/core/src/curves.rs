//! Labelled series of bounds, one point per copy count or signal strength.

use crate::closed_forms::{
    asymptotic_limits, coherent_lower, coherent_qcb, noon_lower, noon_qcb, number_state_error,
    spdc_lower, spdc_qcb, NoiseRegime, ScenarioParams,
};
use crate::error::{domain, Result};
use crate::{NoiseSpec, Probability};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    /// Copy count `M`, or the sweep coordinate for [`SweepSeries`].
    pub x: f64,
    pub probability: Probability,
}

impl CurvePoint {
    pub fn value(&self) -> f64 {
        self.probability.value()
    }

    pub fn log10_value(&self) -> f64 {
        self.probability.log10()
    }
}

/// A series indexed by the copy count `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSeries {
    pub label: String,
    pub params: ScenarioParams,
    pub points: Vec<CurvePoint>,
}

impl CurveSeries {
    fn build(
        label: &str,
        params: ScenarioParams,
        copies: &[u32],
        f: impl Fn(u32) -> Result<Probability>,
    ) -> Result<Self> {
        let points = copies
            .iter()
            .map(|&m| {
                Ok(CurvePoint {
                    x: m as f64,
                    probability: f(m)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(CurveSeries {
            label: label.to_string(),
            params,
            points,
        })
    }

    /// `label:params`, e.g. `noon_lb:n=20;beta=0.05`.
    pub fn qualified_label(&self) -> String {
        let params = self.params.describe();
        if params.is_empty() {
            self.label.clone()
        } else {
            format!("{}:{}", self.label, params)
        }
    }
}

/// A series indexed by the mean signal photon number `N_S`.
pub type SweepSeries = CurveSeries;

fn check_copies(copies: &[u32]) -> Result<()> {
    if copies.is_empty() {
        return Err(domain("copies", 0.0, "a non-empty list"));
    }
    if copies[0] == 0 {
        return Err(domain("M", 0.0, ">= 1"));
    }
    if let Some(w) = copies.windows(2).find(|w| w[1] <= w[0]) {
        return Err(domain("M", w[1] as f64, "strictly increasing"));
    }
    Ok(())
}

/// `1, 2, ..., m_max`.
pub fn copies_range(m_max: u32) -> Result<Vec<u32>> {
    if m_max == 0 {
        return Err(domain("m_max", 0.0, ">= 1"));
    }
    Ok((1..=m_max).collect())
}

/// `samples` copy counts with `log10 M` uniform on `[0, log_m_max]`, rounded
/// to integers and deduplicated.
pub fn log_uniform_copies(log_m_max: f64, samples: usize) -> Result<Vec<u32>> {
    if !(0.0..=9.0).contains(&log_m_max) {
        return Err(domain("log_m_max", log_m_max, "in [0, 9]"));
    }
    if samples < 2 {
        return Err(domain("samples", samples as f64, ">= 2"));
    }
    let mut copies: Vec<u32> = (0..samples)
        .map(|i| {
            let exponent = log_m_max * i as f64 / (samples - 1) as f64;
            10f64.powf(exponent).round() as u32
        })
        .collect();
    copies.dedup();
    Ok(copies)
}

/// Number-state exact error against the N00N Chernoff and lower bounds:
/// series `number_exact`, `noon_qcb`, `noon_lb`.
pub fn number_vs_noon(n: u32, noise: NoiseSpec, copies: &[u32]) -> Result<Vec<CurveSeries>> {
    check_copies(copies)?;
    let params = ScenarioParams {
        n: Some(n),
        noise: Some(noise.validated()?),
        ..ScenarioParams::default()
    };
    Ok(vec![
        CurveSeries::build("number_exact", params, copies, |m| {
            number_state_error(n, noise, m)
        })?,
        CurveSeries::build("noon_qcb", params, copies, |m| noon_qcb(n, noise, m))?,
        CurveSeries::build("noon_lb", params, copies, |m| noon_lower(n, noise, m))?,
    ])
}

/// Coherent and SPDC Chernoff and lower bounds: series `coh_qcb`, `coh_lb`,
/// `spdc_qcb`, `spdc_lb`.
pub fn coherent_vs_spdc(n_s: f64, noise: NoiseSpec, copies: &[u32]) -> Result<Vec<CurveSeries>> {
    check_copies(copies)?;
    let params = ScenarioParams {
        noise: Some(noise.validated()?),
        n_s: Some(n_s),
        ..ScenarioParams::default()
    };
    params.validate()?;
    Ok(vec![
        CurveSeries::build("coh_qcb", params, copies, |m| coherent_qcb(n_s, noise, m))?,
        CurveSeries::build("coh_lb", params, copies, |m| coherent_lower(n_s, noise, m))?,
        CurveSeries::build("spdc_qcb", params, copies, |m| spdc_qcb(n_s, noise, m))?,
        CurveSeries::build("spdc_lb", params, copies, |m| spdc_lower(n_s, noise, m))?,
    ])
}

/// `steps` evenly spaced signal strengths from `n_s_min` to `n_s_max`
/// inclusive.
pub fn signal_grid(n_s_min: f64, n_s_max: f64, steps: usize) -> Result<Vec<f64>> {
    if !(n_s_min >= 0.0 && n_s_max > n_s_min && n_s_max.is_finite()) {
        return Err(domain("n_s_max", n_s_max, "finite and > n_s_min >= 0"));
    }
    if steps < 2 {
        return Err(domain("steps", steps as f64, ">= 2"));
    }
    let width = n_s_max - n_s_min;
    Ok((0..steps)
        .map(|i| n_s_min + width * i as f64 / (steps - 1) as f64)
        .collect())
}

/// Weak-noise limits against `N_S` at fixed `M`: series `coh_weak`,
/// `coh_helstrom`, `spdc_qcb`, `spdc_lb` (see
/// [`AsymptoticLimits`](crate::closed_forms::AsymptoticLimits) for the two
/// coherent series).
pub fn weak_noise_sweep(signals: &[f64], copies: u32) -> Result<Vec<SweepSeries>> {
    let limits = signals
        .iter()
        .map(|&n_s| Ok((n_s, asymptotic_limits(n_s, copies, NoiseRegime::WeakNoise)?)))
        .collect::<Result<Vec<_>>>()?;
    let params = ScenarioParams {
        noise: Some(NoiseSpec::MeanPhotons(0.0)),
        copies: Some(copies),
        ..ScenarioParams::default()
    };
    let series =
        |label: &str, pick: &dyn Fn(&crate::closed_forms::AsymptoticLimits) -> Probability| {
            SweepSeries {
                label: label.to_string(),
                params,
                points: limits
                    .iter()
                    .map(|(n_s, l)| CurvePoint {
                        x: *n_s,
                        probability: pick(l),
                    })
                    .collect(),
            }
        };
    Ok(vec![
        series("coh_weak", &|l| l.coherent),
        series("coh_helstrom", &|l| {
            l.coherent_helstrom.unwrap_or(Probability::ZERO)
        }),
        series("spdc_qcb", &|l| l.spdc_qcb),
        series("spdc_lb", &|l| l.spdc_lower.unwrap_or(Probability::ZERO)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_uniform_sampling() {
        let m = log_uniform_copies(4.0, 50).unwrap();
        assert_eq!(m[0], 1);
        assert_eq!(*m.last().unwrap(), 10_000);
        assert!(m.windows(2).all(|w| w[1] > w[0]));
        assert!(m.len() < 50);
        assert_eq!(log_uniform_copies(0.0, 5).unwrap(), vec![1]);
    }

    #[test]
    fn series_labels_and_lengths() {
        let noise = NoiseSpec::from_beta(0.05).unwrap();
        let copies = copies_range(200).unwrap();
        let s = number_vs_noon(20, noise, &copies).unwrap();
        let labels: Vec<_> = s.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, ["number_exact", "noon_qcb", "noon_lb"]);
        assert_eq!(s[2].qualified_label(), "noon_lb:n=20;beta=0.05");
        assert!(s.iter().all(|c| c.points.len() == 200));
    }

    #[test]
    fn rejects_unordered_copies() {
        let noise = NoiseSpec::from_mean_photons(1.0).unwrap();
        assert!(coherent_vs_spdc(0.5, noise, &[1, 3, 2]).is_err());
        assert!(coherent_vs_spdc(0.5, noise, &[]).is_err());
        assert!(coherent_vs_spdc(0.5, noise, &[0, 1]).is_err());
    }

    #[test]
    fn weak_noise_grid() {
        let grid = signal_grid(0.05, 3.0, 60).unwrap();
        assert_eq!(grid.len(), 60);
        assert_eq!(grid[0], 0.05);
        assert!((grid[59] - 3.0).abs() < 1e-15);
        let s = weak_noise_sweep(&grid, 1).unwrap();
        for (qcb, lb) in s[2].points.iter().zip(&s[3].points) {
            assert!(lb.probability <= qcb.probability);
        }
    }
}

//! Browser bindings: each export returns a JSON document of labelled series
//! that `www/index.html` plots on a canvas.
//!
//! The `*_json` functions hold the logic and return `Result<String, String>`
//! so that they can be tested natively; the `#[wasm_bindgen]` wrappers only
//! convert the error into a JavaScript exception.

use qdetect_core::closed_forms::noon_threshold;
use qdetect_core::closed_forms::weak_noise_crossover;
use qdetect_core::curves::{
    coherent_vs_spdc, copies_range, log_uniform_copies, number_vs_noon, signal_grid,
    weak_noise_sweep, CurveSeries,
};
use qdetect_core::NoiseSpec;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Values are plotted on a log axis, so only `log10` is sent; it stays finite
/// where the value itself underflows.
#[derive(Debug, Serialize)]
pub struct Series {
    pub label: String,
    pub x: Vec<f64>,
    pub log10: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct Plot {
    pub x_label: &'static str,
    pub series: Vec<Series>,
    /// One line of context shown under the plot.
    pub note: String,
}

impl From<&CurveSeries> for Series {
    fn from(s: &CurveSeries) -> Self {
        Series {
            label: s.qualified_label(),
            x: s.points.iter().map(|p| p.x).collect(),
            log10: s.points.iter().map(|p| p.log10_value()).collect(),
        }
    }
}

fn to_json(plot: &Plot) -> Result<String, String> {
    serde_json::to_string(plot).map_err(|e| e.to_string())
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Number state `|n>` against the N00N state with the same photon number, in
/// thermal noise `beta`, for `M = 1..=m_max`.
pub fn number_vs_noon_json(n: u32, beta: f64, m_max: u32) -> Result<String, String> {
    let noise = NoiseSpec::from_beta(beta).map_err(err)?;
    let copies = copies_range(m_max).map_err(err)?;
    let series = number_vs_noon(n, noise, &copies).map_err(err)?;
    let threshold = noon_threshold(noise).map_err(err)?;
    let note = format!(
        "N00N beats the number state for n below n* = ln(2 + sqrt 3)/beta = {threshold:.3}"
    );
    to_json(&Plot {
        x_label: "M",
        series: series.iter().map(Series::from).collect(),
        note,
    })
}

/// Coherent against SPDC input at signal `n_s` and noise `n_b`, with
/// `steps` log-uniform copy counts up to `10^log_m_max`.
pub fn coherent_vs_spdc_json(
    n_s: f64,
    n_b: f64,
    log_m_max: f64,
    steps: usize,
) -> Result<String, String> {
    let noise = NoiseSpec::from_mean_photons(n_b).map_err(err)?;
    let copies = log_uniform_copies(log_m_max, steps).map_err(err)?;
    let series = coherent_vs_spdc(n_s, noise, &copies).map_err(err)?;
    to_json(&Plot {
        x_label: "M",
        series: series.iter().map(Series::from).collect(),
        note: format!("N_S = {n_s}, N_B = {n_b}"),
    })
}

/// Weak-noise (`N_B -> 0`) limits against the signal strength.
pub fn weak_noise_json(n_s_min: f64, n_s_max: f64, steps: usize, m: u32) -> Result<String, String> {
    let signals = signal_grid(n_s_min, n_s_max, steps).map_err(err)?;
    let series = weak_noise_sweep(&signals, m).map_err(err)?;
    let crossover = weak_noise_crossover(1.0, 1.3, 1e-10).map_err(err)?;
    to_json(&Plot {
        x_label: "N_S",
        series: series.iter().map(Series::from).collect(),
        note: format!("SPDC lower bound crosses the coherent curve at N_S = {crossover:.6}"),
    })
}

#[wasm_bindgen]
pub fn number_vs_noon_plot(n: u32, beta: f64, m_max: u32) -> Result<String, JsError> {
    number_vs_noon_json(n, beta, m_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn coherent_vs_spdc_plot(
    n_s: f64,
    n_b: f64,
    log_m_max: f64,
    steps: usize,
) -> Result<String, JsError> {
    coherent_vs_spdc_json(n_s, n_b, log_m_max, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn weak_noise_plot(
    n_s_min: f64,
    n_s_max: f64,
    steps: usize,
    m: u32,
) -> Result<String, JsError> {
    weak_noise_json(n_s_min, n_s_max, steps, m).map_err(|e| JsError::new(&e))
}

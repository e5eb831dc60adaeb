//! CSV data behind the three figures.

use qdetect_core::curves::{
    coherent_vs_spdc, copies_range, log_uniform_copies, number_vs_noon, signal_grid,
    weak_noise_sweep,
};
use qdetect_core::NoiseSpec;

use crate::args::{Figure1Args, Figure2Args, Figure3Args};
use crate::output::{series_csv, CSV_HEADER, SWEEP_HEADER};
use crate::CliError;

pub fn figure1(args: &Figure1Args) -> Result<String, CliError> {
    let noise = NoiseSpec::from_beta(args.beta)?;
    if args.n.is_empty() {
        return Err(CliError::Usage("--n needs at least one value".into()));
    }
    let copies = copies_range(args.m_max)?;
    let mut series = Vec::new();
    for &n in &args.n {
        series.extend(number_vs_noon(n, noise, &copies)?);
    }
    Ok(series_csv(CSV_HEADER, &series, true))
}

pub fn figure2(args: &Figure2Args) -> Result<String, CliError> {
    if args.n_s.len() != args.n_b.len() || args.n_s.is_empty() {
        return Err(CliError::Usage(format!(
            "--n-s and --n-b must list the same number of values ({} vs {})",
            args.n_s.len(),
            args.n_b.len()
        )));
    }
    let copies = log_uniform_copies(args.log_m_max, args.steps)?;
    let mut series = Vec::new();
    for (&n_s, &n_b) in args.n_s.iter().zip(&args.n_b) {
        series.extend(coherent_vs_spdc(
            n_s,
            NoiseSpec::from_mean_photons(n_b)?,
            &copies,
        )?);
    }
    Ok(series_csv(CSV_HEADER, &series, true))
}

pub fn figure3(args: &Figure3Args) -> Result<String, CliError> {
    let grid = signal_grid(args.n_s_min, args.n_s_max, args.steps)?;
    let series = weak_noise_sweep(&grid, args.m)?;
    Ok(series_csv(SWEEP_HEADER, &series, false))
}

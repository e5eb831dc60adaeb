//! CSV formatting and output routing.

use std::fs;
use std::io::Write;
use std::path::Path;

use qdetect_core::curves::CurveSeries;
use qdetect_core::Probability;

use crate::CliError;

pub const CSV_HEADER: &str = "series,m,value,log10_value";
pub const SWEEP_HEADER: &str = "series,n_s,value,log10_value";

/// 17 significant digits; `0` when the value underflows.
pub fn format_value(p: Probability) -> String {
    let v = p.value();
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v:.16e}")
    }
}

/// log10 computed from the stored logarithm, so finite even on underflow.
pub fn format_log10(p: Probability) -> String {
    let l = p.log10();
    if l == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        format!("{l:.16e}")
    }
}

/// Rows `label,x,value,log10_value` for each series in order. `x` is printed
/// as an integer for copy counts and in shortest round-trip form otherwise.
pub fn series_csv(header: &str, series: &[CurveSeries], integer_x: bool) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for s in series {
        let label = s.qualified_label();
        for p in &s.points {
            let x = if integer_x {
                format!("{}", p.x as u64)
            } else {
                format!("{}", p.x)
            };
            out.push_str(&format!(
                "{label},{x},{},{}\n",
                format_value(p.probability),
                format_log10(p.probability)
            ));
        }
    }
    out
}

pub fn emit(text: &str, path: Option<&Path>, stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(path) => fs::write(path, text)?,
        None => {
            // a closed pipe (`qdetect figure1 | head`) is not an error
            match stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
            {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                other => other?,
            }
        }
    }
    Ok(())
}

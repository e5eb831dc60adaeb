//! Minimization of a function over `[0, 1]`: uniform grid, then golden-section
//! refinement of the bracket around the best grid point.

use crate::error::{domain, Error, Result};

/// Values within this relative distance count as ties, resolved towards the
/// smaller argument.
const TIE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizerConfig {
    /// Grid points over `[0, 1]`, endpoints included.
    pub grid_points: usize,
    /// Golden-section stops once the bracket is narrower than this.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for MinimizerConfig {
    fn default() -> Self {
        MinimizerConfig {
            grid_points: 201,
            tolerance: 1e-8,
            max_iterations: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    pub grid_points: usize,
    pub iterations: usize,
    pub bracket_width: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub argmin: f64,
    pub value: f64,
    pub diagnostics: Diagnostics,
}

struct Best {
    s: f64,
    value: f64,
}

impl Best {
    fn offer(&mut self, s: f64, value: f64) {
        let window = TIE * self.value.abs();
        if value < self.value - window || (value <= self.value + window && s < self.s) {
            self.s = s;
            self.value = value;
        }
    }
}

pub fn minimize_unit_interval(f: impl Fn(f64) -> f64, config: &MinimizerConfig) -> Result<Minimum> {
    if config.grid_points < 3 {
        return Err(domain("grid_points", config.grid_points as f64, ">= 3"));
    }
    if !(config.tolerance > 0.0) {
        return Err(domain("tolerance", config.tolerance, "> 0"));
    }
    let eval = |s: f64| {
        let v = f(s);
        if v.is_nan() {
            Err(Error::InvalidState(format!("objective is NaN at s = {s}")))
        } else {
            Ok(v)
        }
    };

    let last = config.grid_points - 1;
    let grid = |i: usize| i as f64 / last as f64;
    let mut best = Best {
        s: 0.0,
        value: eval(0.0)?,
    };
    let mut best_index = 0;
    for i in 1..=last {
        let s = grid(i);
        let before = best.s;
        best.offer(s, eval(s)?);
        if best.s != before {
            best_index = i;
        }
    }

    let mut a = grid(best_index.saturating_sub(1));
    let mut b = grid((best_index + 1).min(last));
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = eval(c)?;
    let mut fd = eval(d)?;
    best.offer(c, fc);
    best.offer(d, fd);
    let mut iterations = 0;
    while b - a > config.tolerance {
        if iterations >= config.max_iterations {
            return Err(Error::Convergence {
                iterations,
                width: b - a,
            });
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(c)?;
            best.offer(c, fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(d)?;
            best.offer(d, fd);
        }
        iterations += 1;
    }

    Ok(Minimum {
        argmin: best.s,
        value: best.value,
        diagnostics: Diagnostics {
            grid_points: config.grid_points,
            iterations,
            bracket_width: b - a,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interior_minimum() {
        let m =
            minimize_unit_interval(|s| (s - 0.3137).powi(2), &MinimizerConfig::default()).unwrap();
        assert!((m.argmin - 0.3137).abs() < 1e-8);
        assert!(m.diagnostics.bracket_width <= 1e-8);
        assert!(m.diagnostics.iterations > 0);
    }

    #[test]
    fn endpoint_minimum_is_exact() {
        let m = minimize_unit_interval(|s| 0.4f64.powf(s), &MinimizerConfig::default()).unwrap();
        assert_eq!(m.argmin, 1.0);
        assert_eq!(m.value, 0.4);
        let m =
            minimize_unit_interval(|s| 0.4f64.powf(1.0 - s), &MinimizerConfig::default()).unwrap();
        assert_eq!(m.argmin, 0.0);
    }

    #[test]
    fn flat_function_picks_smallest_s() {
        let m = minimize_unit_interval(|_| 1.0, &MinimizerConfig::default()).unwrap();
        assert_eq!(m.argmin, 0.0);
    }

    #[test]
    fn iteration_cap_is_an_error() {
        let config = MinimizerConfig {
            max_iterations: 3,
            ..MinimizerConfig::default()
        };
        assert!(matches!(
            minimize_unit_interval(|s| (s - 0.5).powi(2), &config),
            Err(Error::Convergence { iterations: 3, .. })
        ));
    }

    #[test]
    fn nan_is_rejected() {
        assert!(minimize_unit_interval(|_| f64::NAN, &MinimizerConfig::default()).is_err());
    }
}

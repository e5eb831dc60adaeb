use std::cmp::Ordering;
use std::f64::consts::{LN_10, LN_2};
use std::fmt;

/// A probability stored by its natural logarithm.
///
/// Many-copy bounds such as `½ q^M` leave the double range long before the
/// copy counts of interest (`M ~ 10^4`), so every closed form is evaluated in
/// log space. [`Probability::value`] underflows to zero gracefully while
/// [`Probability::log10`] stays finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Probability {
    ln: f64,
}

impl Probability {
    pub const ZERO: Probability = Probability {
        ln: f64::NEG_INFINITY,
    };
    pub const HALF: Probability = Probability { ln: -LN_2 };

    pub fn from_ln(ln: f64) -> Self {
        Probability { ln }
    }

    pub fn new(value: f64) -> Self {
        Probability { ln: value.ln() }
    }

    pub fn value(self) -> f64 {
        self.ln.exp()
    }

    pub fn ln(self) -> f64 {
        self.ln
    }

    pub fn log10(self) -> f64 {
        self.ln / LN_10
    }

    /// `½ · base^copies` for a per-copy factor given by its logarithm.
    pub fn half_power(ln_base: f64, copies: u32) -> Self {
        let ln = if ln_base == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            copies as f64 * ln_base
        };
        Probability { ln: ln - LN_2 }
    }

    /// `½ (1 - √(1 - x))` for `x` given by its logarithm, evaluated as
    /// `½ x / (1 + √(1 - x))` to avoid cancellation when `x` is small.
    pub fn half_one_minus_sqrt(ln_x: f64) -> Self {
        let ln_x = ln_x.min(0.0);
        let x = ln_x.exp();
        let denominator = 1.0 + (1.0 - x).max(0.0).sqrt();
        Probability {
            ln: ln_x - LN_2 - denominator.ln(),
        }
    }

    /// Relative difference `|a - b| / |b|`, computed from the logarithms.
    pub fn relative_difference(self, reference: Probability) -> f64 {
        if self.ln == reference.ln {
            return 0.0;
        }
        if reference.ln == f64::NEG_INFINITY {
            return self.value();
        }
        (self.ln - reference.ln).exp_m1().abs()
    }
}

impl PartialOrd for Probability {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.ln.partial_cmp(&other.ln)
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_power_matches_direct_evaluation() {
        let p = Probability::half_power(0.3f64.ln(), 3);
        assert!((p.value() - 0.5 * 0.027).abs() < 1e-17);
    }

    #[test]
    fn half_power_survives_underflow() {
        let p = Probability::half_power(0.01f64.ln(), 10_000);
        assert_eq!(p.value(), 0.0);
        assert!((p.log10() - (-20_000.0 - 2f64.log10())).abs() < 1e-9);
    }

    #[test]
    fn half_one_minus_sqrt_endpoints() {
        assert_eq!(Probability::half_one_minus_sqrt(0.0).value(), 0.5);
        assert_eq!(
            Probability::half_one_minus_sqrt(f64::NEG_INFINITY).value(),
            0.0
        );
        let x: f64 = 0.375 * 0.375;
        let direct = 0.5 * (1.0 - (1.0 - x).sqrt());
        let p = Probability::half_one_minus_sqrt(x.ln());
        assert!((p.value() - direct).abs() < 1e-16);
    }

    #[test]
    fn ordering_follows_logarithm() {
        assert!(Probability::new(0.1) < Probability::new(0.2));
        assert!(Probability::ZERO < Probability::new(1e-300));
    }

    #[test]
    fn relative_difference_is_symmetric_in_small_limit() {
        let a = Probability::new(1.0);
        let b = Probability::new(1.0 + 1e-9);
        assert!((a.relative_difference(b) - 1e-9).abs() < 1e-15);
    }
}

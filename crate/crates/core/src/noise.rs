use crate::error::{domain, Result};

/// Thermal noise level, given either as the mean photon number `N_B` or as the
/// inverse-temperature-like parameter `beta`, related by
/// `N_B = e^-beta / (1 - e^-beta)`.
///
/// Every formula reads the noise through the accessors below so that both
/// parameterizations give bit-for-bit consistent intermediate quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseSpec {
    MeanPhotons(f64),
    Beta(f64),
}

impl NoiseSpec {
    pub fn from_mean_photons(n_b: f64) -> Result<Self> {
        NoiseSpec::MeanPhotons(n_b).validated()
    }

    pub fn from_beta(beta: f64) -> Result<Self> {
        NoiseSpec::Beta(beta).validated()
    }

    pub fn validated(self) -> Result<Self> {
        match self {
            NoiseSpec::MeanPhotons(n) if !(n >= 0.0 && n.is_finite()) => {
                Err(domain("N_B", n, "finite and >= 0"))
            }
            NoiseSpec::Beta(b) if !(b > 0.0) || b.is_nan() => Err(domain("beta", b, "> 0")),
            ok => Ok(ok),
        }
    }

    /// Mean thermal photon number `N_B`.
    pub fn mean_photons(&self) -> f64 {
        match *self {
            NoiseSpec::MeanPhotons(n) => n,
            NoiseSpec::Beta(b) => 1.0 / b.exp_m1(),
        }
    }

    /// `beta`; infinite for the vacuum (`N_B = 0`).
    pub fn beta(&self) -> f64 {
        match *self {
            NoiseSpec::MeanPhotons(n) => (1.0 / n).ln_1p(),
            NoiseSpec::Beta(b) => b,
        }
    }

    /// Geometric ratio `e^-beta = N_B / (N_B + 1)` of the thermal distribution.
    pub fn ratio(&self) -> f64 {
        match *self {
            NoiseSpec::MeanPhotons(n) => n / (n + 1.0),
            NoiseSpec::Beta(b) => (-b).exp(),
        }
    }

    /// `1 - e^-beta = 1 / (N_B + 1)`, the vacuum population.
    pub fn one_minus_ratio(&self) -> f64 {
        match *self {
            NoiseSpec::MeanPhotons(n) => 1.0 / (n + 1.0),
            NoiseSpec::Beta(b) => -(-b).exp_m1(),
        }
    }

    pub fn ln_ratio(&self) -> f64 {
        match *self {
            NoiseSpec::MeanPhotons(n) => -(1.0 / n).ln_1p(),
            NoiseSpec::Beta(b) => -b,
        }
    }

    pub fn ln_one_minus_ratio(&self) -> f64 {
        match *self {
            NoiseSpec::MeanPhotons(n) => -n.ln_1p(),
            NoiseSpec::Beta(b) => (-(-b).exp_m1()).ln(),
        }
    }

    /// `ln` of the thermal population of level `k`.
    pub fn ln_population(&self, k: u64) -> f64 {
        if k == 0 {
            self.ln_one_minus_ratio()
        } else {
            self.ln_one_minus_ratio() + k as f64 * self.ln_ratio()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_and_mean_photons_round_trip() {
        let from_beta = NoiseSpec::from_beta(0.05).unwrap();
        assert!((from_beta.mean_photons() - 19.504_166_493_066).abs() < 1e-9);
        let back = NoiseSpec::from_mean_photons(from_beta.mean_photons()).unwrap();
        assert!((back.beta() - 0.05).abs() < 1e-14);
        assert!((back.ratio() - from_beta.ratio()).abs() < 1e-15);
        assert!((back.one_minus_ratio() - from_beta.one_minus_ratio()).abs() < 1e-15);
    }

    #[test]
    fn ln_2_is_one_mean_photon() {
        let noise = NoiseSpec::from_beta(std::f64::consts::LN_2).unwrap();
        assert!((noise.mean_photons() - 1.0).abs() < 1e-15);
        assert!((noise.ratio() - 0.5).abs() < 1e-16);
    }

    #[test]
    fn vacuum_noise() {
        let noise = NoiseSpec::from_mean_photons(0.0).unwrap();
        assert_eq!(noise.beta(), f64::INFINITY);
        assert_eq!(noise.ratio(), 0.0);
        assert_eq!(noise.ln_population(0), 0.0);
        assert_eq!(noise.ln_population(3), f64::NEG_INFINITY);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(NoiseSpec::from_mean_photons(-0.1).is_err());
        assert!(NoiseSpec::from_mean_photons(f64::NAN).is_err());
        assert!(NoiseSpec::from_beta(0.0).is_err());
        assert!(NoiseSpec::from_beta(-1.0).is_err());
        assert!(NoiseSpec::from_beta(f64::NAN).is_err());
    }
}

use nalgebra::DVector;
use num_complex::Complex64;

use super::density::DensityOperator;
use super::{embed_index, multi_index};
use crate::error::{domain, Error, Result};
use crate::tolerance::{DEFAULT_TAIL_EPS, UNIT_NORM};

/// Which family a ket was built from. Carried along for provenance only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KetKind {
    Number { n: u32 },
    Coherent { n_s: f64 },
    Noon { n: u32 },
    Spdc { n_s: f64 },
    MaxEntangled { d: usize },
    Custom,
}

/// How to truncate an infinitely supported state.
///
/// With `cutoff: None` the smallest cutoff whose discarded tail is below
/// `tail_eps` is used. An explicit cutoff that discards more than `tail_eps`
/// is rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    pub tail_eps: f64,
    pub cutoff: Option<usize>,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation {
            tail_eps: DEFAULT_TAIL_EPS,
            cutoff: None,
        }
    }
}

impl Truncation {
    pub fn auto(tail_eps: f64) -> Self {
        Truncation {
            tail_eps,
            cutoff: None,
        }
    }

    pub fn fixed(cutoff: usize, tail_eps: f64) -> Self {
        Truncation {
            tail_eps,
            cutoff: Some(cutoff),
        }
    }

    fn validated(self) -> Result<Self> {
        if !(self.tail_eps > 0.0) {
            return Err(domain("tail_eps", self.tail_eps, "> 0"));
        }
        Ok(self)
    }

    fn resolve(&self, required: usize, tail_at: impl Fn(usize) -> f64) -> Result<(usize, f64)> {
        let cutoff = self.cutoff.unwrap_or(required);
        let tail = tail_at(cutoff);
        if cutoff < required {
            return Err(Error::Truncation {
                cutoff,
                tail,
                tail_eps: self.tail_eps,
                required,
            });
        }
        Ok((cutoff, tail))
    }
}

/// Complex amplitudes over a truncated product Fock (or qudit) basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockKet {
    amplitudes: DVector<Complex64>,
    dims: Vec<usize>,
    norm_deficit: f64,
    kind: KetKind,
}

impl FockKet {
    /// A ket from explicit amplitudes; must be normalized to within `1e-12`.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>, dims: Vec<usize>) -> Result<Self> {
        let dim: usize = dims.iter().product();
        if dims.is_empty() || dim != amplitudes.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for dims {:?}",
                amplitudes.len(),
                dims
            )));
        }
        let ket = FockKet {
            amplitudes: DVector::from_vec(amplitudes),
            dims,
            norm_deficit: 0.0,
            kind: KetKind::Custom,
        };
        if (ket.norm_sqr() - 1.0).abs() > UNIT_NORM {
            return Err(Error::InvalidState(format!(
                "ket has squared norm {}",
                ket.norm_sqr()
            )));
        }
        Ok(ket)
    }

    pub(crate) fn from_parts(
        amplitudes: DVector<Complex64>,
        dims: Vec<usize>,
        norm_deficit: f64,
        kind: KetKind,
    ) -> Self {
        debug_assert_eq!(amplitudes.len(), dims.iter().product::<usize>());
        FockKet {
            amplitudes,
            dims,
            norm_deficit,
            kind,
        }
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Per-mode maximum occupation, `dims - 1`.
    pub fn cutoffs(&self) -> Vec<usize> {
        self.dims.iter().map(|d| d - 1).collect()
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn kind(&self) -> KetKind {
        self.kind
    }

    pub fn norm_deficit(&self) -> f64 {
        self.norm_deficit
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Amplitude of the basis state with the given per-mode occupations.
    pub fn amplitude(&self, occupations: &[usize]) -> Complex64 {
        self.amplitudes[super::flat_index(&self.dims, occupations)]
    }

    /// Highest level of `mode` carrying a nonzero amplitude.
    pub fn max_occupied(&self, mode: usize) -> Option<usize> {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() > 0.0)
            .map(|(i, _)| multi_index(&self.dims, i)[mode])
            .max()
    }

    /// `<a†a>` on one mode.
    pub fn mean_photons(&self, mode: usize) -> f64 {
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(i, a)| a.norm_sqr() * multi_index(&self.dims, i)[mode] as f64)
            .sum()
    }

    /// Re-embed into a basis with the given per-mode dimensions. Growing a
    /// mode zero-pads; shrinking it is allowed only over zero amplitudes.
    pub fn resized(&self, dims: &[usize]) -> Result<FockKet> {
        if dims.len() != self.dims.len() {
            return Err(Error::DimensionMismatch(format!(
                "cannot resize a {}-mode ket to dims {:?}",
                self.dims.len(),
                dims
            )));
        }
        let mut amplitudes = DVector::zeros(dims.iter().product());
        for (i, a) in self.amplitudes.iter().enumerate() {
            let multi = multi_index(&self.dims, i);
            if multi.iter().zip(dims).any(|(&k, &d)| k >= d) {
                if a.norm_sqr() > 0.0 {
                    return Err(Error::DimensionMismatch(format!(
                        "occupation {:?} does not fit in dims {:?}",
                        multi, dims
                    )));
                }
                continue;
            }
            amplitudes[embed_index(&self.dims, dims, i)] = *a;
        }
        Ok(FockKet {
            amplitudes,
            dims: dims.to_vec(),
            norm_deficit: self.norm_deficit,
            kind: self.kind,
        })
    }

    /// Keep only the listed levels of `mode`, relabelled `0..levels.len()`.
    ///
    /// Used to store a N00N idler in its two-level support `{|0>, |2n>}`;
    /// fails if a discarded level carries amplitude.
    pub fn restrict_mode(&self, mode: usize, levels: &[usize]) -> Result<FockKet> {
        if mode >= self.dims.len() {
            return Err(Error::Subsystem {
                index: mode,
                count: self.dims.len(),
            });
        }
        if let Some(&bad) = levels.iter().find(|&&l| l >= self.dims[mode]) {
            return Err(Error::DimensionMismatch(format!(
                "level {bad} outside mode of dimension {}",
                self.dims[mode]
            )));
        }
        let mut dims = self.dims.clone();
        dims[mode] = levels.len();
        let mut amplitudes = DVector::zeros(dims.iter().product());
        for (i, a) in self.amplitudes.iter().enumerate() {
            let mut multi = multi_index(&self.dims, i);
            match levels.iter().position(|&l| l == multi[mode]) {
                Some(pos) => {
                    multi[mode] = pos;
                    amplitudes[super::flat_index(&dims, &multi)] = *a;
                }
                None if a.norm_sqr() > 0.0 => {
                    return Err(Error::InvalidState(format!(
                        "level {} of mode {mode} is occupied",
                        multi[mode]
                    )))
                }
                None => {}
            }
        }
        Ok(FockKet {
            amplitudes,
            dims,
            norm_deficit: self.norm_deficit,
            kind: self.kind,
        })
    }

    /// `|psi><psi|`, keeping the (unnormalized) truncated norm as its trace.
    pub fn projector(&self) -> DensityOperator {
        DensityOperator::from_ket(self)
    }
}

/// Photon-number state `|n>` in a basis truncated at `cutoff`.
pub fn number_ket(n: u32, cutoff: usize) -> Result<FockKet> {
    if (n as usize) > cutoff {
        return Err(domain("cutoff", cutoff as f64, ">= n"));
    }
    let mut amplitudes = DVector::zeros(cutoff + 1);
    amplitudes[n as usize] = Complex64::new(1.0, 0.0);
    Ok(FockKet::from_parts(
        amplitudes,
        vec![cutoff + 1],
        0.0,
        KetKind::Number { n },
    ))
}

/// Coherent state with real amplitude `alpha = √N_S`.
pub fn coherent_ket(n_s: f64, truncation: Truncation) -> Result<FockKet> {
    if !(n_s >= 0.0 && n_s.is_finite()) {
        return Err(domain("N_S", n_s, "finite and >= 0"));
    }
    let truncation = truncation.validated()?;
    let ln_n_s = n_s.ln();
    let ln_stop = truncation.tail_eps.ln() - 40.0;

    // Poisson log-probabilities out to where the remaining mass is far below
    // tail_eps, then tails summed from the top down.
    let mut ln_p = vec![-n_s];
    loop {
        let l = ln_p.len();
        let next = ln_p[l - 1] + ln_n_s - (l as f64).ln();
        ln_p.push(next);
        let past_peak = l as f64 > n_s;
        let long_enough = truncation.cutoff.is_none_or(|c| l > c);
        if past_peak && next < ln_stop && long_enough {
            break;
        }
    }
    let mut tails = vec![0.0; ln_p.len() + 1];
    for l in (0..ln_p.len()).rev() {
        tails[l] = tails[l + 1] + ln_p[l].exp();
    }
    // tail(K) = mass above level K
    let tail_at = |k: usize| tails[(k + 1).min(tails.len() - 1)];
    let required = (0..ln_p.len())
        .find(|&k| tail_at(k) < truncation.tail_eps)
        .unwrap_or(ln_p.len() - 1);
    let (cutoff, tail) = truncation.resolve(required, tail_at)?;

    let amplitudes = DVector::from_fn(cutoff + 1, |l, _| {
        Complex64::new((0.5 * ln_p[l]).exp(), 0.0)
    });
    Ok(FockKet::from_parts(
        amplitudes,
        vec![cutoff + 1],
        tail,
        KetKind::Coherent { n_s },
    ))
}

/// `(|2n, 0> + |0, 2n>)/√2` over a `(2n+1) x (2n+1)` basis.
pub fn noon_ket(n: u32) -> Result<FockKet> {
    if n == 0 {
        return Err(domain("n", 0.0, ">= 1 (n = 0 is the two-mode vacuum)"));
    }
    let dim = 2 * n as usize + 1;
    let mut amplitudes = DVector::zeros(dim * dim);
    let amp = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amplitudes[(dim - 1) * dim] = amp;
    amplitudes[dim - 1] = amp;
    Ok(FockKet::from_parts(
        amplitudes,
        vec![dim, dim],
        0.0,
        KetKind::Noon { n },
    ))
}

/// Smallest `K` with `ratio^(K+1) < tail_eps`, for a geometric distribution
/// given by `ln ratio`.
pub(crate) fn geometric_cutoff(ln_ratio: f64, tail_eps: f64) -> usize {
    if ln_ratio == f64::NEG_INFINITY {
        return 0;
    }
    let ln_eps = tail_eps.ln();
    if ln_eps >= 0.0 {
        return 0;
    }
    let mut k = ((ln_eps / ln_ratio).ceil() - 1.0).max(0.0) as usize;
    while (k + 1) as f64 * ln_ratio >= ln_eps {
        k += 1;
    }
    while k > 0 && k as f64 * ln_ratio < ln_eps {
        k -= 1;
    }
    k
}

/// Two-mode squeezed vacuum `Σ √(N_S^k / (N_S+1)^(k+1)) |k, k>`.
pub fn spdc_ket(n_s: f64, truncation: Truncation) -> Result<FockKet> {
    if !(n_s >= 0.0 && n_s.is_finite()) {
        return Err(domain("N_S", n_s, "finite and >= 0"));
    }
    let truncation = truncation.validated()?;
    let ln_q = -(1.0 / n_s).ln_1p();
    let ln_vacuum = -n_s.ln_1p();
    let tail_at = |k: usize| {
        if ln_q == f64::NEG_INFINITY {
            0.0
        } else {
            ((k + 1) as f64 * ln_q).exp()
        }
    };
    let required = geometric_cutoff(ln_q, truncation.tail_eps);
    let (cutoff, tail) = truncation.resolve(required, tail_at)?;

    let dim = cutoff + 1;
    let mut amplitudes = DVector::zeros(dim * dim);
    for k in 0..dim {
        let ln_p = if k == 0 {
            ln_vacuum
        } else {
            ln_vacuum + k as f64 * ln_q
        };
        amplitudes[k * dim + k] = Complex64::new((0.5 * ln_p).exp(), 0.0);
    }
    Ok(FockKet::from_parts(
        amplitudes,
        vec![dim, dim],
        tail,
        KetKind::Spdc { n_s },
    ))
}

/// `Σ_k |k, k> / √d` on two qudits.
pub fn maximally_entangled_qudit(d: usize) -> Result<FockKet> {
    if d < 2 {
        return Err(domain("d", d as f64, ">= 2"));
    }
    let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut amplitudes = DVector::zeros(d * d);
    for k in 0..d {
        amplitudes[k * d + k] = amp;
    }
    Ok(FockKet::from_parts(
        amplitudes,
        vec![d, d],
        0.0,
        KetKind::MaxEntangled { d },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coherent_vacuum() {
        let ket = coherent_ket(0.0, Truncation::default()).unwrap();
        assert_eq!(ket.dims(), &[1]);
        assert_eq!(ket.amplitude(&[0]).re, 1.0);
        assert_eq!(ket.norm_deficit(), 0.0);
    }

    #[test]
    fn coherent_vacuum_amplitude() {
        let ket = coherent_ket(1.0, Truncation::fixed(40, 1e-12)).unwrap();
        assert!((ket.amplitude(&[0]).re - (-0.5f64).exp()).abs() < 1e-16);
        assert!((ket.amplitude(&[0]).re - 0.60653).abs() < 1e-5);
        assert_eq!(ket.cutoffs(), vec![40]);
    }

    #[test]
    fn coherent_norm_matches_tail() {
        for n_s in [0.1, 0.5, 1.0, 2.0, 7.5] {
            let ket = coherent_ket(n_s, Truncation::default()).unwrap();
            assert!(ket.norm_deficit() < 1e-12);
            assert!((ket.norm_sqr() + ket.norm_deficit() - 1.0).abs() < 1e-14);
            // one level fewer must break the tolerance
            let k = ket.cutoffs()[0];
            assert!(coherent_ket(n_s, Truncation::fixed(k - 1, 1e-12)).is_err());
            assert!((ket.mean_photons(0) - n_s).abs() < 1e-10);
        }
    }

    #[test]
    fn coherent_truncation_error_reports_required_cutoff() {
        let auto = coherent_ket(2.0, Truncation::default()).unwrap();
        match coherent_ket(2.0, Truncation::fixed(3, 1e-12)) {
            Err(Error::Truncation { required, .. }) => assert_eq!(required, auto.cutoffs()[0]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn noon_structure() {
        let ket = noon_ket(1).unwrap();
        assert_eq!(ket.dims(), &[3, 3]);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(ket.amplitude(&[2, 0]).re, h);
        assert_eq!(ket.amplitude(&[0, 2]).re, h);
        assert_eq!(ket.amplitude(&[1, 1]).re, 0.0);
        for n in 1..6 {
            let ket = noon_ket(n).unwrap();
            assert!((ket.mean_photons(0) - n as f64).abs() < 1e-14);
            assert!((ket.mean_photons(1) - n as f64).abs() < 1e-14);
            assert_eq!(ket.norm_deficit(), 0.0);
        }
        assert!(noon_ket(0).is_err());
    }

    #[test]
    fn spdc_single_term() {
        let ket = spdc_ket(1.0, Truncation::fixed(0, 1.0)).unwrap();
        assert_eq!(ket.dim(), 1);
        assert!((ket.amplitude(&[0, 0]).re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-16);
        assert_eq!(ket.norm_deficit(), 0.5);
    }

    #[test]
    fn spdc_vacuum_and_tail() {
        let vac = spdc_ket(0.0, Truncation::default()).unwrap();
        assert_eq!(vac.dims(), &[1, 1]);
        assert_eq!(vac.amplitude(&[0, 0]).re, 1.0);

        let ket = spdc_ket(1.0, Truncation::default()).unwrap();
        let k = ket.cutoffs()[0];
        assert!(ket.norm_deficit() < 1e-12);
        assert!(0.5f64.powi(k as i32) >= 1e-12);
        assert!((ket.norm_sqr() + ket.norm_deficit() - 1.0).abs() < 1e-14);
        assert!(spdc_ket(1.0, Truncation::fixed(k - 1, 1e-12)).is_err());
    }

    #[test]
    fn geometric_cutoff_is_minimal() {
        for ratio in [0.1, 0.5, 0.9, 0.99] {
            let ln_q = f64::ln(ratio);
            let k = geometric_cutoff(ln_q, 1e-12);
            assert!(ratio.powi(k as i32 + 1) < 1e-12);
            assert!(k == 0 || ratio.powi(k as i32) >= 1e-12);
        }
    }

    #[test]
    fn maximally_entangled() {
        let ket = maximally_entangled_qudit(2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((ket.amplitude(&[0, 0]).re - h).abs() < 1e-15);
        assert!((ket.amplitude(&[1, 1]).re - h).abs() < 1e-15);
        assert_eq!(ket.amplitude(&[0, 1]).re, 0.0);
        for d in 2..7 {
            assert!((maximally_entangled_qudit(d).unwrap().norm_sqr() - 1.0).abs() < 1e-15);
        }
        assert!(maximally_entangled_qudit(1).is_err());
    }

    #[test]
    fn resize_and_restrict() {
        let ket = noon_ket(2).unwrap();
        let big = ket.resized(&[9, 5]).unwrap();
        assert_eq!(big.amplitude(&[4, 0]), ket.amplitude(&[4, 0]));
        assert!(ket.resized(&[3, 5]).is_err());

        let compact = ket.restrict_mode(1, &[0, 4]).unwrap();
        assert_eq!(compact.dims(), &[5, 2]);
        assert_eq!(compact.amplitude(&[0, 1]), ket.amplitude(&[0, 4]));
        assert!((compact.norm_sqr() - 1.0).abs() < 1e-15);
        assert!(ket.restrict_mode(1, &[0, 1]).is_err());
    }

    #[test]
    fn from_amplitudes_rejects_non_unit() {
        let amps = vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
        assert!(FockKet::from_amplitudes(amps, vec![2]).is_err());
    }
}

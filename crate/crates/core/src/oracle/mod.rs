//! Brute-force evaluation of error probabilities and bounds directly from the
//! density operators of a [`HypothesisPair`].
//!
//! Nothing here uses a closed form; these routines are the reference the
//! analytic expressions are checked against.

mod kernel;
mod minimize;

use std::f64::consts::LN_2;

use crate::channels::HypothesisPair;
use crate::error::{domain, Error, Result};
use crate::fock::{matrix_power, tensor_power, trace_norm};
use crate::tolerance::{DENSE_DIM_LIMIT, IMAGINARY_RESIDUE, OVERLAP_CLAMP_LOG};
use crate::Probability;

pub(crate) use kernel::OverlapKernel;
pub use minimize::{minimize_unit_interval, Diagnostics, MinimizerConfig, Minimum};

/// Above this dimension `q_s` is evaluated through the eigenpair kernel
/// rather than by multiplying the two matrix powers.
const DIRECT_PRODUCT_LIMIT: usize = 256;

/// Cap on the number of composition classes summed by the diagonal Helstrom
/// path.
const COMPOSITION_LIMIT: f64 = 2.0e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Exact,
    ChernoffUpper,
    BhattacharyyaLower,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundResult {
    pub probability: Probability,
    pub kind: BoundKind,
    pub copies: u32,
    /// Minimizing `s`, for Chernoff bounds.
    pub s_star: Option<f64>,
    /// Per-subsystem maximum occupation of the basis the pair lives in.
    pub cutoffs: Vec<usize>,
    pub diagnostics: Option<Diagnostics>,
}

impl BoundResult {
    pub fn value(&self) -> f64 {
        self.probability.value()
    }

    pub fn log10(&self) -> f64 {
        self.probability.log10()
    }
}

fn check_copies(copies: u32) -> Result<()> {
    if copies == 0 {
        return Err(domain("M", 0.0, ">= 1"));
    }
    Ok(())
}

/// Minimum error probability `½(1 - ½‖rho0^⊗M - rho1^⊗M‖₁)`.
///
/// When both operators are diagonal the M-copy distributions are compared
/// class by class (copies with equal occupation counts share a probability),
/// giving `½ Σ_x min(P(x), Q(x))` without building the tensor power. Any
/// other pair is expanded densely, subject to `dim^M <= 4096`.
pub fn helstrom_error(pair: &HypothesisPair, copies: u32) -> Result<BoundResult> {
    check_copies(copies)?;
    let (rho0, rho1) = (pair.rho0(), pair.rho1());
    let classical = match (rho0.diagonal(), rho1.diagonal()) {
        (Some(p), Some(q)) => classical_error(&p, &q, copies),
        _ => None,
    };
    let probability = match classical {
        Some(p) => p,
        None => {
            let dim = pair.rho0().dim();
            let total = (dim as u128).checked_pow(copies).unwrap_or(u128::MAX);
            if total > DENSE_DIM_LIMIT as u128 {
                return Err(Error::Size {
                    dim: total.min(usize::MAX as u128) as usize,
                    limit: DENSE_DIM_LIMIT,
                });
            }
            let a = tensor_power(rho0, copies)?.to_matrix()?;
            let b = tensor_power(rho1, copies)?.to_matrix()?;
            let norm = trace_norm(&(a - b))?;
            let traces =
                0.5 * (rho0.trace().powi(copies as i32) + rho1.trace().powi(copies as i32));
            // equals ½(1 - ½‖Δ‖₁) at unit trace; on truncated pairs this is
            // ½ Tr min(A, B) and never counts missing mass as error
            Probability::new((0.5 * (traces - 0.5 * norm)).clamp(0.0, 0.5))
        }
    };
    Ok(BoundResult {
        probability,
        kind: BoundKind::Exact,
        copies,
        s_star: None,
        cutoffs: pair.cutoffs(),
        diagnostics: None,
    })
}

/// `½ Σ_x min(P(x), Q(x))` over M-fold product distributions, or `None` if
/// there are too many occupation classes to enumerate.
fn classical_error(p: &[f64], q: &[f64], copies: u32) -> Option<Probability> {
    let support: Vec<(f64, f64)> = p
        .iter()
        .zip(q)
        .filter(|(&a, &b)| a > 0.0 && b > 0.0)
        .map(|(&a, &b)| (a.ln(), b.ln()))
        .collect();
    if support.is_empty() {
        return Some(Probability::ZERO);
    }
    // number of compositions of M into |support| parts
    let k = support.len() - 1;
    let mut classes = 1.0f64;
    for i in 1..=k.min(copies as usize) {
        classes *= (copies as usize + k - i + 1) as f64 / i as f64;
        if classes > COMPOSITION_LIMIT {
            return None;
        }
    }
    let m = copies as usize;
    let mut ln_factorial = vec![0.0f64; m + 1];
    for i in 1..=m {
        ln_factorial[i] = ln_factorial[i - 1] + (i as f64).ln();
    }
    let mut terms = Vec::new();
    collect_classes(
        &support,
        0,
        m,
        ClassSum {
            ln_p: 0.0,
            ln_q: 0.0,
            ln_multinomial: ln_factorial[m],
        },
        &ln_factorial,
        &mut terms,
    );
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = terms.iter().map(|t| (t - max).exp()).sum();
    Some(Probability::from_ln(max + sum.ln() - LN_2))
}

#[derive(Clone, Copy)]
struct ClassSum {
    ln_p: f64,
    ln_q: f64,
    ln_multinomial: f64,
}

fn collect_classes(
    support: &[(f64, f64)],
    index: usize,
    remaining: usize,
    acc: ClassSum,
    ln_factorial: &[f64],
    out: &mut Vec<f64>,
) {
    let (ln_a, ln_b) = support[index];
    let take = |c: usize| ClassSum {
        ln_p: acc.ln_p + c as f64 * ln_a,
        ln_q: acc.ln_q + c as f64 * ln_b,
        ln_multinomial: acc.ln_multinomial - ln_factorial[c],
    };
    if index + 1 == support.len() {
        let last = take(remaining);
        out.push(last.ln_multinomial + last.ln_p.min(last.ln_q));
        return;
    }
    for c in 0..=remaining {
        collect_classes(
            support,
            index + 1,
            remaining - c,
            take(c),
            ln_factorial,
            out,
        );
    }
}

/// `Tr[rho0^s rho1^(1-s)]`.
pub fn q_s(pair: &HypothesisPair, s: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&s) {
        return Err(domain("s", s, "in [0, 1]"));
    }
    if pair.rho0().dim() <= DIRECT_PRODUCT_LIMIT {
        let a = matrix_power(pair.rho0(), s)?;
        let b = matrix_power(pair.rho1(), 1.0 - s)?;
        let trace = a.component_mul(&b.transpose()).sum();
        if trace.im.abs() > IMAGINARY_RESIDUE {
            return Err(Error::InvalidState(format!(
                "Tr[rho0^s rho1^(1-s)] has imaginary part {:e} at s = {s}",
                trace.im
            )));
        }
        return Ok(trace.re);
    }
    Ok(OverlapKernel::new(pair.rho0(), pair.rho1())?.eval(s))
}

/// Minimum of `q_s` over `s ∈ [0, 1]`, reusable for any number of copies.
#[derive(Debug, Clone, PartialEq)]
pub struct ChernoffMinimum {
    pub s_star: f64,
    pub q_min: f64,
    pub diagnostics: Diagnostics,
    pub cutoffs: Vec<usize>,
}

impl ChernoffMinimum {
    /// `½ q_min^M`.
    pub fn bound(&self, copies: u32) -> Result<BoundResult> {
        check_copies(copies)?;
        Ok(BoundResult {
            probability: Probability::half_power(self.q_min.clamp(0.0, 1.0).ln(), copies),
            kind: BoundKind::ChernoffUpper,
            copies,
            s_star: Some(self.s_star),
            cutoffs: self.cutoffs.clone(),
            diagnostics: Some(self.diagnostics),
        })
    }

    /// Error exponent `-ln q_min`.
    pub fn exponent(&self) -> f64 {
        -self.q_min.ln()
    }
}

pub fn chernoff_minimum(
    pair: &HypothesisPair,
    config: &MinimizerConfig,
) -> Result<ChernoffMinimum> {
    let kernel = OverlapKernel::new(pair.rho0(), pair.rho1())?;
    let minimum = minimize_unit_interval(|s| kernel.eval(s), config)?;
    Ok(ChernoffMinimum {
        s_star: minimum.argmin,
        q_min: minimum.value,
        diagnostics: minimum.diagnostics,
        cutoffs: pair.cutoffs(),
    })
}

/// Quantum Chernoff bound `½ (min_s Tr[rho0^s rho1^(1-s)])^M`.
pub fn chernoff_bound(
    pair: &HypothesisPair,
    copies: u32,
    config: &MinimizerConfig,
) -> Result<BoundResult> {
    check_copies(copies)?;
    chernoff_minimum(pair, config)?.bound(copies)
}

/// `Tr[rho0^½ rho1^½]`, clamped into `[0, 1]`.
pub fn bhattacharyya_overlap(pair: &HypothesisPair) -> Result<f64> {
    let overlap = OverlapKernel::new(pair.rho0(), pair.rho1())?.eval(0.5);
    if !(-OVERLAP_CLAMP_LOG..=1.0 + OVERLAP_CLAMP_LOG).contains(&overlap) {
        log::warn!("Bhattacharyya overlap {overlap} clamped into [0, 1]");
    }
    Ok(overlap.clamp(0.0, 1.0))
}

/// Lower bound `½(1 - √(1 - F^{2M}))` with `F = Tr[rho0^½ rho1^½]`.
pub fn bhattacharyya_lower(pair: &HypothesisPair, copies: u32) -> Result<BoundResult> {
    check_copies(copies)?;
    let overlap = bhattacharyya_overlap(pair)?;
    Ok(BoundResult {
        probability: Probability::half_one_minus_sqrt(2.0 * copies as f64 * overlap.ln()),
        kind: BoundKind::BhattacharyyaLower,
        copies,
        s_star: None,
        cutoffs: pair.cutoffs(),
        diagnostics: None,
    })
}

/// Exact M-copy error for two pure states with `|<psi0|psi1>|² = overlap_sq`.
pub fn pure_pure_error(overlap_sq: f64, copies: u32) -> Result<Probability> {
    check_copies(copies)?;
    if !(0.0..=1.0).contains(&overlap_sq) {
        return Err(domain("overlap_sq", overlap_sq, "in [0, 1]"));
    }
    Ok(Probability::half_one_minus_sqrt(
        copies as f64 * overlap_sq.ln(),
    ))
}

/// Largest violation of convexity of `ln q_s` on a uniform grid, as
/// `max(0, -(l[i-1] - 2 l[i] + l[i+1]))`. Grid points where `q_s = 0` are
/// skipped.
pub fn log_overlap_convexity(pair: &HypothesisPair, grid_points: usize) -> Result<f64> {
    if grid_points < 3 {
        return Err(domain("grid_points", grid_points as f64, ">= 3"));
    }
    let kernel = OverlapKernel::new(pair.rho0(), pair.rho1())?;
    let last = (grid_points - 1) as f64;
    let logs: Vec<f64> = (0..grid_points)
        .map(|i| kernel.eval(i as f64 / last).ln())
        .collect();
    let worst = logs
        .windows(3)
        .filter(|w| w.iter().all(|l| l.is_finite()))
        .map(|w| -(w[0] - 2.0 * w[1] + w[2]))
        .fold(0.0, f64::max);
    Ok(worst)
}

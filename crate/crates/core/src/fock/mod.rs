//! Truncated Fock-space states and the linear algebra used on them.
//!
//! Operators are indexed row-major over their subsystems: for a two-mode
//! operator with dims `[d_S, d_I]` the basis state `|k_S, k_I>` sits at
//! `k_S * d_I + k_I`. Truncated states never get renormalized. The mass lost
//! beyond the cutoff is recorded as `norm_deficit` (kets) or `trace_deficit`
//! (operators).

mod density;
mod ket;
mod ops;
mod spectral;
mod states;

pub use density::DensityOperator;
pub use ket::{
    coherent_ket, maximally_entangled_qudit, noon_ket, number_ket, spdc_ket, FockKet, KetKind,
    Truncation,
};
pub use ops::{partial_trace, tensor, tensor_power};
pub use spectral::{matrix_power, power_eigenvalue, trace_norm, Spectrum};
pub use states::{
    maximally_mixed, random_density_operator, thermal_cutoff, thermal_state, werner_is_entangled,
    werner_state,
};

pub use num_complex::Complex64;

pub(crate) fn flat_index(dims: &[usize], multi: &[usize]) -> usize {
    dims.iter()
        .zip(multi)
        .fold(0, |acc, (&dim, &k)| acc * dim + k)
}

pub(crate) fn multi_index(dims: &[usize], mut flat: usize) -> Vec<usize> {
    let mut multi = vec![0; dims.len()];
    for (slot, &dim) in multi.iter_mut().zip(dims).rev() {
        *slot = flat % dim;
        flat /= dim;
    }
    multi
}

/// Position of a basis state after zero-padding each subsystem to `to`.
pub(crate) fn embed_index(from: &[usize], to: &[usize], flat: usize) -> usize {
    flat_index(to, &multi_index(from, flat))
}

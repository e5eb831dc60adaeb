//! Numerical thresholds shared across the crate.

/// Default probability mass allowed outside a truncated Fock basis.
pub const DEFAULT_TAIL_EPS: f64 = 1e-12;

/// Largest entrywise `|H - H†|` accepted for a Hermitian operator.
pub const HERMITICITY: f64 = 1e-12;

/// Eigenvalues in `[-EIGEN_CLAMP, 0)` are clamped to zero; anything more
/// negative is an invalid state. For spectra obtained from the dense
/// eigensolver, `|lambda| <= EIGEN_CLAMP` is treated as the numerical null
/// space. The same value is the support threshold used for `rho^0`.
pub const EIGEN_CLAMP: f64 = 1e-12;

/// Memory guard on dense operator dimension (and on `dim^M` for exact
/// many-copy Helstrom evaluation).
pub const DENSE_DIM_LIMIT: usize = 4096;

/// Largest imaginary part tolerated in `Tr[rho0^s rho1^(1-s)]`.
pub const IMAGINARY_RESIDUE: f64 = 1e-10;

/// Overlaps outside `[0, 1]` by more than this are logged when clamped.
pub const OVERLAP_CLAMP_LOG: f64 = 1e-10;

/// Acceptable deviation of a ket's squared norm from one before it counts as
/// non-normalized.
pub const UNIT_NORM: f64 = 1e-12;

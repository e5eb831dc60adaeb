use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::ket::FockKet;
use super::spectral::Spectrum;
use super::{embed_index, multi_index};
use crate::error::{Error, Result};
use crate::tolerance::{DEFAULT_TAIL_EPS, DENSE_DIM_LIMIT, EIGEN_CLAMP, HERMITICITY};

/// Storage for a density operator.
///
/// Thermal states and their products are diagonal and pure inputs are rank
/// one; keeping those shapes lets the oracle handle two-mode spaces of
/// several thousand dimensions without ever forming a dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Repr {
    Diagonal(Vec<f64>),
    /// `|psi><psi|`, with the ket unnormalized when truncated.
    Pure(DVector<Complex64>),
    Dense(DMatrix<Complex64>),
}

/// Hermitian, positive semidefinite operator of trace at most one over a
/// truncated product basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    repr: Repr,
    dims: Vec<usize>,
    trace_deficit: f64,
}

impl DensityOperator {
    /// Validate and wrap a dense matrix. The trace must lie in
    /// `[1 - 1e-12, 1 + 1e-12]`.
    pub fn from_matrix(matrix: DMatrix<Complex64>, dims: Vec<usize>) -> Result<Self> {
        let dim: usize = dims.iter().product();
        if !matrix.is_square() || matrix.nrows() != dim || dims.is_empty() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for dims {:?}",
                matrix.nrows(),
                matrix.ncols(),
                dims
            )));
        }
        let deviation = hermiticity_deviation(&matrix);
        if deviation > HERMITICITY {
            return Err(Error::InvalidState(format!(
                "operator is not Hermitian (max |H - H†| = {deviation:e})"
            )));
        }
        let rho = DensityOperator::from_parts(Repr::Dense(matrix), dims, 0.0);
        let trace = rho.trace();
        if (trace - 1.0).abs() > DEFAULT_TAIL_EPS {
            return Err(Error::InvalidState(format!("trace {trace} is not 1")));
        }
        // fails on eigenvalues below -EIGEN_CLAMP
        rho.spectrum()?;
        Ok(DensityOperator {
            trace_deficit: (1.0 - trace).max(0.0),
            ..rho
        })
    }

    /// A diagonal operator; entries must be non-negative with unit sum.
    pub fn from_diagonal(diagonal: Vec<f64>, dims: Vec<usize>) -> Result<Self> {
        let dim: usize = dims.iter().product();
        if diagonal.len() != dim || dims.is_empty() {
            return Err(Error::DimensionMismatch(format!(
                "{} diagonal entries for dims {:?}",
                diagonal.len(),
                dims
            )));
        }
        if let Some(bad) = diagonal.iter().find(|&&p| !(p >= 0.0)) {
            return Err(Error::InvalidState(format!("negative population {bad}")));
        }
        let trace: f64 = diagonal.iter().sum();
        if (trace - 1.0).abs() > DEFAULT_TAIL_EPS {
            return Err(Error::InvalidState(format!("trace {trace} is not 1")));
        }
        Ok(DensityOperator::from_parts(
            Repr::Diagonal(diagonal),
            dims,
            (1.0 - trace).max(0.0),
        ))
    }

    pub(crate) fn from_ket(ket: &FockKet) -> Self {
        DensityOperator::from_parts(
            Repr::Pure(ket.amplitudes().clone()),
            ket.dims().to_vec(),
            ket.norm_deficit(),
        )
    }

    pub(crate) fn from_parts(repr: Repr, dims: Vec<usize>, trace_deficit: f64) -> Self {
        let repr = match repr {
            Repr::Dense(m) if is_exactly_diagonal(&m) => {
                Repr::Diagonal(m.diagonal().iter().map(|z| z.re).collect())
            }
            other => other,
        };
        DensityOperator {
            repr,
            dims,
            trace_deficit,
        }
    }

    pub(crate) fn repr(&self) -> &Repr {
        &self.repr
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Trace missing because of truncation (never renormalized away).
    pub fn trace_deficit(&self) -> f64 {
        self.trace_deficit
    }

    pub fn trace(&self) -> f64 {
        match &self.repr {
            Repr::Diagonal(d) => d.iter().sum(),
            Repr::Pure(psi) => psi.iter().map(|a| a.norm_sqr()).sum(),
            Repr::Dense(m) => m.diagonal().iter().map(|z| z.re).sum(),
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        match &self.repr {
            Repr::Diagonal(d) if row == col => Complex64::new(d[row], 0.0),
            Repr::Diagonal(_) => Complex64::new(0.0, 0.0),
            Repr::Pure(psi) => psi[row] * psi[col].conj(),
            Repr::Dense(m) => m[(row, col)],
        }
    }

    /// The computational-basis diagonal, if the operator is diagonal.
    pub fn diagonal(&self) -> Option<Vec<f64>> {
        match &self.repr {
            Repr::Diagonal(d) => Some(d.clone()),
            Repr::Pure(psi) => {
                let mut support = psi.iter().enumerate().filter(|(_, a)| a.norm_sqr() > 0.0);
                match (support.next(), support.next()) {
                    (Some((i, a)), None) => {
                        let mut d = vec![0.0; psi.len()];
                        d[i] = a.norm_sqr();
                        Some(d)
                    }
                    (None, _) => Some(vec![0.0; psi.len()]),
                    _ => None,
                }
            }
            Repr::Dense(_) => None,
        }
    }

    /// The ket `psi` if the operator was built as `|psi><psi|`.
    pub fn pure_ket(&self) -> Option<&DVector<Complex64>> {
        match &self.repr {
            Repr::Pure(psi) => Some(psi),
            _ => None,
        }
    }

    /// `<psi| rho |psi>` for an arbitrary vector.
    pub fn expectation(&self, psi: &DVector<Complex64>) -> Result<f64> {
        if psi.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against operator of dimension {}",
                psi.len(),
                self.dim()
            )));
        }
        Ok(match &self.repr {
            Repr::Diagonal(d) => d
                .iter()
                .zip(psi.iter())
                .map(|(p, a)| p * a.norm_sqr())
                .sum(),
            Repr::Pure(phi) => phi.dotc(psi).norm_sqr(),
            Repr::Dense(m) => psi.dotc(&(m * psi)).re,
        })
    }

    /// Dense copy of the matrix, subject to the memory guard.
    pub fn to_matrix(&self) -> Result<DMatrix<Complex64>> {
        let dim = self.dim();
        if dim > DENSE_DIM_LIMIT {
            return Err(Error::Size {
                dim,
                limit: DENSE_DIM_LIMIT,
            });
        }
        Ok(match &self.repr {
            Repr::Diagonal(d) => {
                DMatrix::from_diagonal(&DVector::from_fn(dim, |i, _| Complex64::new(d[i], 0.0)))
            }
            Repr::Pure(psi) => psi * psi.adjoint(),
            Repr::Dense(m) => m.clone(),
        })
    }

    /// Eigen-decomposition restricted to the support.
    pub fn spectrum(&self) -> Result<Spectrum> {
        Spectrum::of(self)
    }

    /// Zero-pad every subsystem up to `dims`.
    pub fn padded(&self, dims: &[usize]) -> Result<DensityOperator> {
        if dims.len() != self.dims.len() || dims.iter().zip(&self.dims).any(|(n, o)| n < o) {
            return Err(Error::DimensionMismatch(format!(
                "cannot pad dims {:?} to {:?}",
                self.dims, dims
            )));
        }
        if dims == self.dims.as_slice() {
            return Ok(self.clone());
        }
        let new_dim: usize = dims.iter().product();
        let map = |i: usize| embed_index(&self.dims, dims, i);
        let repr = match &self.repr {
            Repr::Diagonal(d) => {
                let mut out = vec![0.0; new_dim];
                for (i, &p) in d.iter().enumerate() {
                    out[map(i)] = p;
                }
                Repr::Diagonal(out)
            }
            Repr::Pure(psi) => {
                let mut out = DVector::zeros(new_dim);
                for (i, &a) in psi.iter().enumerate() {
                    out[map(i)] = a;
                }
                Repr::Pure(out)
            }
            Repr::Dense(m) => {
                if new_dim > DENSE_DIM_LIMIT {
                    return Err(Error::Size {
                        dim: new_dim,
                        limit: DENSE_DIM_LIMIT,
                    });
                }
                let mut out = DMatrix::zeros(new_dim, new_dim);
                for r in 0..m.nrows() {
                    for c in 0..m.ncols() {
                        out[(map(r), map(c))] = m[(r, c)];
                    }
                }
                Repr::Dense(out)
            }
        };
        Ok(DensityOperator::from_parts(
            repr,
            dims.to_vec(),
            self.trace_deficit,
        ))
    }

    /// Check the density-operator invariants: Hermiticity, eigenvalues above
    /// `-1e-12`, and trace in `[1 - tail_eps, 1]`.
    pub fn check_invariants(&self, tail_eps: f64) -> Result<()> {
        if let Repr::Dense(m) = &self.repr {
            let deviation = hermiticity_deviation(m);
            if deviation > HERMITICITY {
                return Err(Error::InvalidState(format!(
                    "operator is not Hermitian (max |H - H†| = {deviation:e})"
                )));
            }
        }
        if let Repr::Diagonal(d) = &self.repr {
            if let Some(bad) = d.iter().find(|&&p| p < -EIGEN_CLAMP) {
                return Err(Error::InvalidState(format!("negative population {bad}")));
            }
        }
        if self.dim() <= DENSE_DIM_LIMIT {
            self.spectrum()?;
        }
        let trace = self.trace();
        if trace > 1.0 + HERMITICITY || trace < 1.0 - tail_eps {
            return Err(Error::InvalidState(format!(
                "trace {trace} outside [1 - {tail_eps:e}, 1]"
            )));
        }
        Ok(())
    }

    /// Largest entrywise deviation from another operator of the same shape.
    pub fn max_abs_difference(&self, other: &DensityOperator) -> Result<f64> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch(format!(
                "{:?} vs {:?}",
                self.dims, other.dims
            )));
        }
        let dim = self.dim();
        let mut worst: f64 = 0.0;
        match (&self.repr, &other.repr) {
            (Repr::Diagonal(a), Repr::Diagonal(b)) => {
                for (x, y) in a.iter().zip(b) {
                    worst = worst.max((x - y).abs());
                }
            }
            _ => {
                for r in 0..dim {
                    for c in 0..dim {
                        worst = worst.max((self.entry(r, c) - other.entry(r, c)).norm());
                    }
                }
            }
        }
        Ok(worst)
    }

    /// Occupation tuple of basis index `flat`.
    pub fn occupations(&self, flat: usize) -> Vec<usize> {
        multi_index(&self.dims, flat)
    }
}

pub(crate) fn hermiticity_deviation(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for r in 0..n {
        for c in r..n {
            worst = worst.max((m[(r, c)] - m[(c, r)].conj()).norm());
        }
    }
    worst
}

fn is_exactly_diagonal(m: &DMatrix<Complex64>) -> bool {
    let n = m.nrows();
    (0..n).all(|r| m[(r, r)].im == 0.0)
        && (0..n).all(|c| (0..n).all(|r| r == c || m[(r, c)] == Complex64::new(0.0, 0.0)))
}

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use super::density::{hermiticity_deviation, DensityOperator, Repr};
use crate::error::{domain, Error, Result};
use crate::tolerance::{DENSE_DIM_LIMIT, EIGEN_CLAMP, HERMITICITY};

/// Spectral decomposition of a density operator over its support.
#[derive(Debug, Clone, PartialEq)]
pub enum Spectrum {
    /// Eigenvalues of an operator diagonal in the computational basis.
    Diagonal(Vec<f64>),
    /// Nonzero eigenvalues with orthonormal eigenvectors as columns.
    Thin {
        values: Vec<f64>,
        vectors: DMatrix<Complex64>,
    },
}

impl Spectrum {
    pub(crate) fn of(rho: &DensityOperator) -> Result<Spectrum> {
        match rho.repr() {
            Repr::Diagonal(d) => {
                let mut values = Vec::with_capacity(d.len());
                for &p in d {
                    values.push(clamp_eigenvalue(p)?);
                }
                Ok(Spectrum::Diagonal(values))
            }
            Repr::Pure(psi) => {
                let norm_sqr: f64 = psi.iter().map(|a| a.norm_sqr()).sum();
                if norm_sqr == 0.0 {
                    return Ok(Spectrum::Thin {
                        values: vec![],
                        vectors: DMatrix::zeros(psi.len(), 0),
                    });
                }
                let unit = psi / Complex64::new(norm_sqr.sqrt(), 0.0);
                Ok(Spectrum::Thin {
                    values: vec![norm_sqr],
                    vectors: DMatrix::from_columns(&[unit]),
                })
            }
            Repr::Dense(m) => {
                let eigen = SymmetricEigen::new(hermitized(m));
                let mut values = Vec::new();
                let mut columns: Vec<DVector<Complex64>> = Vec::new();
                for (i, &lambda) in eigen.eigenvalues.iter().enumerate() {
                    if lambda < -EIGEN_CLAMP {
                        return Err(Error::InvalidState(format!(
                            "negative eigenvalue {lambda:e}"
                        )));
                    }
                    // numerical null space
                    if lambda <= EIGEN_CLAMP {
                        continue;
                    }
                    values.push(lambda);
                    columns.push(eigen.eigenvectors.column(i).into_owned());
                }
                let vectors = if columns.is_empty() {
                    DMatrix::zeros(m.nrows(), 0)
                } else {
                    DMatrix::from_columns(&columns)
                };
                Ok(Spectrum::Thin { values, vectors })
            }
        }
    }

    /// Eigenvalues: the full diagonal, or the nonzero part of a thin spectrum.
    pub fn values(&self) -> &[f64] {
        match self {
            Spectrum::Diagonal(v) => v,
            Spectrum::Thin { values, .. } => values,
        }
    }

    /// Number of eigenvalues above the support threshold.
    pub fn rank(&self) -> usize {
        self.values().iter().filter(|&&v| v > EIGEN_CLAMP).count()
    }
}

fn clamp_eigenvalue(lambda: f64) -> Result<f64> {
    if lambda < -EIGEN_CLAMP || lambda.is_nan() {
        return Err(Error::InvalidState(format!(
            "negative eigenvalue {lambda:e}"
        )));
    }
    Ok(lambda.max(0.0))
}

fn hermitized(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// `lambda^s` with `0^s = 0` and `lambda^0` the support indicator
/// (`lambda > 1e-12`), so that `Tr[rho0^s rho1^(1-s)]` is continuous at both
/// endpoints.
pub fn power_eigenvalue(lambda: f64, s: f64) -> f64 {
    if lambda <= 0.0 {
        0.0
    } else if s == 0.0 {
        if lambda > EIGEN_CLAMP {
            1.0
        } else {
            0.0
        }
    } else if s == 1.0 {
        lambda
    } else {
        lambda.powf(s)
    }
}

/// `rho^s` for `s` in `[0, 1]`, via the spectral decomposition.
pub fn matrix_power(rho: &DensityOperator, s: f64) -> Result<DMatrix<Complex64>> {
    if !(0.0..=1.0).contains(&s) {
        return Err(domain("s", s, "in [0, 1]"));
    }
    let dim = rho.dim();
    if dim > DENSE_DIM_LIMIT {
        return Err(Error::Size {
            dim,
            limit: DENSE_DIM_LIMIT,
        });
    }
    Ok(match rho.spectrum()? {
        Spectrum::Diagonal(values) => DMatrix::from_diagonal(&DVector::from_fn(dim, |i, _| {
            Complex64::new(power_eigenvalue(values[i], s), 0.0)
        })),
        Spectrum::Thin { values, vectors } => {
            let mut scaled = vectors.clone();
            for (j, &lambda) in values.iter().enumerate() {
                let mut column = scaled.column_mut(j);
                column *= Complex64::new(power_eigenvalue(lambda, s), 0.0);
            }
            scaled * vectors.adjoint()
        }
    })
}

/// `‖H‖₁`, the sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm(h: &DMatrix<Complex64>) -> Result<f64> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix has no trace norm here",
            h.nrows(),
            h.ncols()
        )));
    }
    let deviation = hermiticity_deviation(h);
    if deviation > HERMITICITY {
        return Err(Error::InvalidState(format!(
            "matrix is not Hermitian (max |H - H†| = {deviation:e})"
        )));
    }
    if h.nrows() == 0 {
        return Ok(0.0);
    }
    Ok(hermitized(h)
        .symmetric_eigenvalues()
        .iter()
        .map(|l| l.abs())
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{noon_ket, thermal_state, Truncation};
    use crate::NoiseSpec;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn diag(values: &[f64]) -> DMatrix<Complex64> {
        DMatrix::from_diagonal(&DVector::from_iterator(
            values.len(),
            values.iter().map(|&v| c(v)),
        ))
    }

    #[test]
    fn power_one_is_identity_map() {
        let m = DMatrix::from_row_slice(2, 2, &[c(0.7), c(0.2), c(0.2), c(0.3)]);
        let rho = DensityOperator::from_matrix(m.clone(), vec![2]).unwrap();
        let p = matrix_power(&rho, 1.0).unwrap();
        assert!((p - m).norm() < 1e-14);
    }

    #[test]
    fn power_zero_of_projector_is_projector() {
        let rho = noon_ket(1).unwrap().projector();
        let p = matrix_power(&rho, 0.0).unwrap();
        assert!((p - rho.to_matrix().unwrap()).norm() < 1e-15);
    }

    #[test]
    fn square_root_of_thermal() {
        let rho = thermal_state(NoiseSpec::MeanPhotons(1.0), 1).unwrap();
        let p = matrix_power(&rho, 0.5).unwrap();
        assert!((p[(0, 0)].re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((p[(0, 0)].re - 0.5f64.sqrt()).abs() < 1e-16);
        assert!((p[(1, 1)].re - 0.5).abs() < 1e-16);
    }

    #[test]
    fn power_rejects_out_of_range() {
        let rho = thermal_state(NoiseSpec::MeanPhotons(1.0), 3).unwrap();
        assert!(matrix_power(&rho, 1.5).is_err());
        assert!(matrix_power(&rho, -0.1).is_err());
    }

    #[test]
    fn trace_norm_examples() {
        let rho = crate::fock::coherent_ket(0.8, Truncation::fixed(30, 1e-12))
            .unwrap()
            .projector()
            .to_matrix()
            .unwrap();
        assert!((trace_norm(&rho).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(trace_norm(&(&rho - &rho)).unwrap(), 0.0);
        assert!((trace_norm(&diag(&[0.5 - 1.0, 0.5])).unwrap() - 1.0).abs() < 1e-16);
    }

    #[test]
    fn trace_norm_rejects_non_hermitian() {
        let m = DMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(0.0), c(0.0)]);
        assert!(trace_norm(&m).is_err());
    }

    #[test]
    fn zero_power_convention() {
        assert_eq!(power_eigenvalue(0.0, 0.0), 0.0);
        assert_eq!(power_eigenvalue(0.0, 0.5), 0.0);
        assert_eq!(power_eigenvalue(0.25, 0.0), 1.0);
        assert_eq!(power_eigenvalue(1e-13, 0.0), 0.0);
        assert_eq!(power_eigenvalue(0.25, 0.5), 0.5);
    }
}

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::density::{DensityOperator, Repr};
use crate::error::{Error, Result};
use crate::tolerance::DENSE_DIM_LIMIT;

/// `a ⊗ b` with the subsystem lists concatenated.
///
/// Diagonal and pure factors stay structured; any other combination is
/// materialized and subject to the dense memory guard.
pub fn tensor(a: &DensityOperator, b: &DensityOperator) -> Result<DensityOperator> {
    let dims: Vec<usize> = a.dims().iter().chain(b.dims()).copied().collect();
    let dim = a.dim() * b.dim();
    let deficit = {
        let (da, db) = (a.trace_deficit(), b.trace_deficit());
        da + db - da * db
    };
    let repr = match (a.repr(), b.repr()) {
        (Repr::Diagonal(x), Repr::Diagonal(y)) => Repr::Diagonal(
            x.iter()
                .flat_map(|&p| y.iter().map(move |&q| p * q))
                .collect(),
        ),
        (Repr::Pure(x), Repr::Pure(y)) => Repr::Pure(x.kronecker(y)),
        _ => {
            if dim > DENSE_DIM_LIMIT {
                return Err(Error::Size {
                    dim,
                    limit: DENSE_DIM_LIMIT,
                });
            }
            Repr::Dense(a.to_matrix()?.kronecker(&b.to_matrix()?))
        }
    };
    Ok(DensityOperator::from_parts(repr, dims, deficit))
}

/// `rho^{⊗copies}`.
pub fn tensor_power(rho: &DensityOperator, copies: u32) -> Result<DensityOperator> {
    if copies == 0 {
        return Err(crate::error::domain("M", 0.0, ">= 1"));
    }
    let mut out = rho.clone();
    for _ in 1..copies {
        out = tensor(&out, rho)?;
    }
    Ok(out)
}

/// Trace out every subsystem except `keep`.
pub fn partial_trace(rho: &DensityOperator, keep: usize) -> Result<DensityOperator> {
    let dims = rho.dims();
    if dims.len() < 2 {
        return Err(Error::DimensionMismatch(
            "partial trace needs at least two subsystems".into(),
        ));
    }
    if keep >= dims.len() {
        return Err(Error::Subsystem {
            index: keep,
            count: dims.len(),
        });
    }
    let left: usize = dims[..keep].iter().product();
    let mid = dims[keep];
    let right: usize = dims[keep + 1..].iter().product();
    let at = |l: usize, i: usize, r: usize| (l * mid + i) * right + r;

    let repr = match rho.repr() {
        Repr::Diagonal(d) => {
            let mut out = vec![0.0; mid];
            for l in 0..left {
                for (i, slot) in out.iter_mut().enumerate() {
                    for r in 0..right {
                        *slot += d[at(l, i, r)];
                    }
                }
            }
            Repr::Diagonal(out)
        }
        Repr::Pure(psi) => {
            let mut out = DMatrix::<Complex64>::zeros(mid, mid);
            for l in 0..left {
                for r in 0..right {
                    let slice = DVector::from_fn(mid, |i, _| psi[at(l, i, r)]);
                    if slice.iter().all(|a| a.norm_sqr() == 0.0) {
                        continue;
                    }
                    out += &slice * slice.adjoint();
                }
            }
            Repr::Dense(out)
        }
        Repr::Dense(m) => {
            let mut out = DMatrix::<Complex64>::zeros(mid, mid);
            for l in 0..left {
                for r in 0..right {
                    for i in 0..mid {
                        for j in 0..mid {
                            out[(i, j)] += m[(at(l, i, r), at(l, j, r))];
                        }
                    }
                }
            }
            Repr::Dense(out)
        }
    };
    Ok(DensityOperator::from_parts(
        repr,
        vec![mid],
        rho.trace_deficit(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{
        maximally_entangled_qudit, maximally_mixed, noon_ket, spdc_ket, thermal_state, Truncation,
    };
    use crate::NoiseSpec;

    #[test]
    fn mixed_qubits_tensor_to_mixed() {
        let half = maximally_mixed(2).unwrap();
        let prod = tensor(&half, &half).unwrap();
        assert_eq!(prod.dims(), &[2, 2]);
        assert_eq!(prod.diagonal(), Some(vec![0.25; 4]));
    }

    #[test]
    fn trace_is_multiplicative() {
        let a = thermal_state(NoiseSpec::MeanPhotons(1.0), 3).unwrap();
        let b = thermal_state(NoiseSpec::MeanPhotons(0.5), 2).unwrap();
        let prod = tensor(&a, &b).unwrap();
        assert!((prod.trace() - a.trace() * b.trace()).abs() < 1e-15);
        assert!((1.0 - prod.trace() - prod.trace_deficit()).abs() < 1e-15);
        assert!(prod.diagonal().is_some());
    }

    #[test]
    fn reduced_maximally_entangled_is_mixed() {
        for d in 2..6 {
            let rho = maximally_entangled_qudit(d).unwrap().projector();
            for keep in 0..2 {
                let red = partial_trace(&rho, keep).unwrap();
                let expected = maximally_mixed(d).unwrap();
                assert!(red.max_abs_difference(&expected).unwrap() < 1e-15);
            }
        }
    }

    #[test]
    fn reduced_noon_idler() {
        let n = 3;
        let red = partial_trace(&noon_ket(n).unwrap().projector(), 1).unwrap();
        let d = red.diagonal().expect("diagonal");
        assert!((d[0] - 0.5).abs() < 1e-15);
        assert!((d[2 * n as usize] - 0.5).abs() < 1e-15);
        assert_eq!(d.iter().filter(|&&p| p != 0.0).count(), 2);
    }

    #[test]
    fn reduced_spdc_is_thermal() {
        let n_s = 0.7;
        let ket = spdc_ket(n_s, Truncation::default()).unwrap();
        let red = partial_trace(&ket.projector(), 1).unwrap();
        let thermal = thermal_state(NoiseSpec::MeanPhotons(n_s), ket.cutoffs()[1]).unwrap();
        assert!(red.max_abs_difference(&thermal).unwrap() < 1e-15);
    }

    #[test]
    fn product_state_factors() {
        let a = crate::fock::coherent_ket(0.3, Truncation::fixed(12, 1e-12))
            .unwrap()
            .projector();
        let b = thermal_state(NoiseSpec::MeanPhotons(0.2), 4).unwrap();
        let prod = tensor(&a, &b).unwrap();
        let back_a = partial_trace(&prod, 0).unwrap();
        let back_b = partial_trace(&prod, 1).unwrap();
        let a_scaled = a.to_matrix().unwrap() * Complex64::new(b.trace(), 0.0);
        assert!((back_a.to_matrix().unwrap() - a_scaled).norm() < 1e-15);
        let b_scaled = b.to_matrix().unwrap() * Complex64::new(a.trace(), 0.0);
        assert!((back_b.to_matrix().unwrap() - b_scaled).norm() < 1e-15);
    }

    #[test]
    fn partial_trace_errors() {
        let single = maximally_mixed(3).unwrap();
        assert!(partial_trace(&single, 0).is_err());
        let pair = maximally_entangled_qudit(2).unwrap().projector();
        assert!(matches!(
            partial_trace(&pair, 2),
            Err(Error::Subsystem { index: 2, count: 2 })
        ));
    }

    #[test]
    fn dense_guard() {
        let dense = DensityOperator::from_matrix(
            maximally_entangled_qudit(8)
                .unwrap()
                .projector()
                .to_matrix()
                .unwrap(),
            vec![8, 8],
        )
        .unwrap();
        let mixed = maximally_mixed(65).unwrap();
        assert!(matches!(tensor(&dense, &mixed), Err(Error::Size { .. })));
    }
}

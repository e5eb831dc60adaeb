use crate::error::Result;
use crate::fock::{power_eigenvalue, DensityOperator, Spectrum};

/// `Tr[rho0^s rho1^(1-s)]` as `Σ w_ij a_i^s b_j^(1-s)`, with `a`, `b` the
/// eigenvalues of the two operators and `w_ij = |<u_i|v_j>|²` the overlaps of
/// their eigenvectors. Built once per pair; each evaluation is then linear in
/// the number of overlapping eigenpairs.
#[derive(Debug, Clone)]
pub(crate) struct OverlapKernel {
    terms: Vec<Term>,
    // Diagonal spectra are exact, so their support is `lambda > 0` rather
    // than the eigensolver's clamp.
    exact: (bool, bool),
}

#[derive(Debug, Clone, Copy)]
struct Term {
    a: f64,
    b: f64,
    w: f64,
}

impl OverlapKernel {
    pub(crate) fn new(rho0: &DensityOperator, rho1: &DensityOperator) -> Result<Self> {
        let mut terms = Vec::new();
        let (spec0, spec1) = (rho0.spectrum()?, rho1.spectrum()?);
        let exact = (
            matches!(spec0, Spectrum::Diagonal(_)),
            matches!(spec1, Spectrum::Diagonal(_)),
        );
        let mut push = |a: f64, b: f64, w: f64| {
            if a > 0.0 && b > 0.0 && w > 0.0 {
                terms.push(Term { a, b, w });
            }
        };
        match (spec0, spec1) {
            (Spectrum::Diagonal(a), Spectrum::Diagonal(b)) => {
                for (&ai, &bi) in a.iter().zip(&b) {
                    push(ai, bi, 1.0);
                }
            }
            (Spectrum::Diagonal(a), Spectrum::Thin { values, vectors }) => {
                for (j, &bj) in values.iter().enumerate() {
                    for (i, &ai) in a.iter().enumerate() {
                        push(ai, bj, vectors[(i, j)].norm_sqr());
                    }
                }
            }
            (Spectrum::Thin { values, vectors }, Spectrum::Diagonal(b)) => {
                for (j, &aj) in values.iter().enumerate() {
                    for (i, &bi) in b.iter().enumerate() {
                        push(aj, bi, vectors[(i, j)].norm_sqr());
                    }
                }
            }
            (
                Spectrum::Thin {
                    values: a,
                    vectors: u,
                },
                Spectrum::Thin {
                    values: b,
                    vectors: v,
                },
            ) => {
                let overlaps = u.adjoint() * v;
                for (i, &ai) in a.iter().enumerate() {
                    for (j, &bj) in b.iter().enumerate() {
                        push(ai, bj, overlaps[(i, j)].norm_sqr());
                    }
                }
            }
        }
        Ok(OverlapKernel { terms, exact })
    }

    pub(crate) fn eval(&self, s: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.w * power(t.a, s, self.exact.0) * power(t.b, 1.0 - s, self.exact.1))
            .sum()
    }
}

fn power(lambda: f64, s: f64, exact: bool) -> f64 {
    // terms are only kept for lambda > 0
    if exact && s == 0.0 {
        1.0
    } else {
        power_eigenvalue(lambda, s)
    }
}

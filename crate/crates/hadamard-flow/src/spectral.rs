//! Eigenstructure of the linearized flow and the matrix defect.
//!
//! At a Hadamard point the Jacobian of the flow field is negative
//! semidefinite; its kernel is the center subspace and its dimension equals
//! the defect. The defect is also the nullity of the linearized Hadamard
//! conditions assembled over the d^2 real entry-phase perturbations. Both
//! routes are implemented and cross-checked.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::ExactAffineMatrix;
use crate::linalg::{
    nullity_from_singular_values, singular_values, spectral_radius, sym_eigen, Mat,
};
use crate::phase::{build_matrix, jacobian, potential, CMat, PhaseVector};
use crate::precision::Precision;
use crate::real::Real;

/// Eigendecomposition of the flow Jacobian with center/stable bookkeeping.
#[derive(Clone, Debug)]
pub struct SpectralData<R> {
    /// Ascending.
    pub eigenvalues: Vec<R>,
    /// Orthonormal columns aligned with `eigenvalues`.
    pub eigenvectors: Mat<R>,
    /// Number of eigenvalues with |lambda| < tol.
    pub center_dim: usize,
    /// Columns spanning the center subspace.
    pub center_basis: Vec<Vec<R>>,
    /// Zero-threshold actually used.
    pub tol: R,
}

/// Default zero-threshold: 1e-9 x spectral radius at machine precision,
/// 10^(-digits/2) x max(radius, 1) at arbitrary precision.
pub fn default_zero_tol<R: Real>(radius: &R, prec: Precision) -> R {
    match prec {
        Precision::Machine => R::from_f64(1e-9, prec) * radius.clone(),
        Precision::Arbitrary { digits } => {
            let mut t = R::one(prec);
            let tenth = R::from_ratio(1, 10, prec);
            for _ in 0..digits / 2 {
                t = t * tenth.clone();
            }
            let floor = R::one(prec);
            let scale = if *radius > floor { radius.clone() } else { floor };
            t * scale
        }
    }
}

/// Full symmetric eigendecomposition with center classification.
pub fn spectrum<R: Real>(j: &Mat<R>, tol: Option<R>) -> Result<SpectralData<R>> {
    let prec = j[(0, 0)].precision();
    let (bi, bj, asym) = j.max_asymmetry();
    let scale = {
        let m = j.max_abs();
        if m.is_zero() {
            R::one(prec)
        } else {
            m
        }
    };
    if asym > R::from_f64(1e-10, prec) * scale {
        return Err(Error::NotSymmetric {
            i: bi,
            j: bj,
            diff: asym.to_f64(),
        });
    }
    let eig = sym_eigen(j)?;
    let radius = spectral_radius(&eig.values);
    let tol = tol.unwrap_or_else(|| default_zero_tol(&radius, prec));
    let center: Vec<usize> = (0..eig.values.len())
        .filter(|&k| eig.values[k].abs() < tol)
        .collect();
    let center_basis = center.iter().map(|&k| eig.vectors.column(k)).collect();
    Ok(SpectralData {
        center_dim: center.len(),
        center_basis,
        eigenvalues: eig.values,
        eigenvectors: eig.vectors,
        tol,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DefectMethod {
    FlowKernel,
    LinearSystem,
    Both,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DefectReport {
    pub defect: usize,
    pub method: DefectMethod,
    pub agreement: bool,
}

/// Hadamard-point acceptance threshold for preconditions.
pub fn hadamard_tol(prec: Precision) -> f64 {
    match prec {
        Precision::Machine => 1e-10,
        Precision::Arbitrary { digits } => 10f64.powi(-(digits as i32)),
    }
}

fn require_hadamard_point<R: Real>(p: &PhaseVector<R>) -> Result<()> {
    let v = potential(p).to_f64();
    let tol = hadamard_tol(p.precision());
    if !(v < tol) {
        return Err(Error::NotHadamard { potential: v, tol });
    }
    Ok(())
}

/// Defect as the kernel dimension of the flow Jacobian. Only meaningful at
/// fixed points, so non-Hadamard inputs are rejected.
pub fn defect_flow<R: Real>(p: &PhaseVector<R>, tol: Option<R>) -> Result<DefectReport> {
    require_hadamard_point(p)?;
    let j = jacobian(p);
    let s = spectrum(&j, tol)?;
    Ok(DefectReport {
        defect: s.center_dim,
        method: DefectMethod::FlowKernel,
        agreement: true,
    })
}

/// Assemble the linearized Hadamard conditions at a numeric unimodular
/// matrix H over the d^2 real unknowns R:
///
/// - R[i][0] = 0 for all i, R[0][j] = 0 for j >= 1 (dephasing, 2d-1 rows);
/// - for i < j: sum_k H[i][k] conj(H[j][k]) (R[i][k] - R[j][k]) = 0,
///   each complex equation contributing a real and an imaginary row.
pub fn linearized_system<R: Real>(h: &CMat<R>) -> Mat<R> {
    let d = h.n();
    let prec = h.get(0, 0).re.precision();
    let unknowns = d * d;
    let rows = 2 * d - 1 + d * (d - 1);
    let mut a = Mat::zeros(rows, unknowns, prec);
    let mut r = 0;
    for i in 0..d {
        a[(r, i * d)] = R::one(prec);
        r += 1;
    }
    for j in 1..d {
        a[(r, j)] = R::one(prec);
        r += 1;
    }
    for i in 0..d {
        for j in (i + 1)..d {
            for k in 0..d {
                let z = h.get(i, k).mul(&h.get(j, k).conj());
                a[(r, i * d + k)] = z.re.clone();
                a[(r, j * d + k)] = a[(r, j * d + k)].clone() - z.re.clone();
                a[(r + 1, i * d + k)] = z.im.clone();
                a[(r + 1, j * d + k)] = a[(r + 1, j * d + k)].clone() - z.im.clone();
            }
            r += 2;
        }
    }
    debug_assert_eq!(r, rows);
    a
}

fn nullity_rel_tol<R: Real>(prec: Precision) -> R {
    match prec {
        Precision::Machine => R::from_f64(1e-9, prec),
        Precision::Arbitrary { digits } => {
            let mut t = R::one(prec);
            let tenth = R::from_ratio(1, 10, prec);
            for _ in 0..digits / 2 {
                t = t * tenth.clone();
            }
            t
        }
    }
}

/// Defect as the nullity of the linearized Hadamard conditions, by singular
/// value thresholding at the working precision.
pub fn defect_linear_system<R: Real>(h: &CMat<R>, tol: Option<R>) -> Result<DefectReport> {
    let prec = h.get(0, 0).re.precision();
    let resid = h.hadamard_residual().to_f64();
    let htol = hadamard_tol(prec).sqrt() * h.n() as f64;
    if !(resid < htol) {
        return Err(Error::NotHadamard {
            potential: resid,
            tol: htol,
        });
    }
    let a = linearized_system(h);
    let sigma = singular_values(&a);
    let rel = tol.unwrap_or_else(|| nullity_rel_tol::<R>(prec));
    Ok(DefectReport {
        defect: nullity_from_singular_values(&sigma, &rel),
        method: DefectMethod::LinearSystem,
        agreement: true,
    })
}

/// Linear-system defect of an exact matrix at a parameter assignment.
pub fn defect_linear_system_exact<R: Real>(
    m: &ExactAffineMatrix,
    assignment: &BTreeMap<String, R>,
    prec: Precision,
    tol: Option<R>,
) -> Result<DefectReport> {
    let p = m.to_phase_vector(assignment, prec)?;
    defect_linear_system(&build_matrix(&p), tol)
}

/// Run both defect computations and require agreement. A mismatch signals a
/// tolerance misconfiguration and is reported as an error, never resolved
/// silently.
pub fn cross_check_defect<R: Real>(p: &PhaseVector<R>, tol: Option<R>) -> Result<DefectReport> {
    let flow = defect_flow(p, tol.clone())?;
    let lin = defect_linear_system(&build_matrix(p), tol)?;
    if flow.defect != lin.defect {
        return Err(Error::DefectMismatch {
            flow: flow.defect,
            linear: lin.defect,
        });
    }
    Ok(DefectReport {
        defect: flow.defect,
        method: DefectMethod::Both,
        agreement: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::PhaseVector;

    const M: Precision = Precision::Machine;
    const PI: f64 = std::f64::consts::PI;

    fn pv(d: usize, theta: &[f64]) -> PhaseVector<f64> {
        PhaseVector::from_f64_slice(d, theta, M).unwrap()
    }

    #[test]
    fn spectrum_of_1x1() {
        let mut j = Mat::zeros(1, 1, M);
        j[(0, 0)] = -4.0;
        let s = spectrum(&j, None).unwrap();
        assert_eq!(s.eigenvalues, vec![-4.0]);
        assert_eq!(s.center_dim, 0);
    }

    #[test]
    fn spectrum_rejects_asymmetric_input() {
        let mut j = Mat::zeros(2, 2, M);
        j[(0, 1)] = 1.0;
        assert!(matches!(spectrum(&j, None), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn defect_flow_d2_is_zero() {
        let r = defect_flow(&pv(2, &[PI]), None).unwrap();
        assert_eq!(r.defect, 0);
    }

    #[test]
    fn defect_flow_rejects_non_hadamard() {
        assert!(matches!(
            defect_flow(&pv(2, &[1.0]), None),
            Err(Error::NotHadamard { .. })
        ));
    }

    #[test]
    fn linear_system_d2() {
        let h = build_matrix(&pv(2, &[PI]));
        let r = defect_linear_system(&h, None).unwrap();
        assert_eq!(r.defect, 0);
    }

    #[test]
    fn cross_check_d2() {
        let r = cross_check_defect(&pv(2, &[PI]), None).unwrap();
        assert_eq!(r.defect, 0);
        assert!(r.agreement);
        assert_eq!(r.method, DefectMethod::Both);
    }

    #[test]
    fn linear_system_row_count() {
        let h = build_matrix(&pv(3, &[0.0, 2.0 * PI / 3.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0]));
        let a = linearized_system(&h);
        assert_eq!(a.rows(), 2 * 3 - 1 + 3 * 2);
        assert_eq!(a.cols(), 9);
    }

    #[test]
    fn fourier_3_defect_is_zero() {
        // F_3 is isolated
        let w = 2.0 * PI / 3.0;
        let p = pv(3, &[w, 2.0 * w, 2.0 * w, 4.0 * w]);
        let r = cross_check_defect(&p, None).unwrap();
        assert_eq!(r.defect, 0);
    }
}

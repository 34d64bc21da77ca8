//! Torus coordinates of dephased matrices and the gradient system on them.
//!
//! A dephased d x d matrix with unimodular entries is determined by the
//! (d-1)^2 phases of its core (the lower-right (d-1) x (d-1) block). The
//! potential measures the failure of the row-orthogonality conditions; its
//! negative gradient defines the flow whose fixed points are exactly the
//! dephased complex Hadamard matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::precision::Precision;
use crate::real::{two_pi, Real};

/// Complex scalar over a generic real type.
#[derive(Clone, Debug, PartialEq)]
pub struct Cplx<R> {
    pub re: R,
    pub im: R,
}

impl<R: Real> Cplx<R> {
    pub fn new(re: R, im: R) -> Self {
        Cplx { re, im }
    }

    pub fn zero(prec: Precision) -> Self {
        Cplx::new(R::zero(prec), R::zero(prec))
    }

    pub fn one(prec: Precision) -> Self {
        Cplx::new(R::one(prec), R::zero(prec))
    }

    /// e^{i phase}
    pub fn from_phase(phase: &R) -> Self {
        Cplx::new(phase.cos(), phase.sin())
    }

    pub fn conj(&self) -> Self {
        Cplx::new(self.re.clone(), -self.im.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        Cplx::new(
            self.re.clone() + other.re.clone(),
            self.im.clone() + other.im.clone(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Cplx::new(
            self.re.clone() - other.re.clone(),
            self.im.clone() - other.im.clone(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        Cplx::new(
            self.re.clone() * other.re.clone() - self.im.clone() * other.im.clone(),
            self.re.clone() * other.im.clone() + self.im.clone() * other.re.clone(),
        )
    }

    pub fn norm_sqr(&self) -> R {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }
}

/// Dense complex square matrix.
#[derive(Clone, Debug)]
pub struct CMat<R> {
    n: usize,
    data: Vec<Cplx<R>>,
}

impl<R: Real> CMat<R> {
    pub fn zeros(n: usize, prec: Precision) -> Self {
        CMat {
            n,
            data: vec![Cplx::zero(prec); n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Cplx<R> {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cplx<R>) {
        self.data[i * self.n + j] = v;
    }

    /// Gram matrix G = M M* (conjugate transpose on the right).
    pub fn gram(&self) -> CMat<R> {
        let prec = self.data[0].re.precision();
        let mut g = CMat::zeros(self.n, prec);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = Cplx::zero(prec);
                for k in 0..self.n {
                    acc = acc.add(&self.get(i, k).mul(&self.get(j, k).conj()));
                }
                g.set(i, j, acc);
            }
        }
        g
    }

    /// Frobenius norm of M M* - d I, the Hadamard residual.
    pub fn hadamard_residual(&self) -> R {
        let prec = self.data[0].re.precision();
        let g = self.gram();
        let d = R::from_i64(self.n as i64, prec);
        let mut acc = R::zero(prec);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut e = g.get(i, j).clone();
                if i == j {
                    e.re = e.re.clone() - d.clone();
                }
                acc = acc + e.norm_sqr();
            }
        }
        acc.sqrt()
    }
}

/// Point of the (d-1)^2-torus: the core phases of a dephased matrix,
/// indexed row-major over the core.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseVector<R> {
    d: usize,
    theta: Vec<R>,
}

/// Serialized form: angles as decimal strings so arbitrary precision
/// survives the interchange layer.
#[derive(Serialize, Deserialize)]
pub struct PhaseVectorJson {
    pub d: usize,
    pub theta: Vec<String>,
}

impl<R: Real> PhaseVector<R> {
    pub fn new(d: usize, theta: Vec<R>) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidInput(format!("matrix order must be >= 2, got {d}")));
        }
        let want = (d - 1) * (d - 1);
        if theta.len() != want {
            return Err(Error::InvalidInput(format!(
                "phase vector for d={d} needs {want} angles, got {}",
                theta.len()
            )));
        }
        Ok(PhaseVector { d, theta })
    }

    pub fn zeros(d: usize, prec: Precision) -> Result<Self> {
        Self::new(d, vec![R::zero(prec); (d - 1) * (d - 1)])
    }

    pub fn from_f64_slice(d: usize, theta: &[f64], prec: Precision) -> Result<Self> {
        Self::new(d, theta.iter().map(|&x| R::from_f64(x, prec)).collect())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn core_dim(&self) -> usize {
        (self.d - 1) * (self.d - 1)
    }

    pub fn theta(&self) -> &[R] {
        &self.theta
    }

    pub fn theta_mut(&mut self) -> &mut [R] {
        &mut self.theta
    }

    pub fn precision(&self) -> Precision {
        self.theta[0].precision()
    }

    /// Core coordinate index of matrix entry (i, j), both 0-based with
    /// i, j >= 1.
    pub fn core_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i >= 1 && j >= 1 && i < self.d && j < self.d);
        (i - 1) * (self.d - 1) + (j - 1)
    }

    /// Angles reduced to [0, 2pi). Canonicalization is opt-in; the flow and
    /// all evaluations are 2pi-periodic and do not require it.
    pub fn normalized(&self) -> Self {
        let prec = self.precision();
        let tau: R = two_pi(prec);
        let theta = self
            .theta
            .iter()
            .map(|x| {
                let q = (x.clone() / tau.clone()).floor();
                let mut r = x.clone() - q * tau.clone();
                // guard against r == 2pi after rounding
                if r >= tau {
                    r = r - tau.clone();
                }
                if r < R::zero(prec) {
                    r = r + tau.clone();
                }
                r
            })
            .collect();
        PhaseVector { d: self.d, theta }
    }

    pub fn to_json(&self) -> PhaseVectorJson {
        PhaseVectorJson {
            d: self.d,
            theta: self.theta.iter().map(|x| x.to_decimal_string()).collect(),
        }
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_json())?)
    }

    pub fn from_json(json: &PhaseVectorJson, prec: Precision) -> Result<Self> {
        let theta = json
            .theta
            .iter()
            .map(|s| R::from_decimal_str(s, prec))
            .collect::<Result<Vec<_>>>()?;
        Self::new(json.d, theta)
    }

    pub fn from_json_str(s: &str, prec: Precision) -> Result<Self> {
        let json: PhaseVectorJson = serde_json::from_str(s)?;
        Self::from_json(&json, prec)
    }
}

/// The dephased matrix H_d(theta): first row and column all ones, core entry
/// (i, j) = e^{i theta_k} with k = (i-1)(d-1) + (j-1) (0-based row-major).
pub fn build_matrix<R: Real>(p: &PhaseVector<R>) -> CMat<R> {
    let d = p.d();
    let prec = p.precision();
    let mut h = CMat::zeros(d, prec);
    for j in 0..d {
        h.set(0, j, Cplx::one(prec));
    }
    for i in 1..d {
        h.set(i, 0, Cplx::one(prec));
        for j in 1..d {
            let k = p.core_index(i, j);
            h.set(i, j, Cplx::from_phase(&p.theta()[k]));
        }
    }
    h
}

/// Sum of squared moduli of the off-diagonal Gram entries. Vanishes exactly
/// when the matrix is Hadamard.
pub fn potential<R: Real>(p: &PhaseVector<R>) -> R {
    let h = build_matrix(p);
    let g = h.gram();
    let prec = p.precision();
    let mut acc = R::zero(prec);
    for i in 0..p.d() {
        for j in 0..p.d() {
            if i != j {
                acc = acc + g.get(i, j).norm_sqr();
            }
        }
    }
    acc
}

/// The flow field: negative gradient of the potential, evaluated in closed
/// form. Component (i, j) of the core:
///
///   4 * sum_{r != i} Im( conj(G[i][r]) * H[i][j] * conj(H[r][j]) )
pub fn gradient<R: Real>(p: &PhaseVector<R>) -> Vec<R> {
    let d = p.d();
    let prec = p.precision();
    let h = build_matrix(p);
    let g = h.gram();
    let four = R::from_i64(4, prec);
    let mut out = Vec::with_capacity(p.core_dim());
    for i in 1..d {
        for j in 1..d {
            let mut acc = R::zero(prec);
            for r in 0..d {
                if r == i {
                    continue;
                }
                let t = g
                    .get(i, r)
                    .conj()
                    .mul(h.get(i, j))
                    .mul(&h.get(r, j).conj());
                acc = acc + t.im;
            }
            out.push(four.clone() * acc);
        }
    }
    out
}

/// Jacobian of the flow field (the Hessian of the negative potential),
/// produced exactly symmetric: the upper triangle is computed and mirrored.
pub fn jacobian<R: Real>(p: &PhaseVector<R>) -> Mat<R> {
    let d = p.d();
    let n = p.core_dim();
    let prec = p.precision();
    let h = build_matrix(p);
    let g = h.gram();
    let four = R::from_i64(4, prec);

    // c_one[i][r][j] = Re( conj(G[i][r]) H[i][j] conj(H[r][j]) )
    let mut c_one = vec![vec![vec![R::zero(prec); d]; d]; d];
    for i in 1..d {
        for r in 0..d {
            if r == i {
                continue;
            }
            for j in 1..d {
                let t = g
                    .get(i, r)
                    .conj()
                    .mul(h.get(i, j))
                    .mul(&h.get(r, j).conj());
                c_one[i][r][j] = t.re;
            }
        }
    }
    // c_sum[i][j] = sum over r != i
    let mut c_sum = vec![vec![R::zero(prec); d]; d];
    for i in 1..d {
        for j in 1..d {
            let mut acc = R::zero(prec);
            for r in 0..d {
                if r != i {
                    acc = acc + c_one[i][r][j].clone();
                }
            }
            c_sum[i][j] = acc;
        }
    }

    // b(i, r, j, j2) = Re( H[i][j] conj(H[r][j]) conj(H[i][j2]) H[r][j2] )
    let b = |i: usize, r: usize, j: usize, j2: usize| -> R {
        h.get(i, j)
            .mul(&h.get(r, j).conj())
            .mul(&h.get(i, j2).conj())
            .mul(h.get(r, j2))
            .re
    };

    let dm1 = R::from_i64((d - 1) as i64, prec);
    let mut jac = Mat::zeros(n, n, prec);
    for a in 0..n {
        let (i, j) = (1 + a / (d - 1), 1 + a % (d - 1));
        for bidx in a..n {
            let (i2, j2) = (1 + bidx / (d - 1), 1 + bidx % (d - 1));
            let val = if i2 == i {
                if j2 == j {
                    four.clone() * (c_sum[i][j].clone() - dm1.clone())
                } else {
                    let mut acc = R::zero(prec);
                    for r in 0..d {
                        if r == i {
                            continue;
                        }
                        acc = acc + b(i, r, j, j2);
                    }
                    -(four.clone() * acc)
                }
            } else if j2 == j {
                four.clone() * (R::one(prec) - c_one[i][i2][j].clone())
            } else {
                four.clone() * b(i, i2, j, j2)
            };
            jac[(a, bidx)] = val.clone();
            jac[(bidx, a)] = val;
        }
    }
    jac
}

/// Core phases after the row/column permutation H' = P_r H P_c, i.e.
/// H'[i][j] = H[row_perm[i]][col_perm[j]]. Both permutations are 0-based,
/// must fix index 0, and must preserve the dephased form.
pub fn permute_core<R: Real>(
    p: &PhaseVector<R>,
    row_perm: &[usize],
    col_perm: &[usize],
) -> Result<PhaseVector<R>> {
    let d = p.d();
    validate_perm(row_perm, d, "row")?;
    validate_perm(col_perm, d, "column")?;
    let mut theta = Vec::with_capacity(p.core_dim());
    for i in 1..d {
        for j in 1..d {
            let k = p.core_index(row_perm[i], col_perm[j]);
            theta.push(p.theta()[k].clone());
        }
    }
    PhaseVector::new(d, theta)
}

pub(crate) fn validate_perm(perm: &[usize], d: usize, which: &str) -> Result<()> {
    if perm.len() != d {
        return Err(Error::InvalidInput(format!(
            "{which} permutation must have length {d}, got {}",
            perm.len()
        )));
    }
    if perm[0] != 0 {
        return Err(Error::InvalidInput(format!(
            "{which} permutation must fix index 0 to preserve the dephased form"
        )));
    }
    let mut seen = vec![false; d];
    for &v in perm {
        if v >= d || seen[v] {
            return Err(Error::InvalidInput(format!(
                "{which} permutation is not a permutation of 0..{d}"
            )));
        }
        seen[v] = true;
    }
    Ok(())
}

/// Transposition of indices a and b (0-based) as a permutation of 0..d.
pub fn swap_perm(d: usize, a: usize, b: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..d).collect();
    p.swap(a, b);
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    const M: Precision = Precision::Machine;

    fn pv(d: usize, theta: &[f64]) -> PhaseVector<f64> {
        PhaseVector::from_f64_slice(d, theta, M).unwrap()
    }

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn build_matrix_d2_real_hadamard() {
        let h = build_matrix(&pv(2, &[PI]));
        assert!((h.get(0, 0).re - 1.0).abs() < 1e-15);
        assert!((h.get(1, 1).re + 1.0).abs() < 1e-15);
        assert!(h.get(1, 1).im.abs() < 1e-15);
    }

    #[test]
    fn build_matrix_d3_all_zero_phases() {
        let h = build_matrix(&pv(3, &[0.0; 4]));
        for i in 0..3 {
            for j in 0..3 {
                assert!((h.get(i, j).re - 1.0).abs() < 1e-15);
                assert!(h.get(i, j).im.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn build_matrix_core_indexing_is_row_major() {
        // place a marker phase at core (1,2) of a d=4 matrix: index 1
        let mut theta = [0.0; 9];
        theta[1] = PI / 2.0;
        let h = build_matrix(&pv(4, &theta));
        assert!((h.get(1, 2).im - 1.0).abs() < 1e-15);
        assert!((h.get(1, 1).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn potential_d2() {
        assert!(potential(&pv(2, &[PI])).abs() < 1e-24);
        assert!((potential(&pv(2, &[0.0])) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn potential_d4_all_zero_phases() {
        assert!((potential(&pv(4, &[0.0; 9])) - 192.0).abs() < 1e-10);
    }

    #[test]
    fn gradient_d2_closed_form() {
        // V_2(phi) = 4 + 4 cos(phi), so the field is 4 sin(phi)
        let g = gradient(&pv(2, &[PI / 2.0]));
        assert!((g[0] - 4.0).abs() < 1e-13);
        for phi in [0.3, 1.1, 2.9, 4.4] {
            let g = gradient(&pv(2, &[phi]));
            assert!((g[0] - 4.0 * phi.sin()).abs() < 1e-12, "phi={phi}");
        }
    }

    #[test]
    fn jacobian_d2_closed_form() {
        // derivative of 4 sin(phi) at pi
        let j = jacobian(&pv(2, &[PI]));
        assert!((j[(0, 0)] + 4.0).abs() < 1e-12);
    }

    #[test]
    fn jacobian_is_exactly_symmetric() {
        let theta: Vec<f64> = (0..25).map(|k| (k as f64) * 0.37).collect();
        let j = jacobian(&pv(6, &theta));
        for a in 0..25 {
            for b in 0..25 {
                assert_eq!(j[(a, b)], j[(b, a)]);
            }
        }
    }

    #[test]
    fn permute_core_sigma2_coordinates() {
        // swap rows 2,3 and columns 3,4 (1-based): theta' must be
        // [t4, t6, t5, t1, t3, t2, t7, t9, t8]
        let theta: Vec<f64> = (1..=9).map(|k| k as f64).collect();
        let p = pv(4, &theta);
        let out = permute_core(&p, &swap_perm(4, 1, 2), &swap_perm(4, 2, 3)).unwrap();
        let got: Vec<f64> = out.theta().to_vec();
        assert_eq!(got, vec![4.0, 6.0, 5.0, 1.0, 3.0, 2.0, 7.0, 9.0, 8.0]);
    }

    #[test]
    fn permute_core_identity() {
        let theta: Vec<f64> = (1..=9).map(|k| k as f64).collect();
        let p = pv(4, &theta);
        let id: Vec<usize> = (0..4).collect();
        assert_eq!(permute_core(&p, &id, &id).unwrap().theta(), p.theta());
    }

    #[test]
    fn permute_core_maps_v1_to_v2() {
        let v1 = [1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0];
        let p = pv(4, &v1);
        let out = permute_core(&p, &swap_perm(4, 1, 2), &swap_perm(4, 2, 3)).unwrap();
        assert_eq!(
            out.theta(),
            &[0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 1.0, 1.0, 0.0]
        );
    }

    #[test]
    fn permute_core_rejects_moving_first_index() {
        let p = pv(2, &[0.0]);
        assert!(permute_core(&p, &[1, 0], &[0, 1]).is_err());
    }

    #[test]
    fn potential_invariant_under_core_permutation() {
        let theta: Vec<f64> = (0..9).map(|k| (k as f64) * 0.71 + 0.1).collect();
        let p = pv(4, &theta);
        let v0 = potential(&p);
        let q = permute_core(&p, &swap_perm(4, 1, 3), &swap_perm(4, 2, 3)).unwrap();
        assert!((potential(&q) - v0).abs() < 1e-10 * v0.abs().max(1.0));
    }

    #[test]
    fn normalized_reduces_to_principal_range() {
        let p = pv(2, &[-1.0]);
        let n = p.normalized();
        assert!((n.theta()[0] - (2.0 * PI - 1.0)).abs() < 1e-14);
        let p = pv(2, &[7.0]);
        assert!((p.normalized().theta()[0] - (7.0 - 2.0 * PI)).abs() < 1e-14);
    }

    #[test]
    fn json_round_trip() {
        let p = pv(3, &[0.25, 1.5, 2.75, 3.125]);
        let s = p.to_json_string().unwrap();
        let q: PhaseVector<f64> = PhaseVector::from_json_str(&s, M).unwrap();
        assert_eq!(p, q);
    }
}

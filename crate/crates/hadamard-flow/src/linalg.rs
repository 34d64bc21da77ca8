//! Minimal dense linear algebra, generic over [`Real`].
//!
//! The sizes here are small ((d-1)^2 <= 81 for the matrices of interest), and
//! the same kernels must run at machine and arbitrary precision, so we use
//! rotation-based methods throughout: cyclic Jacobi for symmetric
//! eigendecomposition and one-sided Jacobi for singular values. Both need
//! only +, *, / and sqrt and converge quadratically.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::precision::Precision;
use crate::real::{powi, Real};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Real> Mat<R> {
    pub fn zeros(rows: usize, cols: usize, prec: Precision) -> Self {
        Mat {
            rows,
            cols,
            data: vec![R::zero(prec); rows * cols],
        }
    }

    pub fn identity(n: usize, prec: Precision) -> Self {
        let mut m = Self::zeros(n, n, prec);
        for i in 0..n {
            m[(i, i)] = R::one(prec);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self[(i, 0)].clone() * v[0].clone();
                for j in 1..self.cols {
                    acc = acc + self[(i, j)].clone() * v[j].clone();
                }
                acc
            })
            .collect()
    }

    pub fn frobenius_norm(&self) -> R {
        let mut acc = self.data[0].zero_like();
        for x in &self.data {
            acc = acc + x.clone() * x.clone();
        }
        acc.sqrt()
    }

    pub fn max_abs(&self) -> R {
        let mut m = self.data[0].abs();
        for x in &self.data {
            let a = x.abs();
            if a > m {
                m = a;
            }
        }
        m
    }

    /// Largest absolute asymmetry |a_ij - a_ji|, with its position.
    pub fn max_asymmetry(&self) -> (usize, usize, R) {
        assert_eq!(self.rows, self.cols);
        let mut best = (0, 0, self.data[0].zero_like());
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                let diff = (self[(i, j)].clone() - self[(j, i)].clone()).abs();
                if diff > best.2 {
                    best = (i, j, diff);
                }
            }
        }
        best
    }
}

impl<R> Index<(usize, usize)> for Mat<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        &self.data[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for Mat<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot<R: Real>(a: &[R], b: &[R]) -> R {
    assert_eq!(a.len(), b.len());
    let mut acc = a[0].clone() * b[0].clone();
    for k in 1..a.len() {
        acc = acc + a[k].clone() * b[k].clone();
    }
    acc
}

pub fn norm2<R: Real>(a: &[R]) -> R {
    dot(a, a).sqrt()
}

pub fn scaled<R: Real>(a: &[R], s: &R) -> Vec<R> {
    a.iter().map(|x| x.clone() * s.clone()).collect()
}

pub fn vec_sub<R: Real>(a: &[R], b: &[R]) -> Vec<R> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() - y.clone())
        .collect()
}

pub fn vec_add<R: Real>(a: &[R], b: &[R]) -> Vec<R> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() + y.clone())
        .collect()
}

/// y += s * x
pub fn axpy<R: Real>(y: &mut [R], s: &R, x: &[R]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi = yi.clone() + s.clone() * xi.clone();
    }
}

/// Convergence floor for iterative kernels at a given precision.
fn iteration_eps<R: Real>(prec: Precision) -> R {
    let digits = prec.digits10().saturating_sub(2);
    let mut eps = R::one(prec);
    let tenth = R::from_ratio(1, 10, prec);
    for _ in 0..digits {
        eps = eps * tenth.clone();
    }
    eps
}

/// Symmetric eigendecomposition, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct SymEigen<R> {
    pub values: Vec<R>,
    /// Orthonormal eigenvectors, column k pairing with `values[k]`.
    pub vectors: Mat<R>,
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
pub fn sym_eigen<R: Real>(a: &Mat<R>) -> Result<SymEigen<R>> {
    let n = a.rows();
    if n != a.cols() {
        return Err(Error::InvalidInput(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let prec = a[(0, 0)].precision();
    let mut b = a.clone();
    let mut v = Mat::<R>::identity(n, prec);
    if n == 1 {
        return Ok(SymEigen {
            values: vec![b[(0, 0)].clone()],
            vectors: v,
        });
    }

    let eps = iteration_eps::<R>(prec);
    let scale = {
        let f = b.frobenius_norm();
        if f.is_zero() {
            R::one(prec)
        } else {
            f
        }
    };
    let stop = eps.clone() * scale.clone();

    let max_sweeps = 60;
    for _sweep in 0..max_sweeps {
        // off-diagonal Frobenius norm
        let mut off = R::zero(prec);
        for p in 0..n {
            for q in (p + 1)..n {
                off = off + b[(p, q)].clone() * b[(p, q)].clone();
            }
        }
        if off.sqrt() <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = b[(p, q)].clone();
                if apq.abs() <= eps.clone() * scale.clone() {
                    continue;
                }
                let app = b[(p, p)].clone();
                let aqq = b[(q, q)].clone();
                let two = R::from_i64(2, prec);
                let theta = (aqq - app) / (two * apq.clone());
                let one = R::one(prec);
                let t_abs = one.clone() / (theta.abs() + (one.clone() + theta.clone() * theta.clone()).sqrt());
                let t = if theta < R::zero(prec) { -t_abs } else { t_abs };
                let c = one.clone() / (one.clone() + t.clone() * t.clone()).sqrt();
                let s = t.clone() * c.clone();

                // B <- J^T B J with J the (p,q) rotation
                for k in 0..n {
                    let bkp = b[(k, p)].clone();
                    let bkq = b[(k, q)].clone();
                    b[(k, p)] = c.clone() * bkp.clone() - s.clone() * bkq.clone();
                    b[(k, q)] = s.clone() * bkp + c.clone() * bkq;
                }
                for k in 0..n {
                    let bpk = b[(p, k)].clone();
                    let bqk = b[(q, k)].clone();
                    b[(p, k)] = c.clone() * bpk.clone() - s.clone() * bqk.clone();
                    b[(q, k)] = s.clone() * bpk + c.clone() * bqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)].clone();
                    let vkq = v[(k, q)].clone();
                    v[(k, p)] = c.clone() * vkp.clone() - s.clone() * vkq.clone();
                    v[(k, q)] = s.clone() * vkp + c.clone() * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        b[(i, i)]
            .partial_cmp(&b[(j, j)])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values: Vec<R> = order.iter().map(|&i| b[(i, i)].clone()).collect();
    let vectors = Mat::from_fn(n, n, |i, j| v[(i, order[j])].clone());
    Ok(SymEigen { values, vectors })
}

/// Singular values (descending) via one-sided Jacobi on the columns.
/// Accurate for small singular values; used for nullity counting.
pub fn singular_values<R: Real>(a: &Mat<R>) -> Vec<R> {
    let work = if a.rows() >= a.cols() {
        a.clone()
    } else {
        a.transpose()
    };
    let m = work.rows();
    let n = work.cols();
    let prec = work[(0, 0)].precision();
    let mut cols: Vec<Vec<R>> = (0..n).map(|j| work.column(j)).collect();

    let eps = iteration_eps::<R>(prec);
    let max_sweeps = 60;
    for _ in 0..max_sweeps {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let app = dot(&cols[p], &cols[p]);
                let aqq = dot(&cols[q], &cols[q]);
                let apq = dot(&cols[p], &cols[q]);
                if apq.abs() <= eps.clone() * (app.clone() * aqq.clone()).sqrt() {
                    continue;
                }
                rotated = true;
                let two = R::from_i64(2, prec);
                let tau = (aqq - app) / (two * apq.clone());
                let one = R::one(prec);
                let t_abs = one.clone() / (tau.abs() + (one.clone() + tau.clone() * tau.clone()).sqrt());
                let t = if tau < R::zero(prec) { -t_abs } else { t_abs };
                let c = one.clone() / (one.clone() + t.clone() * t.clone()).sqrt();
                let s = t.clone() * c.clone();
                for k in 0..m {
                    let xp = cols[p][k].clone();
                    let xq = cols[q][k].clone();
                    cols[p][k] = c.clone() * xp.clone() - s.clone() * xq.clone();
                    cols[q][k] = s.clone() * xp + c.clone() * xq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sigma: Vec<R> = cols.iter().map(|c| norm2(c)).collect();
    sigma.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    sigma
}

/// Count of singular values below `rel_tol * sigma_max`.
pub fn nullity_from_singular_values<R: Real>(sigma: &[R], rel_tol: &R) -> usize {
    if sigma.is_empty() {
        return 0;
    }
    let smax = sigma[0].clone();
    if smax.is_zero() {
        return sigma.len();
    }
    let cut = rel_tol.clone() * smax;
    sigma.iter().filter(|s| **s < cut).count()
}

/// Solve A x = b for a small square system by Gaussian elimination with
/// partial pivoting.
pub fn solve_dense<R: Real>(a: &Mat<R>, b: &[R]) -> Result<Vec<R>> {
    let n = a.rows();
    if a.cols() != n || b.len() != n {
        return Err(Error::InvalidInput("solve_dense shape mismatch".into()));
    }
    let prec = a[(0, 0)].precision();
    let mut m = a.clone();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let mut piv = col;
        for r in (col + 1)..n {
            if m[(r, col)].abs() > m[(piv, col)].abs() {
                piv = r;
            }
        }
        if m[(piv, col)].is_zero() {
            return Err(Error::SingularSystem(format!("pivot {col} is zero")));
        }
        if piv != col {
            for k in 0..n {
                let tmp = m[(col, k)].clone();
                m[(col, k)] = m[(piv, k)].clone();
                m[(piv, k)] = tmp;
            }
            rhs.swap(col, piv);
        }
        for r in (col + 1)..n {
            let f = m[(r, col)].clone() / m[(col, col)].clone();
            for k in col..n {
                m[(r, k)] = m[(r, k)].clone() - f.clone() * m[(col, k)].clone();
            }
            rhs[r] = rhs[r].clone() - f * rhs[col].clone();
        }
    }
    let mut x = vec![R::zero(prec); n];
    for col in (0..n).rev() {
        let mut acc = rhs[col].clone();
        for k in (col + 1)..n {
            acc = acc - m[(col, k)].clone() * x[k].clone();
        }
        x[col] = acc / m[(col, col)].clone();
    }
    Ok(x)
}

/// Modified Gram-Schmidt; returns an orthonormal basis of the span.
/// Vectors whose residual falls below `drop_tol * original_norm` are dropped.
pub fn orthonormalize<R: Real>(vectors: &[Vec<R>], drop_tol: f64) -> Vec<Vec<R>> {
    let mut basis: Vec<Vec<R>> = Vec::new();
    for v in vectors {
        let original = norm2(v);
        if original.is_zero() {
            continue;
        }
        let mut u = v.clone();
        for b in &basis {
            let proj = dot(&u, b);
            for (uk, bk) in u.iter_mut().zip(b) {
                *uk = uk.clone() - proj.clone() * bk.clone();
            }
        }
        let r = norm2(&u);
        if r.to_f64() > drop_tol * original.to_f64() {
            let inv = u[0].one_like() / r;
            basis.push(scaled(&u, &inv));
        }
    }
    basis
}

/// Frobenius norm of (I - P_a) B where P_a projects onto span(a).
/// Both inputs must be orthonormal; this bounds the sine of the largest
/// principal angle between the subspaces.
pub fn subspace_gap<R: Real>(a: &[Vec<R>], b: &[Vec<R>]) -> f64 {
    let mut acc = 0.0f64;
    for col in b {
        let mut resid = col.clone();
        for basis_vec in a {
            let proj = dot(col, basis_vec);
            for (rk, bk) in resid.iter_mut().zip(basis_vec) {
                *rk = rk.clone() - proj.clone() * bk.clone();
            }
        }
        acc += norm2(&resid).to_f64().powi(2);
    }
    acc.sqrt()
}

/// Spectral radius estimate from an eigenvalue list.
pub fn spectral_radius<R: Real>(values: &[R]) -> R {
    let mut m = values[0].abs();
    for v in values {
        let a = v.abs();
        if a > m {
            m = a;
        }
    }
    m
}

#[allow(dead_code)]
fn unused_powi_guard<R: Real>(x: &R) -> R {
    powi(x, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    const M: Precision = Precision::Machine;

    fn mat(rows: &[&[f64]]) -> Mat<f64> {
        Mat::from_rows(rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn eigen_of_diag_is_sorted() {
        let a = mat(&[&[3.0, 0.0], &[0.0, -5.0]]);
        let e = sym_eigen(&a).unwrap();
        assert!((e.values[0] + 5.0).abs() < 1e-14);
        assert!((e.values[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn eigen_reconstructs_matrix() {
        let a = mat(&[
            &[4.0, 1.0, -2.0],
            &[1.0, 2.0, 0.0],
            &[-2.0, 0.0, 3.0],
        ]);
        let e = sym_eigen(&a).unwrap();
        // A v = lambda v residuals
        for k in 0..3 {
            let v = e.vectors.column(k);
            let av = a.mul_vec(&v);
            for i in 0..3 {
                assert!((av[i] - e.values[k] * v[i]).abs() < 1e-12);
            }
        }
        // orthonormality
        for i in 0..3 {
            for j in 0..3 {
                let d = dot(&e.vectors.column(i), &e.vectors.column(j));
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((d - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn singular_values_of_known_matrix() {
        // A = [[3,0],[0,4],[0,0]] has singular values 4, 3
        let a = mat(&[&[3.0, 0.0], &[0.0, 4.0], &[0.0, 0.0]]);
        let s = singular_values(&a);
        assert!((s[0] - 4.0).abs() < 1e-12);
        assert!((s[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn nullity_counts_small_singular_values() {
        let a = mat(&[&[1.0, 1.0], &[1.0, 1.0]]);
        let s = singular_values(&a);
        assert_eq!(nullity_from_singular_values(&s, &1e-9), 1);
    }

    #[test]
    fn solve_dense_small_system() {
        let a = mat(&[&[2.0, 1.0], &[1.0, 3.0]]);
        let x = solve_dense(&a, &[5.0, 10.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-13);
        assert!((x[1] - 3.0).abs() < 1e-13);
    }

    #[test]
    fn orthonormalize_drops_dependent_vectors() {
        let vs = vec![
            vec![1.0, 0.0, 0.0],
            vec![1.0, 1.0, 0.0],
            vec![2.0, 1.0, 0.0], // dependent on the first two
        ];
        let b = orthonormalize(&vs, 1e-10);
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn subspace_gap_detects_rotation() {
        let a = vec![vec![1.0, 0.0, 0.0]];
        let b = vec![vec![0.8, 0.6, 0.0]];
        let gap = subspace_gap(&a, &b);
        assert!((gap - 0.6).abs() < 1e-12);
    }

    #[test]
    fn high_precision_eigen_refines_machine_result() {
        use crate::real::BigReal;
        let p = Precision::Arbitrary { digits: 60 };
        let a = Mat::from_fn(2, 2, |i, j| {
            let v = [[2.0, 1.0], [1.0, 2.0]][i][j];
            BigReal::from_f64(v, p)
        });
        let e = sym_eigen(&a).unwrap();
        // eigenvalues 1 and 3 exactly
        let one = BigReal::one(p);
        let err = (e.values[0].clone() - one).abs();
        assert!(err.to_f64() < 1e-55);
    }
}

//! Truncated multivariate polynomial (jet) arithmetic.
//!
//! Center-manifold expansion needs Taylor coefficients of the flow field
//! composed with a polynomial embedding. Carrying jets through the
//! closed-form field — sine evaluations on polynomial phases — sidesteps
//! explicit high-order derivative tensors entirely: storage is
//! C(c+K, K) coefficients per scalar instead of n^K tensor entries.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::precision::Precision;
use crate::real::Real;

/// Monomial index set for `nvars` variables truncated at total degree
/// `order`, in graded-lex order. Shared by all jets of one expansion.
#[derive(Debug)]
pub struct JetSpace {
    nvars: usize,
    order: usize,
    monomials: Vec<Vec<u8>>,
    /// first monomial index of each total degree 0..=order
    degree_start: Vec<usize>,
}

fn grlex(a: &[u8], b: &[u8]) -> Ordering {
    let da: u32 = a.iter().map(|&x| x as u32).sum();
    let db: u32 = b.iter().map(|&x| x as u32).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl JetSpace {
    pub fn new(nvars: usize, order: usize) -> Arc<Self> {
        assert!(nvars >= 1);
        fn emit(out: &mut Vec<Vec<u8>>, prefix: &mut Vec<u8>, remaining_vars: usize, budget: usize) {
            if remaining_vars == 0 {
                out.push(prefix.clone());
                return;
            }
            for e in 0..=budget {
                prefix.push(e as u8);
                emit(out, prefix, remaining_vars - 1, budget - e);
                prefix.pop();
            }
        }
        let mut monomials = Vec::new();
        emit(&mut monomials, &mut Vec::new(), nvars, order);
        monomials.sort_by(|a, b| grlex(a, b));
        let mut degree_start = vec![monomials.len(); order + 2];
        for (idx, m) in monomials.iter().enumerate().rev() {
            let d: usize = m.iter().map(|&x| x as usize).sum();
            degree_start[d] = idx;
        }
        degree_start[order + 1] = monomials.len();
        Arc::new(JetSpace {
            nvars,
            order,
            monomials,
            degree_start,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomial(&self, idx: usize) -> &[u8] {
        &self.monomials[idx]
    }

    pub fn degree(&self, idx: usize) -> usize {
        self.monomials[idx].iter().map(|&x| x as usize).sum()
    }

    /// Indices of monomials with the given total degree.
    pub fn degree_range(&self, d: usize) -> std::ops::Range<usize> {
        self.degree_start[d]..self.degree_start[d + 1]
    }

    pub fn index_of(&self, exponents: &[u8]) -> Option<usize> {
        self.monomials
            .binary_search_by(|m| grlex(m, exponents))
            .ok()
    }
}

/// Polynomial in the space's variables, truncated at its total degree.
#[derive(Clone, Debug)]
pub struct Jet<R> {
    space: Arc<JetSpace>,
    coeffs: Vec<R>,
}

impl<R: Real> Jet<R> {
    pub fn zero(space: &Arc<JetSpace>, prec: Precision) -> Self {
        Jet {
            space: Arc::clone(space),
            coeffs: vec![R::zero(prec); space.len()],
        }
    }

    pub fn constant(space: &Arc<JetSpace>, value: R) -> Self {
        let prec = value.precision();
        let mut j = Self::zero(space, prec);
        j.coeffs[0] = value;
        j
    }

    /// The coordinate variable t_i.
    pub fn variable(space: &Arc<JetSpace>, i: usize, prec: Precision) -> Self {
        let mut j = Self::zero(space, prec);
        let mut e = vec![0u8; space.nvars()];
        e[i] = 1;
        let idx = space.index_of(&e).expect("order >= 1");
        j.coeffs[idx] = R::one(prec);
        j
    }

    pub fn space(&self) -> &Arc<JetSpace> {
        &self.space
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, exponents: &[u8]) -> Option<&R> {
        self.space.index_of(exponents).map(|i| &self.coeffs[i])
    }

    pub fn set_coeff(&mut self, exponents: &[u8], value: R) {
        let idx = self.space.index_of(exponents).expect("monomial in range");
        self.coeffs[idx] = value;
    }

    fn prec(&self) -> Precision {
        self.coeffs[0].precision()
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert!(Arc::ptr_eq(&self.space, &other.space));
        Jet {
            space: Arc::clone(&self.space),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert!(Arc::ptr_eq(&self.space, &other.space));
        Jet {
            space: Arc::clone(&self.space),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Jet {
            space: Arc::clone(&self.space),
            coeffs: self.coeffs.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &R) -> Self {
        Jet {
            space: Arc::clone(&self.space),
            coeffs: self.coeffs.iter().map(|a| a.clone() * s.clone()).collect(),
        }
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert!(Arc::ptr_eq(&self.space, &other.space));
        let space = &self.space;
        let order = space.order();
        let prec = self.prec();
        let mut out = vec![R::zero(prec); space.len()];
        let mut e = vec![0u8; space.nvars()];
        for ia in 0..space.len() {
            if self.coeffs[ia].is_zero() {
                continue;
            }
            let da = space.degree(ia);
            let ma = space.monomial(ia);
            // graded order: indices past the complementary degree block
            // cannot contribute
            let ib_end = space.degree_start[(order - da) + 1];
            for ib in 0..ib_end {
                if other.coeffs[ib].is_zero() {
                    continue;
                }
                let mb = space.monomial(ib);
                for k in 0..space.nvars() {
                    e[k] = ma[k] + mb[k];
                }
                let idx = space.index_of(&e).expect("degree-bounded product");
                out[idx] = out[idx].clone() + self.coeffs[ia].clone() * other.coeffs[ib].clone();
            }
        }
        Jet {
            space: Arc::clone(space),
            coeffs: out,
        }
    }

    /// Partial derivative with respect to variable i.
    pub fn derivative(&self, i: usize) -> Self {
        let space = &self.space;
        let prec = self.prec();
        let mut out = vec![R::zero(prec); space.len()];
        let mut e = vec![0u8; space.nvars()];
        for idx in 0..space.len() {
            let m = space.monomial(idx);
            if m[i] == 0 || self.coeffs[idx].is_zero() {
                continue;
            }
            e.copy_from_slice(m);
            e[i] -= 1;
            let target = space.index_of(&e).expect("lower degree");
            out[target] =
                out[target].clone() + R::from_i64(m[i] as i64, prec) * self.coeffs[idx].clone();
        }
        Jet {
            space: Arc::clone(space),
            coeffs: out,
        }
    }

    /// Sine of the jet, split as sin(a0 + p) with p the zero-constant part:
    /// sin(a0) cos(p) + cos(a0) sin(p), the series of p truncated at the
    /// space order.
    pub fn sin(&self) -> Self {
        let prec = self.prec();
        let a0 = self.coeffs[0].clone();
        let mut p = self.clone();
        p.coeffs[0] = R::zero(prec);

        let order = self.space.order();
        let mut sin_p = Jet::zero(&self.space, prec);
        let mut cos_p = Jet::constant(&self.space, R::one(prec));
        // powers of p with factorial coefficients
        let mut power = Jet::constant(&self.space, R::one(prec));
        let mut factorial = R::one(prec);
        let mut sign_flip = false;
        for k in 1..=order {
            power = power.mul(&p);
            factorial = factorial * R::from_i64(k as i64, prec);
            let term = power.scale(&(R::one(prec) / factorial.clone()));
            if k % 2 == 1 {
                sin_p = if sign_flip { sin_p.sub(&term) } else { sin_p.add(&term) };
            } else {
                // cos picks up the sign after each odd term
                sign_flip = !sign_flip;
                cos_p = if sign_flip { cos_p.sub(&term) } else { cos_p.add(&term) };
            }
        }
        sin_p.scale(&a0.cos()).add(&cos_p.scale(&a0.sin()))
    }

    /// Numeric evaluation at a point.
    pub fn eval(&self, t: &[R]) -> R {
        let prec = self.prec();
        let mut acc = R::zero(prec);
        for idx in 0..self.space.len() {
            if self.coeffs[idx].is_zero() {
                continue;
            }
            let mut term = self.coeffs[idx].clone();
            for (k, &e) in self.space.monomial(idx).iter().enumerate() {
                for _ in 0..e {
                    term = term * t[k].clone();
                }
            }
            acc = acc + term;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const M: Precision = Precision::Machine;

    #[test]
    fn space_sizes_match_binomials() {
        // C(c + K, K) monomials
        assert_eq!(JetSpace::new(3, 3).len(), 20);
        assert_eq!(JetSpace::new(4, 5).len(), 126);
        assert_eq!(JetSpace::new(2, 4).len(), 15);
    }

    #[test]
    fn graded_order_starts_with_constant() {
        let s = JetSpace::new(2, 2);
        assert_eq!(s.monomial(0), &[0, 0]);
        assert_eq!(s.degree_range(1).len(), 2);
        assert_eq!(s.degree_range(2).len(), 3);
    }

    #[test]
    fn product_truncates_at_order() {
        let s = JetSpace::new(1, 3);
        let t = Jet::<f64>::variable(&s, 0, M);
        let t2 = t.mul(&t);
        let t4 = t2.mul(&t2); // would be degree 4: truncated away
        assert!(t4.coeffs().iter().all(|c| *c == 0.0));
        let t3 = t2.mul(&t);
        assert_eq!(*t3.coeff(&[3]).unwrap(), 1.0);
    }

    #[test]
    fn sin_of_single_variable_matches_series() {
        let s = JetSpace::new(1, 5);
        let t = Jet::<f64>::variable(&s, 0, M);
        let st = t.sin();
        assert!((st.coeff(&[1]).unwrap() - 1.0).abs() < 1e-15);
        assert!((st.coeff(&[3]).unwrap() + 1.0 / 6.0).abs() < 1e-15);
        assert!((st.coeff(&[5]).unwrap() - 1.0 / 120.0).abs() < 1e-15);
        assert!(st.coeff(&[0]).unwrap().abs() < 1e-15);
        assert!(st.coeff(&[2]).unwrap().abs() < 1e-15);
    }

    #[test]
    fn sin_with_constant_offset() {
        // sin(a + t) = sin a + cos a t - sin a t^2/2 - cos a t^3/6 + ...
        let s = JetSpace::new(1, 3);
        let a = 0.83f64;
        let t = Jet::<f64>::variable(&s, 0, M);
        let j = t.add(&Jet::constant(&s, a));
        let sj = j.sin();
        assert!((sj.coeff(&[0]).unwrap() - a.sin()).abs() < 1e-15);
        assert!((sj.coeff(&[1]).unwrap() - a.cos()).abs() < 1e-15);
        assert!((sj.coeff(&[2]).unwrap() + a.sin() / 2.0).abs() < 1e-15);
        assert!((sj.coeff(&[3]).unwrap() + a.cos() / 6.0).abs() < 1e-15);
    }

    #[test]
    fn sin_numeric_consistency_two_vars() {
        let s = JetSpace::new(2, 6);
        let prec = M;
        let x = Jet::<f64>::variable(&s, 0, prec);
        let y = Jet::<f64>::variable(&s, 1, prec);
        let arg = x.scale(&1.3).add(&y.scale(&-0.4)).add(&Jet::constant(&s, 0.21));
        let sj = arg.sin();
        let (tx, ty) = (0.013, 0.029);
        let exact = (0.21 + 1.3 * tx - 0.4 * ty).sin();
        let approx = sj.eval(&[tx, ty]);
        assert!((exact - approx).abs() < 1e-12);
    }

    #[test]
    fn derivative_of_product() {
        let s = JetSpace::new(2, 3);
        let x = Jet::<f64>::variable(&s, 0, M);
        let y = Jet::<f64>::variable(&s, 1, M);
        let f = x.mul(&y).mul(&x); // x^2 y
        let fx = f.derivative(0); // 2 x y
        assert_eq!(*fx.coeff(&[1, 1]).unwrap(), 2.0);
        let fy = f.derivative(1); // x^2
        assert_eq!(*fy.coeff(&[2, 0]).unwrap(), 1.0);
    }
}

use serde::Serialize;

use super::field::{DerivativeMethod, Jet, ScalarField};
use crate::cone::EigenTuple;
use crate::error::{Error, Result};
use crate::numerics::linalg::dot;
use crate::numerics::{eigen_residual, sym_eigs, Matrix};

/// A symmetric matrix evaluated at a point, with its spectrum.
#[derive(Debug, Clone, Serialize)]
pub struct HessianResult {
    pub point: Vec<f64>,
    pub matrix: Matrix,
    pub eigenvalues: EigenTuple,
    pub method: DerivativeMethod,
}

impl HessianResult {
    fn from_matrix(point: &[f64], matrix: Matrix, method: DerivativeMethod) -> Result<Self> {
        if !matrix.is_finite() {
            return Err(Error::NonFinite("assembled matrix".into()));
        }
        let matrix = matrix.symmetrized();
        let eig = sym_eigs(&matrix)?;
        let res = eigen_residual(&matrix, &eig);
        let bound = 1e-9 * matrix.frobenius_norm().max(f64::MIN_POSITIVE);
        if res > bound {
            return Err(Error::Invariant(format!("eigenpair residual {res:e} exceeds {bound:e}")));
        }
        Ok(Self { point: point.to_vec(), matrix, eigenvalues: EigenTuple::new(eig.values)?, method })
    }

    /// `max |A − cI|` entrywise.
    pub fn deviation_from_scalar(&self, c: f64) -> f64 {
        self.matrix.add_identity(-c).max_abs()
    }
}

/// `e^{−2v}(−∇²v + ∇v⊗∇v − ½|∇v|² I)` from a jet.
pub fn mobius_matrix(j: &Jet) -> Matrix {
    let n = j.grad.len();
    let g2 = dot(&j.grad, &j.grad);
    let w = (-2.0 * j.value).exp();
    Matrix::from_fn(n, |a, b| {
        let delta = if a == b { 1.0 } else { 0.0 };
        w * (-j.hess[(a, b)] + j.grad[a] * j.grad[b] - 0.5 * g2 * delta)
    })
}

/// `A[v](x)` with the field's analytic derivatives when available.
pub fn mobius_hessian(v: &ScalarField, x: &[f64], method: Option<DerivativeMethod>) -> Result<HessianResult> {
    let (jet, method) = v.jet(x, method)?;
    HessianResult::from_matrix(x, mobius_matrix(&jet), method)
}

/// The conformal Hessian `A^u(x)` of a positive `u`, `n ≥ 3`.
pub fn conformal_hessian_u(u: &ScalarField, x: &[f64], method: Option<DerivativeMethod>) -> Result<HessianResult> {
    let n = u.dim();
    if n < 3 {
        return Err(Error::Unsupported("the conformal Hessian of u needs n >= 3".into()));
    }
    let (j, method) = u.jet(x, method)?;
    if !(j.value > 0.0) {
        return Err(Error::domain(format!("u must be positive, got {}", j.value)));
    }
    let nf = n as f64;
    let m = nf - 2.0;
    let c1 = -2.0 / m * j.value.powf(-(nf + 2.0) / m);
    let p = j.value.powf(-2.0 * nf / m);
    let c2 = 2.0 * nf / (m * m) * p;
    let c3 = -2.0 / (m * m) * p;
    let g2 = dot(&j.grad, &j.grad);
    let a = Matrix::from_fn(n, |i, k| {
        let delta = if i == k { 1.0 } else { 0.0 };
        c1 * j.hess[(i, k)] + c2 * j.grad[i] * j.grad[k] + c3 * g2 * delta
    });
    HessianResult::from_matrix(x, a, method)
}

/// `λ(A[v])` for `v = v(x₁)` from `v, v′, v″`.
pub fn onedim_eigenvalues(n: usize, v: f64, d1: f64, d2: f64) -> Result<EigenTuple> {
    if n < 2 {
        return Err(Error::param("dimension must be at least 2"));
    }
    if !(v.is_finite() && d1.is_finite() && d2.is_finite()) {
        return Err(Error::NonFinite("one-variable jet".into()));
    }
    let w = (-2.0 * v).exp();
    let mut out = vec![-0.5 * d1 * d1 * w; n];
    out[0] = (-d2 + 0.5 * d1 * d1) * w;
    EigenTuple::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::field::{constant, Bubble, ExpOf};

    #[test]
    fn bubble_is_scalar() {
        let b = Bubble::new(1.5, 0.9, vec![0.3, -0.1, 0.2, 0.0]).unwrap();
        let c = b.hessian_constant();
        let v = ScalarField::new(b);
        let h = mobius_hessian(&v, &[0.7, 0.2, -1.1, 0.4], None).unwrap();
        assert!(h.deviation_from_scalar(c) < 1e-12);
        let u = ScalarField::new(ExpOf { v: v.clone(), m: 1.0 });
        let hu = conformal_hessian_u(&u, &[0.7, 0.2, -1.1, 0.4], None).unwrap();
        assert!(hu.deviation_from_scalar(c) < 1e-12);
    }

    #[test]
    fn constants_vanish() {
        let v = ScalarField::new(constant(3, 2.0));
        assert!(mobius_hessian(&v, &[1.0, 2.0, 3.0], None).unwrap().matrix.max_abs() == 0.0);
        let u = ScalarField::new(constant(3, 1.0));
        assert!(conformal_hessian_u(&u, &[1.0, 2.0, 3.0], None).unwrap().matrix.max_abs() == 0.0);
        let u2 = ScalarField::new(constant(2, 1.0));
        assert!(matches!(conformal_hessian_u(&u2, &[0.0, 0.0], None), Err(Error::Unsupported(_))));
        let neg = ScalarField::new(constant(3, -1.0));
        assert!(matches!(conformal_hessian_u(&neg, &[0.0; 3], None), Err(Error::Domain(_))));
    }

    #[test]
    fn onedim_linear() {
        let j = 3.0;
        let x1 = 0.4;
        let l = onedim_eigenvalues(4, j * x1, j, 0.0).unwrap();
        let c = 0.5 * j * j * (-2.0 * j * x1).exp();
        let expect = [c, -c, -c, -c];
        for (a, b) in l.values().iter().zip(expect) {
            assert!((a - b).abs() < 1e-14);
        }
    }
}

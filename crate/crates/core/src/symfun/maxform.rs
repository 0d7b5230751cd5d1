use super::{Convexity, GradientKind, SymmetricFn};
use crate::cone::{ConeSpec, EigenTuple};
use crate::error::{Error, Result};

/// Largest dimension for which the mollified max-form is computed.
pub const MAX_MOLLIFIED_DIM: usize = 4;

const GL7: [(f64, f64); 7] = [
    (-0.949_107_912_342_758_5, 0.129_484_966_168_869_7),
    (-0.741_531_185_599_394_4, 0.279_705_391_489_276_7),
    (-0.405_845_151_377_397_2, 0.381_830_050_505_118_9),
    (0.0, 0.417_959_183_673_469_4),
    (0.405_845_151_377_397_2, 0.381_830_050_505_118_9),
    (0.741_531_185_599_394_4, 0.279_705_391_489_276_7),
    (0.949_107_912_342_758_5, 0.129_484_966_168_869_7),
];

/// `max_k {λ_k + s/(n−1) Σ_{j≠k} λ_j}`
#[derive(Debug, Clone)]
pub struct MaxForm {
    n: usize,
    s: f64,
}

impl MaxForm {
    pub fn new(n: usize, s: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::param("dimension must be at least 2"));
        }
        if !(s > 0.0 && s <= 1.0) {
            return Err(Error::param(format!("s must lie in (0, 1], got {s}")));
        }
        Ok(Self { n, s })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    fn eval_any(&self, x: &[f64]) -> f64 {
        let total: f64 = x.iter().sum();
        let c = self.s / (self.n as f64 - 1.0);
        x.iter().map(|&xk| xk + c * (total - xk)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Weights of the active linear branch (the largest entry).
    fn weights(&self) -> Vec<f64> {
        let c = self.s / (self.n as f64 - 1.0);
        let mut w = vec![c; self.n];
        w[0] = 1.0;
        w
    }
}

impl SymmetricFn for MaxForm {
    fn dim(&self) -> usize {
        self.n
    }

    fn label(&self) -> String {
        format!("max-form(s={})", self.s)
    }

    fn value(&self, l: &[f64]) -> Result<f64> {
        Ok(self.eval_any(l))
    }

    fn gradient(&self, _l: &[f64]) -> Result<Vec<f64>> {
        Ok(self.weights())
    }

    fn gradient_kind(&self) -> GradientKind {
        GradientKind::Analytic
    }

    fn convexity(&self) -> Convexity {
        Convexity::Convex
    }

    fn domain(&self) -> ConeSpec {
        ConeSpec::ordered_linear(self.weights()).expect("weights are positive")
    }
}

/// `f⁽⁰⁾ * η_ε` by a symmetric product Gauss–Legendre rule over the ball.
#[derive(Debug, Clone)]
pub struct Mollified {
    base: MaxForm,
    eps: f64,
    nodes: Vec<(Vec<f64>, f64)>,
}

impl Mollified {
    pub fn new(n: usize, s: f64, eps: f64) -> Result<Self> {
        let base = MaxForm::new(n, s)?;
        if n > MAX_MOLLIFIED_DIM {
            return Err(Error::Unsupported(format!("mollification is limited to n <= {MAX_MOLLIFIED_DIM}")));
        }
        let limit = 0.5 / (n as f64).sqrt();
        if !(eps > 0.0 && eps < limit) {
            return Err(Error::param(format!("eps must lie in (0, {limit})")));
        }
        let mut nodes = Vec::new();
        let mut idx = vec![0usize; n];
        loop {
            let y: Vec<f64> = idx.iter().map(|&i| eps * GL7[i].0).collect();
            let w: f64 = idx.iter().map(|&i| GL7[i].1).product();
            let r = y.iter().map(|v| v * v).sum::<f64>().sqrt() / eps;
            if r < 1.0 {
                nodes.push((y, w * (-1.0 / (1.0 - r * r)).exp()));
            }
            let mut d = 0;
            while d < n {
                idx[d] += 1;
                if idx[d] < GL7.len() {
                    break;
                }
                idx[d] = 0;
                d += 1;
            }
            if d == n {
                break;
            }
        }
        let total: f64 = nodes.iter().map(|(_, w)| w).sum();
        for (_, w) in &mut nodes {
            *w /= total;
        }
        Ok(Self { base, eps, nodes })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }
}

impl SymmetricFn for Mollified {
    fn dim(&self) -> usize {
        self.base.n
    }

    fn label(&self) -> String {
        format!("mollified-max-form(s={}, eps={})", self.base.s, self.eps)
    }

    fn value(&self, l: &[f64]) -> Result<f64> {
        let mut acc = 0.0;
        let mut shifted = vec![0.0; l.len()];
        for (y, w) in &self.nodes {
            for ((s, a), b) in shifted.iter_mut().zip(l).zip(y) {
                *s = a - b;
            }
            acc += w * self.base.eval_any(&shifted);
        }
        Ok(acc)
    }

    fn degree(&self) -> Option<f64> {
        None
    }

    fn convexity(&self) -> Convexity {
        Convexity::Convex
    }

    fn domain(&self) -> ConeSpec {
        self.base.domain()
    }
}

pub fn maxform_f0(s: f64, l: &EigenTuple) -> Result<f64> {
    MaxForm::new(l.dim(), s)?.value(l.values())
}

pub fn mollified_f(s: f64, eps: f64, l: &EigenTuple) -> Result<f64> {
    Mollified::new(l.dim(), s, eps)?.value(l.values())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_e_and_boundary() {
        let n = 4;
        let s = 0.5;
        assert!((maxform_f0(s, &EigenTuple::ones(n).unwrap()).unwrap() - 1.5).abs() < 1e-15);
        let mut p = vec![-1.0; n];
        p[0] = s;
        assert!(maxform_f0(s, &EigenTuple::new(p).unwrap()).unwrap().abs() < 1e-15);
    }

    #[test]
    fn mollified_matches_on_linear_region() {
        let l = EigenTuple::new(vec![3.0, 0.5, -1.0]).unwrap();
        let a = maxform_f0(1.0, &l).unwrap();
        let b = mollified_f(1.0, 0.2, &l).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn parameter_checks() {
        let l = EigenTuple::ones(3).unwrap();
        assert!(maxform_f0(0.0, &l).is_err());
        assert!(mollified_f(1.0, 0.5, &l).is_err());
        assert!(matches!(mollified_f(1.0, 0.1, &EigenTuple::ones(5).unwrap()), Err(Error::Unsupported(_))));
    }
}

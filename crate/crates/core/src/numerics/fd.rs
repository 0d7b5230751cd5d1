use super::linalg::Matrix;
use crate::error::{Error, Result};

/// Default step for central first differences at `x`.
pub fn gradient_step(x: &[f64]) -> f64 {
    1e-5 * (1.0 + super::linalg::norm(x))
}

/// Default step for central second differences at `x`.
pub fn hessian_step(x: &[f64]) -> f64 {
    1e-4 * (1.0 + super::linalg::norm(x))
}

fn shifted(x: &[f64], moves: &[(usize, f64)]) -> Vec<f64> {
    let mut y = x.to_vec();
    for &(i, d) in moves {
        y[i] += d;
    }
    y
}

fn finite(v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite("finite-difference stencil".into()))
    }
}

pub fn fd_gradient<F>(mut f: F, x: &[f64], h: f64) -> Result<Vec<f64>>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    if !(h > 0.0) {
        return Err(Error::param("difference step must be positive"));
    }
    (0..x.len())
        .map(|i| {
            let fp = f(&shifted(x, &[(i, h)]))?;
            let fm = f(&shifted(x, &[(i, -h)]))?;
            finite((fp - fm) / (2.0 * h))
        })
        .collect()
}

/// Symmetric Hessian from central second differences.
pub fn fd_hessian<F>(mut f: F, x: &[f64], h: f64) -> Result<Matrix>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    if !(h > 0.0) {
        return Err(Error::param("difference step must be positive"));
    }
    let n = x.len();
    let f0 = f(x)?;
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        let fp = f(&shifted(x, &[(i, h)]))?;
        let fm = f(&shifted(x, &[(i, -h)]))?;
        m[(i, i)] = finite((fp - 2.0 * f0 + fm) / (h * h))?;
        for j in i + 1..n {
            let pp = f(&shifted(x, &[(i, h), (j, h)]))?;
            let pm = f(&shifted(x, &[(i, h), (j, -h)]))?;
            let mp = f(&shifted(x, &[(i, -h), (j, h)]))?;
            let mm = f(&shifted(x, &[(i, -h), (j, -h)]))?;
            let d = finite((pp - pm - mp + mm) / (4.0 * h * h))?;
            m[(i, j)] = d;
            m[(j, i)] = d;
        }
    }
    Ok(m)
}

use super::linalg::Matrix;
use crate::error::{Error, Result};

pub const MAX_EIG_DIM: usize = 16;

/// Eigen-decomposition of a symmetric matrix, values in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct SymEigen {
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: Matrix,
}

/// Cyclic Jacobi rotation.
///
/// Sweeps until the off-diagonal Frobenius norm is at most `1e-13 * ‖A‖`.
pub fn sym_eigs(a: &Matrix) -> Result<SymEigen> {
    let n = a.dim();
    if n == 0 {
        return Err(Error::param("empty matrix"));
    }
    if n > MAX_EIG_DIM {
        return Err(Error::Unsupported(format!("eigen-solve limited to n <= {MAX_EIG_DIM}")));
    }
    if !a.is_finite() {
        return Err(Error::NonFinite("matrix entry".into()));
    }
    let scale = a.frobenius_norm();
    if a.max_asymmetry() > 1e-10 * (1.0 + scale) {
        return Err(Error::param("matrix is not symmetric"));
    }
    let mut m = a.symmetrized();
    let mut v = Matrix::identity(n);
    let threshold = 1e-13 * scale;
    let max_sweeps = 100;
    let mut converged = false;
    for _ in 0..max_sweeps {
        if off_norm(&m) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    if !converged && off_norm(&m) > threshold {
        return Err(Error::NoConvergence { iterations: max_sweeps, detail: "Jacobi sweeps".into() });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].total_cmp(&m[(i, i)]));
    let values = order.iter().map(|&i| m[(i, i)]).collect();
    let vectors = Matrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok(SymEigen { values, vectors })
}

fn off_norm(m: &Matrix) -> f64 {
    let n = m.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            s += 2.0 * m[(i, j)] * m[(i, j)];
        }
    }
    s.sqrt()
}

fn rotate(m: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    if apq == 0.0 {
        return;
    }
    let n = m.dim();
    let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
    let t = sign / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    for k in 0..n {
        let (kp, kq) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = c * kp - s * kq;
        m[(k, q)] = s * kp + c * kq;
    }
    for k in 0..n {
        let (pk, qk) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = c * pk - s * qk;
        m[(q, k)] = s * pk + c * qk;
    }
    m[(p, q)] = 0.0;
    m[(q, p)] = 0.0;
    for k in 0..n {
        let (kp, kq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = c * kp - s * kq;
        v[(k, q)] = s * kp + c * kq;
    }
}

/// Largest residual `‖A q_k - λ_k q_k‖` over all pairs.
pub fn eigen_residual(a: &Matrix, e: &SymEigen) -> f64 {
    (0..a.dim())
        .map(|k| {
            let q = e.vectors.column(k);
            let aq = a.mul_vec(&q);
            aq.iter().zip(&q).map(|(x, y)| (x - e.values[k] * y).powi(2)).sum::<f64>().sqrt()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_matrix_sorted_descending() {
        let e = sym_eigs(&Matrix::diagonal(&[1.0, 3.0, -2.0])).unwrap();
        assert_eq!(e.values, vec![3.0, 1.0, -2.0]);
    }

    #[test]
    fn two_by_two_closed_form() {
        let a = Matrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let e = sym_eigs(&a).unwrap();
        assert!((e.values[0] - 3.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
        assert!(eigen_residual(&a, &e) < 1e-13);
    }

    #[test]
    fn rejects_asymmetric_and_nan() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(sym_eigs(&a), Err(Error::Parameter(_))));
        let b = Matrix::from_rows(&[vec![f64::NAN, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(sym_eigs(&b), Err(Error::NonFinite(_))));
    }

    #[test]
    fn rejects_large_dimension() {
        assert!(matches!(sym_eigs(&Matrix::identity(17)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn zero_matrix() {
        let e = sym_eigs(&Matrix::zeros(3)).unwrap();
        assert_eq!(e.values, vec![0.0; 3]);
    }
}

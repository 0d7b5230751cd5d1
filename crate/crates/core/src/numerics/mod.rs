//! Numerical kernels: finite differences, symmetric eigen-solve, root
//! bracketing, adaptive Runge–Kutta and quasi-random sampling.

mod eigen;
mod fd;
pub mod linalg;
mod rk45;
mod root;
mod sampling;
mod tolerance;

pub use eigen::{eigen_residual, sym_eigs, SymEigen, MAX_EIG_DIM};
pub use fd::{fd_gradient, fd_hessian, gradient_step, hessian_step};
pub use linalg::Matrix;
pub use rk45::{rk45, EventHit, OdeOptions, Trajectory};
pub use root::{bisect_predicate, bracketed_root};
pub use sampling::{gaussian, halton, random_orthogonal, random_unit_vector, rng_from_seed, SphereSampler};
pub use tolerance::{ToleranceProfile, TOLERANCE_ENV};

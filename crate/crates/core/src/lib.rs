//! Cone invariants, conformally invariant Hessians and explicit radial and
//! one-variable solutions of `λ(A[v]) ∈ ∂Γ` and `f(λ(A[v])) = 1`.

// `!(x > 0.0)` is used deliberately so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod cone;
pub mod conformal;
pub mod counterex;
pub mod error;
pub mod numerics;
pub mod radial;
pub mod ricci;
pub mod symfun;

pub use error::{Error, Result};

//! Closed-form radial solutions of `λ(A[v]) ∈ ∂Γ` and the Dirichlet problem
//! on annuli.

mod dirichlet;
mod profile;

pub use dirichlet::{
    enumerate_families, families_for, solve_dirichlet, solve_with_mu, DirichletAnnulus, FamilyCase, RadialCase,
    Regularity, SolveReport,
};
pub use profile::{
    lipschitz_approximation, lipschitz_gap, monotonicity_report, radial_eigenvalues, Monotonicity, RadialFamily,
    RadialParts, RadialProfile, MU_ONE_TOL,
};

use crate::cone::ConeSpec;
use crate::conformal::{ProfileFn, Radial, ScalarField};
use crate::error::Result;
use std::sync::Arc;

impl RadialProfile {
    /// The profile as a field on ℝⁿ centered at the origin.
    pub fn to_field(&self, n: usize) -> Result<ScalarField> {
        let p = *self;
        let profile: ProfileFn = Arc::new(move |r| p.jet(r));
        let domain = crate::conformal::Domain::all();
        Ok(ScalarField::new(Radial::new(vec![0.0; n], format!("{:?}", p.family), profile, domain)?))
    }
}

/// Scale-free distance of `λ(A[v])(r)` from `∂Γ`: the cone margin at `λ/|λ|`.
pub fn cone_boundary_residual(cone: &ConeSpec, p: &RadialProfile, r: f64) -> Result<f64> {
    let l = radial_eigenvalues(p, r, cone.dim())?;
    let norm = l.norm();
    // `A[v]` vanishes identically on the `C − 2 log r` and constant pieces;
    // what is left there is rounding noise with no direction.
    let (v, d1, d2) = p.jet(r)?;
    let size = (-2.0 * v).exp() * (d2.abs() + d1 * d1 + (d1 / r).abs());
    if norm <= 1e-12 * size {
        return Ok(0.0);
    }
    Ok(cone.margin(&l.scale(1.0 / norm))?.abs())
}

//! The Möbius Hessian `A[v]`, the conformal Hessian `A^u`, and the action of
//! conformal maps on scalar fields.

mod field;
mod hessian;
mod mobius;

pub use field::{
    constant, Affine, Bubble, Cubic, DerivativeMethod, Domain, DomainShape, ExpOf, Field, FromFn, Jet, LogOf, OneDim,
    ProfileFn, Radial, ScalarField, ValueFn, EXCLUSION_RADIUS,
};
pub use hessian::{conformal_hessian_u, mobius_hessian, mobius_matrix, onedim_eigenvalues, HessianResult};
pub use mobius::{apply_mobius, gradient_vanishing_map, kelvin_map, kelvin_transform, MobiusGenerator, MobiusMap};

//! Acceptance checks for `conformal-cones`. Everything lives under `tests/`.

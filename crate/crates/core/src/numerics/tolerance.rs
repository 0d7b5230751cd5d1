use serde::{Deserialize, Serialize};

use super::OdeOptions;
use crate::error::{Error, Result};

/// Environment variable holding `key=value` overrides for [`ToleranceProfile`].
pub const TOLERANCE_ENV: &str = "CONFORMAL_CONES_TOLERANCES";

/// Numerical tolerances shared across kernels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceProfile {
    /// Half-width factor of the boundary band: `tol * (1 + |λ|)`.
    pub boundary: f64,
    pub root: f64,
    pub ode_rtol: f64,
    pub ode_atol: f64,
    /// Relative step for finite-difference Hessians.
    pub fd_hessian: f64,
    /// Relative step for finite-difference gradients.
    pub fd_gradient: f64,
    /// Drift allowed in conserved quantities before a trajectory is flagged.
    pub drift: f64,
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        Self {
            boundary: 1e-8,
            root: 1e-12,
            ode_rtol: 1e-13,
            ode_atol: 1e-15,
            fd_hessian: 1e-4,
            fd_gradient: 1e-5,
            drift: 1e-6,
        }
    }
}

impl ToleranceProfile {
    /// Applies comma-separated `key=value` overrides, e.g. `boundary=1e-6,drift=1e-5`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) =
                item.split_once('=').ok_or_else(|| Error::param(format!("tolerance override '{item}' lacks '='")))?;
            let v: f64 = v.trim().parse().map_err(|_| Error::param(format!("tolerance '{k}' is not a number")))?;
            let slot = match k.trim() {
                "boundary" => &mut self.boundary,
                "root" => &mut self.root,
                "ode_rtol" => &mut self.ode_rtol,
                "ode_atol" => &mut self.ode_atol,
                "fd_hessian" => &mut self.fd_hessian,
                "fd_gradient" => &mut self.fd_gradient,
                "drift" => &mut self.drift,
                other => return Err(Error::param(format!("unknown tolerance '{other}'"))),
            };
            *slot = v;
        }
        self.validate()?;
        Ok(self)
    }

    /// Default profile with overrides from [`TOLERANCE_ENV`] if set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(TOLERANCE_ENV) {
            Ok(s) => Self::default().with_overrides(&s),
            Err(_) => Ok(Self::default()),
        }
    }

    /// Integrator controls built from `ode_rtol` and `ode_atol`.
    pub fn ode_options(&self) -> OdeOptions {
        OdeOptions { rtol: self.ode_rtol, atol: self.ode_atol, ..OdeOptions::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let all =
            [self.boundary, self.root, self.ode_rtol, self.ode_atol, self.fd_hessian, self.fd_gradient, self.drift];
        if all.iter().all(|t| t.is_finite() && *t > 0.0) {
            Ok(())
        } else {
            Err(Error::param("tolerances must be positive and finite"))
        }
    }
}

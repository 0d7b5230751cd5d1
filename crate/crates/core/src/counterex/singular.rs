use serde::Serialize;

use crate::error::{Error, Result};
use crate::radial::{RadialFamily, RadialProfile};

/// Radial solutions with an isolated singularity at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "example", rename_all = "kebab-case")]
pub enum SingularKind {
    /// `α log r`, `α > 0`
    LogPositive { alpha: f64 },
    /// `2/(μ−1) log(1 − r^{1−μ})`, `μ ∈ [0, 1)`
    PowerMinus { mu: f64 },
    /// `α log r`, `α ∈ (−2, 0)`
    LogNegative { alpha: f64 },
    /// `2/(μ−1) log(1 + r^{1−μ})`, `μ ∈ [0, 1)`
    PowerPlus { mu: f64 },
    /// `2/(μ−1) log(1 + e^{(μ−1)a/2} r^{1−μ})`, `μ > 1`
    PowerPlusShifted { mu: f64, a: f64 },
}

/// A singular profile with the eigenvalue direction it realizes:
/// `λ(A[v]) = C(r) d` with `C > 0`, `d` listed radial entry first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularProfile {
    pub kind: SingularKind,
    pub profile: RadialProfile,
    pub direction: Vec<f64>,
}

/// Worst agreement of `λ(A[v])(r)` with `C(r) d` over a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DirectionCheck {
    pub max_residual: f64,
    pub min_scalar: f64,
}

impl DirectionCheck {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_residual <= tol && self.min_scalar > 0.0
    }
}

fn direction(n: usize, first: f64, rest: f64) -> Vec<f64> {
    let mut d = vec![rest; n];
    d[0] = first;
    d
}

pub fn singular_profile(kind: SingularKind, n: usize) -> Result<SingularProfile> {
    if n < 2 {
        return Err(Error::param("dimension must be at least 2"));
    }
    let unit_mu = |mu: f64| {
        if (0.0..1.0).contains(&mu) {
            Ok(())
        } else {
            Err(Error::param(format!("mu must lie in [0, 1), got {mu}")))
        }
    };
    let (family, dir) = match kind {
        SingularKind::LogPositive { alpha } => {
            if !(alpha > 0.0 && alpha.is_finite()) {
                return Err(Error::param(format!("alpha must be positive, got {alpha}")));
            }
            (RadialFamily::LogLinear { c1: 0.0, c2: alpha }, direction(n, 1.0, -1.0))
        }
        SingularKind::PowerMinus { mu } => {
            unit_mu(mu)?;
            (RadialFamily::PowerLogMinus { mu, c7: -1.0, c8: 1.0 }, direction(n, mu, -1.0))
        }
        SingularKind::LogNegative { alpha } => {
            if !(alpha > -2.0 && alpha < 0.0) {
                return Err(Error::param(format!("alpha must lie in (-2, 0), got {alpha}")));
            }
            (RadialFamily::LogLinear { c1: 0.0, c2: alpha }, direction(n, -1.0, 1.0))
        }
        SingularKind::PowerPlus { mu } => {
            unit_mu(mu)?;
            (RadialFamily::PowerLogPlus { mu, c3: 1.0, c4: 1.0 }, direction(n, -mu, 1.0))
        }
        SingularKind::PowerPlusShifted { mu, a } => {
            if !(mu > 1.0 && mu.is_finite() && a.is_finite()) {
                return Err(Error::param(format!("need mu > 1 and finite a, got mu = {mu}, a = {a}")));
            }
            let c3 = ((mu - 1.0) * a / 2.0).exp();
            (RadialFamily::PowerLogPlus { mu, c3, c4: 1.0 }, direction(n, -mu, 1.0))
        }
    };
    Ok(SingularProfile { kind, profile: RadialProfile::unscaled(family)?, direction: dir })
}

impl SingularProfile {
    /// `C(r)` from the closed form `±½ e^{−2v} v′ (v + 2 log r)′`.
    pub fn scalar(&self, r: f64) -> Result<f64> {
        let (v, d1, _) = self.profile.jet(r)?;
        let sign = -self.direction[1];
        Ok(sign * 0.5 * (-2.0 * v).exp() * d1 * (d1 + 2.0 / r))
    }

    /// Compares `e^{−2v}(V, ν, …)` with `C(r) d` at each radius.
    pub fn check_direction(&self, radii: &[f64]) -> Result<DirectionCheck> {
        let mut out = DirectionCheck { max_residual: 0.0, min_scalar: f64::INFINITY };
        for &r in radii {
            let p = self.profile.parts(r)?;
            let first = p.weight * p.big_v;
            let rest = p.weight * p.nu;
            let c = self.scalar(r)?;
            let scale = 1.0 + c.abs();
            let res = ((first - c * self.direction[0]).abs() + (rest - c * self.direction[1]).abs()) / scale;
            out.max_residual = out.max_residual.max(res);
            out.min_scalar = out.min_scalar.min(c);
        }
        Ok(out)
    }
}

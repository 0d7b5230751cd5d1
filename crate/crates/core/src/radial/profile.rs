use serde::Serialize;

use crate::cone::EigenTuple;
use crate::error::{Error, Result};

/// Closed-form radial families. Each formula is written in the normalized
/// radius `ρ = r / scale`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum RadialFamily {
    /// `c1 + c2 log ρ`, `c2 ∉ {0, −2}`
    LogLinear { c1: f64, c2: f64 },
    /// `2/(μ−1) log(c3 ρ^{1−μ} + c4)`, `c3, c4 > 0`
    PowerLogPlus { mu: f64, c3: f64, c4: f64 },
    /// `2/(μ−1) log(c7 ρ^{1−μ} + c8)`, `c7 c8 < 0`
    PowerLogMinus { mu: f64, c7: f64, c8: f64 },
    /// `c`
    Constant { c: f64 },
    /// `c − 2 log ρ`
    ConstMinus2Log { c: f64 },
    /// `max{c1 − 2 log ρ, c2}`
    MaxKink { c1: f64, c2: f64 },
}

/// Distance from 1 below which `μ` is treated as exactly 1.
pub const MU_ONE_TOL: f64 = 1e-9;

pub(crate) fn is_one(mu: f64) -> bool {
    (mu - 1.0).abs() < MU_ONE_TOL
}

/// `r ↦ shift + g(r / scale)` with `g` one of the [`RadialFamily`] formulas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialProfile {
    pub family: RadialFamily,
    pub scale: f64,
    pub shift: f64,
    /// Open interval of radii on which the formula is finite.
    pub domain: (f64, f64),
}

/// `(v, v′, v″)` of a normalized family at `ρ`.
type Jet3 = (f64, f64, f64);

fn power_log(mu: f64, c: f64, d: f64, rho: f64) -> Jet3 {
    let m = 1.0 - mu;
    let k = 2.0 / (mu - 1.0);
    let p = c * rho.powf(m);
    let q = p + d;
    let dq = m * p / rho;
    let ddq = m * (m - 1.0) * p / (rho * rho);
    (k * q.ln(), k * dq / q, k * (ddq / q - dq * dq / (q * q)))
}

/// Radii where `c ρ^{1−μ} + d > 0`.
fn power_log_domain(mu: f64, c: f64, d: f64) -> (f64, f64) {
    if c > 0.0 && d >= 0.0 {
        return (0.0, f64::INFINITY);
    }
    let m = 1.0 - mu;
    if m == 0.0 {
        return (0.0, f64::INFINITY);
    }
    let t = (-d / c).powf(1.0 / m);
    // c ρ^m > −d
    match (c > 0.0, m > 0.0) {
        (true, true) | (false, false) => (t, f64::INFINITY),
        (true, false) | (false, true) => (0.0, t),
    }
}

fn check_finite(values: &[f64]) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::param("profile parameters must be finite"))
    }
}

impl RadialFamily {
    fn validate(&self) -> Result<()> {
        match *self {
            RadialFamily::LogLinear { c1, c2 } => {
                check_finite(&[c1, c2])?;
                if c2 == 0.0 || c2 == -2.0 {
                    return Err(Error::param("log-linear slope 0 or -2 is the constant family"));
                }
            }
            RadialFamily::PowerLogPlus { mu, c3, c4 } => {
                check_finite(&[mu, c3, c4])?;
                if !(mu >= 0.0) || is_one(mu) {
                    return Err(Error::param(format!("mu must lie in [0,1) or (1,inf), got {mu}")));
                }
                if !(c3 > 0.0 && c4 > 0.0) {
                    return Err(Error::param("need c3 > 0 and c4 > 0"));
                }
            }
            RadialFamily::PowerLogMinus { mu, c7, c8 } => {
                check_finite(&[mu, c7, c8])?;
                if !(mu >= 0.0) || is_one(mu) {
                    return Err(Error::param(format!("mu must lie in [0,1) or (1,inf), got {mu}")));
                }
                if !(c7 * c8 < 0.0) {
                    return Err(Error::param("need c7 * c8 < 0"));
                }
            }
            RadialFamily::Constant { c } | RadialFamily::ConstMinus2Log { c } => check_finite(&[c])?,
            RadialFamily::MaxKink { c1, c2 } => check_finite(&[c1, c2])?,
        }
        Ok(())
    }

    fn normalized_domain(&self) -> (f64, f64) {
        match *self {
            RadialFamily::PowerLogMinus { mu, c7, c8 } => power_log_domain(mu, c7, c8),
            _ => (0.0, f64::INFINITY),
        }
    }

    /// `(V, ν)` of the power-log families without the cancellation in
    /// `−v″ + ½v′²`: with `s = cρ^{1−μ}/q` and `t = d/q`,
    /// `ν = 2st/ρ²` and `V = −μν`.
    fn power_log_parts(&self, rho: f64) -> Option<(f64, f64)> {
        let (mu, c, d) = match *self {
            RadialFamily::PowerLogPlus { mu, c3, c4 } => (mu, c3, c4),
            RadialFamily::PowerLogMinus { mu, c7, c8 } => (mu, c7, c8),
            _ => return None,
        };
        let p = c * rho.powf(1.0 - mu);
        let q = p + d;
        let nu = 2.0 * (p / q) * (d / q) / (rho * rho);
        Some((-mu * nu, nu))
    }

    /// Kink of `MaxKink` in normalized radius.
    fn kink(&self) -> Option<f64> {
        match *self {
            RadialFamily::MaxKink { c1, c2 } => Some(((c1 - c2) / 2.0).exp()),
            _ => None,
        }
    }

    fn jet(&self, rho: f64) -> Jet3 {
        match *self {
            RadialFamily::LogLinear { c1, c2 } => (c1 + c2 * rho.ln(), c2 / rho, -c2 / (rho * rho)),
            RadialFamily::PowerLogPlus { mu, c3, c4 } => power_log(mu, c3, c4, rho),
            RadialFamily::PowerLogMinus { mu, c7, c8 } => power_log(mu, c7, c8, rho),
            RadialFamily::Constant { c } => (c, 0.0, 0.0),
            RadialFamily::ConstMinus2Log { c } => (c - 2.0 * rho.ln(), -2.0 / rho, 2.0 / (rho * rho)),
            RadialFamily::MaxKink { c1, c2 } => {
                let a = c1 - 2.0 * rho.ln();
                if a >= c2 {
                    (a, -2.0 / rho, 2.0 / (rho * rho))
                } else {
                    (c2, 0.0, 0.0)
                }
            }
        }
    }

    /// The family of `ρ ↦ g(R²/ρ) − 2 log(ρ/R)`.
    fn kelvin(&self, big_r: f64) -> RadialFamily {
        let lr = big_r.ln();
        match *self {
            RadialFamily::LogLinear { c1, c2 } => {
                RadialFamily::LogLinear { c1: c1 + 2.0 * c2 * lr + 2.0 * lr, c2: -c2 - 2.0 }
            }
            RadialFamily::PowerLogPlus { mu, c3, c4 } => {
                let m = 1.0 - mu;
                RadialFamily::PowerLogPlus { mu, c3: c4 * big_r.powf(-m), c4: c3 * big_r.powf(m) }
            }
            RadialFamily::PowerLogMinus { mu, c7, c8 } => {
                let m = 1.0 - mu;
                RadialFamily::PowerLogMinus { mu, c7: c8 * big_r.powf(-m), c8: c7 * big_r.powf(m) }
            }
            RadialFamily::Constant { c } => RadialFamily::ConstMinus2Log { c: c + 2.0 * lr },
            RadialFamily::ConstMinus2Log { c } => RadialFamily::Constant { c: c - 2.0 * lr },
            RadialFamily::MaxKink { c1, c2 } => RadialFamily::MaxKink { c1: c2 + 2.0 * lr, c2: c1 - 2.0 * lr },
        }
    }
}

/// `e^{−2v}(V, ν, …, ν)` at one radius, before sorting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialParts {
    /// `−v″ + ½(v′)²`
    pub big_v: f64,
    /// `−v′/r − ½(v′)²`
    pub nu: f64,
    /// `e^{−2v}`
    pub weight: f64,
}

impl RadialParts {
    /// `|V + μν| / (1 + |V| + μ|ν|)`
    pub fn residual(&self, mu: f64) -> f64 {
        (self.big_v + mu * self.nu).abs() / (1.0 + self.big_v.abs() + mu * self.nu.abs())
    }

    pub fn eigenvalues(&self, n: usize) -> Result<EigenTuple> {
        let mut l = vec![self.weight * self.nu; n];
        l[0] = self.weight * self.big_v;
        EigenTuple::new(l)
    }
}

impl RadialProfile {
    pub fn new(family: RadialFamily, scale: f64, shift: f64) -> Result<Self> {
        family.validate()?;
        if !(scale > 0.0 && scale.is_finite() && shift.is_finite()) {
            return Err(Error::param("scale must be positive and shift finite"));
        }
        let (lo, hi) = family.normalized_domain();
        Ok(Self { family, scale, shift, domain: (lo * scale, hi * scale) })
    }

    pub fn unscaled(family: RadialFamily) -> Result<Self> {
        Self::new(family, 1.0, 0.0)
    }

    pub fn contains(&self, r: f64) -> bool {
        r > self.domain.0 && r < self.domain.1
    }

    fn check(&self, r: f64) -> Result<()> {
        if !r.is_finite() {
            return Err(Error::NonFinite("radius".into()));
        }
        if !self.contains(r) {
            return Err(Error::domain(format!("r = {r} outside ({}, {})", self.domain.0, self.domain.1)));
        }
        Ok(())
    }

    /// Radius of the corner of a `MaxKink` profile.
    pub fn kink(&self) -> Option<f64> {
        self.family.kink().map(|k| k * self.scale)
    }

    fn at_kink(&self, r: f64) -> bool {
        self.kink().is_some_and(|k| (r - k).abs() <= 1e-12 * (1.0 + k))
    }

    /// `(v, v′, v″)`; at the corner of a `MaxKink` profile this is an error.
    pub fn jet(&self, r: f64) -> Result<Jet3> {
        self.check(r)?;
        if self.at_kink(r) {
            return Err(Error::domain(format!("r = {r} is the corner of a Lipschitz profile; use one_sided_slopes")));
        }
        let (v, d1, d2) = self.family.jet(r / self.scale);
        Ok((self.shift + v, d1 / self.scale, d2 / (self.scale * self.scale)))
    }

    pub fn value(&self, r: f64) -> Result<f64> {
        self.check(r)?;
        Ok(self.shift + self.family.jet(r / self.scale).0)
    }

    /// Left and right derivatives.
    pub fn one_sided_slopes(&self, r: f64) -> Result<(f64, f64)> {
        self.check(r)?;
        if self.at_kink(r) {
            return Ok((-2.0 / r, 0.0));
        }
        let d = self.jet(r)?.1;
        Ok((d, d))
    }

    pub fn parts(&self, r: f64) -> Result<RadialParts> {
        let (v, d1, d2) = self.jet(r)?;
        let weight = (-2.0 * v).exp();
        if let Some((big_v, nu)) = self.family.power_log_parts(r / self.scale) {
            let k = self.scale * self.scale;
            return Ok(RadialParts { big_v: big_v / k, nu: nu / k, weight });
        }
        Ok(RadialParts { big_v: -d2 + 0.5 * d1 * d1, nu: -d1 / r - 0.5 * d1 * d1, weight })
    }

    /// `v(R²/r) − 2 log(r/R)` as a profile of the same kind.
    pub fn kelvin(&self, big_r: f64) -> Result<Self> {
        if !(big_r > 0.0 && big_r.is_finite()) {
            return Err(Error::param("kelvin radius must be positive"));
        }
        Self::new(self.family.kelvin(big_r / self.scale), self.scale, self.shift)
    }
}

/// `λ(A[v])` at radius `r`, sorted.
pub fn radial_eigenvalues(p: &RadialProfile, r: f64, n: usize) -> Result<EigenTuple> {
    if n < 2 {
        return Err(Error::param("dimension must be at least 2"));
    }
    p.parts(r)?.eigenvalues(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Monotonicity {
    pub v_nonincreasing: bool,
    pub v_plus_2log_nondecreasing: bool,
}

/// Sampled monotonicity of `v` and `v + 2 log r` on an increasing grid.
pub fn monotonicity_report(p: &RadialProfile, grid: &[f64]) -> Result<Monotonicity> {
    let values = grid.iter().map(|&r| p.value(r).map(|v| (r, v))).collect::<Result<Vec<_>>>()?;
    let tol = 1e-10;
    let mut out = Monotonicity { v_nonincreasing: true, v_plus_2log_nondecreasing: true };
    for w in values.windows(2) {
        let ((r0, v0), (r1, v1)) = (w[0], w[1]);
        if r1 <= r0 {
            return Err(Error::param("grid must be strictly increasing"));
        }
        if v1 - v0 > tol * (1.0 + v0.abs()) {
            out.v_nonincreasing = false;
        }
        let (a, b) = (v0 + 2.0 * r0.ln(), v1 + 2.0 * r1.ln());
        if a - b > tol * (1.0 + a.abs()) {
            out.v_plus_2log_nondecreasing = false;
        }
    }
    Ok(out)
}

/// Smooth `v_μ` with `v_μ(1/2) = 2 log 2`, `v_μ(2) = 0`, approximating `max{−2 log r, 0}`.
pub fn lipschitz_approximation(mu: f64) -> Result<RadialProfile> {
    if !(mu > 1.0 && mu.is_finite()) {
        return Err(Error::param(format!("mu must exceed 1, got {mu}")));
    }
    let p = 2f64.powf(mu - 1.0);
    let c = p / (p + 1.0);
    RadialProfile::unscaled(RadialFamily::PowerLogPlus { mu, c3: c, c4: c })
}

/// `sup |v_μ − max{−2 log r, 0}|` over `points` evenly spaced radii in `[1/2, 2]`.
pub fn lipschitz_gap(mu: f64, points: usize) -> Result<f64> {
    let p = lipschitz_approximation(mu)?;
    let points = points.max(2);
    let mut worst = 0f64;
    for i in 0..points {
        let r = 0.5 + 1.5 * i as f64 / (points - 1) as f64;
        let target = (-2.0 * r.ln()).max(0.0);
        worst = worst.max((p.value(r)? - target).abs());
    }
    Ok(worst)
}

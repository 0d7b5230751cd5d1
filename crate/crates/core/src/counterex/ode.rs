use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{rk45, OdeOptions, ToleranceProfile, Trajectory};

/// Initial data for `v″ + ((γ−1)/2)(v′)² + e^{2v} = 0` at `x₁ = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OdeSetup {
    pub gamma: f64,
    pub v0: f64,
    pub w0: f64,
}

impl OdeSetup {
    pub fn new(gamma: f64, v0: f64, w0: f64) -> Result<Self> {
        if !(gamma.is_finite() && v0.is_finite() && w0.is_finite()) {
            return Err(Error::NonFinite("ODE setup".into()));
        }
        if !v0.exp().is_normal() {
            return Err(Error::param(format!("e^v0 must be a positive normal float, v0 = {v0}")));
        }
        Ok(Self { gamma, v0, w0 })
    }

    /// `δ = (1 − γ)/2`
    pub fn delta(&self) -> f64 {
        0.5 * (1.0 - self.gamma)
    }

    /// `φ₀ = e^{v₀}`
    pub fn phi0(&self) -> f64 {
        self.v0.exp()
    }

    /// `I_δ(φ₀, w₀)`
    pub fn initial_integral(&self) -> f64 {
        first_integral(self.delta(), self.phi0(), self.w0)
    }
}

/// `I_δ(φ, w)`, conserved along `φ′ = φw`, `w′ = −φ² + δw²`.
pub fn first_integral(delta: f64, phi: f64, w: f64) -> f64 {
    if delta == 1.0 {
        2.0 * phi.ln() + w * w / (phi * phi)
    } else {
        phi.powf(2.0 - 2.0 * delta) / (1.0 - delta) + phi.powf(-2.0 * delta) * w * w
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Existence {
    Global,
    FiniteTime,
}

/// Whether the solution through `s` exists on all of ℝ.
pub fn existence_predicate(s: &OdeSetup) -> Existence {
    let g = s.gamma;
    if (-1.0..=1.0).contains(&g) {
        return Existence::Global;
    }
    let lower = if s.w0 == 0.0 { f64::NEG_INFINITY } else { -1.0 - 2.0 * (2.0 * s.v0).exp() / (s.w0 * s.w0) };
    if g < -1.0 && g > lower {
        Existence::Global
    } else {
        Existence::FiniteTime
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum OdeOutcome {
    GlobalOnWindow,
    BlowupDetected { t: f64 },
}

impl OdeOutcome {
    pub fn existence(&self) -> Existence {
        match self {
            OdeOutcome::GlobalOnWindow => Existence::Global,
            OdeOutcome::BlowupDetected { .. } => Existence::FiniteTime,
        }
    }
}

/// One accepted step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OdeSample {
    pub t: f64,
    pub phi: f64,
    pub w: f64,
    pub integral: f64,
}

/// Both half-trajectories merged into increasing `t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OdeTrajectory {
    pub setup: OdeSetup,
    pub window: f64,
    pub threshold: f64,
    pub samples: Vec<OdeSample>,
    pub forward: OdeOutcome,
    pub backward: OdeOutcome,
    /// `max |I(t) − I(0)| / (1 + |I(0)|)`
    pub drift: f64,
}

impl OdeTrajectory {
    /// Global only if neither direction blew up.
    pub fn existence(&self) -> Existence {
        if self.forward.existence() == Existence::Global && self.backward.existence() == Existence::Global {
            Existence::Global
        } else {
            Existence::FiniteTime
        }
    }

    pub fn initial_integral(&self) -> f64 {
        self.setup.initial_integral()
    }
}

/// Integration controls for [`integrate_ode`].
pub fn ode_options() -> OdeOptions {
    ToleranceProfile::default().ode_options()
}

fn blowup_time(hit_t: f64, phi: f64, w: f64, delta: f64, t_end: f64) -> f64 {
    // Quadratic growth y′ ≈ c y² leaves t* − t ≈ y / y′.
    let (dphi, dw) = (phi * w, -phi * phi + delta * w * w);
    let size = phi.abs() + w.abs();
    let rate = (phi.signum() * dphi + w.signum() * dw).abs();
    let extra = if rate > 0.0 { (size / rate).min(t_end.abs()) } else { 0.0 };
    hit_t + t_end.signum() * extra
}

type ToSample = Box<dyn Fn(f64, &[f64]) -> OdeSample>;

fn half(s: &OdeSetup, t_end: f64, threshold: f64, opts: &OdeOptions) -> Result<(Vec<OdeSample>, OdeOutcome)> {
    let delta = s.delta();
    let (traj, to_sample): (Trajectory, ToSample) = if delta > 1.0 {
        // With c² = δ − 1 the first integral factors as φ^{−2δ}(w + σφ/c)(w − σφ/c).
        // The factor z = w + σφ/c that tends to zero (σ = 1 forward, −1
        // backward) obeys z′ = z(δz + σkφ), so carrying (φ, z) keeps its
        // relative accuracy where the two terms of I cancel.
        let c = (delta - 1.0).sqrt();
        let sigma = t_end.signum();
        let k = sigma * (1.0 - 2.0 * delta) / c;
        let b = sigma / c;
        let rhs = move |_t: f64, y: &[f64]| {
            let (phi, z) = (y[0], y[1]);
            vec![phi * (z - b * phi), z * (delta * z + k * phi)]
        };
        let event = move |_t: f64, y: &[f64]| y[0].abs() + (y[1] - b * y[0]).abs() - threshold;
        let phi0 = s.phi0();
        let traj = rk45(rhs, 0.0, &[phi0, s.w0 + b * phi0], t_end, opts, Some(&event))?;
        let f = move |t: f64, y: &[f64]| OdeSample {
            t,
            phi: y[0],
            w: y[1] - b * y[0],
            integral: y[0].powf(-2.0 * delta) * y[1] * (y[1] - 2.0 * b * y[0]),
        };
        (traj, Box::new(f))
    } else {
        let rhs = move |_t: f64, y: &[f64]| vec![y[0] * y[1], -y[0] * y[0] + delta * y[1] * y[1]];
        let event = move |_t: f64, y: &[f64]| y[0].abs() + y[1].abs() - threshold;
        let traj = rk45(rhs, 0.0, &[s.phi0(), s.w0], t_end, opts, Some(&event))?;
        let f =
            move |t: f64, y: &[f64]| OdeSample { t, phi: y[0], w: y[1], integral: first_integral(delta, y[0], y[1]) };
        (traj, Box::new(f))
    };
    let mut samples: Vec<OdeSample> = traj.t.iter().zip(&traj.y).map(|(&t, y)| to_sample(t, y)).collect();
    let outcome = match &traj.event {
        None => OdeOutcome::GlobalOnWindow,
        Some(hit) => {
            let p = to_sample(hit.t, &hit.y);
            samples.push(p);
            OdeOutcome::BlowupDetected { t: blowup_time(hit.t, p.phi, p.w, delta, t_end) }
        }
    };
    Ok((samples, outcome))
}

/// Integrates the phase system `φ′ = φw`, `w′ = −φ² + δw²` on `[−T, T]`,
/// stopping either side once `|φ| + |w| > M`.
pub fn integrate_ode(s: &OdeSetup, window: f64, threshold: f64) -> Result<OdeTrajectory> {
    integrate_ode_with(s, window, threshold, &ode_options())
}

pub fn integrate_ode_with(s: &OdeSetup, window: f64, threshold: f64, opts: &OdeOptions) -> Result<OdeTrajectory> {
    if !(window > 0.0 && window.is_finite()) {
        return Err(Error::param(format!("window must be positive, got {window}")));
    }
    if !(threshold >= 1e6) {
        return Err(Error::param(format!("blow-up threshold must be at least 1e6, got {threshold}")));
    }
    let (fwd, forward) = half(s, window, threshold, opts)?;
    let (bwd, backward) = half(s, -window, threshold, opts)?;
    let i0 = s.initial_integral();
    let samples: Vec<OdeSample> = bwd.into_iter().rev().chain(fwd.into_iter().skip(1)).collect();
    let drift = samples.iter().map(|p| (p.integral - i0).abs()).fold(0.0, f64::max) / (1.0 + i0.abs());
    Ok(OdeTrajectory { setup: *s, window, threshold, samples, forward, backward, drift })
}

use std::sync::Arc;

use serde::Serialize;

use super::ode::{ode_options, OdeSetup};
use crate::conformal::{mobius_hessian, onedim_eigenvalues, Domain, OneDim, ProfileFn, ScalarField};
use crate::error::{Error, Result};
use crate::numerics::{rk45, Trajectory};
use crate::symfun::{MaxForm, SymFun};

/// Default half-width of the verification window in `x₁`.
pub const NONBUBBLE_WINDOW: f64 = 3.0;
/// Default number of dense-output points on the window.
pub const NONBUBBLE_POINTS: usize = 1000;

/// `v = v(x₁)` solving `v″ + ((s−1)/2)(v′)² + e^{2v} = 0`, so that
/// `λ(A[v]) = (1 + sθ, −θ, …, −θ)` with `θ = ½(v′)² e^{−2v}` and the
/// max-form `f⁽⁰⁾` equals 1 along `v`.
#[derive(Clone)]
pub struct NonBubble {
    pub s: f64,
    pub n: usize,
    pub setup: OdeSetup,
    pub window: f64,
    pub f0: SymFun,
    pub field: ScalarField,
    profile: ProfileFn,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NonBubbleReport {
    pub points: usize,
    /// `max |f⁽⁰⁾(λ(A[v])) − 1|`
    pub max_residual: f64,
    /// `min θ`
    pub min_theta: f64,
    pub max_theta: f64,
    /// Worst deviation of `λ(A[v])` from `(1 + sθ, −θ, …)`.
    pub form_residual: f64,
    /// `min_c max_x ‖A[v](x) − cI‖_F`
    pub constant_fit_distance: f64,
    pub best_constant: f64,
    /// Largest relative gap between the one-variable eigenvalues and those of the full matrix.
    pub hessian_agreement: f64,
}

impl NonBubbleReport {
    pub fn passed(&self, residual_tol: f64, fit_floor: f64) -> bool {
        self.max_residual <= residual_tol && self.min_theta >= -1e-10 && self.constant_fit_distance > fit_floor
    }
}

fn pick(fwd: &Trajectory, bwd: &Trajectory, t: f64) -> Option<Vec<f64>> {
    if t >= 0.0 {
        fwd.eval(t)
    } else {
        bwd.eval(t)
    }
}

/// Builds the entire solution for `s ∈ (0, 1]` from `v(0) = v₀`, `v′(0) = w₀`.
pub fn nonbubble_entire(s: f64, n: usize, v0: f64, w0: f64, window: f64) -> Result<NonBubble> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::param(format!("s must lie in (0, 1], got {s}")));
    }
    if n < 2 {
        return Err(Error::param("dimension must be at least 2"));
    }
    if !(window > 0.0 && window.is_finite()) {
        return Err(Error::param(format!("window must be positive, got {window}")));
    }
    let setup = OdeSetup::new(s, v0, w0)?;
    let delta = setup.delta();
    let rhs = move |_t: f64, y: &[f64]| vec![y[0] * y[1], -y[0] * y[0] + delta * y[1] * y[1]];
    let y0 = [setup.phi0(), w0];
    let opts = ode_options();
    let fwd = rk45(rhs, 0.0, &y0, window, &opts, None)?;
    let bwd = rk45(rhs, 0.0, &y0, -window, &opts, None)?;
    let half = (s - 1.0) / 2.0;
    let profile: ProfileFn = Arc::new(move |t: f64| {
        let y =
            pick(&fwd, &bwd, t).ok_or_else(|| Error::domain(format!("x1 = {t} lies outside the integrated window")))?;
        let (phi, w) = (y[0], y[1]);
        if !(phi > 0.0) {
            return Err(Error::NonFinite(format!("phi = {phi} at x1 = {t}")));
        }
        Ok((phi.ln(), w, -half * w * w - phi * phi))
    });
    let label = format!("non-bubble(s={s})");
    let field = ScalarField::new(OneDim::new(n, label, profile.clone(), Domain::all())?);
    let f0 = SymFun::new(MaxForm::new(n, s)?);
    Ok(NonBubble { s, n, setup, window, f0, field, profile })
}

impl NonBubble {
    /// `(v, v′, v″)` at `x₁`.
    pub fn profile(&self, x1: f64) -> Result<(f64, f64, f64)> {
        (self.profile)(x1)
    }

    /// Equally spaced points covering `[−window, window]`.
    pub fn grid(&self, points: usize) -> Vec<f64> {
        let m = points.max(2);
        (0..m).map(|i| -self.window + 2.0 * self.window * i as f64 / (m - 1) as f64).collect()
    }

    pub fn verify(&self, points: usize) -> Result<NonBubbleReport> {
        let grid = self.grid(points);
        let mut rep = NonBubbleReport {
            points: grid.len(),
            max_residual: 0.0,
            min_theta: f64::INFINITY,
            max_theta: f64::NEG_INFINITY,
            form_residual: 0.0,
            constant_fit_distance: 0.0,
            best_constant: 0.0,
            hessian_agreement: 0.0,
        };
        let mut pairs = Vec::with_capacity(grid.len());
        for (i, &x1) in grid.iter().enumerate() {
            let (v, d1, d2) = self.profile(x1)?;
            let raw = [(-d2 + 0.5 * d1 * d1) * (-2.0 * v).exp(), -0.5 * d1 * d1 * (-2.0 * v).exp()];
            let l = onedim_eigenvalues(self.n, v, d1, d2)?;
            let theta = 0.5 * d1 * d1 * (-2.0 * v).exp();
            rep.max_residual = rep.max_residual.max((self.f0.value(&l)? - 1.0).abs());
            rep.min_theta = rep.min_theta.min(theta);
            rep.max_theta = rep.max_theta.max(theta);
            let form = ((raw[0] - (1.0 + self.s * theta)).abs() + (raw[1] + theta).abs()) / (1.0 + theta);
            rep.form_residual = rep.form_residual.max(form);
            pairs.push(raw);
            if i % 50 == 0 {
                let mut x = vec![0.0; self.n];
                x[0] = x1;
                let full = mobius_hessian(&self.field, &x, None)?;
                let gap = full.eigenvalues.max_abs_diff(&l) / (1.0 + l.norm());
                rep.hessian_agreement = rep.hessian_agreement.max(gap);
            }
        }
        let (c, d) = best_constant_fit(&pairs, self.n);
        rep.best_constant = c;
        rep.constant_fit_distance = d;
        Ok(rep)
    }
}

/// `min_c max_k ‖diag(a_k, b_k, …, b_k) − cI‖_F` by ternary search; the
/// objective is convex in `c` and its minimizer lies between the extreme traces.
fn best_constant_fit(pairs: &[[f64; 2]], n: usize) -> (f64, f64) {
    let m = (n - 1) as f64;
    let worst = |c: f64| pairs.iter().map(|[a, b]| ((a - c).powi(2) + m * (b - c).powi(2)).sqrt()).fold(0.0, f64::max);
    let means = pairs.iter().map(|[a, b]| (a + m * b) / n as f64);
    let (mut lo, mut hi) = means.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), x| (l.min(x), h.max(x)));
    for _ in 0..200 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if worst(m1) <= worst(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let c = 0.5 * (lo + hi);
    (c, worst(c))
}

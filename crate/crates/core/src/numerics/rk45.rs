use serde::Serialize;

use crate::error::{Error, Result};

/// Step-size and accuracy controls for [`rk45`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub initial_step: Option<f64>,
    pub max_step: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self { rtol: 1e-10, atol: 1e-12, initial_step: None, max_step: f64::INFINITY, max_steps: 5_000_000 }
    }
}

/// Where an event function crossed zero from below.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EventHit {
    pub t: f64,
    pub y: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
struct Segment {
    t0: f64,
    h: f64,
    coef: [Vec<f64>; 5],
}

impl Segment {
    fn eval(&self, t: f64) -> Vec<f64> {
        let th = (t - self.t0) / self.h;
        let th1 = 1.0 - th;
        let [r1, r2, r3, r4, r5] = &self.coef;
        (0..r1.len()).map(|i| r1[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])))).collect()
    }
}

/// Accepted steps of an integration plus a continuous interpolant.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub t: Vec<f64>,
    pub y: Vec<Vec<f64>>,
    pub event: Option<EventHit>,
    pub rejected_steps: usize,
    segments: Vec<Segment>,
}

impl Trajectory {
    fn start(t0: f64, y0: Vec<f64>) -> Self {
        Self { t: vec![t0], y: vec![y0], event: None, rejected_steps: 0, segments: Vec::new() }
    }

    pub fn t_final(&self) -> f64 {
        *self.t.last().expect("trajectory holds its initial point")
    }

    pub fn y_final(&self) -> &[f64] {
        self.y.last().expect("trajectory holds its initial point")
    }

    pub fn steps(&self) -> usize {
        self.segments.len()
    }

    /// Dense output at `t`, or `None` outside the integrated range.
    pub fn eval(&self, t: f64) -> Option<Vec<f64>> {
        let (a, b) = (self.t[0], self.t_final());
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if !(t >= lo && t <= hi) {
            return None;
        }
        if self.segments.is_empty() {
            return Some(self.y[0].clone());
        }
        let forward = b >= a;
        let k = self.t.partition_point(|&s| if forward { s <= t } else { s >= t });
        let k = k.saturating_sub(1).min(self.segments.len() - 1);
        Some(self.segments[k].eval(t))
    }
}

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A2: [f64; 1] = [0.2];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0];
const A6: [f64; 5] = [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0];
const B: [f64; 6] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0];
const E: [f64; 7] =
    [71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0, -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0];
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

fn combine(y: &[f64], h: f64, coefs: &[f64], ks: &[Vec<f64>]) -> Vec<f64> {
    let mut out = y.to_vec();
    for (c, k) in coefs.iter().zip(ks) {
        if *c != 0.0 {
            for (o, ki) in out.iter_mut().zip(k) {
                *o += h * c * ki;
            }
        }
    }
    out
}

fn scaled_rms(v: &[f64], y: &[f64], opts: &OdeOptions) -> f64 {
    let s: f64 = v.iter().zip(y).map(|(vi, yi)| (vi / (opts.atol + opts.rtol * yi.abs())).powi(2)).sum();
    (s / v.len().max(1) as f64).sqrt()
}

fn initial_step<F>(f: &mut F, t0: f64, y0: &[f64], f0: &[f64], dir: f64, span: f64, o: &OdeOptions) -> f64
where
    F: FnMut(f64, &[f64]) -> Vec<f64>,
{
    let d0 = scaled_rms(y0, y0, o);
    let d1 = scaled_rms(f0, y0, o);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let y1 = combine(y0, dir * h0, &[1.0], &[f0.to_vec()]);
    let f1 = f(t0 + dir * h0, &y1);
    let diff: Vec<f64> = f1.iter().zip(f0).map(|(a, b)| a - b).collect();
    let d2 = scaled_rms(&diff, y0, o) / h0;
    let m = d1.max(d2);
    let h1 = if !(m > 1e-15) || !m.is_finite() { (h0 * 1e-3).max(1e-6) } else { (0.01 / m).powf(0.2) };
    (100.0 * h0).min(h1).min(span).min(o.max_step)
}

/// Dormand–Prince 5(4) with dense output.
///
/// Integrates from `t0` toward `t_end` (either direction). When `event` is
/// given, integration stops where it first changes sign from negative to
/// non-negative, located on the interpolant to within 1e-12 in `t`.
/// Event function; integration stops where it changes sign.
pub type Event<'a> = &'a dyn Fn(f64, &[f64]) -> f64;

pub fn rk45<F>(
    mut f: F,
    t0: f64,
    y0: &[f64],
    t_end: f64,
    opts: &OdeOptions,
    event: Option<Event<'_>>,
) -> Result<Trajectory>
where
    F: FnMut(f64, &[f64]) -> Vec<f64>,
{
    if !(opts.rtol > 0.0 && opts.atol > 0.0) {
        return Err(Error::param("ODE tolerances must be positive"));
    }
    if !t0.is_finite() || !t_end.is_finite() || y0.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("ODE initial data".into()));
    }
    let mut traj = Trajectory::start(t0, y0.to_vec());
    if t_end == t0 {
        return Ok(traj);
    }
    let dir = (t_end - t0).signum();
    let span = (t_end - t0).abs();
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut k1 = f(t, &y);
    let mut h = match opts.initial_step {
        Some(h) if h > 0.0 => h.min(span),
        _ => initial_step(&mut f, t0, &y, &k1, dir, span, opts),
    };
    let mut g_old = event.map(|g| g(t, &y));
    let mut last_rejected = false;
    loop {
        if traj.steps() + traj.rejected_steps > opts.max_steps {
            return Err(Error::NoConvergence {
                iterations: opts.max_steps,
                detail: format!("step budget exhausted at t = {t}"),
            });
        }
        let h_min = 16.0 * f64::EPSILON * t.abs().max(1e-300);
        if h < h_min {
            return Err(Error::StepUnderflow { t, partial: Box::new(traj) });
        }
        h = h.min(opts.max_step);
        let mut last = false;
        if (t + dir * h - t_end) * dir >= 0.0 {
            h = (t_end - t).abs();
            last = true;
        }
        let hs = dir * h;
        let k2 = f(t + C[1] * hs, &combine(&y, hs, &A2, &[k1.clone()]));
        let k3 = f(t + C[2] * hs, &combine(&y, hs, &A3, &[k1.clone(), k2.clone()]));
        let k4 = f(t + C[3] * hs, &combine(&y, hs, &A4, &[k1.clone(), k2.clone(), k3.clone()]));
        let k5 = f(t + C[4] * hs, &combine(&y, hs, &A5, &[k1.clone(), k2.clone(), k3.clone(), k4.clone()]));
        let k6 = f(t + hs, &combine(&y, hs, &A6, &[k1.clone(), k2.clone(), k3.clone(), k4.clone(), k5.clone()]));
        let ks = [k1.clone(), k2, k3, k4, k5, k6];
        let y_new = combine(&y, hs, &B, &ks);
        let k7 = f(t + hs, &y_new);
        let all =
            [ks[0].clone(), ks[1].clone(), ks[2].clone(), ks[3].clone(), ks[4].clone(), ks[5].clone(), k7.clone()];
        let err_vec: Vec<f64> =
            (0..y.len()).map(|i| hs * E.iter().zip(&all).map(|(e, k)| e * k[i]).sum::<f64>()).collect();
        let s: f64 = err_vec
            .iter()
            .enumerate()
            .map(|(i, e)| (e / (opts.atol + opts.rtol * y[i].abs().max(y_new[i].abs()))).powi(2))
            .sum();
        let mut err = (s / y.len().max(1) as f64).sqrt();
        if !err.is_finite() || y_new.iter().any(|v| !v.is_finite()) || k7.iter().any(|v| !v.is_finite()) {
            err = f64::INFINITY;
        }
        if err <= 1.0 {
            let ydiff: Vec<f64> = y_new.iter().zip(&y).map(|(a, b)| a - b).collect();
            let bspl: Vec<f64> = (0..y.len()).map(|i| hs * k1[i] - ydiff[i]).collect();
            let r4: Vec<f64> = (0..y.len()).map(|i| ydiff[i] - hs * k7[i] - bspl[i]).collect();
            let r5: Vec<f64> =
                (0..y.len()).map(|i| hs * D.iter().zip(&all).map(|(d, k)| d * k[i]).sum::<f64>()).collect();
            let seg = Segment { t0: t, h: hs, coef: [y.clone(), ydiff, bspl, r4, r5] };
            let t_new = if last { t_end } else { t + hs };
            if let (Some(g), Some(go)) = (event, g_old) {
                let gn = g(t_new, &y_new);
                if go < 0.0 && gn >= 0.0 {
                    let (mut a, mut b) = (t, t_new);
                    while (b - a).abs() > 1e-12 * (1.0 + t.abs()) {
                        let m = 0.5 * (a + b);
                        if g(m, &seg.eval(m)) >= 0.0 {
                            b = m;
                        } else {
                            a = m;
                        }
                    }
                    let ye = seg.eval(b);
                    traj.segments.push(seg);
                    traj.t.push(b);
                    traj.y.push(ye.clone());
                    traj.event = Some(EventHit { t: b, y: ye });
                    return Ok(traj);
                }
                g_old = Some(gn);
            }
            traj.segments.push(seg);
            traj.t.push(t_new);
            traj.y.push(y_new.clone());
            t = t_new;
            y = y_new;
            k1 = k7;
            if last {
                return Ok(traj);
            }
            let mut fac = if err == 0.0 { 5.0 } else { 0.9 * err.powf(-0.2) };
            fac = fac.clamp(0.2, if last_rejected { 1.0 } else { 5.0 });
            h *= fac;
            last_rejected = false;
        } else {
            traj.rejected_steps += 1;
            let fac = if err.is_finite() { (0.9 * err.powf(-0.2)).max(0.1) } else { 0.1 };
            h *= fac.min(0.9);
            last_rejected = true;
        }
    }
}

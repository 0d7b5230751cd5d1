use crate::error::{Error, Result};

const MAX_ITER: usize = 400;

/// Root of `f` on `[lo, hi]` by bisection with secant acceleration.
///
/// Stops when the bracket is narrower than `tol` or an exact zero is hit.
pub fn bracketed_root<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let (mut fa, mut fb) = (f(a), f(b));
    if !fa.is_finite() || !fb.is_finite() {
        return Err(Error::NonFinite("root bracket endpoint".into()));
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange { lo: a, hi: b });
    }
    for it in 0..MAX_ITER {
        if b - a <= tol {
            return Ok(0.5 * (a + b));
        }
        // Even steps try the secant point; odd steps bisect to guarantee shrinkage.
        let mid = 0.5 * (a + b);
        let x = if it % 2 == 0 {
            let s = b - fb * (b - a) / (fb - fa);
            if s.is_finite() && s > a && s < b {
                s
            } else {
                mid
            }
        } else {
            mid
        };
        if x <= a || x >= b {
            return Ok(x);
        }
        let fx = f(x);
        if !fx.is_finite() {
            return Err(Error::NonFinite("root iterate".into()));
        }
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    Err(Error::NoConvergence { iterations: MAX_ITER, detail: "bracketed root".into() })
}

/// Boundary of a predicate that holds at `lo` and fails at `hi`.
pub fn bisect_predicate<P>(mut inside: P, lo: f64, hi: f64, tol: f64) -> f64
where
    P: FnMut(f64) -> bool,
{
    let (mut a, mut b) = (lo, hi);
    while (b - a).abs() > tol {
        let m = 0.5 * (a + b);
        if m <= a.min(b) || m >= a.max(b) {
            break;
        }
        if inside(m) {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

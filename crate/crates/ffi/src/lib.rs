//! C interface to `conformal-cones`.
//!
//! Every function returns a [`CcStatus`]; results go through out-pointers.
//! Objects are opaque handles created by constructors such as `cc_cone_gamma_k`
//! and released by the matching `cc_*_free`. On failure the message is kept per
//! thread and read back with [`cc_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use conformal_cones::cone::{extremal_cone, ConeSpec, EigenTuple, Extremal, Region};
use conformal_cones::counterex::{
    existence_predicate, integrate_ode, sigma_half_constant, Existence, OdeSetup, OdeTrajectory,
};
use conformal_cones::radial::{solve_dirichlet, DirichletAnnulus, Regularity, SolveReport};
use conformal_cones::ricci::{ricci_to_schouten, schouten_to_ricci};
use conformal_cones::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    Unsupported = 4,
    Numerical = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcRegion {
    Interior = 0,
    Boundary = 1,
    Exterior = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcExtremal {
    Largest = 0,
    Smallest = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcRegularity {
    Smooth = 0,
    LipschitzKink = 1,
    Unsolvable = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcExistence {
    Global = 0,
    FiniteTime = 1,
}

/// A symmetric cone in ℝⁿ.
pub struct CcCone(ConeSpec);

/// Outcome of a radial Dirichlet problem on an annulus.
pub struct CcDirichlet(SolveReport);

/// A sampled trajectory of the reduced ODE.
pub struct CcTrajectory(OdeTrajectory);

struct Failure(CcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::DimensionMismatch { .. } | Error::Parameter(_) => CcStatus::InvalidArgument,
            Error::Domain(_) => CcStatus::Domain,
            Error::Unsupported(_) => CcStatus::Unsupported,
            _ => CcStatus::Numerical,
        };
        Failure(status, e.to_string())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CcStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(format!("internal panic: {msg}"));
            CcStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(CcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn slice<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn boxed<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(Box::into_raw(Box::new(value)));
    Ok(())
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Static, NUL-terminated version string.
#[no_mangle]
pub extern "C" fn cc_version() -> *const c_char {
    const V: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!(),
    };
    V.as_ptr()
}

/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn cc_cone_gamma_k(n: usize, k: usize, out: *mut *mut CcCone) -> CcStatus {
    guard(|| boxed(out, CcCone(ConeSpec::gamma_k(n, k)?)))
}

/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn cc_cone_neg_dual_gamma_k(n: usize, k: usize, out: *mut *mut CcCone) -> CcStatus {
    guard(|| boxed(out, CcCone(ConeSpec::neg_dual_gamma_k(n, k)?)))
}

/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn cc_cone_circular(n: usize, c: f64, out: *mut *mut CcCone) -> CcStatus {
    guard(|| boxed(out, CcCone(ConeSpec::circular(n, c)?)))
}

/// Weights apply to λ sorted in descending order.
///
/// # Safety
/// `weights` must point to `n` readable doubles; `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn cc_cone_ordered_linear(weights: *const f64, n: usize, out: *mut *mut CcCone) -> CcStatus {
    guard(|| {
        let w = slice(weights, n, "weights")?;
        boxed(out, CcCone(ConeSpec::ordered_linear(w.to_vec())?))
    })
}

/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn cc_cone_extremal(mu: f64, which: CcExtremal, n: usize, out: *mut *mut CcCone) -> CcStatus {
    let which = match which {
        CcExtremal::Largest => Extremal::Largest,
        CcExtremal::Smallest => Extremal::Smallest,
    };
    guard(|| boxed(out, CcCone(extremal_cone(mu, which, n)?)))
}

/// `ℝⁿ ∖ (−Γ̄)` as a new handle.
///
/// # Safety
/// `cone` must be a live handle; `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn cc_cone_negation_dual(cone: *const CcCone, out: *mut *mut CcCone) -> CcStatus {
    guard(|| {
        let c = borrow(cone, "cone")?;
        boxed(out, CcCone(c.0.negation_dual()))
    })
}

/// # Safety
/// `cone` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cc_cone_free(cone: *mut CcCone) {
    free(cone)
}

/// # Safety
/// `cone` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cc_cone_dim(cone: *const CcCone, out: *mut usize) -> CcStatus {
    guard(|| write(out, borrow(cone, "cone")?.0.dim(), "out"))
}

/// `μ⁺`; an infinite value is reported as `INFINITY`.
///
/// # Safety
/// `cone` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cc_cone_mu_plus(cone: *const CcCone, out: *mut f64) -> CcStatus {
    guard(|| write(out, borrow(cone, "cone")?.0.mu_plus()?, "out"))
}

/// `μ⁻`; an infinite value is reported as `INFINITY`.
///
/// # Safety
/// `cone` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cc_cone_mu_minus(cone: *const CcCone, out: *mut f64) -> CcStatus {
    guard(|| write(out, borrow(cone, "cone")?.0.mu_minus()?, "out"))
}

/// Classifies `lambda` (any order) against the cone with boundary band `tol`.
/// `margin` may be null.
///
/// # Safety
/// `cone` must be a live handle, `lambda` must point to `len` doubles and
/// `region` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cc_cone_classify(
    cone: *const CcCone,
    lambda: *const f64,
    len: usize,
    tol: f64,
    region: *mut CcRegion,
    margin: *mut f64,
) -> CcStatus {
    guard(|| {
        let c = borrow(cone, "cone")?;
        let l = EigenTuple::new(slice(lambda, len, "lambda")?.to_vec())?;
        let pos = c.0.contains(&l, tol)?;
        let r = match pos.region {
            Region::Interior => CcRegion::Interior,
            Region::Boundary => CcRegion::Boundary,
            Region::Exterior => CcRegion::Exterior,
        };
        write(region, r, "region")?;
        if !margin.is_null() {
            margin.write(pos.margin);
        }
        Ok(())
    })
}

/// Radial `λ(A[v]) ∈ ∂Γ` on `a < r < b` with `v(a) = alpha`, `v(b) = beta`.
/// An unsolvable problem still yields a handle; query its regularity.
///
/// # Safety
/// `cone` must be a live handle; `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn cc_dirichlet_solve(
    cone: *const CcCone,
    a: f64,
    b: f64,
    alpha: f64,
    beta: f64,
    out: *mut *mut CcDirichlet,
) -> CcStatus {
    guard(|| {
        let c = borrow(cone, "cone")?;
        let prob = DirichletAnnulus::new(a, b, alpha, beta)?;
        boxed(out, CcDirichlet(solve_dirichlet(&c.0, &prob)?))
    })
}

/// # Safety
/// `sol` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cc_dirichlet_regularity(sol: *const CcDirichlet, out: *mut CcRegularity) -> CcStatus {
    guard(|| {
        let r = match borrow(sol, "solution")?.0.regularity {
            Regularity::Smooth => CcRegularity::Smooth,
            Regularity::LipschitzKink => CcRegularity::LipschitzKink,
            Regularity::Unsolvable => CcRegularity::Unsolvable,
        };
        write(out, r, "out")
    })
}

/// `v(r)`. Fails with `Unsupported` when the problem has no solution.
///
/// # Safety
/// `sol` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cc_dirichlet_value(sol: *const CcDirichlet, r: f64, out: *mut f64) -> CcStatus {
    guard(|| {
        let rep = &borrow(sol, "solution")?.0;
        let p = rep
            .profile
            .as_ref()
            .ok_or_else(|| Failure(CcStatus::Unsupported, format!("no solution: {}", rep.clause)))?;
        write(out, p.value(r)?, "out")
    })
}

/// # Safety
/// `sol` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cc_dirichlet_free(sol: *mut CcDirichlet) {
    free(sol)
}

fn existence(e: Existence) -> CcExistence {
    match e {
        Existence::Global => CcExistence::Global,
        Existence::FiniteTime => CcExistence::FiniteTime,
    }
}

/// Closed-form prediction for `φ″ = γ e^{2φ}`-type data `(γ, v₀, w₀)`.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cc_ode_existence(gamma: f64, v0: f64, w0: f64, out: *mut CcExistence) -> CcStatus {
    guard(|| write(out, existence(existence_predicate(&OdeSetup::new(gamma, v0, w0)?)), "out"))
}

/// Integrates the phase system on `[-window, window]`, stopping either side
/// once `|φ| + |w|` exceeds `threshold`.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn cc_ode_integrate(
    gamma: f64,
    v0: f64,
    w0: f64,
    window: f64,
    threshold: f64,
    out: *mut *mut CcTrajectory,
) -> CcStatus {
    guard(|| {
        let s = OdeSetup::new(gamma, v0, w0)?;
        boxed(out, CcTrajectory(integrate_ode(&s, window, threshold)?))
    })
}

/// # Safety
/// `tr` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cc_ode_len(tr: *const CcTrajectory, out: *mut usize) -> CcStatus {
    guard(|| write(out, borrow(tr, "trajectory")?.0.samples.len(), "out"))
}

/// Sample `index` in increasing `t`. Any of the out-pointers may be null.
///
/// # Safety
/// `tr` must be a live handle; non-null out-pointers must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cc_ode_sample(
    tr: *const CcTrajectory,
    index: usize,
    t: *mut f64,
    phi: *mut f64,
    w: *mut f64,
) -> CcStatus {
    guard(|| {
        let samples = &borrow(tr, "trajectory")?.0.samples;
        let s = samples.get(index).ok_or_else(|| {
            Failure(CcStatus::InvalidArgument, format!("index {index} out of range 0..{}", samples.len()))
        })?;
        for (p, v) in [(t, s.t), (phi, s.phi), (w, s.w)] {
            if !p.is_null() {
                p.write(v);
            }
        }
        Ok(())
    })
}

/// Largest relative drift of the first integral along the trajectory.
///
/// # Safety
/// `tr` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cc_ode_drift(tr: *const CcTrajectory, out: *mut f64) -> CcStatus {
    guard(|| write(out, borrow(tr, "trajectory")?.0.drift, "out"))
}

/// Existence as observed by the integration.
///
/// # Safety
/// `tr` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cc_ode_observed(tr: *const CcTrajectory, out: *mut CcExistence) -> CcStatus {
    guard(|| write(out, existence(borrow(tr, "trajectory")?.0.existence()), "out"))
}

/// # Safety
/// `tr` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cc_ode_free(tr: *mut CcTrajectory) {
    free(tr)
}

unsafe fn convert(
    input: *const f64,
    n: usize,
    out: *mut f64,
    f: fn(&EigenTuple) -> conformal_cones::Result<EigenTuple>,
) -> CcStatus {
    guard(|| {
        let l = EigenTuple::new(slice(input, n, "input")?.to_vec())?;
        let m = f(&l)?;
        if out.is_null() {
            return Err(null("out"));
        }
        std::slice::from_raw_parts_mut(out, n).copy_from_slice(m.values());
        Ok(())
    })
}

/// Ricci eigenvalues from Schouten eigenvalues, written in descending order.
///
/// # Safety
/// `lambda` must point to `n` readable doubles and `out` to `n` writable ones.
#[no_mangle]
pub unsafe extern "C" fn cc_schouten_to_ricci(lambda: *const f64, n: usize, out: *mut f64) -> CcStatus {
    convert(lambda, n, out, schouten_to_ricci)
}

/// Inverse of [`cc_schouten_to_ricci`].
///
/// # Safety
/// `ricci` must point to `n` readable doubles and `out` to `n` writable ones.
#[no_mangle]
pub unsafe extern "C" fn cc_ricci_to_schouten(ricci: *const f64, n: usize, out: *mut f64) -> CcStatus {
    convert(ricci, n, out, ricci_to_schouten)
}

/// Constant of the `−σ_{1/2}` gradient blow-up family in dimension `n`.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cc_sigma_half_constant(n: usize, out: *mut f64) -> CcStatus {
    guard(|| write(out, sigma_half_constant(n)?, "out"))
}

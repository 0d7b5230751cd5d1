use std::fmt;

use serde::Serialize;

use super::profile::{is_one, RadialFamily, RadialProfile};
use crate::cone::ConeSpec;
use crate::error::{Error, Result};

/// Cases of the classification of smooth radial solutions of `λ(A[v]) ∈ ∂Γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum RadialCase {
    /// log-linear, `ν > 0`, needs `μ⁺ = 1`
    A,
    /// power-log with `μ⁺`, `ν > 0`
    B,
    /// log-linear, `ν < 0`, needs `μ⁻ = 1`
    C,
    /// power-log with `μ⁻`, `ν < 0`
    D,
    /// constant or `C − 2 log r`
    E,
}

impl fmt::Display for RadialCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RadialCase::A => "a",
            RadialCase::B => "b",
            RadialCase::C => "c",
            RadialCase::D => "d",
            RadialCase::E => "e",
        };
        f.write_str(s)
    }
}

/// An admissible family for a given cone.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyCase {
    pub case: RadialCase,
    /// The μ entering the formula, if any.
    pub mu: Option<f64>,
    pub formula: String,
    pub constraints: String,
}

/// Every radial family that can solve `λ(A[v]) ∈ ∂Γ`, keyed on `μ±` of the cone.
pub fn enumerate_families(cone: &ConeSpec) -> Result<Vec<FamilyCase>> {
    let mu_plus = cone.mu_plus()?;
    let mu_minus = cone.mu_minus()?;
    Ok(families_for(mu_plus, mu_minus))
}

pub fn families_for(mu_plus: f64, mu_minus: f64) -> Vec<FamilyCase> {
    let mut out = Vec::new();
    if is_one(mu_plus) {
        out.push(FamilyCase {
            case: RadialCase::A,
            mu: Some(1.0),
            formula: "C1 + C2 log r".into(),
            constraints: "C2 in (-2, 0)".into(),
        });
    } else if mu_plus.is_finite() {
        out.push(FamilyCase {
            case: RadialCase::B,
            mu: Some(mu_plus),
            formula: format!("2/(mu-1) log(C3 r^(1-mu) + C4), mu = {mu_plus}"),
            constraints: "C3 > 0, C4 > 0".into(),
        });
    }
    if is_one(mu_minus) {
        out.push(FamilyCase {
            case: RadialCase::C,
            mu: Some(1.0),
            formula: "C5 + C6 log r".into(),
            constraints: "C6 in (-inf, -2) or (0, inf)".into(),
        });
    } else if mu_minus.is_finite() {
        out.push(FamilyCase {
            case: RadialCase::D,
            mu: Some(mu_minus),
            formula: format!("2/(mu-1) log(C7 r^(1-mu) + C8), mu = {mu_minus}"),
            constraints: "C7 * C8 < 0, r where C7 r^(1-mu) + C8 > 0".into(),
        });
    }
    out.push(FamilyCase {
        case: RadialCase::E,
        mu: None,
        formula: "C or C - 2 log r".into(),
        constraints: "C real".into(),
    });
    out
}

/// Boundary data on `{a < |x| < b}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DirichletAnnulus {
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl DirichletAnnulus {
    pub fn new(a: f64, b: f64, alpha: f64, beta: f64) -> Result<Self> {
        if ![a, b, alpha, beta].iter().all(|x| x.is_finite()) {
            return Err(Error::param("annulus data must be finite"));
        }
        if !(a > 0.0 && a < b) {
            return Err(Error::param(format!("need 0 < a < b, got a = {a}, b = {b}")));
        }
        Ok(Self { a, b, alpha, beta })
    }

    /// `log(b/a)`
    pub fn log_ratio(&self) -> f64 {
        (self.b / self.a).ln()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regularity {
    Smooth,
    LipschitzKink,
    Unsolvable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub solvable: bool,
    pub regularity: Regularity,
    pub profile: Option<RadialProfile>,
    pub case: Option<RadialCase>,
    /// The rule that decided the outcome.
    pub clause: String,
    /// `(|v(a) − α|, |v(b) − β|)`
    pub boundary_residual: Option<(f64, f64)>,
}

fn band(s: f64, l: f64) -> f64 {
    1e-12 * (1.0 + s.abs() + l)
}

/// The solution `v = shift + k log(c ρ^{1−μ} + d)` through `(a, α)` and `(b, β)`.
fn power_log_solution(mu: f64, prob: &DirichletAnnulus, plus: bool) -> Result<RadialProfile> {
    let m = 1.0 - mu;
    let ratio = prob.b / prob.a;
    let target = ((mu - 1.0) / 2.0 * (prob.beta - prob.alpha)).exp();
    let c = (target - 1.0) / (ratio.powf(m) - 1.0);
    let d = 1.0 - c;
    let family = if plus {
        RadialFamily::PowerLogPlus { mu, c3: c, c4: d }
    } else {
        RadialFamily::PowerLogMinus { mu, c7: c, c8: d }
    };
    RadialProfile::new(family, prob.a, prob.alpha)
}

/// Decides solvability of `λ(A[v]) ∈ ∂Γ` on the annulus and builds the solution.
pub fn solve_dirichlet(cone: &ConeSpec, prob: &DirichletAnnulus) -> Result<SolveReport> {
    let mu_plus = cone.mu_plus()?;
    let mu_minus = cone.mu_minus()?;
    solve_with_mu(mu_plus, mu_minus, prob)
}

/// [`solve_dirichlet`] from precomputed `μ⁺`, `μ⁻`.
pub fn solve_with_mu(mu_plus: f64, mu_minus: f64, prob: &DirichletAnnulus) -> Result<SolveReport> {
    let prob = DirichletAnnulus::new(prob.a, prob.b, prob.alpha, prob.beta)?;
    let l = prob.log_ratio();
    let s = prob.beta - prob.alpha;
    let tol = band(s, l);
    let at_zero = s.abs() <= tol;
    let at_lower = (s + 2.0 * l).abs() <= tol;
    let inside = s < 0.0 && s > -2.0 * l && !at_zero && !at_lower;

    let log_linear = || {
        let c2 = s / l;
        RadialProfile::new(RadialFamily::LogLinear { c1: 0.0, c2 }, prob.a, prob.alpha)
    };

    let (profile, regularity, case, clause) = if at_zero {
        (
            RadialProfile::new(RadialFamily::Constant { c: 0.0 }, prob.a, prob.alpha)?,
            Regularity::Smooth,
            RadialCase::E,
            "beta - alpha = 0: constant solution".to_string(),
        )
    } else if at_lower {
        (
            RadialProfile::new(RadialFamily::ConstMinus2Log { c: 0.0 }, prob.a, prob.alpha)?,
            Regularity::Smooth,
            RadialCase::E,
            "beta - alpha = -2 log(b/a): solution C - 2 log r".to_string(),
        )
    } else if inside && mu_plus.is_infinite() {
        let c1 = 0.0;
        let c2 = s;
        (
            RadialProfile::new(RadialFamily::MaxKink { c1, c2 }, prob.a, prob.alpha)?,
            Regularity::LipschitzKink,
            RadialCase::E,
            "mu+ = inf and beta - alpha in (-2 log(b/a), 0): v = max{alpha - 2 log(r/a), beta}".to_string(),
        )
    } else if inside {
        if is_one(mu_plus) {
            (log_linear()?, Regularity::Smooth, RadialCase::A, "mu+ = 1, beta - alpha in (-2 log(b/a), 0)".into())
        } else {
            (
                power_log_solution(mu_plus, &prob, true)?,
                Regularity::Smooth,
                RadialCase::B,
                format!("mu+ = {mu_plus}, beta - alpha in (-2 log(b/a), 0)"),
            )
        }
    } else if mu_minus.is_infinite() {
        let side = if s > 0.0 { "beta - alpha > 0" } else { "beta - alpha < -2 log(b/a)" };
        return Ok(SolveReport {
            solvable: false,
            regularity: Regularity::Unsolvable,
            profile: None,
            case: None,
            clause: format!("mu- = inf and {side}"),
            boundary_residual: None,
        });
    } else if is_one(mu_minus) {
        (log_linear()?, Regularity::Smooth, RadialCase::C, "mu- = 1, beta - alpha outside [-2 log(b/a), 0]".into())
    } else {
        (
            power_log_solution(mu_minus, &prob, false)?,
            Regularity::Smooth,
            RadialCase::D,
            format!("mu- = {mu_minus}, beta - alpha outside [-2 log(b/a), 0]"),
        )
    };
    let ra = (profile.value(prob.a)? - prob.alpha).abs();
    let rb = (profile.value(prob.b)? - prob.beta).abs();
    Ok(SolveReport {
        solvable: true,
        regularity,
        profile: Some(profile),
        case: Some(case),
        clause,
        boundary_residual: Some((ra, rb)),
    })
}

use serde::Serialize;

use super::SymFun;
use crate::cone::{ConeSpec, EigenTuple};
use crate::error::{Error, Result};
use crate::numerics::rng_from_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

/// One condition with its worst sampled value and the point where it occurred.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionCheck {
    pub name: &'static str,
    pub status: CheckStatus,
    pub worst: Option<f64>,
    pub witness: Option<Vec<f64>>,
    pub detail: String,
}

impl ConditionCheck {
    fn na(name: &'static str, detail: impl Into<String>) -> Self {
        Self { name, status: CheckStatus::NotApplicable, worst: None, witness: None, detail: detail.into() }
    }

    fn judged(name: &'static str, pass: bool, worst: f64, witness: Vec<f64>, detail: impl Into<String>) -> Self {
        Self {
            name,
            status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
            worst: Some(worst),
            witness: Some(witness),
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub function: String,
    pub cone: String,
    pub samples: usize,
    pub checks: Vec<ConditionCheck>,
}

impl ConditionReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&ConditionCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Tracks the minimum of a sampled quantity and where it occurred.
struct Worst {
    value: f64,
    at: Vec<f64>,
}

impl Worst {
    fn min() -> Self {
        Self { value: f64::INFINITY, at: Vec::new() }
    }

    fn update(&mut self, v: f64, at: &[f64]) {
        if v < self.value {
            self.value = v;
            self.at = at.to_vec();
        }
    }
}

/// Sampled check of positivity, boundary vanishing, the gradient lower bound,
/// growth at infinity, `Σ∂f` versus `f(e⃗)` and the partial-derivative floor.
pub fn verify_structural(f: &SymFun, cone: &ConeSpec, samples: usize, seed: u64) -> Result<ConditionReport> {
    if samples < 100 {
        return Err(Error::param("at least 100 samples are required"));
    }
    if f.dim() != cone.dim() {
        return Err(Error::DimensionMismatch { expected: cone.dim(), found: f.dim() });
    }
    let n = cone.dim();
    let mut rng = rng_from_seed(seed);
    let pts = cone.sample_interior(&mut rng, samples);
    let homogeneous_one = f.degree() == Some(1.0);
    let convexity = f.convexity();
    let fe = f.value(&EigenTuple::ones(n)?)?;

    let mut pos = Worst::min();
    let mut grad_sum = Worst::min();
    let mut grad_ratio = Worst::min();
    let mut growth = Worst::min();
    let mut sum_vs_fe = Worst::min();
    let mut floor = Worst::min();
    let floor_c = if convexity.is_convex() && cone.mu_plus()?.is_finite() {
        Some((1.0 / (1.0 + cone.mu_plus()?), "mu+"))
    } else if convexity.is_concave() && cone.mu_minus()?.is_finite() {
        Some((1.0 / (1.0 + cone.mu_minus()?), "mu-"))
    } else {
        None
    };

    for p in &pts {
        let v = f.value(p)?;
        let g = f.gradient(p)?;
        let gmin = g.iter().copied().fold(f64::INFINITY, f64::min);
        pos.update(v.min(gmin), p.values());
        let s: f64 = g.iter().sum();
        grad_sum.update(s, p.values());
        let euler: f64 = g.iter().zip(p.values()).map(|(a, b)| a * b).sum();
        grad_ratio.update(s / (1.0 + euler.abs()), p.values());
        let unit = p.scale(1.0 / p.norm());
        growth.update(f.value(&unit.scale(1e6))?, p.values());
        let scale = 1e-6 * (1.0 + fe.abs());
        if convexity.is_convex() {
            sum_vs_fe.update(fe - s + scale, p.values());
        } else if convexity.is_concave() {
            sum_vs_fe.update(s - fe + scale, p.values());
        }
        if let Some((c, _)) = floor_c {
            floor.update(gmin - c * s + 1e-6 * (1.0 + s.abs()), p.values());
        }
    }

    let mut checks = Vec::new();
    checks.push(ConditionCheck::judged(
        "positivity",
        pos.value > 0.0,
        pos.value,
        pos.at,
        "min over samples of f and of each partial derivative",
    ));

    let mut bmax: f64 = 0.0;
    let mut bat = Vec::new();
    for b in cone.boundary_samples(samples.min(200), seed) {
        let v = f.value_unsorted(&b).or_else(|e| match e {
            Error::Domain(_) => Ok(0.0),
            other => Err(other),
        })?;
        if v.abs() >= bmax {
            bmax = v.abs();
            bat = b;
        }
    }
    checks.push(ConditionCheck::judged("boundary-zero", bmax <= 1e-6, bmax, bat, "max |f| on sampled boundary points"));

    if homogeneous_one {
        checks.push(ConditionCheck::judged(
            "gradient-lower-bound",
            grad_sum.value > 0.0,
            grad_sum.value,
            grad_sum.at.clone(),
            "degree-1 case: min of the sum of partials, the constant delta",
        ));
        checks.push(ConditionCheck::judged(
            "growth",
            grad_sum.value > 0.0,
            grad_sum.value,
            grad_sum.at,
            "degree-1 case: equivalent to a positive lower bound on the sum of partials",
        ));
    } else {
        checks.push(ConditionCheck::judged(
            "gradient-lower-bound",
            grad_ratio.value > 0.0,
            grad_ratio.value,
            grad_ratio.at,
            "min of sum of partials / (1 + |sum lambda_i f_i|)",
        ));
        checks.push(ConditionCheck::judged(
            "growth",
            growth.value > 1e3,
            growth.value,
            growth.at,
            "min of f(1e6 lambda/|lambda|); must exceed 1e3",
        ));
    }

    if homogeneous_one && (convexity.is_convex() || convexity.is_concave()) {
        let dir = if convexity.is_convex() { "<=" } else { ">=" };
        checks.push(ConditionCheck::judged(
            "sum-partials-vs-f(e)",
            sum_vs_fe.value >= 0.0,
            sum_vs_fe.value,
            sum_vs_fe.at,
            format!("sum of partials {dir} f(e) = {fe}; worst slack shown"),
        ));
    } else {
        checks.push(ConditionCheck::na("sum-partials-vs-f(e)", "needs a degree-1 convex or concave function"));
    }

    match floor_c {
        Some((c, which)) => checks.push(ConditionCheck::judged(
            "partial-floor",
            floor.value >= 0.0,
            floor.value,
            floor.at,
            format!("min_i f_i - c * sum f_i with c = 1/(1+{which}) = {c}"),
        )),
        None => checks
            .push(ConditionCheck::na("partial-floor", "needs convex f with finite mu+ or concave f with finite mu-")),
    }

    Ok(ConditionReport { function: f.label(), cone: cone.label(), samples: pts.len(), checks })
}

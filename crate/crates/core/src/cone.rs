//! Symmetric open cones in ℝⁿ, their μ± invariants and negation duality.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{bisect_predicate, gaussian, rng_from_seed, SphereSampler};
use crate::symfun::elementary_symmetric;

/// Default half-width factor of the boundary band.
pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-8;

/// Upper end of the bisection bracket used for μ±.
pub const MU_CAP: f64 = 1e6;

/// A point of ℝⁿ (n ≥ 2) kept in descending order.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct EigenTuple(Vec<f64>);

impl EigenTuple {
    /// Sorts `values` descending. Rejects n < 2 and non-finite entries.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::param(format!("dimension must be at least 2, got {}", values.len())));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("eigenvalue tuple".into()));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self(values))
    }

    /// `(1, …, 1)`
    pub fn ones(n: usize) -> Result<Self> {
        Self::new(vec![1.0; n])
    }

    /// `λ* = (1, −1, …, −1)`
    pub fn lambda_star(n: usize) -> Result<Self> {
        let mut v = vec![-1.0; n];
        if n > 0 {
            v[0] = 1.0;
        }
        Self::new(v)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().rev().map(|x| -x).collect())
    }

    pub fn scale(&self, t: f64) -> Self {
        let mut v: Vec<f64> = self.0.iter().map(|x| t * x).collect();
        if t < 0.0 {
            v.reverse();
        }
        Self(v)
    }

    /// Entry-wise sum, re-sorted.
    pub fn add(&self, other: &EigenTuple) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Self::new(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn max_abs_diff(&self, other: &EigenTuple) -> f64 {
        self.0.iter().zip(&other.0).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

impl AsRef<[f64]> for EigenTuple {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Where a point sits relative to a cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Interior,
    Boundary,
    Exterior,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Region::Interior => "interior",
            Region::Boundary => "boundary",
            Region::Exterior => "exterior",
        };
        f.write_str(s)
    }
}

/// Region plus the value of the cone's defining function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConePosition {
    pub region: Region,
    pub margin: f64,
}

impl ConePosition {
    /// Classifies `margin` with the band `tol * (1 + scale)`.
    pub fn classify(margin: f64, scale: f64, tol: f64) -> Self {
        let band = tol * (1.0 + scale);
        let region = if margin.abs() <= band {
            Region::Boundary
        } else if margin > 0.0 {
            Region::Interior
        } else {
            Region::Exterior
        };
        Self { region, margin }
    }
}

pub type DefiningFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A cone given as `{g > 0}` by a caller-supplied symmetric function.
#[derive(Clone)]
pub struct GaugeCone {
    g: DefiningFn,
    negated: bool,
    witness: Vec<f64>,
    label: String,
}

impl GaugeCone {
    fn eval(&self, sorted: &[f64]) -> f64 {
        if self.negated {
            let neg: Vec<f64> = sorted.iter().rev().map(|x| -x).collect();
            -(self.g)(&neg)
        } else {
            (self.g)(sorted)
        }
    }

    pub fn is_negated(&self) -> bool {
        self.negated
    }

    pub fn witness(&self) -> &[f64] {
        &self.witness
    }
}

impl fmt::Debug for GaugeCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaugeCone")
            .field("label", &self.label)
            .field("negated", &self.negated)
            .field("witness", &self.witness)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone)]
pub enum ConeKind {
    /// `{σ_l > 0, l ≤ k}`
    GammaK(usize),
    /// `ℝⁿ ∖ (−Γ̄_k)`
    NegDualGammaK(usize),
    /// `{Σ μ_i λ_i > 0}` with λ descending and μ ≥ 0.
    OrderedLinear(Vec<f64>),
    /// `{σ₁ + c|λ| > 0}`
    Circular(f64),
    /// `{λ₁ + μλ₂ > 0}`
    ExtremalLargest(f64),
    /// `{λₙ + μλₙ₋₁ > 0}`
    ExtremalSmallest(f64),
    Gauge(GaugeCone),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Extremal {
    Largest,
    Smallest,
}

/// A symmetric open cone with vertex at the origin, containing `e⃗` and
/// invariant under adding the positive cone.
#[derive(Debug, Clone)]
pub struct ConeSpec {
    n: usize,
    kind: ConeKind,
}

impl ConeSpec {
    pub fn new(n: usize, kind: ConeKind) -> Result<Self> {
        if n < 2 {
            return Err(Error::param("cone dimension must be at least 2"));
        }
        match &kind {
            ConeKind::GammaK(k) | ConeKind::NegDualGammaK(k) => {
                if *k == 0 || *k > n {
                    return Err(Error::param(format!("k must lie in 1..={n}, got {k}")));
                }
            }
            ConeKind::OrderedLinear(w) => {
                check_dim(n, w.len())?;
                if w.iter().any(|x| !x.is_finite() || *x < 0.0) {
                    return Err(Error::param("ordered-linear weights must be finite and non-negative"));
                }
                if w.iter().all(|x| *x == 0.0) {
                    return Err(Error::param("ordered-linear weights must not all vanish"));
                }
            }
            ConeKind::Circular(c) => {
                if !c.is_finite() || c.abs() > 1.0 {
                    return Err(Error::param(format!("circular parameter must lie in [-1, 1], got {c}")));
                }
            }
            ConeKind::ExtremalLargest(m) | ConeKind::ExtremalSmallest(m) => {
                if !m.is_finite() || *m < 0.0 {
                    return Err(Error::param(format!("extremal parameter must be finite and >= 0, got {m}")));
                }
            }
            ConeKind::Gauge(g) => {
                check_dim(n, g.witness.len())?;
                let mut w = g.witness.clone();
                w.sort_by(|a, b| b.total_cmp(a));
                if !(g.eval(&w) > 0.0) {
                    return Err(Error::param("gauge witness is not inside the cone"));
                }
                let e = vec![1.0; n];
                if !(g.eval(&e) > 0.0) {
                    return Err(Error::param("gauge cone must contain (1, ..., 1)"));
                }
                let me = vec![-1.0; n];
                if g.eval(&me) >= 0.0 {
                    return Err(Error::param("gauge cone closure must exclude -(1, ..., 1)"));
                }
            }
        }
        Ok(Self { n, kind })
    }

    pub fn gamma_k(n: usize, k: usize) -> Result<Self> {
        Self::new(n, ConeKind::GammaK(k))
    }

    pub fn neg_dual_gamma_k(n: usize, k: usize) -> Result<Self> {
        Self::new(n, ConeKind::NegDualGammaK(k))
    }

    pub fn ordered_linear(weights: Vec<f64>) -> Result<Self> {
        Self::new(weights.len(), ConeKind::OrderedLinear(weights))
    }

    pub fn circular(n: usize, c: f64) -> Result<Self> {
        Self::new(n, ConeKind::Circular(c))
    }

    /// Cone `{g > 0}`; `g` receives λ sorted descending.
    pub fn gauge(n: usize, label: impl Into<String>, g: DefiningFn, witness: Option<Vec<f64>>) -> Result<Self> {
        let gc = GaugeCone { g, negated: false, witness: witness.unwrap_or_else(|| vec![1.0; n]), label: label.into() };
        Self::new(n, ConeKind::Gauge(gc))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &ConeKind {
        &self.kind
    }

    pub fn label(&self) -> String {
        match &self.kind {
            ConeKind::GammaK(k) => format!("gamma-k(k={k})"),
            ConeKind::NegDualGammaK(k) => format!("neg-dual-gamma-k(k={k})"),
            ConeKind::OrderedLinear(w) => format!("ordered-linear({w:?})"),
            ConeKind::Circular(c) => format!("circular(c={c})"),
            ConeKind::ExtremalLargest(m) => format!("extremal-largest(mu={m})"),
            ConeKind::ExtremalSmallest(m) => format!("extremal-smallest(mu={m})"),
            ConeKind::Gauge(g) if g.negated => format!("neg-dual({})", g.label),
            ConeKind::Gauge(g) => g.label.clone(),
        }
    }

    /// Value of the defining function at a descending-sorted point.
    pub fn margin_sorted(&self, l: &[f64]) -> f64 {
        let n = l.len();
        match &self.kind {
            ConeKind::GammaK(k) => gamma_k_margin(l, *k),
            ConeKind::NegDualGammaK(k) => {
                let neg: Vec<f64> = l.iter().rev().map(|x| -x).collect();
                -gamma_k_margin(&neg, *k)
            }
            ConeKind::OrderedLinear(w) => w.iter().zip(l).map(|(a, b)| a * b).sum(),
            ConeKind::Circular(c) => l.iter().sum::<f64>() + c * l.iter().map(|x| x * x).sum::<f64>().sqrt(),
            ConeKind::ExtremalLargest(m) => l[0] + m * l[1],
            ConeKind::ExtremalSmallest(m) => l[n - 1] + m * l[n - 2],
            ConeKind::Gauge(g) => g.eval(l),
        }
    }

    pub fn margin(&self, l: &EigenTuple) -> Result<f64> {
        check_dim(self.n, l.dim())?;
        let m = self.margin_sorted(l.values());
        if m.is_finite() {
            Ok(m)
        } else {
            Err(Error::NonFinite("cone defining function".into()))
        }
    }

    /// Membership with the boundary band `tol * (1 + |λ|)`.
    pub fn contains(&self, l: &EigenTuple, tol: f64) -> Result<ConePosition> {
        if !(tol > 0.0) {
            return Err(Error::param("tolerance must be positive"));
        }
        check_dim(self.n, l.dim())?;
        if l.values().iter().all(|x| *x == 0.0) {
            return Ok(ConePosition { region: Region::Boundary, margin: 0.0 });
        }
        Ok(ConePosition::classify(self.margin(l)?, l.norm(), tol))
    }

    /// Strict membership `g(λ) > 0` without a band.
    pub fn contains_open(&self, l: &[f64]) -> bool {
        let mut s = l.to_vec();
        s.sort_by(|a, b| b.total_cmp(a));
        self.margin_sorted(&s) > 0.0
    }

    fn in_closure(&self, l: &[f64]) -> bool {
        let mut s = l.to_vec();
        s.sort_by(|a, b| b.total_cmp(a));
        self.margin_sorted(&s) >= 0.0
    }

    /// `μ⁻ = inf{c : (c, −1, …, −1) ∈ Γ̄}`, closed form where known.
    pub fn mu_minus(&self) -> Result<f64> {
        let n = self.n as f64;
        let v = match &self.kind {
            ConeKind::GammaK(k) => gamma_k_mu_minus(self.n, *k),
            ConeKind::NegDualGammaK(k) => (n - *k as f64) / *k as f64,
            ConeKind::OrderedLinear(w) => {
                let rest: f64 = w[1..].iter().sum();
                if w[0] == 0.0 {
                    f64::INFINITY
                } else {
                    rest / w[0]
                }
            }
            ConeKind::ExtremalLargest(m) => *m,
            ConeKind::ExtremalSmallest(m) => {
                if self.n == 2 && *m > 0.0 {
                    1.0 / m
                } else {
                    f64::INFINITY
                }
            }
            ConeKind::Circular(_) | ConeKind::Gauge(_) => return Ok(self.mu_minus_bisect()?.value),
        };
        Ok(v)
    }

    /// `μ⁺ = sup{c : (−c, 1, …, 1) ∈ Γ̄}`, closed form where known.
    pub fn mu_plus(&self) -> Result<f64> {
        let n = self.n as f64;
        let v = match &self.kind {
            ConeKind::GammaK(k) => (n - *k as f64) / *k as f64,
            ConeKind::NegDualGammaK(k) => gamma_k_mu_minus(self.n, *k),
            ConeKind::OrderedLinear(w) => {
                let last = w[self.n - 1];
                let rest: f64 = w[..self.n - 1].iter().sum();
                if last == 0.0 {
                    f64::INFINITY
                } else {
                    rest / last
                }
            }
            ConeKind::ExtremalLargest(m) => {
                if self.n == 2 && *m > 0.0 {
                    1.0 / m
                } else {
                    f64::INFINITY
                }
            }
            ConeKind::ExtremalSmallest(m) => *m,
            ConeKind::Circular(_) | ConeKind::Gauge(_) => return Ok(self.mu_plus_bisect()?.value),
        };
        Ok(v)
    }

    /// μ⁻ by bisection on `[0, MU_CAP]`; `+∞` when the cap is still outside Γ̄.
    pub fn mu_minus_bisect(&self) -> Result<MuEstimate> {
        let n = self.n;
        let point = |c: f64| {
            let mut p = vec![-1.0; n];
            p[0] = c;
            p
        };
        self.ray_bisect(|c| self.in_closure(&point(c)), true, |c| self.margin_sorted(&sorted(point(c))))
    }

    /// μ⁺ by bisection on `[0, MU_CAP]`; `+∞` when the cap is still inside Γ̄.
    pub fn mu_plus_bisect(&self) -> Result<MuEstimate> {
        let n = self.n;
        let point = |c: f64| {
            let mut p = vec![1.0; n];
            p[0] = -c;
            p
        };
        self.ray_bisect(|c| self.in_closure(&point(c)), false, |c| self.margin_sorted(&sorted(point(c))))
    }

    fn ray_bisect(
        &self,
        inside: impl Fn(f64) -> bool,
        increasing: bool,
        margin: impl Fn(f64) -> f64,
    ) -> Result<MuEstimate> {
        for c in [0.0, 1.0, MU_CAP] {
            if !margin(c).is_finite() {
                return Err(Error::NonFinite("cone defining function along test ray".into()));
            }
        }
        // Sign pattern along the ray should switch once.
        let grid: Vec<bool> = (0..=64).map(|i| inside(MU_CAP * (i as f64 / 64.0).powi(6))).collect();
        let switches = grid.windows(2).filter(|w| w[0] != w[1]).count();
        let monotone = switches <= 1;
        let value = if increasing {
            if inside(0.0) {
                0.0
            } else if !inside(MU_CAP) {
                f64::INFINITY
            } else {
                bisect_predicate(|c| !inside(c), 0.0, MU_CAP, 1e-13)
            }
        } else if !inside(0.0) {
            0.0
        } else if inside(MU_CAP) {
            f64::INFINITY
        } else {
            bisect_predicate(&inside, 0.0, MU_CAP, 1e-13)
        };
        Ok(MuEstimate { value, monotone })
    }

    /// The cone `ℝⁿ ∖ (−Γ̄)`.
    pub fn negation_dual(&self) -> ConeSpec {
        let kind = match &self.kind {
            ConeKind::GammaK(k) => ConeKind::NegDualGammaK(*k),
            ConeKind::NegDualGammaK(k) => ConeKind::GammaK(*k),
            ConeKind::OrderedLinear(w) => ConeKind::OrderedLinear(w.iter().rev().copied().collect()),
            ConeKind::Circular(c) => ConeKind::Circular(-c),
            ConeKind::ExtremalLargest(m) => ConeKind::ExtremalSmallest(*m),
            ConeKind::ExtremalSmallest(m) => ConeKind::ExtremalLargest(*m),
            ConeKind::Gauge(g) => ConeKind::Gauge(GaugeCone {
                g: g.g.clone(),
                negated: !g.negated,
                witness: vec![1.0; self.n],
                label: g.label.clone(),
            }),
        };
        ConeSpec { n: self.n, kind }
    }

    /// Positions of `λ*` and `−λ*`, checked against the μ± classification.
    pub fn lambda_star_class(&self, tol: f64) -> Result<LambdaStarClass> {
        let ls = EigenTuple::lambda_star(self.n)?;
        let direct_star = self.contains(&ls, tol)?;
        let direct_neg = self.contains(&ls.neg(), tol)?;
        let mu_minus = self.mu_minus()?;
        let mu_plus = self.mu_plus()?;
        let from_minus = classify_against_one(mu_minus, tol, Region::Exterior, Region::Interior);
        let from_plus = classify_against_one(mu_plus, tol, Region::Interior, Region::Exterior);
        let close = |mu: f64| (mu - 1.0).abs() <= 1e-6;
        let agree =
            |a: Region, b: Region, mu: f64| a == b || (close(mu) && (a == Region::Boundary || b == Region::Boundary));
        if !agree(from_minus, direct_star.region, mu_minus) {
            return Err(Error::Invariant(format!(
                "lambda* is {} by membership but {} from mu- = {mu_minus}",
                direct_star.region, from_minus
            )));
        }
        if !agree(from_plus, direct_neg.region, mu_plus) {
            return Err(Error::Invariant(format!(
                "-lambda* is {} by membership but {} from mu+ = {mu_plus}",
                direct_neg.region, from_plus
            )));
        }
        Ok(LambdaStarClass { lambda_star: direct_star, neg_lambda_star: direct_neg, mu_minus, mu_plus })
    }

    /// Random points strictly inside the cone, drawn by rejection from a Gaussian.
    pub fn sample_interior<R: Rng>(&self, rng: &mut R, count: usize) -> Vec<EigenTuple> {
        let mut out = Vec::with_capacity(count);
        let mut tries = 0usize;
        while out.len() < count && tries < 1000 * count.max(1) {
            tries += 1;
            let scale = 0.1 + 3.0 * rng.gen::<f64>();
            let v: Vec<f64> = (0..self.n).map(|_| scale * gaussian(rng)).collect();
            if self.contains_open(&v) {
                if let Ok(t) = EigenTuple::new(v) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Points of `∂Γ ∩ S^{n−1}`: bisection along great circles from `e⃗/√n`
    /// toward low-discrepancy directions outside the cone.
    pub fn boundary_samples(&self, count: usize, seed: u64) -> Vec<Vec<f64>> {
        let n = self.n;
        let e_hat = vec![1.0 / (n as f64).sqrt(); n];
        let mut out = Vec::with_capacity(count);
        for d in SphereSampler::new(n, seed).take(50 * count.max(1)) {
            if out.len() == count {
                break;
            }
            if self.in_closure(&d) {
                continue;
            }
            let c: f64 = d.iter().zip(&e_hat).map(|(a, b)| a * b).sum();
            let u: Vec<f64> = d.iter().zip(&e_hat).map(|(a, b)| a - c * b).collect();
            let ul = u.iter().map(|x| x * x).sum::<f64>().sqrt();
            if ul < 1e-9 {
                continue;
            }
            let point =
                |th: f64| -> Vec<f64> { e_hat.iter().zip(&u).map(|(a, b)| th.cos() * a + th.sin() * b / ul).collect() };
            let th = bisect_predicate(|th| self.contains_open(&point(th)), 0.0, c.clamp(-1.0, 1.0).acos(), 1e-14);
            out.push(point(th));
        }
        out
    }

    /// Sampled check of `Γ + Γₙ ⊂ Γ` and `tΓ ⊂ Γ`.
    pub fn check_axioms(&self, samples: usize, seed: u64) -> AxiomReport {
        let mut rng = rng_from_seed(seed);
        let pts = self.sample_interior(&mut rng, samples);
        let mut report = AxiomReport { tested: pts.len(), ..AxiomReport::default() };
        for p in &pts {
            let shift: Vec<f64> = (0..self.n).map(|_| 3.0 * rng.gen::<f64>()).collect();
            let sum: Vec<f64> = p.values().iter().zip(&shift).map(|(a, b)| a + b).collect();
            if !self.contains_open(&sum) {
                report.additive_violations += 1;
            }
            let t = 10f64.powf(rng.gen_range(-3.0..3.0));
            let scaled: Vec<f64> = p.values().iter().map(|x| t * x).collect();
            if !self.contains_open(&scaled) {
                report.scaling_violations += 1;
            }
        }
        report
    }
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn gamma_k_margin(l: &[f64], k: usize) -> f64 {
    let s = elementary_symmetric(l);
    s[1..=k].iter().copied().fold(f64::INFINITY, f64::min)
}

fn gamma_k_mu_minus(n: usize, k: usize) -> f64 {
    if k == 1 {
        (n - 1) as f64
    } else {
        f64::INFINITY
    }
}

fn classify_against_one(mu: f64, tol: f64, above: Region, below: Region) -> Region {
    if (mu - 1.0).abs() <= tol * 2.0 {
        Region::Boundary
    } else if mu > 1.0 {
        above
    } else {
        below
    }
}

/// Bisection estimate of μ± with a flag for a single sign switch along the ray.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MuEstimate {
    pub value: f64,
    pub monotone: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambdaStarClass {
    pub lambda_star: ConePosition,
    pub neg_lambda_star: ConePosition,
    pub mu_minus: f64,
    pub mu_plus: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub tested: usize,
    pub additive_violations: usize,
    pub scaling_violations: usize,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.tested > 0 && self.additive_violations == 0 && self.scaling_violations == 0
    }
}

/// The largest cone with `(μ, −1, …, −1)` on its boundary, or the smallest
/// with `(−μ, 1, …, 1)` on its boundary.
pub fn extremal_cone(mu: f64, which: Extremal, n: usize) -> Result<ConeSpec> {
    if mu < 0.0 {
        return Err(Error::param(format!("extremal parameter must be >= 0, got {mu}")));
    }
    match which {
        Extremal::Largest => ConeSpec::new(n, ConeKind::ExtremalLargest(mu)),
        Extremal::Smallest => ConeSpec::new(n, ConeKind::ExtremalSmallest(mu)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: &[f64]) -> EigenTuple {
        EigenTuple::new(v.to_vec()).unwrap()
    }

    #[test]
    fn tuple_sorts_and_validates() {
        assert_eq!(t(&[1.0, 3.0, 2.0]).values(), &[3.0, 2.0, 1.0]);
        assert!(EigenTuple::new(vec![1.0]).is_err());
        assert!(EigenTuple::new(vec![1.0, f64::NAN]).is_err());
        assert_eq!(t(&[3.0, 1.0]).neg().values(), &[-1.0, -3.0]);
    }

    #[test]
    fn membership_examples() {
        let g2 = ConeSpec::gamma_k(3, 2).unwrap();
        assert_eq!(g2.contains(&t(&[1.0, 1.0, 1.0]), 1e-8).unwrap().region, Region::Interior);
        let g1 = ConeSpec::gamma_k(3, 1).unwrap();
        let p = g1.contains(&t(&[1.0, -1.0, -1.0]), 1e-8).unwrap();
        assert_eq!(p.region, Region::Exterior);
        assert_eq!(p.margin, -1.0);
        let c = ConeSpec::circular(4, 2.0 / 2.0).unwrap();
        let p = c.contains(&EigenTuple::lambda_star(4).unwrap(), 1e-8).unwrap();
        assert_eq!(p.region, Region::Boundary);
    }

    #[test]
    fn origin_is_boundary() {
        let z = t(&[0.0, 0.0, 0.0]);
        for c in [ConeSpec::gamma_k(3, 3).unwrap(), ConeSpec::circular(3, -0.5).unwrap()] {
            assert_eq!(c.contains(&z, 1e-8).unwrap().region, Region::Boundary);
        }
    }

    #[test]
    fn dimension_mismatch() {
        let g = ConeSpec::gamma_k(3, 1).unwrap();
        assert!(matches!(g.contains(&t(&[1.0, 2.0]), 1e-8), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn mu_examples() {
        assert_eq!(ConeSpec::gamma_k(3, 1).unwrap().mu_minus().unwrap(), 2.0);
        let ol = ConeSpec::ordered_linear(vec![2.0, 1.0, 1.0]).unwrap();
        assert_eq!(ol.mu_minus().unwrap(), 1.0);
        assert!((ol.mu_minus_bisect().unwrap().value - 1.0).abs() < 1e-8);
        assert_eq!(ConeSpec::gamma_k(4, 4).unwrap().mu_plus().unwrap(), 0.0);
        let ex = extremal_cone(2.0, Extremal::Largest, 2).unwrap();
        assert_eq!(ex.mu_plus().unwrap(), 0.5);
        assert!((ex.mu_plus_bisect().unwrap().value - 0.5).abs() < 1e-8);
        assert!(ConeSpec::gamma_k(4, 2).unwrap().mu_minus_bisect().unwrap().value.is_infinite());
    }

    #[test]
    fn lambda_star_examples() {
        let c = ConeSpec::gamma_k(4, 2).unwrap().lambda_star_class(1e-8).unwrap();
        assert_eq!(c.neg_lambda_star.region, Region::Boundary);
        let c = ConeSpec::gamma_k(3, 1).unwrap().lambda_star_class(1e-8).unwrap();
        assert_eq!(c.lambda_star.region, Region::Exterior);
        let c = ConeSpec::gamma_k(3, 3).unwrap().lambda_star_class(1e-8).unwrap();
        assert_eq!(c.lambda_star.region, Region::Exterior);
        assert_eq!(c.neg_lambda_star.region, Region::Exterior);
    }

    #[test]
    fn invalid_parameters() {
        assert!(ConeSpec::gamma_k(3, 0).is_err());
        assert!(ConeSpec::gamma_k(3, 4).is_err());
        assert!(ConeSpec::circular(3, 1.5).is_err());
        assert!(ConeSpec::ordered_linear(vec![0.0, 0.0]).is_err());
        assert!(ConeSpec::ordered_linear(vec![1.0, -1.0]).is_err());
        assert!(extremal_cone(-1.0, Extremal::Largest, 3).is_err());
    }

    #[test]
    fn gauge_negation_roundtrip() {
        let g: DefiningFn = Arc::new(|l: &[f64]| l.iter().sum());
        let c = ConeSpec::gauge(3, "sum", g, None).unwrap();
        let d = c.negation_dual().negation_dual();
        let mut rng = rng_from_seed(5);
        for _ in 0..200 {
            let v: Vec<f64> = (0..3).map(|_| gaussian(&mut rng)).collect();
            assert_eq!(c.contains_open(&v), d.contains_open(&v));
        }
    }

    #[test]
    fn axioms_hold_for_builtins() {
        for c in [
            ConeSpec::gamma_k(4, 2).unwrap(),
            ConeSpec::circular(3, 0.3).unwrap(),
            extremal_cone(1.5, Extremal::Smallest, 3).unwrap(),
        ] {
            assert!(c.check_axioms(300, 11).passed(), "{}", c.label());
        }
    }
}

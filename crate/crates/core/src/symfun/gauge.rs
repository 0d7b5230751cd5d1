use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use super::{sorted, Convexity, SymFun, SymmetricFn};
use crate::cone::{ConeSpec, DefiningFn};
use crate::error::{Error, Result};
use crate::numerics::linalg::{dot, norm};
use crate::numerics::{bracketed_root, fd_gradient, rng_from_seed, SphereSampler};

pub type LevelFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Radius at which the recession function of a level set is sampled.
const RECESSION_RADIUS: f64 = 1e6;

/// An open symmetric set `V = {h > 0}`; `h` receives sorted input.
#[derive(Clone)]
pub struct LevelSet {
    n: usize,
    h: LevelFn,
    label: String,
    cone: Option<ConeSpec>,
}

impl fmt::Debug for LevelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LevelSet").field("n", &self.n).field("label", &self.label).finish_non_exhaustive()
    }
}

impl LevelSet {
    /// `cone`, when known, is the cone generated by `V`.
    pub fn new(n: usize, label: impl Into<String>, h: LevelFn, cone: Option<ConeSpec>) -> Result<Self> {
        if n < 2 {
            return Err(Error::param("dimension must be at least 2"));
        }
        if let Some(c) = &cone {
            if c.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: c.dim() });
            }
        }
        let s = Self { n, h, label: label.into(), cone };
        if !(s.h(&vec![0.0; n]) < 0.0) {
            return Err(Error::param("the origin must lie outside the closure of V"));
        }
        Ok(s)
    }

    /// `V = {f₀ > 1}` for a degree-1 homogeneous `f₀`.
    pub fn superlevel(f0: &SymFun) -> Result<Self> {
        if f0.degree() != Some(1.0) {
            return Err(Error::param("superlevel sets need a degree-1 homogeneous function"));
        }
        let f = f0.clone();
        let h: LevelFn = Arc::new(move |l: &[f64]| match f.inner().value(l) {
            Ok(v) => v - 1.0,
            Err(_) => -1.0,
        });
        Self::new(f0.dim(), format!("{{{} > 1}}", f0.label()), h, Some(f0.domain()))
    }

    /// `V = t e⃗ + Γ`, whose generated cone is `Γ`.
    pub fn shifted_cone(cone: &ConeSpec, t: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::param("shift must be positive"));
        }
        let c = cone.clone();
        let h: LevelFn = Arc::new(move |l: &[f64]| {
            let shifted: Vec<f64> = l.iter().map(|x| x - t).collect();
            c.margin_sorted(&shifted)
        });
        Self::new(cone.dim(), format!("{t} e + {}", cone.label()), h, Some(cone.clone()))
    }

    /// `V = {σ₁ + ε√(1+|λ|²) > 1 + ε}`: smooth, not a dilate of its cone.
    pub fn smoothed_halfspace(n: usize, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::param("smoothing parameter must lie in (0, 1)"));
        }
        let h: LevelFn = Arc::new(move |l: &[f64]| {
            let s: f64 = l.iter().sum();
            let r2: f64 = l.iter().map(|x| x * x).sum();
            s + eps * (1.0 + r2).sqrt() - 1.0 - eps
        });
        Self::new(n, format!("smoothed-halfspace(eps={eps})"), h, None)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Defining function at a point in any order.
    pub fn h(&self, x: &[f64]) -> f64 {
        (self.h)(&sorted(x))
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.h(x) > 0.0
    }

    /// Inward unit normal `∇h/|∇h|` at `x` (frame of `x`).
    pub fn normal(&self, x: &[f64]) -> Result<Vec<f64>> {
        let step = 1e-6 * (1.0 + norm(x));
        let g = fd_gradient(|y| Ok(self.h(y)), x, step)?;
        let l = norm(&g);
        if !(l > 0.0) {
            return Err(Error::Invariant("level-set gradient vanishes".into()));
        }
        Ok(g.into_iter().map(|v| v / l).collect())
    }

    /// The scale `φ(λ)` with `φ(λ)λ ∈ ∂V`, or `None` when the ray misses `V`.
    pub fn phi(&self, x: &[f64]) -> Result<Option<f64>> {
        if x.iter().all(|v| *v == 0.0) {
            return Ok(None);
        }
        let along = |c: f64| {
            let y: Vec<f64> = x.iter().map(|v| c * v).collect();
            self.h(&y)
        };
        let (lo, hi) = if along(1.0) > 0.0 {
            let mut lo = 0.5;
            while along(lo) > 0.0 {
                lo *= 0.5;
                if lo < 1e-14 {
                    return Err(Error::Invariant("ray stays inside V down to the origin".into()));
                }
            }
            (lo, 2.0 * lo)
        } else {
            let mut hi = 2.0;
            while along(hi) <= 0.0 {
                hi *= 2.0;
                if hi > 1e14 {
                    return Ok(None);
                }
            }
            (0.5 * hi, hi)
        };
        let c = bracketed_root(along, lo, hi, 4.0 * f64::EPSILON * hi)?;
        // Transversal crossing: the scale increases into V along the ray.
        let d = 1e-6 * c;
        if !(along(c + d) > along(c - d)) {
            return Err(Error::Invariant(
                "ray meets the boundary of V non-transversally (condition lambda . nu > 0 fails)".into(),
            ));
        }
        Ok(Some(c))
    }

    /// The cone generated by `V`: known exactly or via the recession function of `h`.
    pub fn generated_cone(&self) -> Result<ConeSpec> {
        if let Some(c) = &self.cone {
            return Ok(c.clone());
        }
        let h = self.h.clone();
        let g: DefiningFn = Arc::new(move |l: &[f64]| {
            let r = norm(l);
            if r == 0.0 {
                return 0.0;
            }
            let y: Vec<f64> = l.iter().map(|v| RECESSION_RADIUS * v / r).collect();
            r * h(&y) / RECESSION_RADIUS
        });
        ConeSpec::gauge(self.n, format!("cone({})", self.label), g, None)
    }

    /// Boundary points `φ(d)d` for sphere directions `d` in the generated cone.
    pub fn boundary_samples(&self, count: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
        let mut out = Vec::with_capacity(count);
        for d in SphereSampler::new(self.n, seed).take(200 * count.max(1)) {
            if out.len() == count {
                break;
            }
            if let Some(c) = self.phi(&d)? {
                out.push(d.iter().map(|v| c * v).collect());
            }
        }
        Ok(out)
    }

    /// Sampled midpoint convexity of `V`.
    pub fn looks_convex(&self, pairs: usize, seed: u64) -> Result<bool> {
        let pts = self.boundary_samples(64, seed)?;
        if pts.len() < 2 {
            return Ok(true);
        }
        let mut rng = rng_from_seed(seed ^ 0x5eed);
        for _ in 0..pairs {
            let a = &pts[rng.gen_range(0..pts.len())];
            let b = &pts[rng.gen_range(0..pts.len())];
            let (sa, sb) = (1.0 + rng.gen::<f64>(), 1.0 + rng.gen::<f64>());
            let m: Vec<f64> = a.iter().zip(b).map(|(x, y)| 0.5 * (sa * x + sb * y)).collect();
            let band = 1e-9 * (1.0 + norm(&m));
            if self.h(&m) < -band {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Gauge value with a flag for points outside the generated cone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaugeValue {
    pub value: f64,
    pub in_cone: bool,
}

/// `f = 1/φ`: degree-1 homogeneous, `f = 1` on `∂V`, `f = 0` off the generated cone.
#[derive(Debug, Clone)]
pub struct GaugeFn {
    level: LevelSet,
    domain: ConeSpec,
}

impl GaugeFn {
    pub fn new(level: LevelSet) -> Result<Self> {
        let domain = level.generated_cone()?;
        Ok(Self { level, domain })
    }

    pub fn level_set(&self) -> &LevelSet {
        &self.level
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<GaugeValue> {
        if x.len() != self.level.n {
            return Err(Error::DimensionMismatch { expected: self.level.n, found: x.len() });
        }
        Ok(match self.level.phi(x)? {
            Some(c) => GaugeValue { value: 1.0 / c, in_cone: true },
            None => GaugeValue { value: 0.0, in_cone: false },
        })
    }
}

impl SymmetricFn for GaugeFn {
    fn dim(&self) -> usize {
        self.level.n
    }

    fn label(&self) -> String {
        format!("gauge({})", self.level.label)
    }

    fn value(&self, l: &[f64]) -> Result<f64> {
        Ok(self.evaluate(l)?.value)
    }

    fn convexity(&self) -> Convexity {
        Convexity::Unknown
    }

    fn domain(&self) -> ConeSpec {
        self.domain.clone()
    }
}

/// Both sides of `Σ ∂_i f = e⃗·ν / (λ·ν)` at a boundary point of `V`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalIdentity {
    pub gradient_sum: f64,
    pub normal_ratio: f64,
    pub residual: f64,
}

pub fn normal_identity_check(f: &GaugeFn, x: &[f64]) -> Result<NormalIdentity> {
    let v = &f.level;
    if x.len() != v.n {
        return Err(Error::DimensionMismatch { expected: v.n, found: x.len() });
    }
    let scale = 1.0 + norm(x);
    if v.h(x).abs() > 1e-8 * scale {
        return Err(Error::domain("point is not on the boundary of V"));
    }
    let nu = v.normal(x)?;
    let ln = dot(x, &nu);
    if !(ln > 0.0) {
        return Err(Error::Invariant(format!("lambda . nu = {ln} is not positive")));
    }
    let e = vec![1.0; v.n];
    let rhs = dot(&e, &nu) / ln;
    let g = fd_gradient(|y| f.value(&sorted(y)), x, 1e-5 * scale)?;
    let lhs: f64 = g.iter().sum();
    Ok(NormalIdentity { gradient_sum: lhs, normal_ratio: rhs, residual: (lhs - rhs).abs() })
}

/// `Ṽ = ℝⁿ ∖ closure(Ψ(V))` with `Ψ(λ) = −λ + 2φ(e⃗)e⃗`.
#[derive(Debug, Clone)]
pub struct Reflection {
    pub level_set: LevelSet,
    pub phi_e: f64,
    /// Set when `V` failed the sampled convexity test.
    pub convexity_warning: bool,
}

impl Reflection {
    pub fn psi(&self, x: &[f64]) -> Vec<f64> {
        x.iter().map(|v| -v + 2.0 * self.phi_e).collect()
    }
}

pub fn reflect_cone(v: &LevelSet) -> Result<Reflection> {
    let e = vec![1.0; v.n];
    let phi_e = v.phi(&e)?.ok_or_else(|| Error::param("(1, ..., 1) does not generate a point of V"))?;
    let convex = v.looks_convex(2000, 17)?;
    let inner = v.h.clone();
    let h: LevelFn = Arc::new(move |l: &[f64]| {
        let y = sorted(&l.iter().map(|x| -x + 2.0 * phi_e).collect::<Vec<_>>());
        -inner(&y)
    });
    let level_set = LevelSet::new(v.n, format!("reflect({})", v.label), h, None)?;
    Ok(Reflection { level_set, phi_e, convexity_warning: !convex })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::Family;

    fn sigma1(n: usize) -> SymFun {
        SymFun::family(Family::SigmaK { k: 1 }, n).unwrap()
    }

    #[test]
    fn gauge_of_linear_superlevel_is_the_function() {
        let f = GaugeFn::new(LevelSet::superlevel(&sigma1(3)).unwrap()).unwrap();
        let v = f.value(&[2.0, 1.0, -0.5]).unwrap();
        assert!((v - 2.5).abs() < 1e-12);
        let out = f.evaluate(&[1.0, -2.0, -3.0]).unwrap();
        assert!(!out.in_cone && out.value == 0.0);
    }

    #[test]
    fn normal_identity_linear() {
        let f = GaugeFn::new(LevelSet::superlevel(&sigma1(3)).unwrap()).unwrap();
        let r = normal_identity_check(&f, &[0.5, 0.25, 0.25]).unwrap();
        assert!(r.residual < 1e-6, "{r:?}");
        assert!((r.normal_ratio - 3.0).abs() < 1e-9);
    }

    #[test]
    fn off_boundary_rejected() {
        let f = GaugeFn::new(LevelSet::superlevel(&sigma1(3)).unwrap()).unwrap();
        assert!(matches!(normal_identity_check(&f, &[1.0, 1.0, 1.0]), Err(Error::Domain(_))));
    }

    #[test]
    fn shifted_cone_gauge() {
        let c = ConeSpec::gamma_k(3, 1).unwrap();
        let f = GaugeFn::new(LevelSet::shifted_cone(&c, 0.5).unwrap()).unwrap();
        // V = {σ₁ > 3/2}: f = σ₁ / (3/2).
        assert!((f.value(&[1.0, 1.0, 1.0]).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn reflection_is_involution() {
        let v = LevelSet::superlevel(&sigma1(3)).unwrap();
        let r = reflect_cone(&v).unwrap();
        assert!(!r.convexity_warning);
        let x = [0.3, -1.2, 2.0];
        let back = r.psi(&r.psi(&x));
        assert!(x.iter().zip(&back).all(|(a, b)| (a - b).abs() < 1e-12));
    }
}

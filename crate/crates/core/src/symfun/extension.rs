use std::sync::Arc;

use super::{sorted, Convexity, SymFun, SymmetricFn};
use crate::cone::ConeSpec;
use crate::error::{Error, Result};
use crate::numerics::linalg::{dot, norm};
use crate::numerics::{fd_gradient, gaussian, rng_from_seed};

/// `f` on `Γ̄`, `δF` outside, where `F(λ) = sup p·λ` over unit normals `p`
/// of the convex set `ℝⁿ∖Γ` pointing into `Γ`.
#[derive(Debug, Clone)]
pub struct ConvexExtension {
    f: SymFun,
    cone: ConeSpec,
    delta: f64,
    /// Sampled support normals, each sorted descending.
    normals: Arc<Vec<Vec<f64>>>,
}

fn margin(cone: &ConeSpec, x: &[f64]) -> f64 {
    cone.margin_sorted(&sorted(x))
}

/// Builds the extension from `normals` sampled support normals.
pub fn convex_extend(f: SymFun, cone: ConeSpec, delta: f64, normals: usize, seed: u64) -> Result<ConvexExtension> {
    if !(delta > 0.0) {
        return Err(Error::param("delta must be positive"));
    }
    if f.dim() != cone.dim() {
        return Err(Error::DimensionMismatch { expected: cone.dim(), found: f.dim() });
    }
    check_complement_convex(&cone, 4000, seed)?;
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(normals);
    for b in cone.boundary_samples(normals, seed) {
        let g = fd_gradient(|y| Ok(margin(&cone, y)), &b, 1e-4 * (1.0 + norm(&b)))?;
        let gl = norm(&g);
        if gl > 0.0 {
            out.push(sorted(&g.iter().map(|x| x / gl).collect::<Vec<_>>()));
        }
    }
    if out.is_empty() {
        return Err(Error::NoConvergence { iterations: normals, detail: "no boundary normals found".into() });
    }
    Ok(ConvexExtension { f, cone, delta, normals: Arc::new(out) })
}

fn check_complement_convex(cone: &ConeSpec, pairs: usize, seed: u64) -> Result<()> {
    let n = cone.dim();
    let mut rng = rng_from_seed(seed ^ 0xc0ffee);
    let mut outside = Vec::new();
    let mut tries = 0;
    while outside.len() < 2 * pairs && tries < 100 * pairs {
        tries += 1;
        let v: Vec<f64> = (0..n).map(|_| gaussian(&mut rng)).collect();
        if margin(cone, &v) < 0.0 {
            outside.push(v);
        }
    }
    for pair in outside.chunks(2).filter(|c| c.len() == 2) {
        let m: Vec<f64> = pair[0].iter().zip(&pair[1]).map(|(a, b)| 0.5 * (a + b)).collect();
        if margin(cone, &m) > 1e-10 * (1.0 + norm(&m)) {
            return Err(Error::param(format!(
                "complement of {} is not convex: midpoint {m:?} lies inside",
                cone.label()
            )));
        }
    }
    Ok(())
}

impl ConvexExtension {
    pub fn normals(&self) -> &[Vec<f64>] {
        &self.normals
    }

    /// The support function `F` at a sorted point.
    pub fn support(&self, l: &[f64]) -> f64 {
        self.normals.iter().map(|p| dot(p, l)).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn base(&self) -> &SymFun {
        &self.f
    }
}

impl SymmetricFn for ConvexExtension {
    fn dim(&self) -> usize {
        self.cone.dim()
    }

    fn label(&self) -> String {
        format!("convex-extension({}, delta={})", self.f.label(), self.delta)
    }

    fn value(&self, l: &[f64]) -> Result<f64> {
        if self.cone.margin_sorted(l) >= 0.0 {
            match self.f.inner().value(l) {
                Ok(v) => Ok(v),
                Err(Error::Domain(_)) => Ok(0.0),
                Err(e) => Err(e),
            }
        } else {
            Ok(self.delta * self.support(l))
        }
    }

    fn convexity(&self) -> Convexity {
        Convexity::Convex
    }

    fn domain(&self) -> ConeSpec {
        self.cone.clone()
    }
}

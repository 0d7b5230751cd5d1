use serde::Serialize;

use super::field::{Field, Jet, ScalarField, EXCLUSION_RADIUS};
use crate::error::{Error, Result};
use crate::numerics::linalg::{add, dot, norm, scale, sub};
use crate::numerics::Matrix;

/// One elementary conformal map of ℝⁿ.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum MobiusGenerator {
    /// `x ↦ x + t`
    Translation { t: Vec<f64> },
    /// `x ↦ a x`, `a > 0`
    Dilation { a: f64 },
    /// `x ↦ O x`
    Rotation { o: Matrix },
    /// `x ↦ x / |x|²`
    Inversion,
}

impl MobiusGenerator {
    fn check(&self, n: usize) -> Result<()> {
        match self {
            MobiusGenerator::Translation { t } if t.len() != n => {
                Err(Error::DimensionMismatch { expected: n, found: t.len() })
            }
            MobiusGenerator::Dilation { a } if !(*a > 0.0 && a.is_finite()) => {
                Err(Error::param("dilation factor must be positive"))
            }
            MobiusGenerator::Rotation { o } => {
                if o.dim() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: o.dim() });
                }
                let dev = o.transpose().mul(o).sub(&Matrix::identity(n)).max_abs();
                if dev > 1e-10 {
                    return Err(Error::param(format!("rotation is not orthogonal (deviation {dev:e})")));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        Ok(match self {
            MobiusGenerator::Translation { t } => add(x, t),
            MobiusGenerator::Dilation { a } => scale(x, *a),
            MobiusGenerator::Rotation { o } => o.mul_vec(x),
            MobiusGenerator::Inversion => {
                let r2 = dot(x, x);
                if r2.sqrt() <= EXCLUSION_RADIUS {
                    return Err(Error::domain("inversion evaluated at its center"));
                }
                scale(x, 1.0 / r2)
            }
        })
    }

    /// `|det Dg(x)|`
    pub fn jacobian_det(&self, x: &[f64]) -> f64 {
        let n = x.len() as i32;
        match self {
            MobiusGenerator::Translation { .. } | MobiusGenerator::Rotation { .. } => 1.0,
            MobiusGenerator::Dilation { a } => a.powi(n),
            MobiusGenerator::Inversion => dot(x, x).powi(-n),
        }
    }
}

/// Composition `g_k ∘ … ∘ g_1` of generators, `g_1` applied first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MobiusMap {
    n: usize,
    generators: Vec<MobiusGenerator>,
}

impl MobiusMap {
    pub fn new(n: usize, generators: Vec<MobiusGenerator>) -> Result<Self> {
        if n < 2 {
            return Err(Error::param("dimension must be at least 2"));
        }
        for g in &generators {
            g.check(n)?;
        }
        Ok(Self { n, generators })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[MobiusGenerator] {
        &self.generators
    }

    /// `self` followed by `next`.
    pub fn then(mut self, next: &MobiusMap) -> Result<Self> {
        if next.n != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: next.n });
        }
        self.generators.extend(next.generators.iter().cloned());
        Ok(self)
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.len() });
        }
        self.generators.iter().try_fold(x.to_vec(), |y, g| g.apply(&y))
    }

    pub fn jacobian_det(&self, x: &[f64]) -> Result<f64> {
        let mut y = x.to_vec();
        let mut det = 1.0;
        for g in &self.generators {
            det *= g.jacobian_det(&y);
            y = g.apply(&y)?;
        }
        Ok(det)
    }
}

/// `v^g` for a single generator `g`.
#[derive(Debug, Clone)]
struct PullBack {
    base: ScalarField,
    gen: MobiusGenerator,
}

impl PullBack {
    fn chain(&self, x: &[f64], j: Jet) -> Jet {
        let n = x.len();
        match &self.gen {
            MobiusGenerator::Translation { .. } => j,
            MobiusGenerator::Dilation { a } => {
                Jet { value: j.value + a.ln(), grad: scale(&j.grad, *a), hess: j.hess.scale(a * a) }
            }
            MobiusGenerator::Rotation { o } => {
                Jet { value: j.value, grad: o.transpose_mul_vec(&j.grad), hess: o.transpose().mul(&j.hess).mul(o) }
            }
            MobiusGenerator::Inversion => {
                let r2 = dot(x, x);
                let r4 = r2 * r2;
                let jac = Matrix::from_fn(n, |k, i| {
                    let delta = if k == i { 1.0 } else { 0.0 };
                    delta / r2 - 2.0 * x[k] * x[i] / r4
                });
                let g = &j.grad;
                let gx = dot(g, x);
                let ds: Vec<f64> = x.iter().map(|xi| -2.0 * xi / r4).collect();
                let grad: Vec<f64> = jac.transpose_mul_vec(g).iter().zip(x).map(|(a, xi)| a - 2.0 * xi / r2).collect();
                let chain = jac.transpose().mul(&j.hess).mul(&jac);
                let hess = Matrix::from_fn(n, |i, k| {
                    let delta = if i == k { 1.0 } else { 0.0 };
                    let dds = -2.0 * delta / r4 + 8.0 * x[i] * x[k] / (r4 * r2);
                    chain[(i, k)] + g[i] * ds[k] + g[k] * ds[i] + gx * dds - 2.0 * (delta / r2 - 2.0 * x[i] * x[k] / r4)
                });
                Jet { value: j.value - r2.ln(), grad, hess }
            }
        }
    }
}

impl Field for PullBack {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn label(&self) -> String {
        let g = match &self.gen {
            MobiusGenerator::Translation { .. } => "translation",
            MobiusGenerator::Dilation { .. } => "dilation",
            MobiusGenerator::Rotation { .. } => "rotation",
            MobiusGenerator::Inversion => "inversion",
        };
        format!("{}^{g}", self.base.label())
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        let y = self.gen.apply(x)?;
        let v = self.base.value(&y)?;
        Ok(v + self.gen.jacobian_det(x).ln() / x.len() as f64)
    }

    fn analytic_jet(&self, x: &[f64]) -> Option<Result<Jet>> {
        let y = match self.gen.apply(x) {
            Ok(y) => y,
            Err(e) => return self.base.inner().analytic_jet(x).map(|_| Err(e)),
        };
        let j = self.base.inner().analytic_jet(&y)?;
        Some(j.map(|j| self.chain(x, j)))
    }
}

/// `v^φ = v∘φ + (1/n) log|J_φ|`
pub fn apply_mobius(v: &ScalarField, phi: &MobiusMap) -> Result<ScalarField> {
    if v.dim() != phi.dim() {
        return Err(Error::DimensionMismatch { expected: v.dim(), found: phi.dim() });
    }
    Ok(phi.generators.iter().rev().fold(v.clone(), |acc, g| ScalarField::new(PullBack { base: acc, gen: g.clone() })))
}

/// The map `y ↦ x₀ + λ²(y − x₀)/|y − x₀|²`.
pub fn kelvin_map(center: &[f64], radius: f64) -> Result<MobiusMap> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::param("kelvin radius must be positive"));
    }
    MobiusMap::new(
        center.len(),
        vec![
            MobiusGenerator::Translation { t: scale(center, -1.0) },
            MobiusGenerator::Inversion,
            MobiusGenerator::Dilation { a: radius * radius },
            MobiusGenerator::Translation { t: center.to_vec() },
        ],
    )
}

/// `2 log(λ/|y − x₀|) + v(x₀ + λ²(y − x₀)/|y − x₀|²)`, evaluated directly.
#[derive(Debug, Clone)]
pub struct Kelvin {
    base: ScalarField,
    center: Vec<f64>,
    radius: f64,
    composed: ScalarField,
}

impl Field for Kelvin {
    fn dim(&self) -> usize {
        self.center.len()
    }

    fn label(&self) -> String {
        format!("kelvin({}, radius={})", self.base.label(), self.radius)
    }

    fn value(&self, y: &[f64]) -> Result<f64> {
        let d = sub(y, &self.center);
        let r = norm(&d);
        if r <= EXCLUSION_RADIUS {
            return Err(Error::domain("kelvin transform evaluated at its center"));
        }
        let l2 = self.radius * self.radius;
        let z: Vec<f64> = self.center.iter().zip(&d).map(|(c, di)| c + l2 * di / (r * r)).collect();
        Ok(2.0 * (self.radius / r).ln() + self.base.value(&z)?)
    }

    fn analytic_jet(&self, y: &[f64]) -> Option<Result<Jet>> {
        self.composed.inner().analytic_jet(y)
    }
}

pub fn kelvin_transform(v: &ScalarField, center: &[f64], radius: f64) -> Result<ScalarField> {
    let map = kelvin_map(center, radius)?;
    let composed = apply_mobius(v, &map)?;
    Ok(ScalarField::new(Kelvin { base: v.clone(), center: center.to_vec(), radius, composed }))
}

/// A map `ψ` with `ψ(0) = 0` and `∇v^ψ(0) = 0` whenever `∇v(0) = p`.
pub fn gradient_vanishing_map(p: &[f64], lambda: f64, o: &Matrix) -> Result<MobiusMap> {
    let n = p.len();
    if norm(p) == 0.0 {
        return Err(Error::param("p must be nonzero"));
    }
    if !(lambda != 0.0 && lambda.is_finite()) {
        return Err(Error::param("lambda must be nonzero"));
    }
    let l2 = lambda * lambda;
    let xbar = scale(&o.transpose_mul_vec(p), 0.5 * l2);
    let xb2 = dot(&xbar, &xbar);
    MobiusMap::new(
        n,
        vec![
            MobiusGenerator::Translation { t: scale(&xbar, -1.0) },
            MobiusGenerator::Inversion,
            MobiusGenerator::Dilation { a: l2 },
            MobiusGenerator::Translation { t: scale(&xbar, l2 / xb2) },
            MobiusGenerator::Rotation { o: o.clone() },
        ],
    )
}

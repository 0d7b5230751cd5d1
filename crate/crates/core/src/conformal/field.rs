use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::linalg::{norm, sub};
use crate::numerics::{fd_gradient, fd_hessian, gradient_step, hessian_step, Matrix};

/// Radius of the excluded ball around singular points.
pub const EXCLUSION_RADIUS: f64 = 1e-12;

/// Value, gradient and Hessian at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    pub value: f64,
    pub grad: Vec<f64>,
    pub hess: Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DerivativeMethod {
    Analytic,
    FiniteDifference,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "shape", rename_all = "lowercase")]
pub enum DomainShape {
    All,
    Ball { center: Vec<f64>, radius: f64 },
    Annulus { center: Vec<f64>, inner: f64, outer: f64 },
}

/// Open set on which a field is defined, minus small balls around `excluded`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Domain {
    pub shape: DomainShape,
    pub excluded: Vec<Vec<f64>>,
}

impl Domain {
    pub fn all() -> Self {
        Self { shape: DomainShape::All, excluded: Vec::new() }
    }

    pub fn punctured(points: Vec<Vec<f64>>) -> Self {
        Self { shape: DomainShape::All, excluded: points }
    }

    pub fn ball(center: Vec<f64>, radius: f64) -> Self {
        Self { shape: DomainShape::Ball { center, radius }, excluded: Vec::new() }
    }

    pub fn check(&self, x: &[f64]) -> Result<()> {
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("evaluation point".into()));
        }
        for p in &self.excluded {
            if norm(&sub(x, p)) <= EXCLUSION_RADIUS {
                return Err(Error::domain(format!("point {x:?} is within the excluded radius of {p:?}")));
            }
        }
        let inside = match &self.shape {
            DomainShape::All => true,
            DomainShape::Ball { center, radius } => norm(&sub(x, center)) < *radius,
            DomainShape::Annulus { center, inner, outer } => {
                let r = norm(&sub(x, center));
                r > *inner && r < *outer
            }
        };
        if inside {
            Ok(())
        } else {
            Err(Error::domain(format!("point {x:?} is outside the field's domain")))
        }
    }
}

/// A scalar function on an open subset of ℝⁿ.
pub trait Field: Send + Sync {
    fn dim(&self) -> usize;

    fn label(&self) -> String;

    /// Value at `x`; errors outside the domain.
    fn value(&self, x: &[f64]) -> Result<f64>;

    /// Exact derivatives when available.
    fn analytic_jet(&self, _x: &[f64]) -> Option<Result<Jet>> {
        None
    }
}

/// Shared handle to a [`Field`].
#[derive(Clone)]
pub struct ScalarField(Arc<dyn Field>);

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("ScalarField").field(&self.0.label()).finish()
    }
}

impl ScalarField {
    pub fn new(f: impl Field + 'static) -> Self {
        Self(Arc::new(f))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn label(&self) -> String {
        self.0.label()
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), found: x.len() })
        }
    }

    pub fn value(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x)?;
        self.0.value(x)
    }

    pub fn has_analytic(&self) -> bool {
        let x = vec![0.5; self.dim()];
        self.0.analytic_jet(&x).is_some()
    }

    /// Derivatives by the requested method; `None` prefers analytic.
    pub fn jet(&self, x: &[f64], method: Option<DerivativeMethod>) -> Result<(Jet, DerivativeMethod)> {
        self.check_dim(x)?;
        match method {
            Some(DerivativeMethod::FiniteDifference) => Ok((self.fd_jet(x)?, DerivativeMethod::FiniteDifference)),
            Some(DerivativeMethod::Analytic) => match self.0.analytic_jet(x) {
                Some(j) => Ok((j?, DerivativeMethod::Analytic)),
                None => Err(Error::Unsupported(format!("{} has no analytic derivatives", self.label()))),
            },
            None => match self.0.analytic_jet(x) {
                Some(j) => Ok((j?, DerivativeMethod::Analytic)),
                None => Ok((self.fd_jet(x)?, DerivativeMethod::FiniteDifference)),
            },
        }
    }

    /// Central differences at steps `h` and `h/2` combined by one Richardson
    /// step, with `h = 10·gradient_step(x)` and `10·hessian_step(x)`.
    pub fn fd_jet(&self, x: &[f64]) -> Result<Jet> {
        let value = self.0.value(x)?;
        let f = |y: &[f64]| self.0.value(y);
        let (hg, hh) = (10.0 * gradient_step(x), 10.0 * hessian_step(x));
        let (g1, g2) = (fd_gradient(f, x, hg)?, fd_gradient(f, x, 0.5 * hg)?);
        let grad = g1.iter().zip(&g2).map(|(a, b)| (4.0 * b - a) / 3.0).collect();
        let (h1, h2) = (fd_hessian(f, x, hh)?, fd_hessian(f, x, 0.5 * hh)?);
        let hess = h2.scale(4.0).sub(&h1).scale(1.0 / 3.0).symmetrized();
        Ok(Jet { value, grad, hess })
    }

    pub fn inner(&self) -> &Arc<dyn Field> {
        &self.0
    }
}

fn check_len(n: usize, v: &[f64]) -> Result<()> {
    if v.len() == n {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: n, found: v.len() })
    }
}

/// `log(a / (1 + b²|x − x̄|²))`
#[derive(Debug, Clone)]
pub struct Bubble {
    pub a: f64,
    pub b: f64,
    pub center: Vec<f64>,
}

impl Bubble {
    pub fn new(a: f64, b: f64, center: Vec<f64>) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::param("bubble needs a > 0 and b > 0"));
        }
        if center.len() < 2 {
            return Err(Error::param("dimension must be at least 2"));
        }
        Ok(Self { a, b, center })
    }

    /// The constant `2b²a⁻²` with `A[v] = 2b²a⁻² I`.
    pub fn hessian_constant(&self) -> f64 {
        2.0 * self.b * self.b / (self.a * self.a)
    }
}

impl Field for Bubble {
    fn dim(&self) -> usize {
        self.center.len()
    }

    fn label(&self) -> String {
        format!("bubble(a={}, b={})", self.a, self.b)
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        let d = sub(x, &self.center);
        let r2: f64 = d.iter().map(|v| v * v).sum();
        Ok((self.a / (1.0 + self.b * self.b * r2)).ln())
    }

    fn analytic_jet(&self, x: &[f64]) -> Option<Result<Jet>> {
        Some((|| {
            check_len(self.dim(), x)?;
            let b2 = self.b * self.b;
            let d = sub(x, &self.center);
            let q = 1.0 + b2 * d.iter().map(|v| v * v).sum::<f64>();
            let grad = d.iter().map(|v| -2.0 * b2 * v / q).collect();
            let hess = Matrix::from_fn(self.dim(), |i, j| {
                let delta = if i == j { 1.0 } else { 0.0 };
                -2.0 * b2 * delta / q + 4.0 * b2 * b2 * d[i] * d[j] / (q * q)
            });
            Ok(Jet { value: (self.a / q).ln(), grad, hess })
        })())
    }
}

/// `p·x + c`
#[derive(Debug, Clone)]
pub struct Affine {
    pub p: Vec<f64>,
    pub c: f64,
}

impl Field for Affine {
    fn dim(&self) -> usize {
        self.p.len()
    }

    fn label(&self) -> String {
        format!("affine(p={:?}, c={})", self.p, self.c)
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        Ok(self.p.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + self.c)
    }

    fn analytic_jet(&self, x: &[f64]) -> Option<Result<Jet>> {
        Some(self.value(x).map(|value| Jet { value, grad: self.p.clone(), hess: Matrix::zeros(self.p.len()) }))
    }
}

/// Constant field.
pub fn constant(n: usize, c: f64) -> Affine {
    Affine { p: vec![0.0; n], c }
}

/// `c + g·x + ½xᵀQx + (1/6)Σ T_ijk x_i x_j x_k` with symmetric `Q`, `T`.
#[derive(Debug, Clone)]
pub struct Cubic {
    pub c: f64,
    pub g: Vec<f64>,
    pub q: Matrix,
    /// Row-major `n³` array, symmetric in all indices.
    pub t: Vec<f64>,
    pub domain: Domain,
}

impl Cubic {
    pub fn new(c: f64, g: Vec<f64>, q: Matrix, t: Vec<f64>, domain: Domain) -> Result<Self> {
        let n = g.len();
        if q.dim() != n || t.len() != n * n * n {
            return Err(Error::param("cubic coefficient shapes do not match"));
        }
        Ok(Self { c, g, q: q.symmetrized(), t, domain })
    }

    fn t(&self, i: usize, j: usize, k: usize) -> f64 {
        let n = self.g.len();
        self.t[(i * n + j) * n + k]
    }
}

impl Field for Cubic {
    fn dim(&self) -> usize {
        self.g.len()
    }

    fn label(&self) -> String {
        "cubic".into()
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        self.domain.check(x)?;
        let n = self.dim();
        let mut v = self.c;
        for i in 0..n {
            v += self.g[i] * x[i];
            for j in 0..n {
                v += 0.5 * self.q[(i, j)] * x[i] * x[j];
                for k in 0..n {
                    v += self.t(i, j, k) * x[i] * x[j] * x[k] / 6.0;
                }
            }
        }
        Ok(v)
    }

    fn analytic_jet(&self, x: &[f64]) -> Option<Result<Jet>> {
        Some((|| {
            let value = self.value(x)?;
            let n = self.dim();
            let mut grad = self.g.clone();
            let mut hess = self.q.clone();
            for i in 0..n {
                for j in 0..n {
                    grad[i] += self.q[(i, j)] * x[j];
                    for k in 0..n {
                        grad[i] += 0.5 * self.t(i, j, k) * x[j] * x[k];
                        hess[(i, j)] += self.t(i, j, k) * x[k];
                    }
                }
            }
            Ok(Jet { value, grad, hess })
        })())
    }
}

pub type ProfileFn = Arc<dyn Fn(f64) -> Result<(f64, f64, f64)> + Send + Sync>;

/// `v(x) = g(x₁)`; the profile returns `(g, g′, g″)`.
#[derive(Clone)]
pub struct OneDim {
    n: usize,
    profile: ProfileFn,
    label: String,
    domain: Domain,
}

impl OneDim {
    pub fn new(n: usize, label: impl Into<String>, profile: ProfileFn, domain: Domain) -> Result<Self> {
        if n < 2 {
            return Err(Error::param("dimension must be at least 2"));
        }
        Ok(Self { n, profile, label: label.into(), domain })
    }

    pub fn profile(&self, t: f64) -> Result<(f64, f64, f64)> {
        (self.profile)(t)
    }
}

impl Field for OneDim {
    fn dim(&self) -> usize {
        self.n
    }

    fn label(&self) -> String {
        self.label.clone()
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        self.domain.check(x)?;
        Ok((self.profile)(x[0])?.0)
    }

    fn analytic_jet(&self, x: &[f64]) -> Option<Result<Jet>> {
        Some((|| {
            self.domain.check(x)?;
            let (v, d1, d2) = (self.profile)(x[0])?;
            let mut grad = vec![0.0; self.n];
            grad[0] = d1;
            let mut hess = Matrix::zeros(self.n);
            hess[(0, 0)] = d2;
            Ok(Jet { value: v, grad, hess })
        })())
    }
}

/// `v(x) = g(|x − x̄|)`; the profile returns `(g, g′, g″)`.
#[derive(Clone)]
pub struct Radial {
    center: Vec<f64>,
    profile: ProfileFn,
    label: String,
    domain: Domain,
}

impl Radial {
    /// The center is always excluded from the domain.
    pub fn new(center: Vec<f64>, label: impl Into<String>, profile: ProfileFn, mut domain: Domain) -> Result<Self> {
        if center.len() < 2 {
            return Err(Error::param("dimension must be at least 2"));
        }
        domain.excluded.push(center.clone());
        Ok(Self { center, profile, label: label.into(), domain })
    }
}

impl Field for Radial {
    fn dim(&self) -> usize {
        self.center.len()
    }

    fn label(&self) -> String {
        self.label.clone()
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        self.domain.check(x)?;
        Ok((self.profile)(norm(&sub(x, &self.center)))?.0)
    }

    fn analytic_jet(&self, x: &[f64]) -> Option<Result<Jet>> {
        Some((|| {
            self.domain.check(x)?;
            let d = sub(x, &self.center);
            let r = norm(&d);
            let (v, d1, d2) = (self.profile)(r)?;
            let u: Vec<f64> = d.iter().map(|t| t / r).collect();
            let grad = u.iter().map(|t| d1 * t).collect();
            let hess = Matrix::from_fn(self.dim(), |i, j| {
                let delta = if i == j { 1.0 } else { 0.0 };
                d2 * u[i] * u[j] + d1 / r * (delta - u[i] * u[j])
            });
            Ok(Jet { value: v, grad, hess })
        })())
    }
}

pub type ValueFn = Arc<dyn Fn(&[f64]) -> Result<f64> + Send + Sync>;

/// A field known only by its values; derivatives by finite differences.
#[derive(Clone)]
pub struct FromFn {
    n: usize,
    f: ValueFn,
    label: String,
}

impl FromFn {
    pub fn new(n: usize, label: impl Into<String>, f: ValueFn) -> Self {
        Self { n, f, label: label.into() }
    }
}

impl Field for FromFn {
    fn dim(&self) -> usize {
        self.n
    }

    fn label(&self) -> String {
        self.label.clone()
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        (self.f)(x)
    }
}

/// `k · log u`, with chain-rule derivatives from `u`.
#[derive(Debug, Clone)]
pub struct LogOf {
    pub u: ScalarField,
    pub k: f64,
}

impl Field for LogOf {
    fn dim(&self) -> usize {
        self.u.dim()
    }

    fn label(&self) -> String {
        format!("{} log({})", self.k, self.u.label())
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        let u = self.u.value(x)?;
        if !(u > 0.0) {
            return Err(Error::domain("logarithm of a non-positive value"));
        }
        Ok(self.k * u.ln())
    }

    fn analytic_jet(&self, x: &[f64]) -> Option<Result<Jet>> {
        let j = self.u.inner().analytic_jet(x)?;
        Some(j.and_then(|j| {
            if !(j.value > 0.0) {
                return Err(Error::domain("logarithm of a non-positive value"));
            }
            let u = j.value;
            let grad = j.grad.iter().map(|g| self.k * g / u).collect();
            let hess =
                Matrix::from_fn(self.dim(), |a, b| self.k * (j.hess[(a, b)] / u - j.grad[a] * j.grad[b] / (u * u)));
            Ok(Jet { value: self.k * u.ln(), grad, hess })
        }))
    }
}

/// `exp(m v)`, with chain-rule derivatives from `v`.
#[derive(Debug, Clone)]
pub struct ExpOf {
    pub v: ScalarField,
    pub m: f64,
}

impl Field for ExpOf {
    fn dim(&self) -> usize {
        self.v.dim()
    }

    fn label(&self) -> String {
        format!("exp({} {})", self.m, self.v.label())
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        Ok((self.m * self.v.value(x)?).exp())
    }

    fn analytic_jet(&self, x: &[f64]) -> Option<Result<Jet>> {
        let j = self.v.inner().analytic_jet(x)?;
        Some(j.map(|j| {
            let u = (self.m * j.value).exp();
            let grad = j.grad.iter().map(|g| self.m * u * g).collect();
            let hess =
                Matrix::from_fn(self.dim(), |a, b| self.m * u * (j.hess[(a, b)] + self.m * j.grad[a] * j.grad[b]));
            Jet { value: u, grad, hess }
        }))
    }
}

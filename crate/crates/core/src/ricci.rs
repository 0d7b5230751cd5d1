//! The linear dictionary `λ(Ric) = Tλ(A)` with `T = (n−2)I + e⃗⊗e⃗`, and
//! curvature constants of bubbles.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::cone::{ConeSpec, EigenTuple};
use crate::conformal::{mobius_hessian, Bubble, ScalarField};
use crate::error::{Error, Result};
use crate::numerics::{random_unit_vector, rng_from_seed, Matrix};
use crate::symfun::{Convexity, Family, GradientKind, SymFun, SymmetricFn};

/// `T` and its closed-form inverse in dimension `n ≥ 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LinearDictionary {
    n: usize,
}

impl LinearDictionary {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Unsupported(format!("the Ricci dictionary needs n >= 3, got {n}")));
        }
        Ok(Self { n })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn check(&self, l: &[f64]) -> Result<()> {
        if l.len() == self.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.n, found: l.len() })
        }
    }

    /// `(n−2)λ + σ₁(λ)e⃗`
    pub fn apply(&self, l: &[f64]) -> Result<Vec<f64>> {
        self.check(l)?;
        let s: f64 = l.iter().sum();
        let a = self.n as f64 - 2.0;
        Ok(l.iter().map(|x| a * x + s).collect())
    }

    /// `(n−2)⁻¹(μ − σ₁(μ)e⃗ / (2(n−1)))`
    pub fn apply_inverse(&self, m: &[f64]) -> Result<Vec<f64>> {
        self.check(m)?;
        let n = self.n as f64;
        let s: f64 = m.iter().sum::<f64>() / (2.0 * (n - 1.0));
        Ok(m.iter().map(|x| (x - s) / (n - 2.0)).collect())
    }

    pub fn matrix(&self) -> Matrix {
        let a = self.n as f64 - 2.0;
        Matrix::from_fn(self.n, |i, j| if i == j { a + 1.0 } else { 1.0 })
    }

    pub fn inverse_matrix(&self) -> Matrix {
        let n = self.n as f64;
        let c = 1.0 / (2.0 * (n - 1.0));
        Matrix::from_fn(self.n, |i, j| ((if i == j { 1.0 } else { 0.0 }) - c) / (n - 2.0))
    }

    /// `max ‖T T⁻¹x − x‖∞` and `max ‖T⁻¹T x − x‖∞` over random unit vectors.
    pub fn composition_residual(&self, samples: usize, seed: u64) -> Result<f64> {
        let mut rng = rng_from_seed(seed);
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let x = random_unit_vector(&mut rng, self.n);
            let a = self.apply(&self.apply_inverse(&x)?)?;
            let b = self.apply_inverse(&self.apply(&x)?)?;
            for i in 0..self.n {
                worst = worst.max((a[i] - x[i]).abs()).max((b[i] - x[i]).abs());
            }
        }
        Ok(worst)
    }
}

/// `λ(Ric)` from `λ(A)`; `T` preserves the descending order.
pub fn schouten_to_ricci(l: &EigenTuple) -> Result<EigenTuple> {
    let t = LinearDictionary::new(l.dim())?;
    EigenTuple::new(t.apply(l.values())?)
}

/// `λ(A)` from `λ(Ric)`.
pub fn ricci_to_schouten(m: &EigenTuple) -> Result<EigenTuple> {
    let t = LinearDictionary::new(m.dim())?;
    EigenTuple::new(t.apply_inverse(m.values())?)
}

/// `f(λ) = f̂(Tλ)` on `Γ = T⁻¹Γ̂`.
#[derive(Debug, Clone)]
pub struct Converted {
    fhat: SymFun,
    gamma_hat: ConeSpec,
    dict: LinearDictionary,
}

impl SymmetricFn for Converted {
    fn dim(&self) -> usize {
        self.dict.n
    }

    fn label(&self) -> String {
        format!("{}∘T", self.fhat.label())
    }

    fn value(&self, l: &[f64]) -> Result<f64> {
        self.fhat.value(&EigenTuple::new(self.dict.apply(l)?)?)
    }

    fn gradient(&self, l: &[f64]) -> Result<Vec<f64>> {
        let g = self.fhat.gradient(&EigenTuple::new(self.dict.apply(l)?)?)?;
        self.dict.apply(&g)
    }

    fn gradient_kind(&self) -> GradientKind {
        self.fhat.gradient_kind()
    }

    fn degree(&self) -> Option<f64> {
        self.fhat.degree()
    }

    fn convexity(&self) -> Convexity {
        self.fhat.convexity()
    }

    fn domain(&self) -> ConeSpec {
        pulled_back_cone(&self.gamma_hat, self.dict).expect("T maps e to a positive multiple of e")
    }
}

fn pulled_back_cone(gamma_hat: &ConeSpec, dict: LinearDictionary) -> Result<ConeSpec> {
    let g = gamma_hat.clone();
    let label = format!("T^-1({})", gamma_hat.label());
    let def = Arc::new(move |l: &[f64]| match dict.apply(l) {
        Ok(m) => g.margin_sorted(&m),
        Err(_) => f64::NAN,
    });
    ConeSpec::gauge(dict.n, label, def, None)
}

/// The pair `(f, Γ)` with `f(λ(A)) = f̂(λ(Ric))`.
pub fn convert_pair(fhat: &SymFun, gamma_hat: &ConeSpec) -> Result<(SymFun, ConeSpec)> {
    if fhat.dim() != gamma_hat.dim() {
        return Err(Error::DimensionMismatch { expected: fhat.dim(), found: gamma_hat.dim() });
    }
    let dict = LinearDictionary::new(fhat.dim())?;
    let cone = pulled_back_cone(gamma_hat, dict)?;
    let f = SymFun::new(Converted { fhat: fhat.clone(), gamma_hat: gamma_hat.clone(), dict });
    Ok((f, cone))
}

/// Curvature quantities that equal 1 on suitably normalized bubbles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "quantity", rename_all = "kebab-case")]
pub enum BubbleQuantity {
    /// `λ_i(Ric)`, `2 ≤ i ≤ n`
    RicciEigenvalue { i: usize },
    /// `(λ_i + … + λ_j)(Ric)`, `1 ≤ i < j ≤ n`
    RicciPartialSum { i: usize, j: usize },
    /// `G_p(λ(A))`, `1 ≤ p ≤ n − 2`
    Weitzenbock { p: usize },
}

impl fmt::Display for BubbleQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BubbleQuantity::RicciEigenvalue { i } => write!(f, "lambda_{i}(Ric)"),
            BubbleQuantity::RicciPartialSum { i, j } => write!(f, "(lambda_{i}+...+lambda_{j})(Ric)"),
            BubbleQuantity::Weitzenbock { p } => write!(f, "G_{p}(lambda(A))"),
        }
    }
}

impl BubbleQuantity {
    fn validate(&self, n: usize) -> Result<()> {
        let ok = match *self {
            BubbleQuantity::RicciEigenvalue { i } => (2..=n).contains(&i),
            BubbleQuantity::RicciPartialSum { i, j } => i >= 1 && i < j && j <= n,
            BubbleQuantity::Weitzenbock { p } => p >= 1 && p + 2 <= n,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::param(format!("{self} is not defined for n = {n}")))
        }
    }

    /// The normalization of `b²a⁻²` under which the quantity equals 1 on bubbles.
    pub fn constraint(&self, n: usize, a: f64, b: f64) -> f64 {
        let r = b * b / (a * a);
        let nf = n as f64;
        match *self {
            BubbleQuantity::RicciEigenvalue { .. } => 4.0 * (nf - 1.0) * r,
            BubbleQuantity::RicciPartialSum { i, j } => 4.0 * (nf - 1.0) * (j - i + 1) as f64 * r,
            BubbleQuantity::Weitzenbock { p } => 2.0 * p as f64 * (nf - p as f64) * r,
        }
    }

    /// Evaluates the quantity on `λ(A)`.
    pub fn evaluate(&self, l: &EigenTuple) -> Result<f64> {
        let n = l.dim();
        self.validate(n)?;
        match *self {
            BubbleQuantity::RicciEigenvalue { i } => Ok(schouten_to_ricci(l)?.values()[i - 1]),
            BubbleQuantity::RicciPartialSum { i, j } => Ok(schouten_to_ricci(l)?.values()[i - 1..j].iter().sum()),
            BubbleQuantity::Weitzenbock { p } => SymFun::family(Family::Gp { p }, n)?.value(l),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BubbleConstantReport {
    pub quantity: BubbleQuantity,
    pub n: usize,
    pub a: f64,
    pub b: f64,
    /// Value of the normalization expression; the check applies when it is 1.
    pub constraint: f64,
    pub constraint_satisfied: bool,
    /// Worst value over the sample points (farthest from 1).
    pub value: f64,
    pub values: Vec<f64>,
    pub passed: Option<bool>,
}

/// Evaluates a curvature quantity on the bubble `log(a/(1 + b²|x|²))` at
/// the given points through its Möbius Hessian.
pub fn bubble_constants(
    quantity: BubbleQuantity,
    n: usize,
    a: f64,
    b: f64,
    points: &[Vec<f64>],
) -> Result<BubbleConstantReport> {
    LinearDictionary::new(n)?;
    quantity.validate(n)?;
    if points.is_empty() {
        return Err(Error::param("at least one sample point is needed"));
    }
    let field = ScalarField::new(Bubble::new(a, b, vec![0.0; n])?);
    let values = points
        .iter()
        .map(|x| quantity.evaluate(&mobius_hessian(&field, x, None)?.eigenvalues))
        .collect::<Result<Vec<f64>>>()?;
    let value = values.iter().copied().fold(1.0f64, |w, v| if (v - 1.0).abs() > (w - 1.0).abs() { v } else { w });
    let constraint = quantity.constraint(n, a, b);
    let constraint_satisfied = (constraint - 1.0).abs() <= 1e-9;
    let passed = constraint_satisfied.then(|| (value - 1.0).abs() <= 1e-9);
    Ok(BubbleConstantReport { quantity, n, a, b, constraint, constraint_satisfied, value, values, passed })
}

//! Symmetric functions of eigenvalues: built-in families, the gauge of a
//! level set, convex extension across a cone boundary, the max-form with its
//! mollification, and sampled structural checks.

mod extension;
mod family;
mod gauge;
mod maxform;
mod structural;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::cone::{ConeSpec, EigenTuple};
use crate::error::{Error, Result};
use crate::numerics::fd_gradient;

pub use extension::{convex_extend, ConvexExtension};
pub use family::{elementary_symmetric, eval_family, Family, FamilyFn};
pub use gauge::{
    normal_identity_check, reflect_cone, GaugeFn, GaugeValue, LevelFn, LevelSet, NormalIdentity, Reflection,
};
pub use maxform::{maxform_f0, mollified_f, MaxForm, Mollified, MAX_MOLLIFIED_DIM};
pub use structural::{verify_structural, CheckStatus, ConditionCheck, ConditionReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GradientKind {
    Analytic,
    FiniteDifference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convexity {
    Linear,
    Convex,
    Concave,
    Unknown,
}

impl Convexity {
    pub fn is_convex(self) -> bool {
        matches!(self, Convexity::Linear | Convexity::Convex)
    }

    pub fn is_concave(self) -> bool {
        matches!(self, Convexity::Linear | Convexity::Concave)
    }
}

/// A symmetric function of `λ`. Inputs are sorted descending.
pub trait SymmetricFn: Send + Sync {
    fn dim(&self) -> usize;

    fn label(&self) -> String;

    fn value(&self, l: &[f64]) -> Result<f64>;

    /// Gradient in the sorted coordinates; finite differences by default.
    fn gradient(&self, l: &[f64]) -> Result<Vec<f64>> {
        let h = 1e-5 * (1.0 + l.iter().map(|x| x * x).sum::<f64>().sqrt());
        fd_gradient(|x| self.value(&sorted(x)), l, h)
    }

    fn gradient_kind(&self) -> GradientKind {
        GradientKind::FiniteDifference
    }

    /// Degree of positive homogeneity, `None` when not homogeneous.
    fn degree(&self) -> Option<f64> {
        Some(1.0)
    }

    fn convexity(&self) -> Convexity {
        Convexity::Unknown
    }

    /// The cone on which the function is positive.
    fn domain(&self) -> ConeSpec;
}

pub(crate) fn sorted(x: &[f64]) -> Vec<f64> {
    let mut v = x.to_vec();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Shared handle to a symmetric function.
#[derive(Clone)]
pub struct SymFun(Arc<dyn SymmetricFn>);

impl fmt::Debug for SymFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("SymFun").field(&self.0.label()).finish()
    }
}

impl SymFun {
    pub fn new(f: impl SymmetricFn + 'static) -> Self {
        Self(Arc::new(f))
    }

    pub fn family(family: Family, n: usize) -> Result<Self> {
        Ok(Self::new(FamilyFn::new(family, n)?))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn label(&self) -> String {
        self.0.label()
    }

    pub fn degree(&self) -> Option<f64> {
        self.0.degree()
    }

    pub fn convexity(&self) -> Convexity {
        self.0.convexity()
    }

    pub fn gradient_kind(&self) -> GradientKind {
        self.0.gradient_kind()
    }

    pub fn domain(&self) -> ConeSpec {
        self.0.domain()
    }

    fn check(&self, l: &EigenTuple) -> Result<()> {
        if l.dim() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), found: l.dim() })
        }
    }

    pub fn value(&self, l: &EigenTuple) -> Result<f64> {
        self.check(l)?;
        self.0.value(l.values())
    }

    pub fn gradient(&self, l: &EigenTuple) -> Result<Vec<f64>> {
        self.check(l)?;
        self.0.gradient(l.values())
    }

    /// Evaluates at a point given in any order.
    pub fn value_unsorted(&self, x: &[f64]) -> Result<f64> {
        self.value(&EigenTuple::new(x.to_vec())?)
    }

    pub fn inner(&self) -> &Arc<dyn SymmetricFn> {
        &self.0
    }
}

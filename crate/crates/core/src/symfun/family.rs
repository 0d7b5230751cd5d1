use serde::Serialize;

use super::{Convexity, GradientKind, SymmetricFn};
use crate::cone::{ConeKind, ConeSpec, EigenTuple};
use crate::error::{Error, Result};

/// `[σ₀, σ₁, …, σₙ]` of `l`.
pub fn elementary_symmetric(l: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; l.len() + 1];
    e[0] = 1.0;
    for (i, &x) in l.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            e[k] += x * e[k - 1];
        }
    }
    e
}

fn without(l: &[f64], i: usize) -> Vec<f64> {
    l.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| *x).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    SigmaK {
        k: usize,
    },
    SigmaKRoot {
        k: usize,
    },
    /// `p Σ_{i ≤ n−p} λ_i + (n−p) Σ_{i > n−p} λ_i`
    Gp {
        p: usize,
    },
    /// `λ_p + … + λ_{p+q}` (1-based, descending order)
    LambdaPQ {
        p: usize,
        q: usize,
    },
    /// `σ₁ + c|λ|`
    Circular {
        c: f64,
    },
    /// `Σ μ_i λ_i`
    OrderedLinear {
        weights: Vec<f64>,
    },
}

impl Family {
    /// Weights when the family is linear in the sorted coordinates.
    pub fn linear_weights(&self, n: usize) -> Option<Vec<f64>> {
        match self {
            Family::SigmaK { k: 1 } => Some(vec![1.0; n]),
            Family::Gp { p } => Some((0..n).map(|i| if i < n - p { *p as f64 } else { (n - p) as f64 }).collect()),
            Family::LambdaPQ { p, q } => Some((1..=n).map(|i| if i >= *p && i <= p + q { 1.0 } else { 0.0 }).collect()),
            Family::OrderedLinear { weights } => Some(weights.clone()),
            _ => None,
        }
    }
}

/// A [`Family`] member bound to a dimension.
#[derive(Debug, Clone)]
pub struct FamilyFn {
    family: Family,
    n: usize,
    domain: ConeSpec,
}

impl FamilyFn {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::param("dimension must be at least 2"));
        }
        let domain = match &family {
            Family::SigmaK { k } | Family::SigmaKRoot { k } => {
                if *k == 0 || *k > n {
                    return Err(Error::param(format!("k must lie in 1..={n}, got {k}")));
                }
                ConeSpec::gamma_k(n, *k)?
            }
            Family::Gp { p } => {
                if *p == 0 || *p >= n {
                    return Err(Error::param(format!("p must lie in 1..{n}, got {p}")));
                }
                ConeSpec::ordered_linear(family.linear_weights(n).expect("linear family"))?
            }
            Family::LambdaPQ { p, q } => {
                if *p == 0 || p + q > n {
                    return Err(Error::param(format!("need 1 <= p and p + q <= {n}")));
                }
                ConeSpec::ordered_linear(family.linear_weights(n).expect("linear family"))?
            }
            Family::Circular { c } => {
                if !c.is_finite() || c.abs() > 1.0 {
                    return Err(Error::param(format!("circular parameter must lie in [-1, 1], got {c}")));
                }
                ConeSpec::new(n, ConeKind::Circular(*c))?
            }
            Family::OrderedLinear { weights } => ConeSpec::ordered_linear(weights.clone())?,
        };
        Ok(Self { family, n, domain })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Value and analytic gradient at a sorted point.
    pub fn eval(&self, l: &[f64]) -> Result<(f64, Vec<f64>)> {
        if l.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: l.len() });
        }
        if let Some(w) = self.family.linear_weights(self.n) {
            let v = w.iter().zip(l).map(|(a, b)| a * b).sum();
            return Ok((v, w));
        }
        match &self.family {
            Family::SigmaK { k } => {
                let v = elementary_symmetric(l)[*k];
                let g = (0..self.n).map(|i| elementary_symmetric(&without(l, i))[k - 1]).collect();
                Ok((v, g))
            }
            Family::SigmaKRoot { k } => {
                let s = elementary_symmetric(l);
                if s[1..=*k].iter().any(|x| *x < 0.0) {
                    return Err(Error::domain(format!("point lies outside the closure of Gamma_{k}")));
                }
                let kf = *k as f64;
                let v = s[*k].powf(1.0 / kf);
                if v == 0.0 {
                    if *k == 1 {
                        return Ok((0.0, vec![1.0; self.n]));
                    }
                    return Err(Error::domain("gradient of sigma_k^(1/k) is unbounded on the cone boundary"));
                }
                let g = (0..self.n).map(|i| v / (kf * s[*k]) * elementary_symmetric(&without(l, i))[k - 1]).collect();
                Ok((v, g))
            }
            Family::Circular { c } => {
                let r = l.iter().map(|x| x * x).sum::<f64>().sqrt();
                let v = l.iter().sum::<f64>() + c * r;
                if r == 0.0 {
                    return Err(Error::domain("|lambda| is not differentiable at the origin"));
                }
                Ok((v, l.iter().map(|x| 1.0 + c * x / r).collect()))
            }
            _ => unreachable!("linear families handled above"),
        }
    }
}

impl SymmetricFn for FamilyFn {
    fn dim(&self) -> usize {
        self.n
    }

    fn label(&self) -> String {
        match &self.family {
            Family::SigmaK { k } => format!("sigma-{k}"),
            Family::SigmaKRoot { k } => format!("sigma-{k}^(1/{k})"),
            Family::Gp { p } => format!("G_{p}"),
            Family::LambdaPQ { p, q } => format!("Lambda_{{{p},{q}}}"),
            Family::Circular { c } => format!("f^c(c={c})"),
            Family::OrderedLinear { weights } => format!("f^mu({weights:?})"),
        }
    }

    fn value(&self, l: &[f64]) -> Result<f64> {
        if let Family::Circular { c } = &self.family {
            let r = l.iter().map(|x| x * x).sum::<f64>().sqrt();
            return Ok(l.iter().sum::<f64>() + c * r);
        }
        Ok(self.eval(l)?.0)
    }

    fn gradient(&self, l: &[f64]) -> Result<Vec<f64>> {
        Ok(self.eval(l)?.1)
    }

    fn gradient_kind(&self) -> GradientKind {
        GradientKind::Analytic
    }

    fn degree(&self) -> Option<f64> {
        match &self.family {
            Family::SigmaK { k } => Some(*k as f64),
            _ => Some(1.0),
        }
    }

    fn convexity(&self) -> Convexity {
        if let Some(w) = self.family.linear_weights(self.n) {
            let desc = w.windows(2).all(|p| p[0] >= p[1]);
            let asc = w.windows(2).all(|p| p[0] <= p[1]);
            return match (desc, asc) {
                (true, true) => Convexity::Linear,
                (true, false) => Convexity::Convex,
                (false, true) => Convexity::Concave,
                _ => Convexity::Unknown,
            };
        }
        match &self.family {
            Family::SigmaKRoot { .. } => Convexity::Concave,
            Family::Circular { c } if *c > 0.0 => Convexity::Convex,
            Family::Circular { c } if *c < 0.0 => Convexity::Concave,
            Family::Circular { .. } => Convexity::Linear,
            _ => Convexity::Unknown,
        }
    }

    fn domain(&self) -> ConeSpec {
        self.domain.clone()
    }
}

/// Value and gradient of a family member at `l`.
pub fn eval_family(family: &Family, l: &EigenTuple) -> Result<(f64, Vec<f64>)> {
    FamilyFn::new(family.clone(), l.dim())?.eval(l.values())
}

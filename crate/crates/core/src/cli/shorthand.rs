use std::fmt;
use std::str::FromStr;

use crate::cone::{ConeKind, ConeSpec};
use crate::error::{Error, Result};

/// A built-in cone without its dimension, written as
/// `gamma-K`, `neg-dual-gamma-K`, `circular:C`, `ordered-linear:W1,W2,…`,
/// `extremal-largest:MU` or `extremal-smallest:MU`.
#[derive(Debug, Clone, PartialEq)]
pub enum ConeShape {
    GammaK(usize),
    NegDualGammaK(usize),
    Circular(f64),
    OrderedLinear(Vec<f64>),
    ExtremalLargest(f64),
    ExtremalSmallest(f64),
}

impl ConeShape {
    pub fn build(&self, n: usize) -> Result<ConeSpec> {
        let kind = match self {
            ConeShape::GammaK(k) => ConeKind::GammaK(*k),
            ConeShape::NegDualGammaK(k) => ConeKind::NegDualGammaK(*k),
            ConeShape::Circular(c) => ConeKind::Circular(*c),
            ConeShape::OrderedLinear(w) => ConeKind::OrderedLinear(w.clone()),
            ConeShape::ExtremalLargest(m) => ConeKind::ExtremalLargest(*m),
            ConeShape::ExtremalSmallest(m) => ConeKind::ExtremalSmallest(*m),
        };
        ConeSpec::new(n, kind)
    }
}

fn number(s: &str, what: &str) -> Result<f64> {
    s.trim().parse().map_err(|_| Error::Parameter(format!("{what}: '{s}' is not a number")))
}

pub(crate) fn number_list(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(|x| number(x, "weight")).collect()
}

impl FromStr for ConeShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let index = |rest: &str| -> Result<usize> {
            rest.parse().map_err(|_| Error::Parameter(format!("cone '{s}': '{rest}' is not an index")))
        };
        if let Some(rest) = s.strip_prefix("neg-dual-gamma-") {
            return Ok(ConeShape::NegDualGammaK(index(rest)?));
        }
        if let Some(rest) = s.strip_prefix("gamma-") {
            return Ok(ConeShape::GammaK(index(rest)?));
        }
        let (name, arg) = s.split_once(':').ok_or_else(|| Error::Parameter(format!("unknown cone '{s}'")))?;
        match name {
            "circular" => Ok(ConeShape::Circular(number(arg, "circular parameter")?)),
            "ordered-linear" => Ok(ConeShape::OrderedLinear(number_list(arg)?)),
            "extremal-largest" => Ok(ConeShape::ExtremalLargest(number(arg, "extremal parameter")?)),
            "extremal-smallest" => Ok(ConeShape::ExtremalSmallest(number(arg, "extremal parameter")?)),
            _ => Err(Error::Parameter(format!("unknown cone '{s}'"))),
        }
    }
}

impl fmt::Display for ConeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeShape::GammaK(k) => write!(f, "gamma-{k}"),
            ConeShape::NegDualGammaK(k) => write!(f, "neg-dual-gamma-{k}"),
            ConeShape::Circular(c) => write!(f, "circular:{c}"),
            ConeShape::OrderedLinear(w) => {
                let parts: Vec<String> = w.iter().map(f64::to_string).collect();
                write!(f, "ordered-linear:{}", parts.join(","))
            }
            ConeShape::ExtremalLargest(m) => write!(f, "extremal-largest:{m}"),
            ConeShape::ExtremalSmallest(m) => write!(f, "extremal-smallest:{m}"),
        }
    }
}

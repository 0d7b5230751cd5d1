use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::cone::EigenTuple;
use crate::conformal::{mobius_hessian, onedim_eigenvalues, Domain, OneDim, ProfileFn, ScalarField};
use crate::error::{Error, Result};
use crate::symfun::{elementary_symmetric, Family, SymFun};

/// The three sequences with `f(λ(±A[v_j]))` bounded and `|∇v_j|` unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlowupKind {
    /// `v_j = j(x₁ − 2) + j^{−n}e^{nj(x₁−2)}` with `f = σ_{n/2}` on `λ(−A)`
    NegSigmaHalf,
    /// `v_j = −j log(x₁/j + C_j) + j log(C_j − 1/j)` on `λ(−A)`
    NegGeneral,
    /// `v_j = j log(x₁/j + C_j) − j log(C_j + 1/j)` on `λ(A)`
    PosGeneral,
}

impl fmt::Display for BlowupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlowupKind::NegSigmaHalf => "neg-sigma-half",
            BlowupKind::NegGeneral => "neg-general",
            BlowupKind::PosGeneral => "pos-general",
        })
    }
}

impl std::str::FromStr for BlowupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "neg-sigma-half" => Ok(BlowupKind::NegSigmaHalf),
            "neg-general" => Ok(BlowupKind::NegGeneral),
            "pos-general" => Ok(BlowupKind::PosGeneral),
            other => Err(Error::param(format!("unknown blow-up kind '{other}'"))),
        }
    }
}

/// `C_j = max(5/j, 16/log(j+1))`, so that `e^{8/C_j} = √(j+1)`.
pub fn c_schedule(j: u32) -> f64 {
    let j = j as f64;
    (5.0 / j).max(16.0 / (j + 1.0).ln())
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `c_n = n² 2^{1−n/2} C(n−1, n/2−1)`
pub fn sigma_half_constant(n: usize) -> Result<f64> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::param(format!("n must be even and at least 2, got {n}")));
    }
    let nf = n as f64;
    Ok(nf * nf * 2f64.powf(1.0 - nf / 2.0) * binom(n - 1, n / 2 - 1))
}

#[derive(Clone)]
pub struct BlowupFamily {
    pub kind: BlowupKind,
    pub n: usize,
    pub j: u32,
    /// `C_j` for the general kinds.
    pub c_j: Option<f64>,
    /// The operator the sequence is measured with.
    pub f: SymFun,
    pub field: ScalarField,
    profile: ProfileFn,
}

/// One line of a verification table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlowupCheck {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub passed: bool,
}

impl BlowupCheck {
    fn at_most(name: &str, value: f64, bound: f64) -> Self {
        Self { name: name.into(), value, bound, passed: value <= bound }
    }

    fn at_least(name: &str, value: f64, bound: f64) -> Self {
        Self { name: name.into(), value, bound, passed: value >= bound }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlowupReport {
    pub kind: BlowupKind,
    pub n: usize,
    pub j: u32,
    pub c_j: Option<f64>,
    /// `sup_{B₁} f(λ(±A[v_j]))`
    pub sup_value: f64,
    /// `sup_{B₁} |σ_{n/2} − c_n|` for the σ kind, `0` otherwise.
    pub sup_deviation: f64,
    pub min_gradient: f64,
    pub checks: Vec<BlowupCheck>,
}

impl BlowupReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&BlowupCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn gradient_blowup(kind: BlowupKind, n: usize, j: u32) -> Result<BlowupFamily> {
    if n < 2 {
        return Err(Error::param("dimension must be at least 2"));
    }
    if j == 0 {
        return Err(Error::param("j must be at least 1"));
    }
    let jf = j as f64;
    let nf = n as f64;
    let (profile, f, c_j): (ProfileFn, SymFun, Option<f64>) = match kind {
        BlowupKind::NegSigmaHalf => {
            sigma_half_constant(n)?;
            let p: ProfileFn = Arc::new(move |x: f64| {
                let w = (nf * jf * (x - 2.0) - nf * jf.ln()).exp();
                Ok((jf * (x - 2.0) + w, jf + nf * jf * w, nf * nf * jf * jf * w))
            });
            (p, SymFun::family(Family::SigmaK { k: n / 2 }, n)?, None)
        }
        BlowupKind::NegGeneral | BlowupKind::PosGeneral => {
            let c = c_schedule(j);
            let (sign, p) = if kind == BlowupKind::NegGeneral { (-1.0, 1) } else { (1.0, n - 1) };
            let anchor = jf * (c + sign / jf).ln();
            let prof: ProfileFn = Arc::new(move |x: f64| {
                let q = x / jf + c;
                if !(q > 0.0) {
                    return Err(Error::domain(format!("x1/j + C_j must be positive, x1 = {x}")));
                }
                Ok((sign * jf * q.ln() - sign * anchor, sign / q, -sign / (jf * q * q)))
            });
            (prof, SymFun::family(Family::Gp { p }, n)?, Some(c))
        }
    };
    let field = ScalarField::new(OneDim::new(n, format!("{kind}(j={j})"), profile.clone(), Domain::all())?);
    Ok(BlowupFamily { kind, n, j, c_j, f, field, profile })
}

impl BlowupFamily {
    pub fn profile(&self, x1: f64) -> Result<(f64, f64, f64)> {
        (self.profile)(x1)
    }

    /// `w_j(x₁)` for the σ kind.
    pub fn w(&self, x1: f64) -> Option<f64> {
        let (jf, nf) = (self.j as f64, self.n as f64);
        (self.kind == BlowupKind::NegSigmaHalf).then(|| (nf * jf * (x1 - 2.0) - nf * jf.ln()).exp())
    }

    /// `ω(j) = f(2/j ∓ 1, ±1, …, ±1)`
    pub fn omega(&self) -> Result<Option<f64>> {
        let s = match self.kind {
            BlowupKind::NegSigmaHalf => return Ok(None),
            BlowupKind::NegGeneral => 1.0,
            BlowupKind::PosGeneral => -1.0,
        };
        let mut d = vec![s; self.n];
        d[0] = 2.0 / self.j as f64 - s;
        Ok(Some(self.f.value(&EigenTuple::new(d)?)?))
    }

    /// Sign applied to `A` before taking eigenvalues.
    fn sign(&self) -> f64 {
        if self.kind == BlowupKind::PosGeneral {
            1.0
        } else {
            -1.0
        }
    }

    /// `λ(±A[v_j])` at `x₁`, from the one-variable formula.
    pub fn eigenvalues(&self, x1: f64) -> Result<EigenTuple> {
        let (v, d1, d2) = self.profile(x1)?;
        let l = onedim_eigenvalues(self.n, v, d1, d2)?;
        Ok(l.scale(self.sign()))
    }

    /// `σ_l(λ(−A[v_j]))` for `l = 1..=n/2`, expanded around `θ(−1, 1, …, 1)`:
    /// `λ = θ(−1, 1, …) + t e₁` with `θ = ½(v′)²e^{−2v}`, `t = e^{−2v}v″`,
    /// and `σ_l` is affine in the first entry.
    pub fn sigma_direct(&self, x1: f64) -> Result<Vec<f64>> {
        let (v, d1, d2) = self.profile(x1)?;
        let k = self.n / 2;
        let mut base = vec![1.0; self.n];
        base[0] = -1.0;
        let s_base = elementary_symmetric(&base);
        let s_rest = elementary_symmetric(&vec![1.0; self.n - 1]);
        let eps = 2.0 * d2 / (d1 * d1);
        let log_theta = (0.5 * d1 * d1).ln() - 2.0 * v;
        (1..=k)
            .map(|l| {
                let bracket = s_base[l] + eps * s_rest[l - 1];
                let out = (l as f64 * log_theta).exp() * bracket;
                if out.is_finite() {
                    Ok(out)
                } else {
                    Err(Error::NonFinite(format!("sigma_{l} at x1 = {x1}")))
                }
            })
            .collect()
    }

    /// `c_n e^{−nw}(1 + nw)^{n−2}`
    pub fn sigma_closed_form(&self, x1: f64) -> Result<Option<f64>> {
        let Some(w) = self.w(x1) else { return Ok(None) };
        let nf = self.n as f64;
        Ok(Some(sigma_half_constant(self.n)? * (-nf * w).exp() * (1.0 + nf * w).powf(nf - 2.0)))
    }

    /// Equally spaced interior points of `(−r, r)` along `x₁`.
    fn grid(points: usize, r: f64) -> Vec<f64> {
        (0..points).map(|i| -r + 2.0 * r * (i as f64 + 0.5) / points as f64).collect()
    }

    pub fn verify(&self, points: usize) -> Result<BlowupReport> {
        let points = points.max(2);
        let ball = Self::grid(points, 1.0);
        let half_ball = Self::grid(points, 0.5);
        let mut checks = Vec::new();
        let mut sup_v = f64::NEG_INFINITY;
        let mut sup_value: f64 = 0.0;
        let mut sup_deviation: f64 = 0.0;
        let mut agreement: f64 = 0.0;
        let mut inside = true;
        for (i, &x1) in ball.iter().enumerate() {
            let (v, d1, d2) = self.profile(x1)?;
            sup_v = sup_v.max(v);
            if i % 10 == 0 {
                let mut x = vec![0.0; self.n];
                x[0] = x1;
                let full = mobius_hessian(&self.field, &x, None)?;
                let l = onedim_eigenvalues(self.n, v, d1, d2)?;
                agreement = agreement.max(full.eigenvalues.max_abs_diff(&l) / l.norm().max(1e-300));
            }
        }
        let grad = |xs: &[f64]| -> Result<f64> {
            xs.iter().try_fold(f64::INFINITY, |m, &x| Ok(m.min(self.profile(x)?.1.abs())))
        };
        match self.kind {
            BlowupKind::NegSigmaHalf => {
                let cn = sigma_half_constant(self.n)?;
                let nf = self.n as f64;
                let mut identity: f64 = 0.0;
                for &x1 in &ball {
                    let s = self.sigma_direct(x1)?;
                    inside &= s.iter().all(|&x| x > 0.0);
                    let closed = self.sigma_closed_form(x1)?.unwrap_or(f64::NAN);
                    identity = identity.max((s[s.len() - 1] - closed).abs());
                    sup_value = sup_value.max(s[s.len() - 1]);
                    let w = self.w(x1).unwrap_or(0.0);
                    let dev = cn * (-nf * w + (nf - 2.0) * (nf * w).ln_1p()).exp_m1().abs();
                    sup_deviation = sup_deviation.max(dev);
                }
                let min_gradient = grad(&half_ball)?;
                checks.push(BlowupCheck::at_most("identity", identity, 1e-8));
                checks.push(BlowupCheck::at_least("gradient-floor", min_gradient, self.j as f64));
                checks.push(BlowupCheck::at_most("sup-v", sup_v, 0.0));
                checks.push(BlowupCheck {
                    name: "cone-membership".into(),
                    value: f64::from(u8::from(inside)),
                    bound: 1.0,
                    passed: inside,
                });
                checks.push(BlowupCheck::at_most("hessian-agreement", agreement, 1e-9));
                Ok(self.report(sup_value, sup_deviation, min_gradient, checks))
            }
            BlowupKind::NegGeneral | BlowupKind::PosGeneral => {
                let c = self.c_j.expect("general kinds carry C_j");
                let jf = self.j as f64;
                let omega = self.omega()?.expect("general kinds have omega");
                let domain = self.f.domain();
                for &x1 in &ball {
                    let l = self.eigenvalues(x1)?;
                    sup_value = sup_value.max(self.f.value(&l)?);
                    inside &= domain.margin(&l)? > 0.0;
                }
                let min_gradient = grad(&ball)?;
                let floor = 1.0 / (1.0 / jf + c);
                let bound = (8.0 / c).exp() * omega;
                checks.push(BlowupCheck::at_most("sup-v", sup_v, 1e-12));
                checks.push(BlowupCheck::at_least("gradient-floor", min_gradient, floor * (1.0 - 1e-12)));
                checks.push(BlowupCheck::at_most("value-bound", sup_value, bound));
                checks.push(BlowupCheck {
                    name: "cone-membership".into(),
                    value: f64::from(u8::from(inside)),
                    bound: 1.0,
                    passed: inside,
                });
                checks.push(BlowupCheck::at_most("hessian-agreement", agreement, 1e-9));
                Ok(self.report(sup_value, 0.0, min_gradient, checks))
            }
        }
    }

    fn report(&self, sup_value: f64, sup_deviation: f64, min_gradient: f64, checks: Vec<BlowupCheck>) -> BlowupReport {
        BlowupReport {
            kind: self.kind,
            n: self.n,
            j: self.j,
            c_j: self.c_j,
            sup_value,
            sup_deviation,
            min_gradient,
            checks,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        assert_eq!(sigma_half_constant(4).unwrap(), 24.0);
        assert_eq!(sigma_half_constant(2).unwrap(), 4.0);
        assert!(sigma_half_constant(5).is_err());
        assert!(gradient_blowup(BlowupKind::NegSigmaHalf, 3, 5).is_err());
        assert!(((8.0 / c_schedule(20)).exp() - 21f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn sigma_half_n4() {
        let mut prev = f64::INFINITY;
        for j in [5, 10, 20] {
            let fam = gradient_blowup(BlowupKind::NegSigmaHalf, 4, j).unwrap();
            let rep = fam.verify(100).unwrap();
            assert!(rep.all_pass(), "{rep:?}");
            assert!(rep.sup_deviation < prev);
            prev = rep.sup_deviation;
        }
    }

    #[test]
    fn general_kinds() {
        for kind in [BlowupKind::NegGeneral, BlowupKind::PosGeneral] {
            let mut prev = (f64::INFINITY, 0.0);
            for j in [10, 20, 40] {
                let fam = gradient_blowup(kind, 4, j).unwrap();
                let omega = fam.omega().unwrap().unwrap();
                assert!((omega - 6.0 / j as f64).abs() < 1e-12);
                let rep = fam.verify(100).unwrap();
                assert!(rep.all_pass(), "{rep:?}");
                assert!(rep.sup_value < prev.0 && rep.min_gradient > prev.1);
                prev = (rep.sup_value, rep.min_gradient);
            }
        }
    }

    #[test]
    fn direction_of_general_kinds() {
        let fam = gradient_blowup(BlowupKind::PosGeneral, 3, 10).unwrap();
        let l = fam.eigenvalues(0.3).unwrap();
        let v = l.values();
        let theta = -v[2];
        assert!((v[0] / theta - 1.2).abs() < 1e-12);
    }
}
